"""Pseudospin winding numbers and Bloch-sphere diagnostics of band loops.

A loop of unit vectors around a crossing point (a section of the band's line
bundle over a small circle) defines the winding of the phase of its component
ratio, the Bloch-sphere trace of its projectors, and the holonomy of the
discrete Berry connection.  These are compared against the surface vorticity
computed in :mod:`bandvortex.vorticity`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    AssumptionViolated,
    DegenerateCloud,
    NonIntegerWinding,
    ZeroOverlap,
)
from .vorticity import ProjectorField, _range_vector, compute_vorticity
from .models import CanonicalModelSpec
from . import vorticity as _vorticity

TWO_PI = 2.0 * math.pi
MAX_LOOP_SAMPLES = 2**16


@dataclass(frozen=True)
class LoopSample:
    """Uniform samples of a C^2-valued section on a circle around a crossing.

    ``section``, when present, allows sample doubling; loops built from raw
    values cannot be refined.
    """

    theta: np.ndarray
    values: np.ndarray
    section: Optional[Callable[[float], np.ndarray]] = None

    @classmethod
    def from_section(cls, section, n_samples: int = 256) -> "LoopSample":
        if n_samples < 8:
            raise ValueError("need at least 8 samples")
        theta = np.arange(n_samples) * (TWO_PI / n_samples)
        values = np.array([section(t) for t in theta], dtype=complex)
        return cls(theta, values, section)

    def refined(self) -> Optional["LoopSample"]:
        if self.section is None:
            return None
        return LoopSample.from_section(self.section, 2 * len(self.theta))

    def closure_gap(self) -> float:
        """Distance between the section at 0 and its wrap-around limit."""
        if self.section is None:
            return float(np.linalg.norm(self.values[0] - self.values[-1]))
        return float(np.linalg.norm(np.asarray(self.section(TWO_PI)) - self.values[0]))


def field_loop(
    projector_field: ProjectorField,
    radius: float,
    n_samples: int = 256,
    basis: Optional[np.ndarray] = None,
    mu: float = 0.0,
) -> LoopSample:
    """Loop of band vectors of a projector field on |k - k0| = radius.

    ``basis`` (columns) re-expresses the vectors; the default is the
    computational basis.  The per-sample gauge is whatever the projector's
    range vector carries, which is irrelevant to every consumer here.
    """
    c1, c2 = projector_field.singular_point

    def section(theta):
        p = projector_field(c1 + radius * math.cos(theta), c2 + radius * math.sin(theta), mu)
        v = _range_vector(p)
        if basis is not None:
            v = np.conj(basis.T) @ v
        return v

    return LoopSample.from_section(section, n_samples)


# ---------------------------------------------------------------------------
# Winding number of the component ratio
# ---------------------------------------------------------------------------


def winding_number(loop: LoopSample, tol_component: float = 1e-9) -> int:
    """Degree of theta -> phase(psi2/psi1) along the loop.

    Requires both components nonzero at every sample.  Samples are doubled
    until every phase increment is below pi/2 (raw-valued loops cannot be
    refined); the accumulated phase must land within 0.05 of an integer
    multiple of 2*pi.
    """
    current = loop
    while True:
        mags = np.abs(current.values)
        small = np.min(mags, axis=1)
        idx = int(np.argmin(small))
        if small[idx] <= tol_component:
            raise AssumptionViolated(idx)
        g = current.values[:, 1] / current.values[:, 0]
        g = g / np.abs(g)
        incr = np.angle(np.roll(g, -1) * np.conj(g))
        if np.max(np.abs(incr)) < 0.5 * math.pi:
            break
        if len(current.theta) >= MAX_LOOP_SAMPLES or current.section is None:
            raise NonIntegerWinding("phase increments stay above pi/2 at the sample cap")
        current = current.refined()
    w = float(np.sum(incr) / TWO_PI)
    nearest = round(w)
    if abs(w - nearest) > 0.05:
        raise NonIntegerWinding(f"winding {w:.6f} not within 0.05 of an integer")
    return int(nearest)


# ---------------------------------------------------------------------------
# Bloch sphere
# ---------------------------------------------------------------------------


def bloch_sphere_map(p: np.ndarray) -> np.ndarray:
    """Unit Bloch vector of a rank-1 projector, P = (Id + b.sigma)/2.

    The range e1 maps to the north pole (0, 0, 1), e2 to the south pole.
    """
    b = np.array(
        [2.0 * p[1, 0].real, 2.0 * p[1, 0].imag, p[0, 0].real - p[1, 1].real]
    )
    return b / np.linalg.norm(b)


def projector_from_sphere(b) -> np.ndarray:
    """Inverse of ``bloch_sphere_map``."""
    b = np.asarray(b, dtype=float)
    return 0.5 * np.array(
        [
            [1.0 + b[2], b[0] - 1j * b[1]],
            [b[0] + 1j * b[1], 1.0 - b[2]],
        ],
        dtype=complex,
    )


def sphere_trace(loop: LoopSample) -> np.ndarray:
    """Bloch points of the loop's rank-1 projectors, shape (n, 3)."""
    out = np.empty((len(loop.theta), 3))
    for i, v in enumerate(loop.values):
        vn = v / np.linalg.norm(v)
        out[i] = bloch_sphere_map(np.outer(vn, np.conj(vn)))
    return out


@dataclass(frozen=True)
class EquatorReport:
    max_deviation: float
    passes: bool
    tol: float


def equator_check(loop: LoopSample, tol: float = 1e-9) -> EquatorReport:
    """Whether | |psi1| - |psi2| | vanishes along the loop (basis-dependent)."""
    mags = np.abs(loop.values)
    dev = float(np.max(np.abs(mags[:, 0] - mags[:, 1])))
    return EquatorReport(dev, dev < tol, tol)


@dataclass(frozen=True)
class GreatCircleFit:
    normal: np.ndarray
    rms_deviation: float


def great_circle_fit(points: np.ndarray) -> GreatCircleFit:
    """Best great circle through sphere points: plane through the origin
    minimizing sum (normal . p_i)^2, via the smallest principal axis of the
    second-moment matrix."""
    points = np.asarray(points, dtype=float)
    if points.shape[0] < 3:
        raise ValueError("need at least 3 points")
    moment = points.T @ points
    evals, evecs = np.linalg.eigh(moment)
    if evals[1] < 1e-12 * max(evals[2], 1.0):
        raise DegenerateCloud("points span fewer than two dimensions")
    normal = evecs[:, 0]
    idx = int(np.argmax(np.abs(normal)))
    if normal[idx] < 0:
        normal = -normal
    rms = math.sqrt(max(evals[0], 0.0) / points.shape[0])
    return GreatCircleFit(normal, rms)


# ---------------------------------------------------------------------------
# Berry phase (discrete holonomy)
# ---------------------------------------------------------------------------


def _holonomy(values: np.ndarray) -> complex:
    norms = np.linalg.norm(values, axis=1)
    vn = values / norms[:, None]
    # parallel-transport overlaps <v_{j+1} | v_j>, sequential product
    overlaps = np.sum(np.conj(np.roll(vn, -1, axis=0)) * vn, axis=1)
    mags = np.abs(overlaps)
    if np.min(mags) < 1e-12:
        raise ZeroOverlap("consecutive samples orthogonal")
    z = complex(np.prod(overlaps / mags))
    return z / abs(z)


def berry_phase(loop: LoopSample, tol: float = 1e-6) -> complex:
    """Holonomy of the discrete Berry connection around a closed loop.

    Unit-modulus product of parallel-transport overlaps, refined by sample
    doubling until the phase is stable to ``tol``/2.  For loops with
    equal-magnitude components this equals exp(-i*pi*n_w).
    """
    current = loop
    hol = _holonomy(current.values)
    while current.section is not None and len(current.theta) < MAX_LOOP_SAMPLES:
        finer = current.refined()
        hol_fine = _holonomy(finer.values)
        if abs(cmath.phase(hol_fine / hol)) < 0.5 * tol:
            return hol_fine
        current, hol = finer, hol_fine
    return hol


# ---------------------------------------------------------------------------
# Hemispherical classification of a deformed field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HemisphericalReport:
    """Classification of the Bloch-sphere image of a field on the cylinder.

    ``pole_axis`` points toward the hemisphere filled by the mu > 0 half;
    comparing axes between two fields exposes pole swaps.  ``witnesses``
    holds up to 8 offending samples ((k1, k2, mu), axis-component).
    """

    category: str
    pole_axis: np.ndarray
    max_equator_offset: float
    equator_rms: float
    witnesses: tuple


def hemispherical_classify(
    projector_field: ProjectorField,
    radius: float = 0.5,
    mu_max: float = 0.5,
    grid=(64, 8, 4),
    eps_pole: float = 0.1,
    eps_side: float = 1e-9,
) -> HemisphericalReport:
    """Classify a deformed field as hemispherical / weakly so / neither.

    The mu = 0 circle fixes a fitted equator.  Strict hemisphericity demands
    the circle lie exactly on a great circle and every mu != 0 sample sit
    strictly on its own side; the weak variant (reachable by a retraction
    along meridians, which fixes the equator and pushes each open band into
    its hemisphere) relaxes only the circle condition to a tube
    |axis . b| < 1 - eps_pole.  Samples of the wrong sign, or mu != 0 samples
    stuck on the equator, rule both out.
    """
    n_theta, n_mu, n_cap = grid
    c1, c2 = projector_field.singular_point
    thetas = np.arange(n_theta) * (TWO_PI / n_theta)
    mus = np.linspace(-mu_max, mu_max, 2 * n_mu + 1)

    samples = []  # (point, mu, bloch vector)
    for mu in mus:
        for th in thetas:
            k1 = c1 + radius * math.cos(th)
            k2 = c2 + radius * math.sin(th)
            samples.append(((k1, k2, mu), mu, bloch_sphere_map(projector_field(k1, k2, mu))))
    for sign in (+1.0, -1.0):
        mu = sign * mu_max
        samples.append(((c1, c2, mu), mu, bloch_sphere_map(projector_field(c1, c2, mu))))
        for l in range(1, n_cap):
            rho = radius * l / n_cap
            for th in thetas:
                k1 = c1 + rho * math.cos(th)
                k2 = c2 + rho * math.sin(th)
                samples.append(((k1, k2, mu), mu, bloch_sphere_map(projector_field(k1, k2, mu))))

    equator_pts = np.array([b for (_, mu, b) in samples if mu == 0.0])
    fit = great_circle_fit(equator_pts)
    axis = fit.normal
    u_pos = [(pt, float(axis @ b)) for (pt, mu, b) in samples if mu > 0.0]
    u_neg = [(pt, float(axis @ b)) for (pt, mu, b) in samples if mu < 0.0]
    if sum(u for _, u in u_pos) < 0.0:
        axis = -axis
        u_pos = [(pt, -u) for pt, u in u_pos]
        u_neg = [(pt, -u) for pt, u in u_neg]

    max_offset = float(np.max(np.abs(equator_pts @ axis)))
    witnesses = []
    if max_offset >= 1.0 - eps_pole:
        witnesses.append((("mu=0 loop",), max_offset))
    witnesses += [(pt, u) for pt, u in u_pos if u <= eps_side]
    witnesses += [(pt, u) for pt, u in u_neg if u >= -eps_side]

    if witnesses:
        category = "neither"
    elif max_offset < 1e-9:
        category = "hemispherical"
    else:
        category = "weakly_hemispherical"
    return HemisphericalReport(category, axis, max_offset, fit.rms_deviation, tuple(witnesses[:8]))


# ---------------------------------------------------------------------------
# Winding vs. vorticity
# ---------------------------------------------------------------------------

POLE_CONVENTION = (
    "first basis vector = range of the band projector at (k0, mu = -mu_max)"
)


@dataclass(frozen=True)
class PwnVorticityReport:
    n_w: int
    n_v: int
    signed_equal: bool
    abs_equal: bool
    pole_convention: str = POLE_CONVENTION


def pole_basis(projector_field: ProjectorField, mu_max: float) -> np.ndarray:
    """Orthonormal basis columns (v_N, v_S) fixed by the field's own poles.

    v_N spans the range of the projector above the singular point at
    mu = -mu_max; with this ordering the winding of psi2/psi1 matches the
    surface vorticity in sign for the canonical and stack models.
    """
    c1, c2 = projector_field.singular_point
    v_n = _range_vector(projector_field(c1, c2, -mu_max))
    v_s = np.array([-np.conj(v_n[1]), np.conj(v_n[0])])
    return np.column_stack([v_n, v_s])


def pwn_equals_vorticity(
    model,
    radius: float = 0.5,
    mu_max: float = 0.5,
    n_samples: int = 512,
    subdivisions: int = 1,
) -> PwnVorticityReport:
    """Compute the pseudospin winding and the vorticity of one model and
    compare them.

    ``model`` is a CanonicalModelSpec or an integer layer count m (upper
    band).  The winding basis follows ``pole_basis``; the signed equality is
    reported together with the convention, the absolute equality being the
    basis-independent statement.
    """
    if isinstance(model, CanonicalModelSpec):
        projector_field = _vorticity.canonical_field(model)
    else:
        projector_field = _vorticity.multilayer_field(int(model))
    basis = pole_basis(projector_field, mu_max)
    loop = field_loop(projector_field, radius, n_samples, basis=basis)
    n_w = winding_number(loop)
    n_v = compute_vorticity(projector_field, radius=radius, mu_max=mu_max, subdivisions=subdivisions).vorticity
    return PwnVorticityReport(n_w, n_v, n_w == n_v, abs(n_w) == abs(n_v))


def loop_trace_rows(loop: LoopSample):
    """Rows (theta, nx, ny, nz, psi1, psi2) for CSV export."""
    points = sphere_trace(loop)
    rows = []
    for th, b, v in zip(loop.theta, points, loop.values):
        rows.append((float(th), float(b[0]), float(b[1]), float(b[2]), complex(v[0]), complex(v[1])))
    return rows
