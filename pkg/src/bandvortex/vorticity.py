"""Vorticity of projector fields over closed surfaces in (k1, k2, mu)-space.

The central quantity is the first Chern number ch1 of a rank-1 projector
field evaluated on a closed oriented polyhedral surface that encloses the
field's singular point (k0, mu=0); the vorticity is n_v = -ch1.  Two
independent routes are provided: a gauge-invariant plaquette (link-variable)
sum, and adaptive quadrature of analytic curvature components.  A
Kato-Nagy-style intertwining unitary certifies that nearby deformations give
the same integer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field as dataclass_field, replace
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import (
    AmbiguousFlux,
    DeformationTooFar,
    OriginAtZeroMu,
    PreconditionViolated,
    QuadratureNotConverged,
    SingularOnMesh,
)
from .hermitian2 import eig2, op_norm_diff
from .models import (
    CanonicalModelSpec,
    Momentum,
    canonical_projector,
    haldane_dirac_points,
    haldane_hamiltonian,
    monolayer_dirac_points,
    monolayer_fullzone,
    multilayer_hamiltonian,
)

# Guard band around the +/- pi branch cut of a single face flux.
FLUX_GUARD = 0.2


# ---------------------------------------------------------------------------
# Closed oriented meshes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedSurfaceMesh:
    """Closed oriented polyhedral surface: vertices (N, 3) and face index loops.

    Faces are oriented outward; every undirected edge is shared by exactly two
    faces that traverse it in opposite directions.
    """

    vertices: np.ndarray
    faces: tuple

    def edge_count(self) -> int:
        edges = set()
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                edges.add(frozenset((a, b)))
        return len(edges)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - self.edge_count() + len(self.faces)

    def validate(self) -> None:
        directed = {}
        for face in self.faces:
            for a, b in zip(face, face[1:] + face[:1]):
                if a == b:
                    raise ValueError("degenerate edge in face")
                directed[(a, b)] = directed.get((a, b), 0) + 1
        for (a, b), count in directed.items():
            if count != 1 or directed.get((b, a), 0) != 1:
                raise ValueError(f"edge ({a}, {b}) not shared by exactly two opposite faces")
        if self.euler_characteristic() != 2:
            raise ValueError("face complex is not a topological sphere")

    def reversed(self) -> "ClosedSurfaceMesh":
        return ClosedSurfaceMesh(self.vertices, tuple(f[::-1] for f in self.faces))

    def signed_projected_areas(self) -> np.ndarray:
        """Sum of signed face areas projected on the three coordinate planes."""
        totals = np.zeros(3)
        v = self.vertices
        for face in self.faces:
            pts = v[list(face)]
            area = np.zeros(3)
            for i in range(len(pts)):
                area += np.cross(pts[i], pts[(i + 1) % len(pts)])
            totals += 0.5 * area
        return totals


def build_cube_mesh(center, half_widths, subdivisions: int = 1) -> ClosedSurfaceMesh:
    """Axis-aligned cube surface, each side split into subdivisions^2 quads."""
    s = int(subdivisions)
    if s < 1:
        raise ValueError("subdivisions must be >= 1")
    center = np.asarray(center, dtype=float)
    half = np.asarray(half_widths, dtype=float)
    if np.any(half <= 0.0):
        raise ValueError("half widths must be positive")

    index = {}
    coords = []

    def vid(i, j, k):
        key = (i, j, k)
        if key not in index:
            index[key] = len(coords)
            coords.append(
                center + half * (2.0 * np.array([i, j, k]) / s - 1.0)
            )
        return index[key]

    faces = []
    rng = range(s)
    for a in rng:
        for b in rng:
            # +x / -x sides: loop (y, z), outward normal +/- x
            faces.append((vid(s, a, b), vid(s, a + 1, b), vid(s, a + 1, b + 1), vid(s, a, b + 1)))
            faces.append((vid(0, a, b), vid(0, a, b + 1), vid(0, a + 1, b + 1), vid(0, a + 1, b)))
            # +y / -y sides: loop (z, x)
            faces.append((vid(b, s, a), vid(b, s, a + 1), vid(b + 1, s, a + 1), vid(b + 1, s, a)))
            faces.append((vid(b, 0, a), vid(b + 1, 0, a), vid(b + 1, 0, a + 1), vid(b, 0, a + 1)))
            # +z / -z sides: loop (x, y)
            faces.append((vid(a, b, s), vid(a + 1, b, s), vid(a + 1, b + 1, s), vid(a, b + 1, s)))
            faces.append((vid(a, b, 0), vid(a, b + 1, 0), vid(a + 1, b + 1, 0), vid(a + 1, b, 0)))

    mesh = ClosedSurfaceMesh(np.array(coords), tuple(faces))
    mesh.validate()
    return mesh


def build_cylinder_mesh(
    radius: float,
    mu_max: float,
    n_theta: int = 16,
    n_mu: int = 4,
    n_radial_cap: int = 4,
    center=(0.0, 0.0, 0.0),
) -> ClosedSurfaceMesh:
    """Cylinder side wall plus two triangulated caps, outward oriented.

    The cap center vertices sit at (k0, +/- mu_max) where a smoothed field is
    regular; the wall and cap boundary rings share vertices so the surface is
    closed.
    """
    if radius <= 0.0 or mu_max <= 0.0:
        raise ValueError("radius and mu_max must be positive")
    if n_theta < 3 or n_mu < 1 or n_radial_cap < 1:
        raise ValueError("mesh resolutions too small")
    cx, cy, cz = center
    thetas = [2.0 * math.pi * i / n_theta for i in range(n_theta)]
    mus = np.linspace(cz - mu_max, cz + mu_max, n_mu + 1)

    coords = []

    def add(x, y, z):
        coords.append((x, y, z))
        return len(coords) - 1

    wall = {}
    for j, mu in enumerate(mus):
        for i, th in enumerate(thetas):
            wall[(i, j)] = add(cx + radius * math.cos(th), cy + radius * math.sin(th), mu)

    def ring(i):
        return i % n_theta

    faces = []
    for j in range(n_mu):
        for i in range(n_theta):
            faces.append(
                (wall[(i, j)], wall[(ring(i + 1), j)], wall[(ring(i + 1), j + 1)], wall[(i, j + 1)])
            )

    for top in (True, False):
        mu = cz + mu_max if top else cz - mu_max
        boundary_j = n_mu if top else 0
        cap = {n_radial_cap: {i: wall[(i, boundary_j)] for i in range(n_theta)}}
        for l in range(1, n_radial_cap):
            rho = radius * l / n_radial_cap
            cap[l] = {
                i: add(cx + rho * math.cos(th), cy + rho * math.sin(th), mu)
                for i, th in enumerate(thetas)
            }
        center_id = add(cx, cy, mu)
        for i in range(n_theta):
            a, b = cap[1][i], cap[1][ring(i + 1)]
            faces.append((center_id, a, b) if top else (center_id, b, a))
        for l in range(1, n_radial_cap):
            for i in range(n_theta):
                v00, v01 = cap[l][i], cap[l][ring(i + 1)]
                v10, v11 = cap[l + 1][i], cap[l + 1][ring(i + 1)]
                faces.append((v00, v10, v11, v01) if top else (v00, v01, v11, v10))

    mesh = ClosedSurfaceMesh(np.array(coords, dtype=float), tuple(faces))
    mesh.validate()
    return mesh


# ---------------------------------------------------------------------------
# Projector fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectorField:
    """Evaluation contract (k1, k2, mu) -> rank-1 projector, with a declared
    singular point at (k0, mu=0) and a record of which smoothing deformation
    produced it (reported alongside any vorticity result)."""

    func: Callable[[float, float, float], np.ndarray]
    singular_point: tuple = (0.0, 0.0)
    deformation: str = "unspecified"

    def __call__(self, k1: float, k2: float, mu: float) -> np.ndarray:
        return self.func(k1, k2, mu)


def _range_vector(p: np.ndarray) -> np.ndarray:
    # Column of larger diagonal weight spans the range; its norm is sqrt(P_jj).
    col = 0 if p[0, 0].real >= p[1, 1].real else 1
    v = p[:, col]
    norm = np.linalg.norm(v)
    if norm < 1e-8:
        raise ValueError("matrix is not a rank-1 projector")
    return v / norm


ONSITE = "onsite -mu*sigma3 insertion"
OFFDIAG = "off-diagonal +i*mu insertion"


def canonical_field(spec: CanonicalModelSpec, center=(0.0, 0.0)) -> ProjectorField:
    """Smoothed canonical model as a projector field around ``center``."""
    c1, c2 = float(center[0]), float(center[1])

    def func(k1, k2, mu):
        return canonical_projector(spec, Momentum(k1 - c1, k2 - c2), mu)

    return ProjectorField(func, (c1, c2), deformation=OFFDIAG)


def hamiltonian_field(
    h_func: Callable[[np.ndarray], np.ndarray],
    band: int,
    singular_point=(0.0, 0.0),
    deformation: str = ONSITE,
) -> ProjectorField:
    """Eigenprojector field of a deformed Hamiltonian family.

    Antidiagonal tight-binding models are smoothed with an onsite term
    diag(-mu, +mu): the off-diagonal structure factor can pass through i*mu,
    so an off-diagonal insertion would leave eigenvalue crossings at mu != 0,
    while the onsite term removes the crossing for every mu != 0.  The sign is
    fixed so that the m-layer stack model carries vorticity +m in its upper
    band.
    """
    if band not in (+1, -1):
        raise ValueError("band must be +1 or -1")

    def func(k1, k2, mu):
        h = np.array(h_func(np.array([k1, k2])), dtype=complex)
        if deformation == ONSITE:
            h[0, 0] -= mu
            h[1, 1] += mu
        elif deformation == OFFDIAG:
            h[0, 1] += 1j * mu
            h[1, 0] -= 1j * mu
        else:
            raise ValueError(f"unknown deformation {deformation!r}")
        res = eig2(h)
        if res.degenerate:
            raise OriginAtZeroMu(f"degenerate spectrum at ({k1}, {k2}, {mu})")
        v = res.v_plus if band > 0 else res.v_minus
        return np.outer(v, np.conj(v))

    return ProjectorField(func, tuple(float(x) for x in singular_point), deformation)


def multilayer_field(m: int, band: int = +1, center=(0.0, 0.0)) -> ProjectorField:
    c1, c2 = float(center[0]), float(center[1])
    return hamiltonian_field(
        lambda k: multilayer_hamiltonian(m, Momentum(k[0] - c1, k[1] - c2)),
        band,
        singular_point=(c1, c2),
    )


def monolayer_field(band: int = +1, a1=None, a2=None, corner: str = "K") -> ProjectorField:
    k_plus, k_minus = monolayer_dirac_points(a1, a2)
    k0 = k_plus if corner == "K" else k_minus
    return hamiltonian_field(
        lambda k: monolayer_fullzone(k, a1, a2), band, singular_point=tuple(k0)
    )


def haldane_field(params, band: int = +1, corner: str = "K") -> ProjectorField:
    k_plus, k_minus = haldane_dirac_points()
    k0 = k_plus if corner == "K" else k_minus
    return hamiltonian_field(
        lambda k: haldane_hamiltonian(params, k), band, singular_point=tuple(k0)
    )


def conjugate_field(base: ProjectorField, w_func) -> ProjectorField:
    """Pointwise unitary conjugation P -> W P W^dagger of a projector field."""

    def func(k1, k2, mu):
        p = base(k1, k2, mu)
        w = np.asarray(w_func(k1, k2, mu), dtype=complex)
        return w @ p @ np.conj(w.T)

    return ProjectorField(func, base.singular_point, base.deformation + " (conjugated)")


# ---------------------------------------------------------------------------
# Plaquette Chern number
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChernResult:
    """Plaquette Chern number: raw flux sum / 2*pi, rounded integer, residue."""

    raw: float
    integer: int
    residue: float
    refinement_level: int = 0

    @property
    def vorticity(self) -> int:
        return -self.integer


def face_fluxes(projector_field: ProjectorField, mesh: ClosedSurfaceMesh) -> np.ndarray:
    """Per-face flux -arg prod <v_{i+1}|v_i> in (-pi, pi], one entry per face.

    The links are parallel-transport overlaps taken in the traversal
    direction of the (outward-oriented) face, the same convention as the loop
    holonomy in :func:`bandvortex.pseudospin.berry_phase`; summed over a
    closed surface the fluxes reproduce the closed-form curvature integrals
    of :func:`bandvortex.models.analytic_curvature`.  Eigenvectors are used
    in whatever gauge the field evaluation produced; per-vertex phase changes
    cancel exactly inside each face product, so the fluxes are manifestly
    gauge-invariant.
    """
    vecs = []
    for k1, k2, mu in mesh.vertices:
        try:
            p = projector_field(k1, k2, mu)
        except OriginAtZeroMu as exc:
            raise SingularOnMesh((k1, k2, mu)) from exc
        vecs.append(_range_vector(p))

    fluxes = np.empty(len(mesh.faces))
    for fi, face in enumerate(mesh.faces):
        z = 1.0 + 0.0j
        for a, b in zip(face, face[1:] + face[:1]):
            link = complex(np.vdot(vecs[b], vecs[a]))
            mag = abs(link)
            if mag < 1e-12:
                raise AmbiguousFlux(fi, math.pi, "orthogonal link: mesh far too coarse")
            z *= link / mag
        flux = -cmath.phase(z)
        if flux <= -math.pi:
            flux = math.pi
        if abs(flux) > math.pi - FLUX_GUARD:
            raise AmbiguousFlux(fi, flux)
        fluxes[fi] = flux
    return fluxes


def plaquette_chern(projector_field: ProjectorField, mesh: ClosedSurfaceMesh) -> ChernResult:
    """Chern number of a projector field over a closed mesh by link variables.

    The sum of face fluxes over a closed surface is an exact multiple of
    2*pi up to floating rounding, so ``residue`` measures only roundoff unless
    some face flux silently wrapped (which the per-face guard band rejects).
    The eigenspace vorticity is ``-integer`` (the ``vorticity`` property).
    """
    fluxes = face_fluxes(projector_field, mesh)
    raw = float(np.sum(fluxes) / (2.0 * math.pi))
    integer = int(round(raw))
    return ChernResult(raw, integer, abs(raw - integer))


def compute_vorticity(
    projector_field: ProjectorField,
    radius: float = 0.5,
    mu_max: float = 0.5,
    subdivisions: int = 1,
    max_levels: int = 6,
) -> ChernResult:
    """Plaquette Chern number on the default cube, with automatic refinement.

    The cube has half-widths (radius/2, radius/2, mu_max/2) centered at the
    declared singular point.  The result at each level must reproduce its
    integer on the once-subdivided mesh before being accepted: a wrapped face
    flux can land anywhere inside the guard band (a face carrying flux
    -5*pi/3 reads as +pi/3), so the guard alone cannot rule out silently lost
    2*pi multiples on coarse meshes.  Refinement halves every face flux, so a
    wrap can never survive one confirmation round.  On an AmbiguousFlux
    rejection or an integer mismatch the subdivision count doubles, up to
    ``max_levels`` retries.
    """
    center = (*projector_field.singular_point, 0.0)
    half = (0.5 * radius, 0.5 * radius, 0.5 * mu_max)
    s = subdivisions
    failure = None
    previous = None
    for level in range(max_levels + 1):
        try:
            result = plaquette_chern(projector_field, build_cube_mesh(center, half, s))
        except AmbiguousFlux as exc:
            failure = exc
            previous = None
            s *= 2
            continue
        if previous is not None and previous.integer == result.integer:
            return replace(previous, refinement_level=level - 1)
        previous = result
        failure = AmbiguousFlux(-1, math.pi, "refinement cap hit before integer stabilized")
        s *= 2
    raise failure


def export_mesh_record(projector_field: ProjectorField, mesh: ClosedSurfaceMesh) -> dict:
    """JSON-ready record of the mesh and its per-face fluxes."""
    fluxes = face_fluxes(projector_field, mesh)
    return {
        "vertices": [list(map(float, v)) for v in mesh.vertices],
        "faces": [list(map(int, f)) for f in mesh.faces],
        "face_flux": [float(f) for f in fluxes],
    }


# ---------------------------------------------------------------------------
# Quadrature of analytic curvature
# ---------------------------------------------------------------------------


def curvature_chern_quadrature(
    curvature, radius: float, mu_max: float, tol: float = 1e-8
) -> float:
    """(1/2*pi) * integral of an analytic curvature 2-form over the cylinder.

    ``curvature`` maps (r, theta, mu) to the components (c_rtheta, c_thetamu)
    of the form c_rtheta dr^dtheta + c_thetamu dtheta^dmu.  The wall at
    r = radius picks up the dtheta^dmu component, the caps at mu = +/- mu_max
    the dr^dtheta one, with the outward orientation (bottom cap negated).
    """
    inner_opts = dict(epsabs=1e-12, epsrel=1e-11, limit=200)
    outer_opts = dict(epsabs=tol / 6.0, epsrel=1e-10, limit=200)

    def wall_inner(theta):
        val, _ = integrate.quad(lambda mu: curvature(radius, theta, mu)[1], -mu_max, mu_max, **inner_opts)
        return val

    def cap_inner(theta, mu):
        val, _ = integrate.quad(lambda r: curvature(r, theta, mu)[0], 0.0, radius, **inner_opts)
        return val

    wall, err_wall = integrate.quad(wall_inner, 0.0, 2.0 * math.pi, **outer_opts)
    top, err_top = integrate.quad(lambda th: cap_inner(th, +mu_max), 0.0, 2.0 * math.pi, **outer_opts)
    bottom, err_bottom = integrate.quad(lambda th: cap_inner(th, -mu_max), 0.0, 2.0 * math.pi, **outer_opts)

    err_total = err_wall + err_top + err_bottom + 1e-10
    if err_total > tol:
        raise QuadratureNotConverged(f"error estimate {err_total:.3e} exceeds tol {tol:.3e}")
    return (wall + top - bottom) / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# Kato-Nagy intertwining unitary
# ---------------------------------------------------------------------------


def kato_nagy_unitary(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Unitary W with W P W^{-1} = Q, defined whenever ||P - Q|| < 1.

    W = (1 - (P - Q)^2)^{-1/2} (Q P + (1 - Q)(1 - P)); the inverse square
    root is evaluated exactly through the closed-form 2x2 eigendecomposition
    of (P - Q)^2 (see ``series_inverse_sqrt`` for the power-series cross-check).
    """
    dist = op_norm_diff(p, q)
    if dist >= 1.0 - 1e-9:
        raise DeformationTooFar(f"projector distance {dist:.9f} >= 1")
    eye = np.eye(2, dtype=complex)
    d = p - q
    m = d @ d
    res = eig2(m)
    if res.degenerate:
        g = eye / math.sqrt(1.0 - res.e_plus)
    else:
        g = np.outer(res.v_minus, np.conj(res.v_minus)) / math.sqrt(1.0 - res.e_minus)
        g = g + np.outer(res.v_plus, np.conj(res.v_plus)) / math.sqrt(1.0 - res.e_plus)
    return g @ (q @ p + (eye - q) @ (eye - p))


def series_inverse_sqrt(m: np.ndarray, tol: float = 1e-15, max_terms: int = 2000) -> np.ndarray:
    """(1 - M)^{-1/2} by its binomial power series; requires ||M|| < 1.

    Retained as an independent cross-check of the closed form used inside
    ``kato_nagy_unitary``.
    """
    eye = np.eye(m.shape[0], dtype=complex)
    total = eye.copy()
    term = eye.copy()
    coeff = 1.0
    for n in range(max_terms):
        coeff *= (2 * n + 1) / (2 * n + 2)
        term = term @ m
        increment = coeff * term
        total += increment
        if np.max(np.abs(increment)) < tol:
            return total
    raise DeformationTooFar("power series did not converge; ||M|| too close to 1")


# ---------------------------------------------------------------------------
# Deformation independence and model matching
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeformationReport:
    chern_a: int
    chern_b: int
    equal: bool
    max_distance: float
    worst_vertex: tuple


def deformation_equivalence(
    field_a: ProjectorField, field_b: ProjectorField, mesh: ClosedSurfaceMesh
) -> DeformationReport:
    """Compare two smoothings of the same family over one mesh.

    Raises PreconditionViolated (with the offending vertex) if the fields are
    at operator distance >= 1 anywhere on the mesh; otherwise both plaquette
    Chern integers are computed and must agree.
    """
    max_distance = -1.0
    worst = None
    for k1, k2, mu in mesh.vertices:
        dist = op_norm_diff(field_a(k1, k2, mu), field_b(k1, k2, mu))
        if dist > max_distance:
            max_distance = dist
            worst = (k1, k2, mu)
        if dist >= 1.0 - 1e-12:
            raise PreconditionViolated((k1, k2, mu), dist)
    chern_a = plaquette_chern(field_a, mesh).integer
    chern_b = plaquette_chern(field_b, mesh).integer
    return DeformationReport(chern_a, chern_b, chern_a == chern_b, max_distance, worst)


def chern_equality_check(
    field_a: ProjectorField, field_b: ProjectorField, mesh: ClosedSurfaceMesh
) -> bool:
    """True iff the two fields carry the same plaquette Chern integer."""
    return plaquette_chern(field_a, mesh).integer == plaquette_chern(field_b, mesh).integer


# ---------------------------------------------------------------------------
# Randomized smooth-conjugation sweep
# ---------------------------------------------------------------------------

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def random_unitary_field(rng: np.random.Generator, max_angle: float = 2.0):
    """Smooth random SU(2)-valued field with rotation angle <= max_angle.

    Conjugating a projector by it moves the projector by at most
    sin(max_angle/2) in operator norm.
    """
    base_axis = rng.normal(size=3)
    base_axis /= np.linalg.norm(base_axis)
    freq = rng.uniform(-1.5, 1.5, size=(4, 3))
    phases = rng.uniform(0.0, 2.0 * math.pi, size=4)
    wobble = 0.3 * rng.normal(size=(3, 3))

    def w_func(k1, k2, mu):
        point = np.array([k1, k2, mu])
        angle = max_angle * (0.3 + 0.55 * math.sin(float(freq[0] @ point) + phases[0]) ** 2)
        axis = base_axis + np.array(
            [
                wobble[i] @ np.sin(freq[i + 1] * point + phases[i + 1])
                for i in range(3)
            ]
        )
        axis /= np.linalg.norm(axis)
        half = 0.5 * angle
        gen = axis[0] * _PAULI[0] + axis[1] * _PAULI[1] + axis[2] * _PAULI[2]
        return math.cos(half) * np.eye(2, dtype=complex) - 1j * math.sin(half) * gen

    return w_func


@dataclass(frozen=True)
class GaugeSweepReport:
    trials: int
    base_chern: int
    all_equal: bool
    max_distance: float
    max_residual: float


def gauge_conjugation_sweep(
    projector_field: ProjectorField,
    mesh: ClosedSurfaceMesh,
    trials: int = 100,
    seed: int = 0,
    max_angle: float = 2.0,
) -> GaugeSweepReport:
    """Conjugate the field by random smooth unitaries and recheck the integer.

    Every trial stays within operator distance sin(max_angle/2) < 1 of the
    original field, so the Chern integer must be unchanged and the
    intertwining unitary must exist at every vertex; the worst intertwining
    residual ||W P W^dagger - P~|| over all trials and vertices is reported.
    """
    rng = np.random.default_rng(seed)
    base = plaquette_chern(projector_field, mesh)
    all_equal = True
    max_distance = 0.0
    max_residual = 0.0
    for _ in range(trials):
        w_func = random_unitary_field(rng, max_angle)
        conj = conjugate_field(projector_field, w_func)
        for k1, k2, mu in mesh.vertices:
            p = projector_field(k1, k2, mu)
            p_tilde = conj(k1, k2, mu)
            max_distance = max(max_distance, op_norm_diff(p, p_tilde))
            w = kato_nagy_unitary(p, p_tilde)
            residual = op_norm_diff(w @ p @ np.conj(w.T), p_tilde)
            max_residual = max(max_residual, residual)
        if plaquette_chern(conj, mesh).integer != base.integer:
            all_equal = False
    return GaugeSweepReport(trials, base.integer, all_equal, max_distance, max_residual)
