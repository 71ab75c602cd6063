"""Model Hamiltonian families for 2D band crossings.

Covers the canonical |q|^m crossing models with integer winding n and their
mu-smoothed (avoided-crossing) versions, antidiagonal m-layer stack models,
the full-zone nearest-neighbor honeycomb model, and the Haldane model.  All
Hamiltonians are 2x2 complex Hermitian matrices; closed-form eigenvectors,
eigenprojectors and Berry-curvature components are provided for the canonical
family.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLattice, OriginAtZeroMu

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Momentum:
    """Momentum offset q = k - k0 from the crossing point.

    Polar form: q1 + i*q2 = r * exp(i*theta) with theta in [0, 2*pi).  At the
    origin, theta is defined as 0 and ``is_origin`` is set; callers that
    cannot handle the crossing point must honor that flag.
    """

    q1: float
    q2: float

    @property
    def r(self) -> float:
        return math.hypot(self.q1, self.q2)

    @property
    def theta(self) -> float:
        if self.is_origin:
            return 0.0
        return math.atan2(self.q2, self.q1) % TWO_PI

    @property
    def is_origin(self) -> bool:
        return self.q1 == 0.0 and self.q2 == 0.0

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "Momentum":
        return cls(r * math.cos(theta), r * math.sin(theta))


@dataclass(frozen=True)
class CanonicalModelSpec:
    """Canonical crossing model: winding n, band sign, dispersion e(q) = |q|^m."""

    n: int
    band: int = +1
    m: int = 1

    def __post_init__(self):
        if self.band not in (+1, -1):
            raise ValueError("band must be +1 or -1")
        if self.m < 1:
            raise ValueError("dispersion exponent m must be a positive integer")


def dispersion(spec: CanonicalModelSpec, r: float) -> float:
    """e(q) = |q|^m; vanishes only at the crossing point."""
    return r**spec.m


def mixing_alpha(e: float, mu: float) -> float:
    """Band-mixing coefficient of the smoothed eigenvectors.

    Equal to (1 - sqrt(1 + eta^2))/eta with eta = mu/e, evaluated in the
    cancellation-free form -mu/(e + sqrt(e^2 + mu^2)).  Limits: 0 as mu -> 0,
    -sign(mu) as e -> 0; always |alpha| <= 1.
    """
    if mu == 0.0:
        return 0.0
    return -mu / (e + math.hypot(e, mu))


def canonical_hamiltonian(spec: CanonicalModelSpec, q: Momentum, mu: float = 0.0) -> np.ndarray:
    """Smoothed canonical Hamiltonian.

    e(q) * [[cos n*theta, sin n*theta + i*eta], [sin n*theta - i*eta, -cos n*theta]]
    with eta = mu/e(q), assembled as [[e*cos, e*sin + i*mu], ...] so the matrix
    stays finite at q = 0 (zero matrix there when mu = 0; callers detect that
    via ``q.is_origin``).
    """
    e = dispersion(spec, q.r)
    ang = spec.n * q.theta
    diag = e * math.cos(ang)
    off = e * math.sin(ang)
    return np.array(
        [[diag, off + 1j * mu], [off - 1j * mu, -diag]], dtype=complex
    )


def canonical_eigvec(spec: CanonicalModelSpec, q: Momentum, mu: float = 0.0) -> np.ndarray:
    """Closed-form eigenvector of the smoothed canonical Hamiltonian.

    Built from the undeformed pair
        phi_plus  = e^{i n theta/2} (cos(n theta/2), sin(n theta/2)),
        phi_minus = e^{i n theta/2} (-sin(n theta/2), cos(n theta/2)),
    mixed as (phi_band + i*alpha*phi_other)/sqrt(1 + alpha^2).  The half-angle
    phase makes the vectors single-valued under theta -> theta + 2*pi.
    """
    e = dispersion(spec, q.r)
    big_e = math.hypot(e, mu)
    if big_e == 0.0:
        raise OriginAtZeroMu("eigenvector undefined at the crossing point with mu = 0")
    half = 0.5 * spec.n * q.theta
    ph = cmath.exp(1j * half)
    phi_plus = ph * np.array([math.cos(half), math.sin(half)], dtype=complex)
    phi_minus = ph * np.array([-math.sin(half), math.cos(half)], dtype=complex)
    alpha = mixing_alpha(e, mu)
    scale = 1.0 / math.sqrt(1.0 + alpha * alpha)
    if spec.band > 0:
        return scale * (phi_plus + 1j * alpha * phi_minus)
    return scale * (phi_minus + 1j * alpha * phi_plus)


def canonical_projector(spec: CanonicalModelSpec, q: Momentum, mu: float = 0.0) -> np.ndarray:
    """Closed-form eigenprojector of the smoothed canonical Hamiltonian.

    band/(2E) * [[e*cos + band*E, e*sin + i*mu], [e*sin - i*mu, -e*cos + band*E]]
    with E = sqrt(e^2 + mu^2); regular everywhere except (q=0, mu=0).
    """
    e = dispersion(spec, q.r)
    big_e = math.hypot(e, mu)
    if big_e == 0.0:
        raise OriginAtZeroMu("projector undefined at the crossing point with mu = 0")
    s = float(spec.band)
    ang = spec.n * q.theta
    diag = e * math.cos(ang)
    off = e * math.sin(ang)
    f = s / (2.0 * big_e)
    return np.array(
        [
            [f * (diag + s * big_e), f * (off + 1j * mu)],
            [f * (off - 1j * mu), f * (-diag + s * big_e)],
        ],
        dtype=complex,
    )


def analytic_curvature(spec: CanonicalModelSpec, q: Momentum, mu: float = 0.0):
    """Berry-curvature components of the smoothed canonical band.

    In coordinates (|q|, theta, mu) the curvature two-form is
        c_rtheta * d|q| ^ dtheta + c_thetamu * dtheta ^ dmu,
    with c_rtheta = band*(n/2) * d/d|q| (mu/E) and
    c_thetamu = -band*(n/2) * d/dmu (mu/E), E = sqrt(e^2 + mu^2), both in
    closed form.  Returns (c_rtheta, c_thetamu).
    """
    r = q.r
    e = r**spec.m
    big_e = math.hypot(e, mu)
    if big_e == 0.0:
        raise OriginAtZeroMu("curvature undefined at the crossing point with mu = 0")
    e_prime = spec.m * r ** (spec.m - 1)
    cube = big_e**3
    half_n = 0.5 * spec.n * spec.band
    c_rtheta = half_n * (-mu * e * e_prime / cube)
    c_thetamu = -half_n * (e * e / cube)
    return c_rtheta, c_thetamu


def canonical_curvature(spec: CanonicalModelSpec):
    """Curvature components as a callable (r, theta, mu) -> (c_rtheta, c_thetamu)."""

    def components(r: float, theta: float, mu: float):
        return analytic_curvature(spec, Momentum.from_polar(r, theta), mu)

    return components


# ---------------------------------------------------------------------------
# Antidiagonal stack models and the full-zone honeycomb model
# ---------------------------------------------------------------------------


def multilayer_hamiltonian(m: int, q: Momentum) -> np.ndarray:
    """|q|^m [[0, e^{-i m theta}], [e^{i m theta}, 0]]; zero matrix at q = 0."""
    if m < 1:
        raise ValueError("layer count m must be a positive integer")
    if q.is_origin:
        return np.zeros((2, 2), dtype=complex)
    z = q.r**m * cmath.exp(1j * m * q.theta)
    return np.array([[0.0, np.conj(z)], [z, 0.0]], dtype=complex)


def multilayer_section(m: int, s: int, q: Momentum) -> np.ndarray:
    """Eigenvector section (1, s e^{i m theta})/sqrt(2) of the stack model."""
    if q.is_origin:
        raise OriginAtZeroMu("section undefined at the crossing point")
    if s not in (+1, -1):
        raise ValueError("band sign s must be +1 or -1")
    return np.array([1.0, s * cmath.exp(1j * m * q.theta)], dtype=complex) / math.sqrt(2.0)


def default_lattice():
    """Bravais basis (sqrt(3), 0), (sqrt(3)/2, 3/2) in units of the bond length."""
    a1 = np.array([math.sqrt(3.0), 0.0])
    a2 = np.array([0.5 * math.sqrt(3.0), 1.5])
    return a1, a2


def monolayer_gamma(k, a1=None, a2=None) -> complex:
    """Structure factor gamma_k = 1 + e^{i k.a2} + e^{i k.(a2-a1)}."""
    if a1 is None or a2 is None:
        a1, a2 = default_lattice()
    k = np.asarray(k, dtype=float)
    return 1.0 + cmath.exp(1j * float(k @ a2)) + cmath.exp(1j * float(k @ (a2 - a1)))


def monolayer_fullzone(k, a1=None, a2=None) -> np.ndarray:
    """Full-zone nearest-neighbor honeycomb Hamiltonian [[0, conj g], [g, 0]]."""
    if a1 is None or a2 is None:
        a1, a2 = default_lattice()
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    if abs(a1[0] * a2[1] - a1[1] * a2[0]) < 1e-12:
        raise DegenerateLattice("lattice vectors are linearly dependent")
    g = monolayer_gamma(k, a1, a2)
    return np.array([[0.0, np.conj(g)], [g, 0.0]], dtype=complex)


def monolayer_dirac_points(a1=None, a2=None):
    """The two inequivalent zeros of gamma_k, solved from k.a1, k.a2 = 2*pi/3 pairs."""
    if a1 is None or a2 is None:
        a1, a2 = default_lattice()
    basis = np.array([a1, a2], dtype=float)
    k_plus = np.linalg.solve(basis, np.array([4.0 * math.pi / 3.0, 2.0 * math.pi / 3.0]))
    k_minus = np.linalg.solve(basis, np.array([2.0 * math.pi / 3.0, 4.0 * math.pi / 3.0]))
    return k_plus, k_minus


# ---------------------------------------------------------------------------
# Haldane model
# ---------------------------------------------------------------------------

# Nearest-neighbor vectors (bond length 1) and the next-nearest set built
# from their differences; consistent with ``default_lattice``.
_HALDANE_NN = np.array(
    [[0.0, 1.0], [-0.5 * math.sqrt(3.0), -0.5], [0.5 * math.sqrt(3.0), -0.5]]
)
_HALDANE_NNN = np.array(
    [
        _HALDANE_NN[1] - _HALDANE_NN[2],
        _HALDANE_NN[2] - _HALDANE_NN[0],
        _HALDANE_NN[0] - _HALDANE_NN[1],
    ]
)


@dataclass(frozen=True)
class HaldaneParams:
    """Haldane model parameters: hoppings t1, t2, flux phi, onsite mass M."""

    t1: float
    t2: float
    phi: float
    M: float


def haldane_critical_mass(t2: float, phi: float) -> float:
    """Mass at which the gap closes at one honeycomb corner: 3*sqrt(3)*t2*sin(phi)."""
    return 3.0 * math.sqrt(3.0) * t2 * math.sin(phi)


def haldane_hamiltonian(p: HaldaneParams, k) -> np.ndarray:
    """2x2 Bloch Hamiltonian of the Haldane model.

    H(k) = 2 t2 cos(phi) sum_i cos(k.b_i) * Id
         + t1 sum_i [cos(k.a_i) sigma_1 + sin(k.a_i) sigma_2]
         + [M - 2 t2 sin(phi) sum_i sin(k.b_i)] sigma_3,
    with a_i the nearest-neighbor and b_i the next-nearest-neighbor vectors.
    """
    k = np.asarray(k, dtype=float)
    nn_phases = _HALDANE_NN @ k
    nnn_phases = _HALDANE_NNN @ k
    d0 = 2.0 * p.t2 * math.cos(p.phi) * float(np.sum(np.cos(nnn_phases)))
    f = p.t1 * complex(np.sum(np.exp(1j * nn_phases)))
    d3 = p.M - 2.0 * p.t2 * math.sin(p.phi) * float(np.sum(np.sin(nnn_phases)))
    return np.array(
        [[d0 + d3, np.conj(f)], [f, d0 - d3]], dtype=complex
    )


def haldane_dirac_points():
    """Honeycomb corners where the nearest-neighbor sum vanishes."""
    kx = 4.0 * math.pi / (3.0 * math.sqrt(3.0))
    return np.array([kx, 0.0]), np.array([-kx, 0.0])


def haldane_gap(p: HaldaneParams, k) -> float:
    """Direct band gap 2*|d(k)| (the identity part does not contribute)."""
    h = haldane_hamiltonian(p, k)
    d3 = 0.5 * (h[0, 0].real - h[1, 1].real)
    return 2.0 * math.hypot(abs(h[1, 0]), d3)


def haldane_min_gap(p: HaldaneParams, k_start, span: float = 0.5, levels: int = 18, grid: int = 9):
    """Minimal gap near ``k_start`` by nested local grid refinement.

    Each level scans a grid x grid window and shrinks the window around the
    current minimizer by 4x.  Returns (gap, k_min).
    """
    center = np.asarray(k_start, dtype=float)
    best_gap = haldane_gap(p, center)
    best_k = center.copy()
    width = span
    for _ in range(levels):
        offs = np.linspace(-width, width, grid)
        for dx in offs:
            for dy in offs:
                k = best_k + np.array([dx, dy])
                gap = haldane_gap(p, k)
                if gap < best_gap:
                    best_gap = gap
                    k = k.copy()
                    best_k = k
        width /= 4.0
    return best_gap, best_k


def haldane_gap_report(p: HaldaneParams):
    """Minimal gap around each of the two honeycomb corners.

    The sign pairing between M = +/- 3*sqrt(3)*t2*sin(phi) and the two corners
    is reported rather than assumed: both minima are returned.
    """
    k_plus, k_minus = haldane_dirac_points()
    gap_plus, loc_plus = haldane_min_gap(p, k_plus)
    gap_minus, loc_minus = haldane_min_gap(p, k_minus)
    return {
        "K": {"gap": gap_plus, "k": loc_plus},
        "K_prime": {"gap": gap_minus, "k": loc_minus},
    }
