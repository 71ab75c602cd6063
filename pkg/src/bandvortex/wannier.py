"""Radial cutoff construction, Bessel machinery, and Wannier decay profiles.

The localized-state coefficient profiles around a crossing of winding n
reduce to combinations of the oscillatory radial integrals

    I(ell, p; x) = 2*pi * int_0^r dq q^{p+1} chi(q) J_ell(2*pi*q*x),

with chi a polynomial smoothed cutoff.  This module evaluates those integrals
with per-oscillation Gauss panels, provides the exact large-x prefactors from
Gamma-function ratios, and fits power-law decay exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import (
    IllConditioned,
    OrderTooLarge,
    QuadratureNotConverged,
    SignChangeInWindow,
)

MAX_BESSEL_ORDER = 64
TWO_PI = 2.0 * math.pi

_GAUSS = {n: np.polynomial.legendre.leggauss(n) for n in (12, 24)}


# ---------------------------------------------------------------------------
# Smoothed radial cutoff
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadialCutoff:
    """Radial cutoff: 1 on [0, rho], polynomial on (rho, r), 0 beyond r.

    ``coeffs`` are the monomial coefficients of the transition polynomial in
    q; the polynomial has degree 2p+1 and matches value and p derivatives on
    both ends (class C^p).
    """

    rho: float
    r: float
    p: int
    coeffs: tuple

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        poly = np.polynomial.polynomial.polyval(q, np.array(self.coeffs))
        out = np.where(q <= self.rho, 1.0, np.where(q >= self.r, 0.0, poly))
        return float(out) if out.ndim == 0 else out


def build_cutoff(rho: float, r: float, p: int) -> RadialCutoff:
    """Solve the two-point Hermite conditions for the minimal-degree cutoff.

    The unique degree-(2p+1) polynomial with value 1 and p vanishing
    derivatives at rho, value 0 and p vanishing derivatives at r, is
    1 - B(t)/B(1) with B(t) = int_0^t s^p (1-s)^p ds and t = (q-rho)/(r-rho).
    The expansion to monomials in q is carried out in exact rational
    arithmetic; the returned float coefficients are then checked against all
    2(p+1) boundary conditions.
    """
    if not (0.0 < rho < r):
        raise ValueError("need 0 < rho < r")
    if not (1 <= p <= 8):
        raise ValueError("smoothness class p must be in 1..8")

    rho_f = Fraction(rho)
    width = Fraction(r) - rho_f
    b_total = sum(
        Fraction(math.comb(p, k) * (-1) ** k, p + k + 1) for k in range(p + 1)
    )
    n_deg = 2 * p + 1
    coeffs = [Fraction(0)] * (n_deg + 1)
    coeffs[0] = Fraction(1)
    for k in range(p + 1):
        c_t = Fraction(math.comb(p, k) * (-1) ** k, p + k + 1) / b_total
        m = p + k + 1
        # expand c_t * ((q - rho)/width)^m into monomials of q
        for i in range(m + 1):
            coeffs[i] -= c_t * math.comb(m, i) * (-rho_f) ** (m - i) / width**m

    cutoff = RadialCutoff(float(rho), float(r), p, tuple(float(c) for c in coeffs))

    poly = np.array(cutoff.coeffs)
    residual = max(
        abs(np.polynomial.polynomial.polyval(rho, poly) - 1.0),
        abs(np.polynomial.polynomial.polyval(r, poly)),
    )
    der = poly
    for _ in range(p):
        der = np.polynomial.polynomial.polyder(der)
        residual = max(
            residual,
            abs(np.polynomial.polynomial.polyval(rho, der)),
            abs(np.polynomial.polynomial.polyval(r, der)),
        )
    if residual > 1e-7:
        raise IllConditioned(f"boundary-condition residual {residual:.3e}")
    return cutoff


# ---------------------------------------------------------------------------
# Bessel functions of integer order
# ---------------------------------------------------------------------------


def _series_terms_float(ell: int, z: float):
    half = 0.5 * z
    term = half**ell / math.factorial(ell)
    total = term
    max_term = abs(term)
    hh = half * half
    k = 0
    while True:
        term *= -hh / ((k + 1.0) * (k + ell + 1.0))
        total += term
        max_term = max(max_term, abs(term))
        k += 1
        if abs(term) < 1e-17 * (1.0 + abs(total)) and k > half:
            return total, max_term


def _series_mpmath(ell: int, z: float, max_term: float) -> float:
    import mpmath as mp

    dps = 30 + int(math.log10(max(max_term, 1.0)))
    with mp.workdps(dps):
        half = mp.mpf(z) / 2
        term = half**ell / mp.factorial(ell)
        total = term
        hh = half * half
        k = 0
        while True:
            term *= -hh / ((k + 1) * (k + ell + 1))
            total += term
            k += 1
            if abs(term) < mp.mpf(10) ** (-dps) * (1 + abs(total)) and k > z / 2:
                return float(total)


def _series(ell: int, z: float) -> float:
    total, max_term = _series_terms_float(ell, z)
    if max_term > 1e3:
        # float64 would lose the leading digits to cancellation; redo the
        # same ascending series in adaptive precision.
        return _series_mpmath(ell, z, max_term)
    return total


def _asymptotic_coefficients(ell: int, zmin: float):
    """Truncated coefficient list a_k of the large-argument expansion and the
    magnitude of the first omitted term at zmin (the error scale)."""
    mu4 = 4.0 * ell * ell
    coeffs = []
    a = 1.0
    prev_mag = math.inf
    k = 1
    while k <= 40:
        a = a * (mu4 - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        mag = abs(a) / zmin**k
        if mag >= prev_mag:
            break
        coeffs.append(a)
        prev_mag = mag
        if mag < 1e-18:
            break
        k += 1
    err = prev_mag if prev_mag != math.inf else 1.0
    return coeffs, err


def _asymptotic(ell: int, z):
    """Large-argument evaluation with phase theta = z - ell*pi/2 + pi/4.

    Returns (values, error_estimate); works elementwise on arrays.
    """
    z = np.asarray(z, dtype=float)
    zmin = float(np.min(z))
    coeffs, err = _asymptotic_coefficients(ell, zmin)
    p_sum = np.ones_like(z)
    q_sum = np.zeros_like(z)
    zpow = np.ones_like(z)
    for k, a in enumerate(coeffs, start=1):
        zpow = zpow / z
        if k % 2 == 0:
            p_sum += (-1) ** (k // 2) * a * zpow
        else:
            q_sum += (-1) ** ((k - 1) // 2) * a * zpow
    theta = z - ell * (0.5 * math.pi) + 0.25 * math.pi
    vals = np.sqrt(2.0 / (math.pi * z)) * (p_sum * np.sin(theta) + q_sum * np.cos(theta))
    return vals, err * math.sqrt(2.0 / (math.pi * zmin))


def bessel_j(ell: int, z: float) -> float:
    """Bessel function J_ell(z) for integer order 0 <= ell <= 64, z >= 0.

    Ascending series up to z = max(12, 2*ell), the standard large-argument
    expansion beyond; absolute accuracy better than 1e-10 for z <= 1e4.  If
    the large-argument expansion cannot certify that accuracy (possible just
    past the switchover for large orders) the series takes over.
    """
    ell = int(ell)
    if ell < 0:
        raise ValueError("order must be non-negative (callers reflect J_{-l} = (-1)^l J_l)")
    if ell > MAX_BESSEL_ORDER:
        raise OrderTooLarge(f"order {ell} > {MAX_BESSEL_ORDER}")
    if z < 0.0:
        raise ValueError("argument must be non-negative")
    if z == 0.0:
        return 1.0 if ell == 0 else 0.0
    if z <= max(12.0, 2.0 * ell):
        return _series(ell, z)
    val, err = _asymptotic(ell, z)
    if err > 1e-11:
        return _series(ell, z)
    return float(val)


def bessel_j_many(ell: int, z: np.ndarray) -> np.ndarray:
    """Vectorized J_ell over an array of arguments (same branch rules)."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    cut = max(12.0, 2.0 * ell)
    mask = z > cut
    if np.any(mask):
        vals, err = _asymptotic(ell, z[mask])
        if err > 1e-11:
            out[mask] = [_series(ell, zz) for zz in z[mask]]
        else:
            out[mask] = vals
    if np.any(~mask):
        out[~mask] = [bessel_j(ell, zz) for zz in z[~mask]]
    return out


# ---------------------------------------------------------------------------
# Oscillatory radial integrals
# ---------------------------------------------------------------------------


def _panel_edges(cutoff: RadialCutoff, x_abs: float, splits: int) -> np.ndarray:
    """Panel boundaries in q: cutoff breakpoints plus one edge per Bessel
    half-oscillation (z = k*pi), optionally split ``splits`` times."""
    edges = {0.0, cutoff.rho, cutoff.r}
    step = math.pi / (TWO_PI * x_abs)
    k = 1
    while k * step < cutoff.r:
        edges.add(k * step)
        k += 1
    pts = sorted(edges)
    pts = [pts[0]] + [b for a, b in zip(pts, pts[1:]) if b - a > 1e-15]
    arr = np.array(pts)
    for _ in range(splits):
        mids = 0.5 * (arr[:-1] + arr[1:])
        arr = np.sort(np.concatenate([arr, mids]))
    return arr


def _panel_quadrature(ell: int, p: int, cutoff: RadialCutoff, x_abs: float,
                      edges: np.ndarray, order: int) -> float:
    nodes, weights = _GAUSS[order]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        q = 0.5 * (a + b) + half * nodes
        vals = q ** (p + 1) * cutoff(q) * bessel_j_many(ell, TWO_PI * x_abs * q)
        total += half * float(weights @ vals)
    return total


def radial_integral(ell: int, p: int, cutoff: RadialCutoff, x_abs: float) -> float:
    """I(ell, p; x) = 2*pi * int_0^r q^{p+1} chi(q) J_ell(2*pi*q*x) dq.

    Gauss-Legendre panels aligned with the cutoff breakpoints and the Bessel
    half-oscillations (24 nodes per oscillation at the certification order);
    the 12- vs 24-node comparison provides the convergence certificate at
    relative error 1e-8.  Negative orders are reflected through
    J_{-l} = (-1)^l J_l.
    """
    if x_abs <= 0.0:
        raise ValueError("x_abs must be positive")
    reflect = 1.0
    if ell < 0:
        reflect = -1.0 if (-ell) % 2 else 1.0
        ell = -ell
    if ell > MAX_BESSEL_ORDER:
        raise OrderTooLarge(f"order {ell} > {MAX_BESSEL_ORDER}")

    # magnitude scale of the integrand's non-oscillatory part, for the
    # absolute floor of the convergence test
    scale_edges = np.array([0.0, cutoff.rho, cutoff.r])
    nodes, weights = _GAUSS[12]
    scale = 0.0
    for a, b in zip(scale_edges[:-1], scale_edges[1:]):
        half = 0.5 * (b - a)
        q = 0.5 * (a + b) + half * nodes
        scale += half * float(weights @ (q ** (p + 1) * cutoff(q)))

    for splits in range(3):
        edges = _panel_edges(cutoff, x_abs, splits)
        coarse = _panel_quadrature(ell, p, cutoff, x_abs, edges, 12)
        fine = _panel_quadrature(ell, p, cutoff, x_abs, edges, 24)
        if abs(fine - coarse) <= max(1e-8 * abs(fine), 1e-12 * scale):
            return TWO_PI * reflect * fine
    raise QuadratureNotConverged(
        f"radial integral (ell={ell}, p={p}, x={x_abs}) failed its certificate"
    )


def asymptotic_prefactor(ell: int, p: int) -> float:
    """Exact coefficient of x^{-p-2} in the large-x expansion of I(ell, p; x).

    Gamma((ell+p+2)/2) / (Gamma((ell-p)/2) * pi^{p+1}), evaluated as the
    rational product prod_{i=0..p} ((ell-p)/2 + i) over pi^{p+1}; the product
    vanishes exactly when (ell-p)/2 is a non-positive integer (the Gamma pole
    in the denominator).  For p = 0 this is ell/(2*pi); for p = 1 it is
    (ell^2 - 1)/(4*pi^2).
    """
    if ell < 0:
        raise ValueError("order must be non-negative")
    if p not in (0, 1):
        raise ValueError("p must be 0 or 1")
    b = Fraction(ell - p, 2)
    prod = Fraction(1)
    for i in range(p + 1):
        prod *= b + i
    return float(prod) / math.pi ** (p + 1)


# ---------------------------------------------------------------------------
# Coefficient profiles and decay fits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WannierProfile:
    """Radial coefficient profiles of the winding-n localized state.

    ``w_cos`` is real; ``w_sin`` stores the real amplitude of the purely
    imaginary second coefficient (the full coefficient is -1j * w_sin).
    ``envelope`` is max(|w_cos|, |w_sin|) per grid point.
    """

    n: int
    p: int
    x: np.ndarray
    w_cos: np.ndarray
    w_sin: np.ndarray
    envelope: np.ndarray


def canonical_wannier_profile(n: int, p: int, cutoff: RadialCutoff, x_grid,
                              threads: int = 1) -> WannierProfile:
    """Profiles w_cos, w_sin on a grid of radii x > 0.

    w_cos = (I(n+p) + I(n-p) + I(p) + I(-p))/4 and
    w_sin = (I(n+p) + I(n-p) - I(p) - I(-p))/4, all at the same p.
    """
    if n == 0:
        raise ValueError("winding n must be nonzero")
    if p not in (0, 1):
        raise ValueError("p must be 0 or 1")
    x = np.asarray(x_grid, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("x grid must be positive")
    ells = (n + p, n - p, p, -p)
    unique = sorted(set(ells))

    def row(xv):
        vals = {l: radial_integral(l, p, cutoff, xv) for l in unique}
        quartet = [vals[l] for l in ells]
        return (
            0.25 * (quartet[0] + quartet[1] + quartet[2] + quartet[3]),
            0.25 * (quartet[0] + quartet[1] - quartet[2] - quartet[3]),
        )

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, x))
    else:
        rows = [row(xv) for xv in x]
    w_cos = np.array([rc for rc, _ in rows])
    w_sin = np.array([rs for _, rs in rows])
    envelope = np.maximum(np.abs(w_cos), np.abs(w_sin))
    return WannierProfile(n, p, x, w_cos, w_sin, envelope)


def profile_prefactor_limit(n: int, p: int) -> float:
    """Limit of x^{p+2} * w_cos (equals that of w_sin up to the I(p) terms,
    whose prefactors vanish)."""
    total = 0.0
    for ell in (n + p, n - p, p, -p):
        sign = 1.0
        if ell < 0:
            sign = -1.0 if (-ell) % 2 else 1.0
            ell = -ell
        total += sign * asymptotic_prefactor(ell, p)
    return 0.25 * total


@dataclass(frozen=True)
class DecayFit:
    """Least-squares power law |value| ~ prefactor * x^slope on a log-log grid."""

    slope: float
    prefactor: float
    window: tuple
    residual: float


def decay_fit(x, values, window) -> DecayFit:
    """Fit log|value| against log x inside ``window`` = (x_min, x_max).

    Requires at least 8 points spanning a decade.  Raises SignChangeInWindow
    when the values oscillate through zero inside the window; fit the
    oscillation envelope (``envelope_peaks``) in that case.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    lo, hi = window
    mask = (x >= lo) & (x <= hi)
    xs, vs = x[mask], values[mask]
    if len(xs) < 8:
        raise ValueError("need at least 8 points inside the window")
    if xs.max() < 10.0 * xs.min() * (1.0 - 1e-12):
        raise ValueError("window must span at least a decade")
    signs = np.sign(vs)
    if np.any(signs == 0.0) or (np.any(signs > 0) and np.any(signs < 0)):
        raise SignChangeInWindow("values cross zero inside the fit window")
    logx = np.log(xs)
    logv = np.log(np.abs(vs))
    slope, intercept = np.polyfit(logx, logv, 1)
    residual = float(np.max(np.abs(logv - (slope * logx + intercept))))
    return DecayFit(float(slope), float(math.exp(intercept)), (float(lo), float(hi)), residual)


def envelope_peaks(x, values):
    """Local maxima of |values|: the oscillation envelope samples."""
    x = np.asarray(x, dtype=float)
    mags = np.abs(np.asarray(values, dtype=float))
    keep = [
        i
        for i in range(1, len(mags) - 1)
        if mags[i] >= mags[i - 1] and mags[i] >= mags[i + 1]
    ]
    return x[keep], mags[keep]
