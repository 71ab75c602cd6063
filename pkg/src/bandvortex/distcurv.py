"""Distributional limit of the smoothed Berry curvature at a crossing.

Paired with a radial test function f, the smoothed curvature of the winding-n
model reduces to a one-dimensional integral against the kernel
d/dq (mu / sqrt(q^2 + mu^2)), an approximate identity of width |mu|.  As
mu -> 0 the pairing converges to -band * n * f(0): the curvature concentrates
into a multiple of the delta distribution at the crossing point.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from .errors import NotConverging, QuadratureNotConverged
from .wannier import RadialCutoff, build_cutoff


@dataclass(frozen=True)
class RadialTestFunction:
    """Radial test function f(|q|), compactly supported and C^2."""

    func: Callable[[float], float]
    support_radius: float
    value_at_zero: float

    def __call__(self, q):
        return self.func(q)

    @classmethod
    def from_cutoff(cls, cutoff: RadialCutoff, amplitude: float = 1.0) -> "RadialTestFunction":
        return cls(lambda q: amplitude * cutoff(q), cutoff.r, amplitude)

    @classmethod
    def annular(cls, a: float, b: float, c: float, d: float, amplitude: float = 1.0) -> "RadialTestFunction":
        """Smooth bump vanishing on [0, a], equal to ``amplitude`` on [b, c],
        vanishing beyond d; in particular f(0) = 0."""
        if not (0.0 < a < b < c < d):
            raise ValueError("need 0 < a < b < c < d")
        rise = build_cutoff(a, b, 2)
        fall = build_cutoff(c, d, 2)
        return cls(lambda q: amplitude * (1.0 - rise(q)) * fall(q), d, 0.0)


def smoothed_pairing(n: int, s: int, f: RadialTestFunction, mu: float) -> float:
    """(1/2*pi) of the smoothed curvature of the (n, band s) model paired
    with f: s*n * int_0^r dq d/dq(mu/sqrt(q^2+mu^2)) f(q).

    The kernel is -mu*q/(q^2+mu^2)^{3/2}, peaked at q ~ |mu|; breakpoints at
    multiples of |mu| steer the adaptive quadrature through the peak.
    """
    if mu == 0.0:
        raise ValueError("mu must be nonzero")
    if s not in (+1, -1):
        raise ValueError("band sign must be +1 or -1")
    r_f = f.support_radius

    def integrand(q):
        return -mu * q / (q * q + mu * mu) ** 1.5 * f(q)

    pts = [p * abs(mu) for p in (0.5, 1.0, 2.0, 5.0, 20.0, 100.0)]
    pts = [p for p in pts if 0.0 < p < r_f]
    val, err = integrate.quad(integrand, 0.0, r_f, points=pts, limit=400,
                              epsabs=1e-13, epsrel=1e-10)
    if err > max(1e-8 * abs(val), 1e-11):
        raise QuadratureNotConverged(f"pairing error estimate {err:.3e}")
    return s * n * val


@dataclass(frozen=True)
class DeltaLimitReport:
    """Pairing values along a mu-sequence and their extrapolated limit.

    The limits from above and below the mu = 0 plane (the latter with its
    orientation compensation, i.e. negated) must agree; ``limit`` is their
    mean, ``target`` the delta-distribution prediction -s*n*f(0), and
    ``orders`` the empirical convergence orders of successive deviations.
    """

    mu_values: tuple
    pairings_above: tuple
    pairings_below: tuple
    limit_above: float
    limit_below: float
    limit: float
    target: float
    deviation: float
    orders: tuple


def _first_order_intercept(mus, vals) -> float:
    # Richardson step assuming value = limit + c*mu: least-squares line
    # through the last three points, evaluated at mu = 0.
    slope, intercept = np.polyfit(mus[-3:], vals[-3:], 1)
    return float(intercept)


def delta_limit_check(n: int, s: int, f: RadialTestFunction, mu_sequence,
                      threads: int = 1) -> DeltaLimitReport:
    """Evaluate the pairing along decreasing mu and extrapolate to 0.

    ``mu_sequence`` must be at least 4 strictly decreasing positive values.
    Deviations from the limit must shrink monotonically (beyond the first
    entry, above an absolute noise floor); first-order convergence in mu is
    the expected behavior for C^1 test functions.
    """
    mus = [float(m) for m in mu_sequence]
    if len(mus) < 4:
        raise ValueError("mu sequence must have at least 4 entries")
    if any(m <= 0.0 for m in mus) or any(b >= a for a, b in zip(mus, mus[1:])):
        raise ValueError("mu sequence must be strictly decreasing and positive")

    def above(mu):
        return smoothed_pairing(n, s, f, mu)

    def below(mu):
        return -smoothed_pairing(n, s, f, -mu)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pair_above = list(pool.map(above, mus))
            pair_below = list(pool.map(below, mus))
    else:
        pair_above = [above(mu) for mu in mus]
        pair_below = [below(mu) for mu in mus]

    limit_above = _first_order_intercept(mus, pair_above)
    limit_below = _first_order_intercept(mus, pair_below)
    limit = 0.5 * (limit_above + limit_below)
    target = -s * n * f.value_at_zero

    deviations = [abs(v - limit) for v in pair_above]
    floor = 1e-10 * (1.0 + abs(target))
    for prev, cur in zip(deviations[1:], deviations[2:]):
        if cur > prev and cur > floor:
            raise NotConverging(
                f"deviation rose from {prev:.3e} to {cur:.3e} along the mu sequence"
            )

    orders = []
    for i in range(len(mus) - 1):
        if deviations[i] > floor and deviations[i + 1] > floor:
            orders.append(
                math.log(deviations[i] / deviations[i + 1])
                / math.log(mus[i] / mus[i + 1])
            )
    return DeltaLimitReport(
        tuple(mus),
        tuple(pair_above),
        tuple(pair_below),
        limit_above,
        limit_below,
        limit,
        target,
        abs(limit - target),
        tuple(orders),
    )
