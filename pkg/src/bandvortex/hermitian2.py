"""Closed-form spectral calculus for 2x2 complex Hermitian matrices.

Everything here is exact arithmetic on the four real degrees of freedom of a
Hermitian 2x2 matrix (quadratic-formula eigensolver, rank-1 projectors,
spectral norms).  No iterative linear algebra is used; these routines sit in
the hot loop of every surface/loop sweep in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized

DEGENERACY_THRESHOLD = 1e-12


def hermitian2(a11: float, a22: float, a12: complex) -> np.ndarray:
    """Assemble [[a11, a12], [conj(a12), a22]] with real diagonal."""
    return np.array([[a11, a12], [np.conj(a12), a22]], dtype=complex)


@dataclass(frozen=True)
class Eig2Result:
    """Eigenpairs of a 2x2 Hermitian matrix, ordered e_minus <= e_plus.

    ``degenerate`` signals a spectral gap below ``DEGENERACY_THRESHOLD``; the
    eigenvectors returned in that case are an arbitrary orthonormal pair.
    """

    e_minus: float
    e_plus: float
    v_minus: np.ndarray
    v_plus: np.ndarray
    degenerate: bool = False


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # Deterministic gauge: largest-magnitude component made real positive.
    idx = 0 if abs(v[0]) >= abs(v[1]) else 1
    a = v[idx]
    return v * (np.conj(a) / abs(a))


def eig2(h: np.ndarray) -> Eig2Result:
    """Eigenvalues and orthonormal eigenvectors of a Hermitian 2x2 matrix.

    Uses the quadratic formula: with m the mean of the diagonal and
    d = sqrt(((a-b)/2)^2 + |c|^2), the eigenvalues are m -+ d.  The eigenvector
    of e_plus is built from the better-conditioned row residual, the other one
    as its exact orthogonal complement, so the returned pair is orthonormal to
    machine precision.  Phases follow ``_fix_phase``.
    """
    a = h[0, 0].real
    b = h[1, 1].real
    c = 0.5 * (h[0, 1] + np.conj(h[1, 0]))
    mean = 0.5 * (a + b)
    half_diff = 0.5 * (a - b)
    disc = math.hypot(half_diff, abs(c))
    e_minus = mean - disc
    e_plus = mean + disc
    if 2.0 * disc < DEGENERACY_THRESHOLD:
        return Eig2Result(
            e_minus,
            e_plus,
            np.array([1.0 + 0.0j, 0.0j]),
            np.array([0.0j, 1.0 + 0.0j]),
            degenerate=True,
        )
    if half_diff >= 0.0:
        vp = np.array([e_plus - b, np.conj(c)], dtype=complex)
    else:
        vp = np.array([c, e_plus - a], dtype=complex)
    vp = _fix_phase(vp / np.linalg.norm(vp))
    vm = _fix_phase(np.array([-np.conj(vp[1]), np.conj(vp[0])]))
    return Eig2Result(e_minus, e_plus, vm, vp, degenerate=False)


def projector_of(v: np.ndarray) -> np.ndarray:
    """Rank-1 orthogonal projector |v><v| onto a unit vector."""
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-8:
        raise NotNormalized(f"vector norm {norm!r} deviates from 1 by more than 1e-8")
    return np.outer(v, np.conj(v))


def op_norm_diff(p: np.ndarray, q: np.ndarray) -> float:
    """Spectral norm of P - Q (largest singular value, closed form).

    P - Q is Hermitian, so the norm is the largest eigenvalue magnitude.
    """
    d = p - q
    a = d[0, 0].real
    b = d[1, 1].real
    c = 0.5 * (d[0, 1] + np.conj(d[1, 0]))
    mean = 0.5 * (a + b)
    disc = math.hypot(0.5 * (a - b), abs(c))
    return max(abs(mean - disc), abs(mean + disc))
