import math

import numpy as np
import pytest

from bandvortex.errors import NotNormalized
from bandvortex.hermitian2 import eig2, hermitian2, op_norm_diff, projector_of
from bandvortex.models import CanonicalModelSpec, Momentum, canonical_eigvec, canonical_hamiltonian

from conftest import bloch_projector, random_state2, random_unit_vector3


def random_hermitian(rng, scale=1.0):
    a, b = scale * rng.normal(size=2)
    c = scale * complex(*rng.normal(size=2))
    return hermitian2(a, b, c)


class TestEig2:
    def test_diagonal(self):
        res = eig2(np.diag([1.0, -1.0]).astype(complex))
        assert res.e_minus == -1.0 and res.e_plus == 1.0
        assert np.allclose(res.v_minus, [0.0, 1.0])
        assert np.allclose(res.v_plus, [1.0, 0.0])
        assert not res.degenerate

    def test_conical_model_eigenvalues(self):
        h = canonical_hamiltonian(CanonicalModelSpec(1), Momentum(1.0, 0.0))
        res = eig2(h)
        assert math.isclose(res.e_minus, -1.0) and math.isclose(res.e_plus, 1.0)

    def test_avoided_crossing_eigenvalues(self):
        # e(q) = |q| = 3 with mu = 4 gives +/- sqrt(9 + 16) = +/- 5
        h = canonical_hamiltonian(CanonicalModelSpec(1), Momentum(3.0, 0.0), mu=4.0)
        res = eig2(h)
        assert math.isclose(res.e_minus, -5.0) and math.isclose(res.e_plus, 5.0)

    def test_eigen_residual_and_orthonormality(self, rng):
        for _ in range(200):
            h = random_hermitian(rng, scale=2.0)
            res = eig2(h)
            assert np.linalg.norm(h @ res.v_plus - res.e_plus * res.v_plus) < 1e-10
            assert np.linalg.norm(h @ res.v_minus - res.e_minus * res.v_minus) < 1e-10
            assert abs(np.vdot(res.v_plus, res.v_minus)) < 1e-14
            assert math.isclose(np.linalg.norm(res.v_plus), 1.0, abs_tol=1e-14)

    def test_reconstruction_and_completeness(self, rng):
        for _ in range(100):
            h = random_hermitian(rng)
            res = eig2(h)
            p_plus = np.outer(res.v_plus, np.conj(res.v_plus))
            p_minus = np.outer(res.v_minus, np.conj(res.v_minus))
            assert np.max(np.abs(res.e_plus * p_plus + res.e_minus * p_minus - h)) < 1e-10
            assert np.max(np.abs(p_plus + p_minus - np.eye(2))) < 1e-12

    def test_degenerate_flag(self):
        res = eig2(np.eye(2, dtype=complex))
        assert res.degenerate
        assert abs(np.vdot(res.v_plus, res.v_minus)) < 1e-15

    def test_phase_convention_deterministic(self, rng):
        h = random_hermitian(rng)
        a = eig2(h)
        b = eig2(h)
        assert np.array_equal(a.v_plus, b.v_plus)
        # pinned component real positive
        idx = int(np.argmax(np.abs(a.v_plus)))
        assert a.v_plus[idx].imag == 0.0 and a.v_plus[idx].real > 0.0

    def test_continuity_away_from_degeneracy(self, rng):
        # eigenvector distance modulo phase; any fixed phase convention has
        # isolated jumps where the pinned component switches
        for _ in range(200):
            h = random_hermitian(rng)
            res = eig2(h)
            if res.e_plus - res.e_minus < 1e-3:
                continue
            h2 = h + 1e-7 * random_hermitian(rng)
            res2 = eig2(h2)
            overlap = abs(np.vdot(res.v_plus, res2.v_plus))
            assert math.sqrt(max(0.0, 2.0 - 2.0 * overlap)) < 1e-2


class TestProjectorOf:
    def test_basis_vector(self):
        p = projector_of(np.array([1.0, 0.0], dtype=complex))
        assert np.allclose(p, np.diag([1.0, 0.0]))

    def test_symmetric_superposition(self):
        v = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        assert np.allclose(projector_of(v), np.full((2, 2), 0.5))

    def test_matches_conical_closed_form_at_quarter_turn(self):
        # closed form (1/2) [[cos+1, sin], [sin, -cos+1]] at theta = pi/2
        v = canonical_eigvec(CanonicalModelSpec(1, +1), Momentum(0.0, 1.0))
        expected = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]])
        assert np.max(np.abs(projector_of(v) - expected)) < 1e-12

    def test_projector_laws(self, rng):
        for _ in range(50):
            v = random_state2(rng)
            p = projector_of(v)
            assert np.max(np.abs(p @ p - p)) < 1e-12
            assert abs(np.trace(p) - 1.0) < 1e-12
            assert np.linalg.norm(p @ v - v) < 1e-12

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            projector_of(np.array([1.0, 1.0], dtype=complex))


class TestOpNormDiff:
    def test_identical(self, rng):
        p = projector_of(random_state2(rng))
        assert op_norm_diff(p, p) == 0.0

    def test_orthogonal_ranges(self):
        assert math.isclose(op_norm_diff(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])), 1.0)

    def test_bloch_angle_relation_and_svd_oracle(self, rng):
        # ||P - Q|| = sin(angle/2) for rank-1 projectors at Bloch angle apart;
        # cross-checked against a dense singular-value oracle
        for _ in range(100):
            n1 = random_unit_vector3(rng)
            n2 = random_unit_vector3(rng)
            p, q = bloch_projector(n1), bloch_projector(n2)
            got = op_norm_diff(p, q)
            angle = math.acos(np.clip(n1 @ n2, -1.0, 1.0))
            assert math.isclose(got, math.sin(0.5 * angle), abs_tol=1e-12)
            assert math.isclose(got, np.linalg.norm(p - q, 2), abs_tol=1e-12)
