import cmath
import math

import numpy as np
import pytest

from bandvortex.errors import (
    AssumptionViolated,
    DegenerateCloud,
    NonIntegerWinding,
    ZeroOverlap,
)
from bandvortex.models import CanonicalModelSpec, Momentum, canonical_eigvec, multilayer_section
from bandvortex.pseudospin import (
    LoopSample,
    berry_phase,
    bloch_sphere_map,
    equator_check,
    field_loop,
    great_circle_fit,
    hemispherical_classify,
    pole_basis,
    projector_from_sphere,
    pwn_equals_vorticity,
    sphere_trace,
    winding_number,
)
from bandvortex.vorticity import ProjectorField, canonical_field, multilayer_field
from bandvortex.hermitian2 import projector_of

from conftest import bloch_projector, random_state2, random_unit_vector3


def multilayer_loop(m, s=+1, n_samples=256):
    return LoopSample.from_section(
        lambda th: multilayer_section(m, s, Momentum.from_polar(1.0, th)), n_samples
    )


class TestWindingNumber:
    def test_multilayer_windings(self):
        for m in (1, 2, 5):
            assert winding_number(multilayer_loop(m)) == m

    def test_constant_section(self):
        vec = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        loop = LoopSample.from_section(lambda th: vec, 64)
        assert winding_number(loop) == 0

    def test_pure_phase_winding(self):
        loop = LoopSample.from_section(
            lambda th: np.array([1.0, cmath.exp(3j * th)]) / math.sqrt(2.0), 64
        )
        assert winding_number(loop) == 3

    def test_sampling_invariance(self):
        for n_samples in (64, 128, 256):
            assert winding_number(multilayer_loop(3, n_samples=n_samples)) == 3

    def test_component_zero_rejected(self):
        # the winding-1 eigenvector in the computational basis has a
        # vanishing first component at theta = pi
        loop = LoopSample.from_section(
            lambda th: canonical_eigvec(CanonicalModelSpec(1, +1), Momentum.from_polar(1.0, th)),
            8,
        )
        with pytest.raises(AssumptionViolated):
            winding_number(loop)

    def test_unrefinable_coarse_loop_rejected(self):
        theta = np.arange(8) * (2.0 * math.pi / 8)
        values = np.stack(
            [np.ones(8, dtype=complex), np.exp(3j * theta)], axis=1
        ) / math.sqrt(2.0)
        with pytest.raises(NonIntegerWinding):
            winding_number(LoopSample(theta, values, section=None))


class TestBlochSphere:
    def test_poles(self):
        assert np.allclose(bloch_sphere_map(np.diag([1.0, 0.0]).astype(complex)), [0, 0, 1])
        assert np.allclose(bloch_sphere_map(np.diag([0.0, 1.0]).astype(complex)), [0, 0, -1])

    def test_equatorial_point(self):
        assert np.allclose(bloch_sphere_map(np.full((2, 2), 0.5, dtype=complex)), [1, 0, 0])

    def test_round_trip_bijection(self, rng):
        for _ in range(100):
            p = projector_of(random_state2(rng))
            b = bloch_sphere_map(p)
            assert np.max(np.abs(projector_from_sphere(b) - p)) < 1e-12
            n = random_unit_vector3(rng)
            assert np.max(np.abs(bloch_sphere_map(bloch_projector(n)) - n)) < 1e-12


class TestEquatorCheck:
    def test_multilayer_passes(self):
        report = equator_check(multilayer_loop(2))
        assert report.passes and report.max_deviation < 1e-15

    def test_tilted_section_fails(self):
        loop = LoopSample.from_section(
            lambda th: np.array([math.cos(0.1), math.sin(0.1) * cmath.exp(1j * th)]), 64
        )
        report = equator_check(loop)
        assert not report.passes
        assert math.isclose(report.max_deviation, math.cos(0.1) - math.sin(0.1), abs_tol=1e-12)

    def test_basis_dependence(self):
        # a global basis rotation generally breaks the equal-magnitude property
        rot = np.array([[math.cos(0.4), -math.sin(0.4)], [math.sin(0.4), math.cos(0.4)]], dtype=complex)
        loop = multilayer_loop(1)
        rotated = LoopSample(loop.theta, loop.values @ rot.T, None)
        assert not equator_check(rotated).passes


class TestGreatCircleFit:
    def test_exact_equator(self):
        theta = np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False)
        pts = np.stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=1)
        fit = great_circle_fit(pts)
        assert fit.rms_deviation < 1e-12
        assert abs(abs(fit.normal[2]) - 1.0) < 1e-12

    def test_multilayer_loop_is_great_circle(self):
        fit = great_circle_fit(sphere_trace(multilayer_loop(1)))
        assert fit.rms_deviation < 1e-10

    def test_degenerate_cloud(self):
        pts = np.tile([0.0, 0.0, 1.0], (5, 1))
        with pytest.raises(DegenerateCloud):
            great_circle_fit(pts)


class TestBerryPhase:
    def test_multilayer_holonomy(self):
        for m, expected in ((1, -1.0), (2, 1.0), (3, -1.0)):
            hol = berry_phase(multilayer_loop(m))
            assert abs(hol - expected) < 1e-6

    def test_constant_loop(self):
        vec = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
        hol = berry_phase(LoopSample.from_section(lambda th: vec, 64))
        assert abs(hol - 1.0) < 1e-12

    def test_gauge_invariance(self, rng):
        loop = multilayer_loop(2, n_samples=128)
        phases = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, size=len(loop.theta)))
        regauged = LoopSample(loop.theta, loop.values * phases[:, None], None)
        plain = LoopSample(loop.theta, loop.values, None)
        assert abs(berry_phase(regauged) - berry_phase(plain)) < 1e-12

    def test_zero_overlap(self):
        values = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, 1.0]], dtype=complex)
        with pytest.raises(ZeroOverlap):
            berry_phase(LoopSample(np.linspace(0, 2 * math.pi, 4, endpoint=False), values, None))


class TestBasisDependence:
    @staticmethod
    def _tilted_double_loop():
        # Bloch trace: a circle of angular radius 0.5 around the x-axis,
        # traversed twice; it never approaches the z-poles
        def section(th):
            b = math.cos(0.5) * np.array([1.0, 0.0, 0.0]) + math.sin(0.5) * (
                math.cos(2 * th) * np.array([0.0, 1.0, 0.0])
                + math.sin(2 * th) * np.array([0.0, 0.0, 1.0])
            )
            p = projector_from_sphere(b)
            col = 0 if p[0, 0].real >= p[1, 1].real else 1
            return p[:, col] / np.linalg.norm(p[:, col])

        return LoopSample.from_section(section, 256)

    def test_two_bases_two_windings(self):
        loop = self._tilted_double_loop()
        assert winding_number(loop) == 0
        x_basis = np.array([[1.0, -1.0], [1.0, 1.0]], dtype=complex) / math.sqrt(2.0)
        rotated = LoopSample(loop.theta, loop.values @ np.conj(x_basis), None)
        assert abs(winding_number(rotated)) == 2

    def test_axis_rotations_preserve_winding_pole_swap_negates(self):
        loop = multilayer_loop(3)
        phase = cmath.exp(0.7j)
        rotated = LoopSample(loop.theta, loop.values * np.array([phase, np.conj(phase)]), None)
        assert winding_number(rotated) == 3
        swapped = LoopSample(loop.theta, loop.values[:, ::-1], None)
        assert winding_number(swapped) == -3


class TestHemisphericalClassify:
    def test_canonical_field_is_hemispherical(self):
        report = hemispherical_classify(canonical_field(CanonicalModelSpec(1, +1)), grid=(32, 4, 3))
        assert report.category == "hemispherical"
        assert report.max_equator_offset < 1e-12

    def test_mu_reflection_swaps_poles(self):
        base = canonical_field(CanonicalModelSpec(1, +1))
        flipped = ProjectorField(
            lambda k1, k2, mu: base(k1, k2, -mu), base.singular_point, "reflected"
        )
        rep_a = hemispherical_classify(base, grid=(32, 4, 3))
        rep_b = hemispherical_classify(flipped, grid=(32, 4, 3))
        assert rep_b.category == "hemispherical"
        assert np.max(np.abs(rep_a.pole_axis + rep_b.pole_axis)) < 1e-9

    def test_constant_in_mu_field_is_neither(self):
        def func(k1, k2, mu):
            th = math.atan2(k2, k1)
            v = np.array([1.0, cmath.exp(1j * th)]) / math.sqrt(2.0)
            return np.outer(v, np.conj(v))

        report = hemispherical_classify(ProjectorField(func, (0.0, 0.0), "none"), grid=(32, 4, 3))
        assert report.category == "neither"
        assert report.witnesses


class TestPwnEqualsVorticity:
    def test_multilayer(self):
        for m in (1, 2):
            report = pwn_equals_vorticity(m)
            assert report.n_w == report.n_v == m
            assert report.signed_equal and report.abs_equal

    def test_canonical_negative_winding(self):
        report = pwn_equals_vorticity(CanonicalModelSpec(-2, +1, 1))
        assert report.n_w == report.n_v == -2

    def test_canonical_lower_band(self):
        report = pwn_equals_vorticity(CanonicalModelSpec(2, -1, 1))
        assert report.n_w == report.n_v == -2

    def test_pole_basis_is_orthonormal(self):
        basis = pole_basis(multilayer_field(2), 0.5)
        assert np.max(np.abs(np.conj(basis.T) @ basis - np.eye(2))) < 1e-12
