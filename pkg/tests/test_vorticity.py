import cmath
import math

import numpy as np
import pytest
from scipy.linalg import sqrtm

from bandvortex.errors import (
    AmbiguousFlux,
    DeformationTooFar,
    PreconditionViolated,
    SingularOnMesh,
)
from bandvortex.hermitian2 import op_norm_diff
from bandvortex.models import CanonicalModelSpec, canonical_curvature, monolayer_dirac_points
from bandvortex.vorticity import (
    ProjectorField,
    _range_vector,
    build_cube_mesh,
    build_cylinder_mesh,
    canonical_field,
    chern_equality_check,
    compute_vorticity,
    conjugate_field,
    curvature_chern_quadrature,
    deformation_equivalence,
    export_mesh_record,
    face_fluxes,
    gauge_conjugation_sweep,
    kato_nagy_unitary,
    monolayer_field,
    multilayer_field,
    plaquette_chern,
    random_unitary_field,
    series_inverse_sqrt,
)

from conftest import bloch_projector, random_unit_vector3

DEFAULT_CUBE = dict(center=(0.0, 0.0, 0.0), half_widths=(0.25, 0.25, 0.25))


class TestMeshes:
    def test_unit_cube_combinatorics(self):
        mesh = build_cube_mesh((0, 0, 0), (1, 1, 1), 1)
        assert len(mesh.vertices) == 8
        assert len(mesh.faces) == 6
        assert mesh.edge_count() == 12
        assert mesh.euler_characteristic() == 2

    def test_subdivided_cube(self):
        mesh = build_cube_mesh((0, 0, 0), (1, 1, 1), 4)
        assert len(mesh.faces) == 6 * 16
        mesh.validate()

    def test_projected_areas_vanish(self):
        for mesh in (
            build_cube_mesh((0.3, -0.2, 0.1), (0.5, 0.4, 0.3), 3),
            build_cylinder_mesh(0.7, 0.5, 16, 4, 4),
        ):
            assert np.max(np.abs(mesh.signed_projected_areas())) < 1e-12

    def test_cylinder_closed(self):
        build_cylinder_mesh(1.0, 1.0, 16, 4, 4).validate()
        build_cylinder_mesh(1.0, 1.0, 3, 1, 1).validate()

    def test_outward_orientation(self):
        # discrete Gauss law: flux of r/|r|^3 over an enclosing surface = 4*pi
        for mesh in (
            build_cube_mesh((0, 0, 0), (1, 1, 1), 8),
            build_cylinder_mesh(1.0, 1.0, 32, 8, 8),
        ):
            total = 0.0
            for f in mesh.faces:
                pts = mesh.vertices[list(f)]
                centroid = pts.mean(axis=0)
                area = np.zeros(3)
                for i in range(len(pts)):
                    area += 0.5 * np.cross(pts[i], pts[(i + 1) % len(pts)])
                total += area @ centroid / np.linalg.norm(centroid) ** 3
            assert abs(total / (4.0 * math.pi) - 1.0) < 0.01


class TestPlaquette:
    def test_conical_exact_on_eight_points(self):
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=1)
        for band in (+1, -1):
            for m in (1, 2):
                res = plaquette_chern(canonical_field(CanonicalModelSpec(1, band, m)), mesh)
                assert res.integer == -band
                assert res.vorticity == band
                assert res.residue < 1e-12

    def test_trivial_winding(self):
        res = compute_vorticity(canonical_field(CanonicalModelSpec(0, +1)))
        assert res.vorticity == 0

    def test_high_winding_needs_refinement(self):
        field = canonical_field(CanonicalModelSpec(3, -1))
        res = compute_vorticity(field)
        assert res.vorticity == -3
        # the coarse mesh wraps silently; the stability confirmation catches it
        coarse = plaquette_chern(field, build_cube_mesh(**DEFAULT_CUBE, subdivisions=1))
        assert coarse.integer != res.integer

    def test_ambiguous_flux_on_coarse_mesh(self):
        with pytest.raises(AmbiguousFlux):
            plaquette_chern(
                canonical_field(CanonicalModelSpec(2, +1)),
                build_cube_mesh(**DEFAULT_CUBE, subdivisions=1),
            )

    def test_cylinder_mesh_agrees_with_cube(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cylinder_mesh(0.25, 0.25, 16, 4, 4)
        assert plaquette_chern(field, mesh).vorticity == 1

    def test_refinement_stability(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        integers = []
        for s in (1, 2, 4, 8):
            res = plaquette_chern(field, build_cube_mesh(**DEFAULT_CUBE, subdivisions=s))
            integers.append(res.integer)
            assert res.residue < 1e-12
        assert len(set(integers)) == 1

    def test_orientation_reversal_negates(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=2)
        res = plaquette_chern(field, mesh)
        rev = plaquette_chern(field, mesh.reversed())
        assert rev.integer == -res.integer
        assert math.isclose(rev.raw, -res.raw, abs_tol=1e-14)

    def test_flux_additivity(self):
        field = canonical_field(CanonicalModelSpec(2, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=4)
        fluxes = face_fluxes(field, mesh)
        res = plaquette_chern(field, mesh)
        split = len(fluxes) // 3
        parts = fluxes[:split].sum() + fluxes[split:].sum()
        assert math.isclose(res.raw, parts / (2 * math.pi), rel_tol=1e-12)

    def test_gauge_invariance_bitwise(self, rng):
        # arbitrary per-vertex phases leave every face flux unchanged
        field = canonical_field(CanonicalModelSpec(2, -1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=2)
        reference = face_fluxes(field, mesh)
        vecs = []
        for k1, k2, mu in mesh.vertices:
            v = _range_vector(field(k1, k2, mu))
            vecs.append(v * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
        fluxes = np.empty(len(mesh.faces))
        for fi, face in enumerate(mesh.faces):
            z = 1.0 + 0.0j
            for a, b in zip(face, face[1:] + face[:1]):
                link = complex(np.vdot(vecs[b], vecs[a]))
                z *= link / abs(link)
            fluxes[fi] = -cmath.phase(z)
        assert np.max(np.abs(fluxes - reference)) < 1e-12

    def test_singular_vertex_detected(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cube_mesh((0.25, 0.0, 0.0), (0.25, 0.25, 0.25), 2)
        with pytest.raises(SingularOnMesh):
            plaquette_chern(field, mesh)

    def test_mesh_export_record(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=1)
        record = export_mesh_record(field, mesh)
        assert len(record["vertices"]) == 8
        assert len(record["faces"]) == len(record["face_flux"]) == 6
        assert math.isclose(sum(record["face_flux"]), -2.0 * math.pi, rel_tol=1e-12)


class TestCurvatureQuadrature:
    def test_conical_value(self):
        val = curvature_chern_quadrature(canonical_curvature(CanonicalModelSpec(1, +1, 1)), 0.5, 0.5)
        assert abs(val + 1.0) < 1e-8

    def test_quadratic_lower_band(self):
        val = curvature_chern_quadrature(canonical_curvature(CanonicalModelSpec(2, -1, 2)), 0.5, 0.5)
        assert abs(val - 2.0) < 1e-8

    def test_zero_form(self):
        assert abs(curvature_chern_quadrature(lambda r, th, mu: (0.0, 0.0), 0.5, 0.5)) < 1e-12

    def test_matches_plaquette_sign(self):
        spec = CanonicalModelSpec(2, +1, 1)
        quad = curvature_chern_quadrature(canonical_curvature(spec), 0.5, 0.5)
        plaq = compute_vorticity(canonical_field(spec)).raw
        assert math.isclose(quad, plaq, abs_tol=1e-6)


class TestKatoNagy:
    def test_identity_at_zero_distance(self, rng):
        p = bloch_projector(random_unit_vector3(rng))
        w = kato_nagy_unitary(p, p)
        assert np.max(np.abs(w - np.eye(2))) < 1e-12

    def test_small_rotation_example(self):
        p = np.diag([1.0, 0.0]).astype(complex)
        q = bloch_projector((math.sin(0.3), 0.0, math.cos(0.3)))
        w = kato_nagy_unitary(p, q)
        assert op_norm_diff(w @ p @ np.conj(w.T), q) < 1e-10
        assert np.max(np.abs(w @ np.conj(w.T) - np.eye(2))) < 1e-10

    def test_random_pair_sweep(self, rng):
        count = 0
        while count < 100:
            p = bloch_projector(random_unit_vector3(rng))
            q = bloch_projector(random_unit_vector3(rng))
            if op_norm_diff(p, q) > 0.9:
                continue
            count += 1
            w = kato_nagy_unitary(p, q)
            assert op_norm_diff(w @ p @ np.conj(w.T), q) < 1e-9
            assert np.max(np.abs(w @ np.conj(w.T) - np.eye(2))) < 1e-10

    def test_too_far_rejected(self):
        with pytest.raises(DeformationTooFar):
            kato_nagy_unitary(np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex))

    def test_series_inverse_sqrt_cross_checks(self, rng):
        for _ in range(20):
            p = bloch_projector(random_unit_vector3(rng))
            q = bloch_projector(random_unit_vector3(rng))
            if op_norm_diff(p, q) > 0.9:
                continue
            m = (p - q) @ (p - q)
            series = series_inverse_sqrt(m)
            dense = np.linalg.inv(sqrtm(np.eye(2) - m))
            assert np.max(np.abs(series - dense)) < 1e-10
            w_closed = kato_nagy_unitary(p, q)
            w_series = series @ (q @ p + (np.eye(2) - q) @ (np.eye(2) - p))
            assert np.max(np.abs(w_closed - w_series)) < 1e-10


class TestDeformationEquivalence:
    def test_identical_fields(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=2)
        report = deformation_equivalence(field, field, mesh)
        assert report.equal and report.max_distance == 0.0

    def test_small_smooth_conjugation(self, rng):
        field = canonical_field(CanonicalModelSpec(2, +1))
        conj = conjugate_field(field, random_unitary_field(rng, max_angle=0.5))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=4)
        report = deformation_equivalence(field, conj, mesh)
        assert report.equal
        assert report.max_distance < math.sin(0.25) + 1e-9

    def test_different_windings_violate_precondition(self):
        field1 = canonical_field(CanonicalModelSpec(1, +1))
        field2 = canonical_field(CanonicalModelSpec(2, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=4)
        with pytest.raises(PreconditionViolated):
            deformation_equivalence(field1, field2, mesh)
        assert plaquette_chern(field1, mesh).integer != plaquette_chern(field2, mesh).integer


class TestChernEqualityCheck:
    def test_monolayer_matches_winding_one(self):
        k_plus, _ = monolayer_dirac_points()
        mesh = build_cube_mesh((k_plus[0], k_plus[1], 0.0), (0.25, 0.25, 0.25), 4)
        mono = monolayer_field()
        assert chern_equality_check(mono, canonical_field(CanonicalModelSpec(1, +1), center=k_plus), mesh)

    def test_bilayer_matches_winding_two_not_one(self):
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=4)
        bi = multilayer_field(2)
        assert chern_equality_check(bi, canonical_field(CanonicalModelSpec(2, +1)), mesh)
        assert not chern_equality_check(bi, canonical_field(CanonicalModelSpec(1, +1)), mesh)


class TestGaugeSweep:
    def test_short_sweep(self):
        field = canonical_field(CanonicalModelSpec(1, +1))
        mesh = build_cube_mesh(**DEFAULT_CUBE, subdivisions=2)
        report = gauge_conjugation_sweep(field, mesh, trials=10, seed=3)
        assert report.all_equal
        assert report.max_distance <= 0.9
        assert report.max_residual < 1e-9
