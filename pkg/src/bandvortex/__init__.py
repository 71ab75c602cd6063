"""Band-crossing topology toolbox: eigenspace vorticity, pseudospin winding,
and the power-law decay of the associated localized states."""

__version__ = "0.1.0"

from .hermitian2 import Eig2Result, eig2, hermitian2, op_norm_diff, projector_of
from .models import (
    CanonicalModelSpec,
    HaldaneParams,
    Momentum,
    analytic_curvature,
    canonical_curvature,
    canonical_eigvec,
    canonical_hamiltonian,
    canonical_projector,
    haldane_critical_mass,
    haldane_gap,
    haldane_hamiltonian,
    monolayer_dirac_points,
    monolayer_fullzone,
    multilayer_hamiltonian,
    multilayer_section,
)
from .vorticity import (
    ChernResult,
    ClosedSurfaceMesh,
    ProjectorField,
    build_cube_mesh,
    build_cylinder_mesh,
    canonical_field,
    chern_equality_check,
    compute_vorticity,
    curvature_chern_quadrature,
    deformation_equivalence,
    haldane_field,
    kato_nagy_unitary,
    monolayer_field,
    multilayer_field,
    plaquette_chern,
)
from .pseudospin import (
    LoopSample,
    berry_phase,
    bloch_sphere_map,
    equator_check,
    great_circle_fit,
    hemispherical_classify,
    pwn_equals_vorticity,
    winding_number,
)
from .wannier import (
    DecayFit,
    RadialCutoff,
    WannierProfile,
    asymptotic_prefactor,
    bessel_j,
    build_cutoff,
    canonical_wannier_profile,
    decay_fit,
    radial_integral,
)
from .distcurv import RadialTestFunction, delta_limit_check, smoothed_pairing
