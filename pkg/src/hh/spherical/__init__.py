"""Spherical harmonics, spherical functions and Hecke-Bochner coefficients for U(n) and U(n1) x U(n2)."""

from hh.spherical.family import Family
from hh.spherical.functions import (
    GeneralizedSpherical,
    HeckeBochnerCoeff,
    SphericalFunction,
    a_closed_form,
    a_radial_integral,
    bk_norm,
    column_norm_integral,
    compressed_rank,
    divide_exact,
    eigenfunction_from_operator,
    eigenvalues,
    equivariance_matrix,
    generalized_spherical,
    laguerre_integral_coefficient,
    hecke_bochner,
    hecke_bochner_coefficient,
    is_joint_eigenfunction,
    l_closed_form,
    psi,
    span_coefficients,
    upsilon,
)
from hh.spherical.harmonics import (
    HarmonicPiece,
    HarmonicSpace,
    component_project,
    harmonic_basis,
    harmonic_decompose,
    harmonic_type,
    is_invariant,
    isotypic_types,
    laplacian,
    reassemble,
)
from hh.spherical.kernels import (
    SurfaceConvolution,
    b_constant,
    check_radii,
    choose_radii,
    eta_omega,
    kernel_P,
    kernel_P_terms,
    kernel_Q,
    kernel_Q_series,
    q_coefficient,
    q_projection,
    q_projection_closed,
    q_series_tail_bound,
    surface_measure_convolve,
)
from hh.spherical.laguerre import laguerre, laguerre_float, laguerre_value

__all__ = [
    "Family", "GeneralizedSpherical", "HarmonicPiece", "HarmonicSpace", "HeckeBochnerCoeff",
    "SphericalFunction", "SurfaceConvolution", "a_closed_form", "a_radial_integral", "b_constant",
    "bk_norm", "check_radii", "choose_radii", "column_norm_integral", "component_project",
    "compressed_rank", "divide_exact", "eigenfunction_from_operator", "eigenvalues",
    "equivariance_matrix", "eta_omega", "generalized_spherical", "laguerre_integral_coefficient",
    "harmonic_basis", "harmonic_decompose", "harmonic_type", "hecke_bochner",
    "hecke_bochner_coefficient", "is_invariant", "is_joint_eigenfunction", "isotypic_types",
    "kernel_P", "kernel_P_terms", "kernel_Q", "kernel_Q_series", "l_closed_form", "laguerre",
    "laguerre_float", "laguerre_value", "laplacian", "psi", "q_coefficient", "q_projection",
    "q_projection_closed", "q_series_tail_bound", "reassemble", "span_coefficients",
    "surface_measure_convolve", "upsilon",
]
