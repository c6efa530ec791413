"""Sharp L^p Sobolev smoothing profiles for averages over x3 = P(t1, t2)."""
from .conditions import ConditionReport, check_conditions
from .estimator import SmoothingProfileEstimator
from .geometry import (
    EXCLUDE_AXIS,
    LITERAL,
    NewtonData,
    build_newton_data,
    build_polyhedron,
    delta_ray,
    delta_v,
    derive_P1_P2,
    newton_distance,
)
from .knapp import BoxSpec, NecessaryLine, knapp_box_family, necessary_region, scaling_fit, verify_phase_bound
from .lattice import lattice_decomposition
from .oscillatory import DyadicCell, decay_fit, dominant_monomial, oscillatory_integral
from .polynomial import (
    BivariatePolynomial,
    hessian_det,
    parse_polynomial,
    partial_derivative,
    swap_normalize,
)
from .profile import LinePiece, RegularityProfile, cone_profile, ray_profile, sharp_profile
from .sturm import count_real_roots

__all__ = [
    "BivariatePolynomial", "BoxSpec", "ConditionReport", "DyadicCell", "EXCLUDE_AXIS", "LITERAL",
    "LinePiece", "NecessaryLine", "NewtonData", "RegularityProfile", "SmoothingProfileEstimator",
    "build_newton_data", "build_polyhedron", "check_conditions", "cone_profile", "count_real_roots",
    "decay_fit", "delta_ray", "delta_v", "derive_P1_P2", "dominant_monomial", "hessian_det",
    "knapp_box_family", "lattice_decomposition", "necessary_region", "newton_distance",
    "oscillatory_integral", "parse_polynomial", "partial_derivative", "ray_profile", "scaling_fit",
    "sharp_profile", "swap_normalize", "verify_phase_bound",
]
