"""Angle sums and face counts of polytopes and polytopal complexes."""

from .core import (
    AlphaFVector,
    AlphaVector,
    FVector,
    GammaVector,
    HVector,
    alpha_from_gamma,
    angle_char,
    euler_char,
    f_from_h,
    gamma_from_alpha,
    h_from_f,
)
from .angles import SamplingConfig, angle_sums, projection_expectation
from .curved import (
    CurvedAlpha,
    CurvedPolytope,
    check_generalized_gram,
    curved_f,
    curved_glue_check,
    hyperbolic_alpha,
    hyperbolic_perles_cases,
    schlafli_fd,
    spherical_alpha,
    spherical_perles_check,
)
from .facelattice import VPolytope, face_lattice
from .relations import (
    RelationReport,
    check_all_polytope,
    check_all_simplicial,
    check_ds,
    check_euler,
    check_gram,
    check_perles,
)
from .spans import FamilySpec, check_span

__all__ = [
    "AlphaFVector",
    "AlphaVector",
    "CurvedAlpha",
    "CurvedPolytope",
    "FVector",
    "FamilySpec",
    "GammaVector",
    "HVector",
    "RelationReport",
    "SamplingConfig",
    "VPolytope",
    "alpha_from_gamma",
    "angle_char",
    "angle_sums",
    "check_all_polytope",
    "check_all_simplicial",
    "check_ds",
    "check_euler",
    "check_generalized_gram",
    "check_gram",
    "check_perles",
    "check_span",
    "curved_f",
    "curved_glue_check",
    "euler_char",
    "f_from_h",
    "face_lattice",
    "gamma_from_alpha",
    "h_from_f",
    "hyperbolic_alpha",
    "hyperbolic_perles_cases",
    "projection_expectation",
    "schlafli_fd",
    "spherical_alpha",
    "spherical_perles_check",
]

__version__ = "0.1.0"
