"""Numerical radius, zero-pattern clique number and the bounds linking them."""

from .core import (
    ComplexMatrix,
    DimensionError,
    frobenius_norm,
    frobenius_norm_sq,
    has_zero_diagonal,
    is_hermitian,
    quadratic_form,
    scale,
)
from .extremal import (
    EqualityCertificate,
    PartiteSpec,
    check_equality_conditions,
    clique_plus_isolated,
    proposition_matrix,
    turan_partite_filled,
)
from .motzkin import (
    MSResult,
    general_simplex_max,
    lemma1_bound,
    ms_bound_symmetric,
    replicator_max,
    saturate,
    simplex_grid_max,
    symmetrize_support,
)
from .numradius import (
    RadiusResult,
    lambda_max_hermitian,
    numerical_radius,
    rotated_hermitian_part,
    spectral_radius_hermitian,
)
from .pattern import PatternGraph, extract_pattern, omega, omega_bruteforce, omega_exact, pattern_mass
from .verify import (
    BoundReport,
    EnsembleSpec,
    check_lemma1,
    check_motzkin_straus,
    check_theorem1,
    check_theorem2,
    check_turan_edge_bound,
    generate_ensemble,
    sweep,
)

__version__ = "0.1.0"
