"""Leibniz homology, non-abelian tensor and exterior products, and Γ, computed exactly."""

from .algebra import (
    AlgebraMorphism,
    CrossedModule,
    Extension,
    Ideal,
    LeibnizAlgebra,
    LeibnizIdentityError,
    abelian,
    abelianization,
    center,
    commutator_ideal,
    direct_sum,
    extension_from,
    identity_crossed_module,
    inclusion_crossed_module,
    is_lie,
    is_perfect,
    quotient_algebra,
    validate_leibniz,
)
from .catalog import CatalogEntry, CatalogError, load_catalog, parse_algebra, parse_entry, serialize_algebra
from .exactla import GF, QQ, Field, LinearMap, Matrix, QuotientSpace, Subspace, field_from_string
from .gamma import check_gamma_injectivity, check_split_sequence, gamma, psi, psi_tilde
from .homology import (
    CapacityError,
    chevalley_eilenberg_homology,
    induced_homology_map,
    leibniz_homology,
)
from .products import (
    exterior_product,
    ideal_products,
    lie_exterior_square,
    lie_tensor_square,
    square_products,
    tensor_product,
    theta,
)
from .report import SequenceReport
from .suite import emit_report, run_suite
from .theorems import (
    central_extension_corollary,
    check_hl2_theorem,
    check_right_exactness,
    check_split_injectivity,
    check_uce_perfect,
    eight_term_audit,
    lie_comparison_check,
    perfect_lie_sequence,
    six_term_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "abelian",
    "abelianization",
    "AlgebraMorphism",
    "CapacityError",
    "CatalogEntry",
    "CatalogError",
    "center",
    "central_extension_corollary",
    "check_gamma_injectivity",
    "check_hl2_theorem",
    "check_right_exactness",
    "check_split_injectivity",
    "check_split_sequence",
    "check_uce_perfect",
    "chevalley_eilenberg_homology",
    "commutator_ideal",
    "CrossedModule",
    "direct_sum",
    "eight_term_audit",
    "emit_report",
    "Extension",
    "extension_from",
    "exterior_product",
    "Field",
    "field_from_string",
    "gamma",
    "GF",
    "Ideal",
    "ideal_products",
    "identity_crossed_module",
    "inclusion_crossed_module",
    "induced_homology_map",
    "is_lie",
    "is_perfect",
    "leibniz_homology",
    "LeibnizAlgebra",
    "LeibnizIdentityError",
    "lie_comparison_check",
    "lie_exterior_square",
    "lie_tensor_square",
    "LinearMap",
    "load_catalog",
    "Matrix",
    "parse_algebra",
    "parse_entry",
    "perfect_lie_sequence",
    "psi",
    "psi_tilde",
    "QQ",
    "quotient_algebra",
    "QuotientSpace",
    "run_suite",
    "SequenceReport",
    "serialize_algebra",
    "six_term_sequence",
    "square_products",
    "Subspace",
    "tensor_product",
    "theta",
    "validate_leibniz",
]
