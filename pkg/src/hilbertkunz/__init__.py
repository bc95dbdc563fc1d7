"""Exact Hilbert-Kunz functions and multiplicities in graded dimension two."""

from .engine import (
    HKFunctionTable,
    HKRow,
    graded_piece_colength,
    hk_table,
    hk_value,
    syzygy_h0,
)
from .errors import (
    CapExceededError,
    InternalError,
    NotPrimaryError,
    ParseError,
    UserError,
)
from .field import FieldElement, PrimeField
from .linalg import MatrixFF, RankBuilder
from .p1 import (
    NotStabilized,
    SplittingType,
    analyze_ideal,
    hn_from_splittings,
    splitting_type,
    verify_h0_profile,
)
from .poly import Poly, graded_piece_basis, parse_poly
from .reconstruct import (
    AmbiguousReconstruction,
    DenominatorBound,
    QuadraticIrrational,
    default_denominator_bound,
    estimate_ehk,
    nu2_from_ehk,
    rational_round,
)
from .ring import GradedRing, IdealSpec, check_primary
from .slopes import (
    HNData,
    add_generator,
    ehk_from_hn,
    ehk_n3,
    ehk_plane_curve,
    ehk_strongly_semistable,
    ehk_t2,
    validate,
)
from .staircase import MonomialIdeal2, staircase_colength

__all__ = [
    "AmbiguousReconstruction",
    "CapExceededError",
    "DenominatorBound",
    "FieldElement",
    "GradedRing",
    "HKFunctionTable",
    "HKRow",
    "HNData",
    "IdealSpec",
    "InternalError",
    "MatrixFF",
    "MonomialIdeal2",
    "NotPrimaryError",
    "NotStabilized",
    "ParseError",
    "Poly",
    "PrimeField",
    "QuadraticIrrational",
    "RankBuilder",
    "SplittingType",
    "UserError",
    "add_generator",
    "analyze_ideal",
    "check_primary",
    "default_denominator_bound",
    "ehk_from_hn",
    "ehk_n3",
    "ehk_plane_curve",
    "ehk_strongly_semistable",
    "ehk_t2",
    "estimate_ehk",
    "graded_piece_basis",
    "graded_piece_colength",
    "hk_table",
    "hk_value",
    "hn_from_splittings",
    "nu2_from_ehk",
    "parse_poly",
    "rational_round",
    "splitting_type",
    "staircase_colength",
    "syzygy_h0",
    "validate",
    "verify_h0_profile",
]

__version__ = "0.1.0"
