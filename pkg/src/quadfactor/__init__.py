"""Exact decide-and-construct factorization toolkit.

Square matrices over Q or GF(p) are tested against, and factored into,
products of (scaled) idempotent and square-zero matrices with prescribed
nullities.  Decisions evaluate rank/nullity inequalities; constructions emit
self-verified witnesses; an exhaustive small-field oracle provides
independent ground truth.
"""

from .errors import (
    AmbientMismatchError,
    BadBlockSizeError,
    BadParameterError,
    BadRankError,
    BadTargetError,
    ConstructionError,
    DivisionByZeroError,
    DomainTooLargeError,
    FieldMismatchError,
    InfeasibleError,
    InvalidModulusError,
    NotNilpotentError,
    NotScaledIdempotentError,
    NotSquareError,
    ParseError,
    QuadfactorError,
    ShapeMismatchError,
    SingularMatrixError,
    UnsupportedFactorShapeError,
    ZeroScalarError,
)
from .field import Field, Mod, QQ
from .matrix import (
    Matrix,
    SubspaceBasis,
    block_diag,
    conjugate,
    hstack,
    standard_basis,
    vstack,
)
from .invariants import (
    FittingDecomposition,
    InvariantReport,
    NilpotentStructure,
    fitting,
    invariant_report,
    n0,
    nilpotent_structure,
)
from .factor import (
    ConditionReport,
    Constructive,
    Decision,
    FactorRole,
    FactorSpec,
    VerificationReport,
    Witness,
    WitnessFactor,
    decide,
    factor_for_spec,
    factor_idempotents_squarezero_pair,
    factor_scaled_idempotents,
    idempotent_chain,
    split_jordan_block,
    split_jordan_sum,
    squarezero_pair,
    verify_witness,
)
from .oracle import (
    CrossCheckReport,
    EnumerationDomain,
    InstanceTarget,
    RandomInstance,
    SplitMix64,
    cross_check,
    enumerate_with_property,
    product_set,
    random_feasible_case,
    random_instance,
    random_invertible,
    random_matrix,
    random_scalar,
    random_squarezero,
    random_squarezero_product_case,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError",
    "BadBlockSizeError",
    "BadParameterError",
    "BadRankError",
    "BadTargetError",
    "ConditionReport",
    "ConstructionError",
    "Constructive",
    "CrossCheckReport",
    "Decision",
    "DivisionByZeroError",
    "DomainTooLargeError",
    "EnumerationDomain",
    "FactorRole",
    "FactorSpec",
    "Field",
    "FieldMismatchError",
    "FittingDecomposition",
    "InfeasibleError",
    "InstanceTarget",
    "InvalidModulusError",
    "InvariantReport",
    "Matrix",
    "Mod",
    "NilpotentStructure",
    "NotNilpotentError",
    "NotScaledIdempotentError",
    "NotSquareError",
    "ParseError",
    "QQ",
    "QuadfactorError",
    "RandomInstance",
    "ShapeMismatchError",
    "SingularMatrixError",
    "SplitMix64",
    "SubspaceBasis",
    "UnsupportedFactorShapeError",
    "VerificationReport",
    "Witness",
    "WitnessFactor",
    "ZeroScalarError",
    "block_diag",
    "conjugate",
    "cross_check",
    "decide",
    "enumerate_with_property",
    "factor_for_spec",
    "factor_idempotents_squarezero_pair",
    "factor_scaled_idempotents",
    "fitting",
    "hstack",
    "idempotent_chain",
    "invariant_report",
    "n0",
    "nilpotent_structure",
    "product_set",
    "random_feasible_case",
    "random_instance",
    "random_invertible",
    "random_matrix",
    "random_scalar",
    "random_squarezero",
    "random_squarezero_product_case",
    "split_jordan_block",
    "split_jordan_sum",
    "squarezero_pair",
    "standard_basis",
    "verify_witness",
    "vstack",
]
