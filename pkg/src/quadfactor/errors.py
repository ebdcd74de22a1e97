"""Exception types shared across the package.

Everything derives from QuadfactorError so callers can catch the library's
failures with a single except clause.  ParseError covers all text-format
problems (scalars, matrices, factor specs, witness files); the remaining
classes map one-to-one onto the distinct failure modes of the API.
"""


class QuadfactorError(Exception):
    """Base class for all errors raised by quadfactor."""


class ParseError(QuadfactorError, ValueError):
    """Malformed text input (scalar, matrix, spec or witness syntax)."""


class InvalidModulusError(QuadfactorError, ValueError):
    """Prime-field modulus is composite, too small, or too large."""


class DivisionByZeroError(QuadfactorError, ZeroDivisionError):
    """Division by the zero scalar of a field."""


class FieldMismatchError(QuadfactorError, TypeError):
    """Operands belong to different fields."""


class ShapeMismatchError(QuadfactorError, ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class AmbientMismatchError(QuadfactorError, ValueError):
    """Subspaces live in different ambient dimensions."""


class NotSquareError(QuadfactorError, ValueError):
    """A square matrix was required."""


class SingularMatrixError(QuadfactorError, ValueError):
    """Matrix inversion attempted on a singular matrix."""


class NotNilpotentError(QuadfactorError, ValueError):
    """Nilpotent input was required (N^n must vanish)."""


class BadBlockSizeError(QuadfactorError, ValueError):
    """Jordan block size outside the supported range."""


class BadParameterError(QuadfactorError, ValueError):
    """Numeric parameter violates a documented precondition."""


class InfeasibleError(QuadfactorError, ValueError):
    """Requested factorization fails the feasibility conditions."""


class BadRankError(QuadfactorError, ValueError):
    """Requested factor rank/nullity outside the realizable interval."""


class ZeroScalarError(QuadfactorError, ValueError):
    """Scale factors of scaled idempotents must be nonzero."""


class UnsupportedFactorShapeError(QuadfactorError, ValueError):
    """More square-zero factors requested than the theory covers (l > 2)."""


class NotScaledIdempotentError(QuadfactorError, ValueError):
    """Input is not a nonzero multiple of an idempotent matrix."""


class ConstructionError(QuadfactorError, RuntimeError):
    """A constructed factorization failed its own post-verification.

    This signals an internal defect, never a property of the input.
    """


class DomainTooLargeError(QuadfactorError, ValueError):
    """Exhaustive enumeration domain exceeds the tractability bound."""


class BadTargetError(QuadfactorError, ValueError):
    """Random-instance target structure is inconsistent."""
