"""Exact scalar arithmetic over the rationals and prime fields GF(p).

Scalars are plain values: ``fractions.Fraction`` for the rationals and
:class:`Mod` residues for GF(p).  Both are immutable, hashable, and kept in
a unique canonical form (lowest terms / least nonnegative residue), so
equality of values is equality of representations.  Python integers coerce
into either kind inside arithmetic expressions, which keeps matrix code and
tests readable.

A :class:`Field` descriptor bundles construction, parsing and printing of
scalars for one field; matrices carry their descriptor around and refuse to
mix fields.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import DivisionByZeroError, FieldMismatchError, InvalidModulusError, ParseError

#: Largest accepted prime modulus.  Keeps p*p inside 64-bit signed range for
#: the compiled kernels, and trial division cheap.
MAX_MODULUS = 2**31 - 1


def is_prime(p: int) -> bool:
    """Deterministic primality test by trial division (valid for p < 2**31)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    top = isqrt(p)
    while d <= top:
        if p % d == 0:
            return False
        d += 2
    return True


class Mod:
    """An element of GF(p), stored as the least nonnegative residue.

    Arithmetic accepts plain ints (reduced mod p) but refuses residues from
    a different modulus.  Equality is strict: a Mod never equals an int.
    """

    __slots__ = ("residue", "modulus")

    def __init__(self, residue: int, modulus: int):
        self.residue = residue % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"GF({self.modulus}) and GF({other.modulus}) elements cannot mix"
                )
            return other
        if isinstance(other, int):
            return Mod(other, self.modulus)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Mod(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Mod(self.residue - other.residue, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Mod(other.residue - self.residue, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Mod(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "Mod":
        if self.residue == 0:
            raise DivisionByZeroError(f"0 has no inverse in GF({self.modulus})")
        # Fermat: p is prime, so a**(p-2) inverts a.
        return Mod(pow(self.residue, self.modulus - 2, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return Mod(-self.residue, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Mod(pow(self.residue, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        return (
            isinstance(other, Mod)
            and self.modulus == other.modulus
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"Mod({self.residue}, {self.modulus})"

    def __str__(self):
        return str(self.residue)


class Field:
    """Descriptor of an exact coefficient field: Q or GF(p).

    Use :meth:`Field.rationals` / :meth:`Field.gf` (or the module constant
    ``QQ``) instead of the raw constructor.
    """

    __slots__ = ("modulus",)

    def __init__(self, modulus: int | None = None):
        if modulus is not None:
            if not isinstance(modulus, int) or modulus < 2 or modulus > MAX_MODULUS:
                raise InvalidModulusError(f"modulus must be a prime in [2, {MAX_MODULUS}]")
            if not is_prime(modulus):
                raise InvalidModulusError(f"{modulus} is not prime")
        self.modulus = modulus

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else Mod(0, self.modulus)

    @property
    def one(self):
        return Fraction(1) if self.is_rational else Mod(1, self.modulus)

    def scalar(self, value, den: int | None = None):
        """Build a canonical scalar from ints, Fractions or same-field values."""
        if den is not None:
            if self.is_rational:
                if den == 0:
                    raise DivisionByZeroError("zero denominator")
                return Fraction(value, den)
            return self.scalar(value) / self.scalar(den)
        if self.is_rational:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
        else:
            if isinstance(value, Mod):
                if value.modulus != self.modulus:
                    raise FieldMismatchError(
                        f"GF({value.modulus}) value given to GF({self.modulus})"
                    )
                return value
            if isinstance(value, int):
                return Mod(value, self.modulus)
        raise FieldMismatchError(f"cannot interpret {value!r} as an element of {self}")

    def check(self, value):
        """Validate that ``value`` is a scalar of this field; return it."""
        if self.is_rational:
            if isinstance(value, Fraction):
                return value
        else:
            if isinstance(value, Mod) and value.modulus == self.modulus:
                return value
        raise FieldMismatchError(f"{value!r} is not an element of {self}")

    def parse(self, text: str):
        """Parse the text form of one scalar.

        Rationals: optional sign, integer, optional ``/`` and positive
        integer denominator.  GF(p): a bare canonical residue in [0, p).
        """
        text = text.strip()
        if self.is_rational:
            try:
                value = Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad rational scalar {text!r}") from exc
            return value
        if not text.isdigit():
            raise ParseError(f"bad GF({self.modulus}) scalar {text!r}")
        value = int(text)
        if value >= self.modulus:
            raise ParseError(f"residue {value} out of range for GF({self.modulus})")
        return Mod(value, self.modulus)

    def format(self, value) -> str:
        """Canonical text form of one scalar (round-trips through parse)."""
        return str(self.check(value))

    def token(self) -> str:
        """Field header token used in matrix files: ``Q`` or ``GF <p>``."""
        return "Q" if self.is_rational else f"GF {self.modulus}"

    @classmethod
    def from_token(cls, text: str) -> "Field":
        """Inverse of :meth:`token`; also accepts the compact ``GF<p>`` form."""
        parts = text.strip().split()
        if parts == ["Q"]:
            return cls.rationals()
        if len(parts) == 2 and parts[0] == "GF" and parts[1].isdigit():
            p = int(parts[1])
        elif len(parts) == 1 and parts[0].startswith("GF") and parts[0][2:].isdigit():
            p = int(parts[0][2:])
        else:
            raise ParseError(f"bad field designator {text!r}")
        try:
            return cls.gf(p)
        except InvalidModulusError as exc:
            raise ParseError(str(exc)) from exc

    def __eq__(self, other):
        return isinstance(other, Field) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    def __repr__(self):
        return "QQ" if self.is_rational else f"Field.gf({self.modulus})"


#: The field of rational numbers.
QQ = Field.rationals()
