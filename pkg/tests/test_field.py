"""Field layer: exact rationals and prime residue fields."""

import random
from fractions import Fraction

import pytest

from quadfactor import (
    DivisionByZeroError,
    Field,
    FieldMismatchError,
    InvalidModulusError,
    Mod,
    ParseError,
    QQ,
)


def test_rational_arithmetic_goldens():
    a = QQ.scalar(1, 2)
    b = QQ.scalar(1, 3)
    assert a + b == QQ.scalar(5, 6)
    assert a * QQ.one == a
    assert QQ.scalar(3, 4) / QQ.scalar(3, 4) == QQ.one


def test_gf2_characteristic():
    gf2 = Field.gf(2)
    one = gf2.one
    assert one + one == gf2.zero


def test_inverse_goldens():
    assert QQ.scalar(3, 4).denominator == 4
    assert QQ.one / QQ.scalar(3, 4) == QQ.scalar(4, 3)
    gf5 = Field.gf(5)
    assert gf5.scalar(2).inverse() == gf5.scalar(3)
    assert Field.gf(2).scalar(1).inverse() == Field.gf(2).scalar(1)


def test_rational_canonicalization():
    rng = random.Random(20240811)
    for _ in range(200):
        a = rng.randint(-50, 50)
        b = rng.randint(1, 50)
        k = rng.choice([x for x in range(-9, 10) if x])
        assert QQ.scalar(a, b) == QQ.scalar(k * a, k * b)
    # canonical form is a reduced Fraction with positive denominator
    v = QQ.scalar(-6, -4)
    assert v == Fraction(3, 2)


def test_field_axioms_sampled():
    """Associativity/commutativity/distributivity/inverses on random triples."""
    rng = random.Random(99)
    for field in (QQ, Field.gf(7), Field.gf(31)):
        for _ in range(150):
            if field.is_rational:
                a, b, c = (
                    field.scalar(rng.randint(-20, 20), rng.randint(1, 9))
                    for _ in range(3)
                )
            else:
                a, b, c = (
                    field.scalar(rng.randrange(field.modulus)) for _ in range(3)
                )
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == field.zero
            if b != field.zero:
                assert (a / b) * b == a


def test_modulus_validation():
    with pytest.raises(InvalidModulusError):
        Field.gf(4)
    with pytest.raises(InvalidModulusError):
        Field.gf(1)
    with pytest.raises(InvalidModulusError):
        Field.gf(0)
    with pytest.raises(InvalidModulusError):
        Field.gf(-7)
    with pytest.raises(InvalidModulusError):
        Field.gf(2**31)  # beyond the supported modulus range
    # 2**31 - 1 is prime and exactly at the cap
    assert Field.gf(2**31 - 1).modulus == 2**31 - 1


def test_mod_equality_is_strict():
    gf3 = Field.gf(3)
    assert gf3.scalar(1) != 1
    assert gf3.scalar(2) == Mod(2, 3)
    assert gf3.scalar(2) != Field.gf(5).scalar(2)
    assert hash(gf3.scalar(2)) == hash(Mod(5, 3))


def test_cross_field_operations_rejected():
    with pytest.raises(FieldMismatchError):
        Mod(1, 3) + Mod(1, 5)
    with pytest.raises(FieldMismatchError):
        Mod(1, 3) * Mod(2, 7)


def test_division_by_zero():
    gf5 = Field.gf(5)
    with pytest.raises(DivisionByZeroError):
        gf5.one / gf5.zero
    with pytest.raises(DivisionByZeroError):
        gf5.zero.inverse()
    with pytest.raises(DivisionByZeroError):
        QQ.scalar(1, 0)
    # raw rational scalars are stdlib Fractions; their 1/0 is the builtin
    # ZeroDivisionError, and DivisionByZeroError subclasses it so callers can
    # catch both fields uniformly
    with pytest.raises(ZeroDivisionError):
        QQ.one / QQ.zero
    assert issubclass(DivisionByZeroError, ZeroDivisionError)


def test_parse_print_round_trip():
    cases_q = ["0", "7", "-3", "1/2", "-12/7", "100000000000000000001/3"]
    for text in cases_q:
        v = QQ.parse(text)
        assert QQ.parse(QQ.format(v)) == v
    gf7 = Field.gf(7)
    for text in ["0", "1", "6"]:
        v = gf7.parse(text)
        assert gf7.format(v) == text


def test_parse_errors():
    with pytest.raises(ParseError):
        QQ.parse("1/0")
    with pytest.raises(ParseError):
        QQ.parse("a/b")
    with pytest.raises(ParseError):
        QQ.parse("")
    gf5 = Field.gf(5)
    with pytest.raises(ParseError):
        gf5.parse("5")  # residues live in [0, p)
    with pytest.raises(ParseError):
        gf5.parse("-1")
    with pytest.raises(ParseError):
        gf5.parse("1/2")


def test_field_tokens():
    assert Field.from_token("Q") == QQ
    assert Field.from_token("GF 5") == Field.gf(5)
    assert Field.from_token("GF5") == Field.gf(5)
    assert QQ.token() == "Q"
    assert Field.gf(11).token() == "GF 11"
    with pytest.raises(ParseError):
        Field.from_token("R")


def test_scalar_powers_and_repr():
    gf5 = Field.gf(5)
    x = gf5.scalar(2)
    assert x**4 == gf5.one  # Fermat
    assert x**0 == gf5.one
    assert (-x) + x == gf5.zero
    assert bool(gf5.zero) is False and bool(x) is True
