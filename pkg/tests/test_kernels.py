"""Kernel backend selection and pure/compiled agreement."""

import random

import pytest

from quadfactor import Field, invariant_report
from quadfactor import kernels
from quadfactor.kernels import available_backends, gf_slow
from quadfactor.oracle import EnumerationDomain

backends = available_backends()
needs_compiled = pytest.mark.skipif(
    "compiled" not in backends, reason="compiled kernel not built"
)


def test_backend_selection():
    assert kernels.BACKEND in ("pure", "compiled")
    assert set(backends) <= {"pure", "compiled"}
    assert backends["pure"] is gf_slow
    for name in ("decode", "encode", "matmul", "mat_rank", "invariants",
                 "invariant_table", "shifted_rank_table", "property_codes",
                 "multiply_sets"):
        assert callable(getattr(kernels, name))


def test_pure_encode_decode_round_trip():
    for n, p in ((1, 2), (2, 3), (3, 2)):
        for code in range(p ** (n * n)):
            flat = gf_slow.decode(code, n, p)
            assert len(flat) == n * n
            assert all(0 <= x < p for x in flat)
            assert gf_slow.encode(flat, n, p) == code


def test_pure_invariants_against_matrix_layer():
    """The packed-kernel invariants must equal the Matrix-layer report."""
    dom = EnumerationDomain(Field.gf(2), 2)
    for code in range(dom.size):
        flat = gf_slow.decode(code, 2, 2)
        rank, nullity, n0v, dim_sum = gf_slow.invariants(flat, 2, 2)
        rep = invariant_report(dom.decode(code))
        assert (rank, nullity, n0v, dim_sum) == (
            rep.rank, rep.nullity, rep.n0, rep.dim_sum
        )

    dom3 = EnumerationDomain(Field.gf(3), 2)
    rng = random.Random(12)
    for code in rng.sample(range(dom3.size), 50):
        flat = gf_slow.decode(code, 2, 3)
        rep = invariant_report(dom3.decode(code))
        assert gf_slow.invariants(flat, 2, 3) == (
            rep.rank, rep.nullity, rep.n0, rep.dim_sum
        )


def test_pure_shifted_rank_table():
    # shifted_rank_table(n, p, c)[code] = rank(I - c*G)
    table = gf_slow.shifted_rank_table(2, 3, 2)
    dom = EnumerationDomain(Field.gf(3), 2)
    eye = dom.decode(1 + 3 ** 3)  # I
    for code in (0, 5, 40, 80):
        g = dom.decode(code)
        assert table[code] == (eye - g.scale(g.field.scalar(2))).rank()


def test_pure_multiply_sets():
    n, p = 2, 2
    # {J2-like} * {J2-like}: nilpotents of rank 1 multiply into rank <= 1
    left = gf_slow.property_codes(n, p, "squarezero")
    out = gf_slow.multiply_sets(left, left, n, p)
    assert out == sorted(out)
    got = set(out)
    for a in left:
        for b in left:
            fa = gf_slow.decode(a, n, p)
            fb = gf_slow.decode(b, n, p)
            assert gf_slow.encode(gf_slow.matmul(fa, fb, n, p), n, p) in got
    assert len(got) <= len(left) * len(left)


def test_pure_property_kind_validation():
    with pytest.raises(ValueError):
        gf_slow.property_codes(2, 2, "orthogonal")


@needs_compiled
def test_backends_agree_on_tables():
    fast = backends["compiled"]
    for n, p in ((1, 2), (2, 2), (2, 3), (3, 2), (2, 5)):
        assert list(fast.invariant_table(n, p)) == list(gf_slow.invariant_table(n, p))
        for c in range(1, p):
            assert list(fast.shifted_rank_table(n, p, c)) == list(
                gf_slow.shifted_rank_table(n, p, c)
            )
        for kind in ("idempotent", "squarezero"):
            assert list(fast.property_codes(n, p, kind)) == list(
                gf_slow.property_codes(n, p, kind)
            )


@needs_compiled
def test_backends_agree_on_products_and_primitives():
    fast = backends["compiled"]
    rng = random.Random(7)
    for n, p in ((2, 2), (2, 3), (3, 2)):
        size = p ** (n * n)
        lefts = rng.sample(range(size), min(size, 12))
        rights = rng.sample(range(size), min(size, 12))
        assert fast.multiply_sets(lefts, rights, n, p) == gf_slow.multiply_sets(
            lefts, rights, n, p
        )
        for _ in range(25):
            a = rng.randrange(size)
            b = rng.randrange(size)
            fa, fb = gf_slow.decode(a, n, p), gf_slow.decode(b, n, p)
            assert tuple(fast.decode(a, n, p)) == fa
            assert fast.encode(fa, n, p) == a
            assert tuple(fast.matmul(fa, fb, n, p)) == gf_slow.matmul(fa, fb, n, p)
            assert fast.mat_rank(fa, n, n, p) == gf_slow.mat_rank(fa, n, n, p)
            assert fast.invariants(fa, n, p) == gf_slow.invariants(fa, n, p)
