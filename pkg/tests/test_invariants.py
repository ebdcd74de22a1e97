import random

import pytest

from quadfactor import (
    Field,
    Matrix,
    NotNilpotentError,
    NotSquareError,
    QQ,
    block_diag,
    conjugate,
    fitting,
    invariant_report,
    n0,
    nilpotent_structure,
)
from quadfactor.oracle import SplitMix64, random_invertible, random_matrix

GF2 = Field.gf(2)
GF5 = Field.gf(5)


def test_n0_goldens():
    """n0 counts kernel directions leaking out of the range.

    A single nilpotent Jordan block keeps its whole kernel inside the range,
    so n0 = 0.  The zero matrix has an empty range, so n0 = n.  Direct sums
    add up.
    """
    for k in range(2, 7):
        assert n0(Matrix.jordan_block(QQ, k)) == 0
    for n in range(0, 4):
        assert n0(Matrix.zero(QQ, n)) == n
    g = block_diag(QQ, [Matrix.jordan_block(QQ, 2), Matrix.zero(QQ, 1)])
    assert n0(g) == 1
    assert n0(Matrix.identity(GF5, 3)) == 0
    with pytest.raises(NotSquareError):
        n0(Matrix.zero(QQ, 2, 3))


def test_invariant_report_goldens():
    rep = invariant_report(Matrix.identity(QQ, 3))
    assert (rep.n, rep.rank, rep.nullity, rep.n0) == (3, 3, 0, 0)
    assert (rep.dim_intersection, rep.dim_sum) == (0, 3)

    rep = invariant_report(Matrix.zero(QQ, 2))
    assert (rep.n, rep.rank, rep.nullity, rep.n0) == (2, 0, 2, 2)
    assert (rep.dim_intersection, rep.dim_sum) == (0, 2)

    rep = invariant_report(Matrix.jordan_block(GF2, 2))
    assert (rep.n, rep.rank, rep.nullity, rep.n0) == (2, 1, 1, 0)
    assert (rep.dim_intersection, rep.dim_sum) == (1, 1)

    assert rep.as_pairs() == [
        ("n", 2), ("rank", 1), ("nullity", 1),
        ("n0", 0), ("dim_RcapN", 1), ("dim_RplusN", 1),
    ]


def test_report_internal_consistency_random():
    rng = SplitMix64(101)
    for _ in range(60):
        field = (QQ, GF2, GF5)[rng.below(3)]
        g = random_matrix(rng, field, rng.span(1, 6))
        rep = invariant_report(g)
        assert rep.rank + rep.nullity == rep.n
        assert rep.dim_sum + rep.dim_intersection == rep.rank + rep.nullity
        assert rep.n0 == rep.nullity - rep.dim_intersection
        assert rep.n0 == n0(g)
        assert 0 <= rep.n0 <= rep.nullity


def test_invariants_similarity_and_scaling():
    """rank, nullity and n0 are similarity invariants and scaling invariants."""
    rng = SplitMix64(2025)
    for _ in range(40):
        field = (QQ, GF5)[rng.below(2)]
        n = rng.span(1, 5)
        g = random_matrix(rng, field, n)
        s = random_invertible(rng, field, n)
        c = field.scalar(rng.span(1, 4)) if field.is_rational else field.scalar(rng.span(1, field.modulus - 1))
        for h in (conjugate(s, g), g.scale(c), conjugate(s, g.scale(c))):
            assert invariant_report(h) == invariant_report(g)


def test_fitting_goldens():
    # already nilpotent: no invertible part
    dec = fitting(Matrix.jordan_block(QQ, 3))
    assert dec.nil_dim == 3 and dec.invertible.rows == 0
    # invertible: no nilpotent part
    dec = fitting(Matrix.identity(QQ, 2))
    assert dec.nil_dim == 0 and dec.invertible == Matrix.identity(QQ, 2)
    # mixed block diagonal splits along the obvious line
    g = block_diag(QQ, [Matrix.jordan_block(QQ, 2), Matrix.diagonal(QQ, [3])])
    dec = fitting(g)
    assert dec.nil_dim == 2
    assert dec.invertible == Matrix.diagonal(QQ, [3])


def test_fitting_round_trip_random():
    rng = SplitMix64(887)
    for _ in range(40):
        field = (QQ, GF2, GF5)[rng.below(3)]
        n = rng.span(1, 5)
        g = random_matrix(rng, field, n)
        dec = fitting(g)
        middle = block_diag(field, [dec.nilpotent, dec.invertible])
        assert conjugate(dec.transform, middle) == g
        assert dec.nilpotent.matpow(max(dec.nil_dim, 1)).is_zero() or dec.nil_dim == 0
        assert dec.invertible.rank() == dec.invertible.rows


def test_nilpotent_structure_goldens():
    st = nilpotent_structure(Matrix.zero(QQ, 3))
    assert st.block_sizes == () and st.zero_block_count == 3

    st = nilpotent_structure(Matrix.jordan_block(QQ, 3))
    assert st.block_sizes == (3,) and st.zero_block_count == 0

    m = Matrix.from_rows(QQ, [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    st = nilpotent_structure(m)
    assert st.block_sizes == (2,) and st.zero_block_count == 1
    assert st.num_blocks == 1

    big = block_diag(
        GF2,
        [Matrix.jordan_block(GF2, 3), Matrix.jordan_block(GF2, 2), Matrix.zero(GF2, 2)],
    )
    st = nilpotent_structure(big)
    assert st.block_sizes == (3, 2) and st.zero_block_count == 2


def test_nilpotent_structure_round_trip_random():
    rng = SplitMix64(40961)
    for _ in range(40):
        field = (QQ, GF5)[rng.below(2)]
        # random conjugate of a random Jordan shape
        n = rng.span(1, 6)
        sizes = []
        left = n
        while left >= 2 and rng.below(2):
            k = rng.span(2, left)
            sizes.append(k)
            left -= k
        parts = [Matrix.zero(field, left)]
        parts += [Matrix.jordan_block(field, k) for k in sizes]
        s = random_invertible(rng, field, n)
        nil = conjugate(s, block_diag(field, parts))

        st = nilpotent_structure(nil)
        assert sorted(st.block_sizes, reverse=True) == sorted(sizes, reverse=True)
        assert st.block_sizes == tuple(sorted(st.block_sizes, reverse=True))
        assert sum(st.block_sizes) + st.zero_block_count == n
        assert conjugate(st.transform, st.canonical(field)) == nil
        # blocks of size >= 2 are exactly the range/kernel overlap; the zero
        # blocks are the kernel directions counted by n0
        assert st.num_blocks == invariant_report(nil).dim_intersection
        assert st.zero_block_count == n0(nil)


def test_nilpotent_structure_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        nilpotent_structure(Matrix.identity(QQ, 2))
    # over GF(2) this one is unipotent, never nilpotent
    with pytest.raises(NotNilpotentError):
        nilpotent_structure(Matrix.from_rows(GF2, [[1, 1], [0, 1]]))
    # ... while [[1,1],[1,1]] genuinely squares to zero mod 2
    assert nilpotent_structure(Matrix.from_rows(GF2, [[1, 1], [1, 1]])).block_sizes == (2,)
