"""Similarity invariants and canonical decompositions of square matrices.

The quantity driving the factorization theory is

    n0(G) = nullity(G) - dim(range(G) /\\ kernel(G)),

the number of kernel directions that G's range misses — equivalently the
number of 1x1 nilpotent blocks in G's canonical form.  This module computes
n0 together with the surrounding invariants, splits a matrix into its
nilpotent and invertible parts (Fitting decomposition), and extracts the
Jordan structure of a nilpotent matrix with a deterministic chain basis.

All transforms are returned explicitly so callers can verify round trips:
``fitting`` gives S with S^-1 G S = N (+) B, and ``nilpotent_structure``
gives T with T^-1 N T = 0_z (+) J_{k_1} (+) ... (+) J_{k_m}, blocks on the
subdiagonal convention, size-1 blocks first, larger sizes descending.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConstructionError, NotNilpotentError, NotSquareError
from .matrix import IncrementalSpan, Matrix, SubspaceBasis, block_diag, hstack


def n0(g: Matrix) -> int:
    """Number of kernel directions outside the range: n(G) - dim(R(G) /\\ N(G))."""
    if not g.is_square:
        raise NotSquareError("n0 is defined for square matrices")
    inter = g.colspace().intersect(g.nullspace())
    return g.nullity() - inter.dim


@dataclass(frozen=True)
class InvariantReport:
    """The similarity invariants of one square matrix."""

    n: int
    rank: int
    nullity: int
    n0: int
    dim_intersection: int
    dim_sum: int

    def as_pairs(self) -> list:
        return [
            ("n", self.n),
            ("rank", self.rank),
            ("nullity", self.nullity),
            ("n0", self.n0),
            ("dim_RcapN", self.dim_intersection),
            ("dim_RplusN", self.dim_sum),
        ]


def invariant_report(g: Matrix) -> InvariantReport:
    """All invariants of G in one pass, cross-checked for consistency."""
    if not g.is_square:
        raise NotSquareError("invariants are defined for square matrices")
    r = g.colspace()
    nsp = g.nullspace()
    inter = r.intersect(nsp).dim
    total = r.sum_dim(nsp)
    rank = r.dim
    nullity = g.rows - rank
    # Modular identity: dim(R+N) + dim(R/\N) = rank + nullity.
    if total + inter != rank + nullity:
        raise ConstructionError("subspace dimension bookkeeping violated")
    return InvariantReport(g.rows, rank, nullity, nullity - inter, inter, total)


@dataclass(frozen=True)
class FittingDecomposition:
    """G = S (N (+) B) S^-1 with N nilpotent and B invertible."""

    transform: Matrix
    nil_dim: int
    nilpotent: Matrix
    invertible: Matrix


def fitting(g: Matrix) -> FittingDecomposition:
    """Split G into nilpotent and invertible parts.

    The transform columns are a canonical basis of kernel(G^n) followed by
    one of range(G^n); n is the matrix order, which always exceeds the
    stabilization index.
    """
    if not g.is_square:
        raise NotSquareError("Fitting decomposition needs a square matrix")
    n = g.rows
    stable = g.matpow(n)
    ker = stable.nullspace()
    ran = stable.colspace()
    nil_dim = ker.dim
    columns = list(ker.vectors) + list(ran.vectors)
    s = Matrix.from_columns(g.field, columns, ambient=n)
    m = s.inverse() @ g @ s
    zero = g.field.zero
    for i in range(n):
        for j in range(n):
            if (i < nil_dim) != (j < nil_dim) and m[i, j] != zero:
                raise ConstructionError("Fitting blocks failed to decouple")
    nil = Matrix(g.field, nil_dim, nil_dim,
                 tuple(m[i, j] for i in range(nil_dim) for j in range(nil_dim)))
    inv_part = Matrix(g.field, n - nil_dim, n - nil_dim,
                      tuple(m[i, j] for i in range(nil_dim, n) for j in range(nil_dim, n)))
    if inv_part.rank() != inv_part.rows:
        raise ConstructionError("invertible part is singular")
    if not nil.matpow(nil_dim).is_zero():
        raise ConstructionError("nilpotent part does not vanish")
    return FittingDecomposition(s, nil_dim, nil, inv_part)


@dataclass(frozen=True)
class NilpotentStructure:
    """T^-1 N T = 0_z (+) J_{k_1} (+) ... (+) J_{k_m} (sizes descending, >= 2)."""

    transform: Matrix
    block_sizes: tuple
    zero_block_count: int

    @property
    def num_blocks(self) -> int:
        """Number of blocks of size >= 2 (= dim(R(N) /\\ N(N)))."""
        return len(self.block_sizes)

    def canonical(self, field) -> Matrix:
        parts = [Matrix.zero(field, self.zero_block_count)]
        parts += [Matrix.jordan_block(field, k) for k in self.block_sizes]
        return block_diag(field, parts)


def nilpotent_structure(n_mat: Matrix) -> NilpotentStructure:
    """Jordan structure of a nilpotent matrix via deterministic chain lifting.

    Chain tops are chosen greedily, highest power first, scanning the
    canonical kernel bases in order; each top v of height h contributes the
    columns v, Nv, ..., N^(h-1)v.  Size-1 chains come first in the transform,
    then chains by descending height.
    """
    if not n_mat.is_square:
        raise NotSquareError("nilpotent structure needs a square matrix")
    q = n_mat.rows
    field = n_mat.field
    if q == 0:
        return NilpotentStructure(Matrix.identity(field, 0), (), 0)
    # Powers N^0 .. N^d where d is the nilpotency index.
    powers = [Matrix.identity(field, q)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] @ n_mat)
        if len(powers) > q + 1:
            raise NotNilpotentError("matrix is not nilpotent")
    d = len(powers) - 1
    ranks = [p.rank() for p in powers]
    # blocks_ge[j] = number of Jordan blocks of size >= j.
    blocks_ge = {j: ranks[j - 1] - ranks[j] for j in range(1, d + 1)}

    tops = []  # (vector, height), discovered tallest first
    for j in range(d, 0, -1):
        span = IncrementalSpan(field, q)
        for v in powers[j - 1].nullspace().vectors:  # basis of ker N^(j-1)
            span.try_add(v)
        for vec, height in tops:
            img = vec
            for _ in range(height - j):
                img = n_mat.apply(img)
            if not span.try_add(img):
                raise ConstructionError("chain images collapsed unexpectedly")
        wanted = blocks_ge[j] - sum(1 for _, h in tops if h > j)
        for cand in powers[j].nullspace().vectors:  # basis of ker N^j
            if wanted == 0:
                break
            if span.try_add(cand):
                tops.append((cand, j))
                wanted -= 1
        if wanted:
            raise ConstructionError("could not complete chain tops")

    singles = [v for v, h in tops if h == 1]
    talls = [(v, h) for v, h in tops if h >= 2]
    columns = list(singles)
    sizes = []
    for v, h in talls:  # already in descending height order
        sizes.append(h)
        vec = v
        for _ in range(h):
            columns.append(vec)
            vec = n_mat.apply(vec)
    t = Matrix.from_columns(field, columns, ambient=q)
    result = NilpotentStructure(t, tuple(sizes), len(singles))
    if t.inverse() @ n_mat @ t != result.canonical(field):
        raise ConstructionError("chain basis failed to canonicalize the matrix")
    return result
