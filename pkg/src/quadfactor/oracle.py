"""Brute-force ground truth over small prime fields, plus seeded generators.

The enumeration side identifies an n x n matrix over GF(p) with its *code*:
the integer whose base-p digits (least significant first) are the entries in
row-major order, entry (i, j) at digit i*n + j.  Codes make exhaustive sweeps
cheap, deduplication exact, and golden values stable.  The decision
inequalities are evaluated from a precomputed per-code invariant table, so a
full domain/spec cross-check costs integer comparisons plus one staged
product-set computation.

The random side is a fixed, documented 64-bit generator (splitmix64) so
sampled instances are reproducible bit-for-bit across platforms and across
reimplementations in other languages.
"""

from dataclasses import dataclass

from . import kernels
from .errors import (
    BadParameterError,
    BadTargetError,
    DomainTooLargeError,
    FieldMismatchError,
    ShapeMismatchError,
)
from .factor import FactorSpec
from .field import Field
from .matrix import Matrix, block_diag, conjugate

#: Largest p**(n*n) an EnumerationDomain accepts.  2**24 keeps the full
#: exhaustive suite in the minutes range: GF(2) up to n=4, GF(3) up to n=3,
#: GF(5) and GF(7) up to n=2.
TRACTABLE_LIMIT = 1 << 24

_TABLE_CACHE = {}
_SHIFTED_CACHE = {}
_PROPERTY_CACHE = {}
_POOL_CACHE = {}
_STAGE_CACHE = {}


@dataclass(frozen=True)
class EnumerationDomain:
    """All n x n matrices over one small prime field."""

    field: Field
    n: int

    def __post_init__(self):
        if self.field.is_rational:
            raise BadParameterError("exhaustive enumeration needs a finite prime field")
        if self.n < 1:
            raise BadParameterError("matrix order must be at least 1")
        if self.size > TRACTABLE_LIMIT:
            raise DomainTooLargeError(
                f"GF({self.p}) order {self.n} has {self.size} matrices, "
                f"beyond the tractability cap {TRACTABLE_LIMIT}"
            )

    @property
    def p(self) -> int:
        return self.field.modulus

    @property
    def size(self) -> int:
        return self.p ** (self.n * self.n)

    def decode(self, code: int) -> Matrix:
        """Matrix for a code (inverse of encode)."""
        flat = kernels.decode(code, self.n, self.p)
        rows = [flat[i * self.n : (i + 1) * self.n] for i in range(self.n)]
        return Matrix.from_rows(self.field, rows)

    def encode(self, m: Matrix) -> int:
        if m.field != self.field:
            raise FieldMismatchError("matrix field does not match the domain")
        if m.rows != self.n or m.cols != self.n:
            raise ShapeMismatchError("matrix order does not match the domain")
        flat = tuple(entry.residue for entry in m.data)
        return kernels.encode(flat, self.n, self.p)


def _invariant_table(dom: EnumerationDomain):
    key = (dom.p, dom.n)
    table = _TABLE_CACHE.get(key)
    if table is None:
        table = kernels.invariant_table(dom.n, dom.p)
        _TABLE_CACHE[key] = table
    return table


def _shifted_table(dom: EnumerationDomain, c: int):
    key = (dom.p, dom.n, c)
    table = _SHIFTED_CACHE.get(key)
    if table is None:
        table = kernels.shifted_rank_table(dom.n, dom.p, c)
        _SHIFTED_CACHE[key] = table
    return table


def _property_codes(dom: EnumerationDomain, kind: str, value=None):
    if kind == "all":
        return range(dom.size)
    if kind == "nullity":
        if value is None:
            raise BadParameterError("property 'nullity' needs a target value")
        table = _invariant_table(dom)
        return [code for code in range(dom.size) if table[code][1] == value]
    if kind in ("idempotent", "squarezero"):
        key = (dom.p, dom.n, kind)
        codes = _PROPERTY_CACHE.get(key)
        if codes is None:
            codes = tuple(kernels.property_codes(dom.n, dom.p, kind))
            _PROPERTY_CACHE[key] = codes
        return codes
    raise BadParameterError(f"unknown matrix property {kind!r}")


def enumerate_with_property(dom: EnumerationDomain, kind: str, value=None) -> list:
    """Every matrix in the domain with the given property, ascending by code.

    ``kind`` is one of ``"all"``, ``"idempotent"``, ``"squarezero"`` or
    ``"nullity"`` (the latter takes the target nullity as ``value``).
    """
    return [dom.decode(code) for code in _property_codes(dom, kind, value)]


def _role_pool(dom: EnumerationDomain, role: str, nullity: int):
    """Codes of all idempotent/square-zero matrices with one exact nullity."""
    key = (dom.p, dom.n, role, nullity)
    pool = _POOL_CACHE.get(key)
    if pool is None:
        kind = "idempotent" if role == "idem" else "squarezero"
        table = _invariant_table(dom)
        pool = tuple(
            code for code in _property_codes(dom, kind) if table[code][1] == nullity
        )
        _POOL_CACHE[key] = pool
    return pool


def _staged_codes(dom: EnumerationDomain, stages: tuple):
    """Product set after multiplying the staged factor pools, left to right.

    ``stages`` is a tuple of ("idem"|"sqz", nullity) pairs.  Results are
    cached per prefix, so sweeps over many related specs share almost all of
    the work.
    """
    key = (dom.p, dom.n, stages)
    out = _STAGE_CACHE.get(key)
    if out is None:
        if not stages:
            out = (dom.encode(Matrix.identity(dom.field, dom.n)),)
        else:
            prefix = _staged_codes(dom, stages[:-1])
            role, nullity = stages[-1]
            pool = _role_pool(dom, role, nullity)
            out = tuple(kernels.multiply_sets(list(prefix), list(pool), dom.n, dom.p))
        _STAGE_CACHE[key] = out
    return out


def product_codes(dom: EnumerationDomain, spec: FactorSpec) -> list:
    """Sorted codes of every product realizable with the spec's shape.

    Scalars commute with everything, so (c1 E1)...(ck Ek) Z1...Zl equals
    (c1...ck) * (E1...Ek Z1...Zl); the staged enumeration runs once on the
    unscaled shape and the combined scalar is applied afterwards.
    """
    stages = tuple(
        [("idem", v) for v in spec.idem_nullities]
        + [("sqz", v) for v in spec.sqz_nullities]
    )
    base = _staged_codes(dom, stages)
    combined = dom.field.one
    for c in spec.field_scalars(dom.field):
        combined = combined * c
    if combined == dom.field.one:
        return list(base)
    r = combined.residue
    scaled = []
    for code in base:
        flat = kernels.decode(code, dom.n, dom.p)
        scaled.append(
            kernels.encode(tuple((x * r) % dom.p for x in flat), dom.n, dom.p)
        )
    scaled.sort()
    return scaled


def product_set(dom: EnumerationDomain, spec: FactorSpec) -> list:
    """product_codes, decoded to matrices (ascending code order)."""
    return [dom.decode(code) for code in product_codes(dom, spec)]


def feasible_codes(dom: EnumerationDomain, spec: FactorSpec) -> list:
    """Codes passing the decision inequalities, straight off the tables.

    This mirrors decide() exactly but runs on precomputed integers (see the
    bridge test pinning the two against each other), which is what makes
    whole-domain cross-checks affordable.
    """
    table = _invariant_table(dom)
    n = dom.n
    sum_idem = sum(spec.idem_nullities)
    all_nullities = spec.idem_nullities + spec.sqz_nullities
    max_nullity = max(all_nullities, default=0)
    if any(2 * m < n for m in spec.sqz_nullities):
        # No square-zero matrix of order n has nullity below n/2.
        return []
    if spec.l == 0:
        combined = dom.field.one
        for c in spec.field_scalars(dom.field):
            combined = combined * c
        cres = (dom.field.one / combined).residue
        shifted = _shifted_table(dom, cres)
        return [
            code
            for code in range(dom.size)
            if max_nullity <= table[code][1] and shifted[code] <= sum_idem
        ]
    out = []
    if spec.l == 2:
        for code in range(dom.size):
            rank, nullity, n0v, _ = table[code]
            if max_nullity <= nullity and rank <= sum_idem + n0v:
                out.append(code)
    else:
        budget = sum_idem + spec.sqz_nullities[0]
        for code in range(dom.size):
            _, nullity, _, dim_sum = table[code]
            if max_nullity <= nullity and dim_sum <= budget:
                out.append(code)
    return out


@dataclass(frozen=True)
class Mismatch:
    """One matrix on which the decision and the exhaustive truth disagree."""

    code: int
    matrix: Matrix
    feasible: bool
    in_product_set: bool


@dataclass(frozen=True)
class CrossCheckReport:
    domain: EnumerationDomain
    spec: FactorSpec
    checked: int
    feasible_count: int
    product_count: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cross_check(dom: EnumerationDomain, spec: FactorSpec) -> CrossCheckReport:
    """Compare decision feasibility with actual product membership, domain-wide.

    An empty mismatch tuple is the exhaustive confirmation that the decision
    inequalities characterize the product set for this domain and spec.
    """
    member = set(product_codes(dom, spec))
    feasible = set(feasible_codes(dom, spec))
    bad = sorted(member.symmetric_difference(feasible))
    mismatches = tuple(
        Mismatch(code, dom.decode(code), code in feasible, code in member)
        for code in bad
    )
    return CrossCheckReport(
        dom, spec, dom.size, len(feasible), len(member), mismatches
    )


# ---------------------------------------------------------------------------
# Seeded randomness
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: add the 64-bit golden-ratio constant, then finalize-mix.

    Constants are the published reference ones (0x9E3779B97F4A7C15 increment;
    0xBF58476D1CE4E5B9 / 0x94D049BB133111EB multipliers with 30/27/31 shifts).
    Chosen over platform RNGs so every sampled instance is reproducible from
    its integer seed alone, in any language.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), rejection sampled (no modulo bias)."""
        if bound <= 0:
            raise BadParameterError("bound must be positive")
        limit = (_MASK64 + 1) - ((_MASK64 + 1) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound

    def span(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends included."""
        if hi < lo:
            raise BadParameterError("empty range")
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        if not seq:
            raise BadParameterError("cannot choose from an empty sequence")
        return seq[self.below(len(seq))]


def random_scalar(rng: SplitMix64, field: Field, span: int = 10, nonzero: bool = False):
    """Random field element; for the rationals an integer in [-span, span]."""
    while True:
        if field.is_rational:
            value = field.scalar(rng.below(2 * span + 1) - span)
        else:
            value = field.scalar(rng.below(field.modulus))
        if value != field.zero or not nonzero:
            return value


def random_matrix(rng, field, rows, cols=None, span=10):
    if cols is None:
        cols = rows
    data = [
        [random_scalar(rng, field, span) for _ in range(cols)] for _ in range(rows)
    ]
    return Matrix.from_rows(field, data)


def random_invertible(rng, field, n, span=10):
    """Rejection-sample a random matrix until it is invertible."""
    while True:
        s = random_matrix(rng, field, n, span=span)
        if s.rank() == n:
            return s


@dataclass(frozen=True)
class InstanceTarget:
    """Similarity-class recipe: zero block, Jordan sizes, invertible diagonal."""

    zero_blocks: int
    jordan_blocks: tuple
    invertible_diag: tuple

    def __post_init__(self):
        object.__setattr__(self, "jordan_blocks", tuple(self.jordan_blocks))
        object.__setattr__(self, "invertible_diag", tuple(self.invertible_diag))

    @property
    def order(self) -> int:
        return self.zero_blocks + sum(self.jordan_blocks) + len(self.invertible_diag)


@dataclass(frozen=True)
class RandomInstance:
    """A generated matrix together with its provenance.

    matrix = transform @ canonical @ transform^{-1} holds exactly, so every
    similarity invariant of ``matrix`` can be read off ``target`` directly.
    """

    seed: int
    matrix: Matrix
    canonical: Matrix
    transform: Matrix
    target: InstanceTarget


def canonical_form(field: Field, target: InstanceTarget) -> Matrix:
    """0 block, then Jordan blocks, then the invertible diagonal."""
    parts = [Matrix.zero(field, target.zero_blocks)]
    parts.extend(Matrix.jordan_block(field, k) for k in target.jordan_blocks)
    if target.invertible_diag:
        parts.append(
            Matrix.diagonal(field, [field.scalar(d) for d in target.invertible_diag])
        )
    return block_diag(field, parts)


def _validate_target(field: Field, n: int, target: InstanceTarget):
    if target.zero_blocks < 0:
        raise BadTargetError("zero block count cannot be negative")
    if any(k < 2 for k in target.jordan_blocks):
        raise BadTargetError("Jordan blocks of size 1 belong to the zero block")
    if target.order != n:
        raise BadTargetError(
            f"target describes order {target.order}, requested order {n}"
        )
    for d in target.invertible_diag:
        if field.scalar(d) == field.zero:
            raise BadTargetError("invertible part must have nonzero diagonal")


def random_instance(seed: int, field: Field, n: int, target: InstanceTarget) -> RandomInstance:
    """Conjugate the target's canonical form by a seeded random invertible S."""
    _validate_target(field, n, target)
    rng = SplitMix64(seed)
    canon = canonical_form(field, target)
    s = random_invertible(rng, field, n)
    return RandomInstance(seed, conjugate(s, canon), canon, s, target)


def _random_target(rng, field, n, max_rank=None):
    """Sample an InstanceTarget of order n, optionally bounding the rank."""
    while True:
        z = rng.below(n + 1)
        rest = n - z
        m = rng.below(rest // 2 + 1)
        sizes = [2] * m
        rest -= 2 * m
        extra = rng.below(rest + 1) if m else 0
        for _ in range(extra):
            sizes[rng.below(m)] += 1
        b_dim = rest - extra
        rank = sum(sizes) - m + b_dim
        if max_rank is not None and rank > max_rank(z, m, b_dim):
            continue
        diag = tuple(
            random_scalar(rng, field, span=5, nonzero=True) for _ in range(b_dim)
        )
        return InstanceTarget(z, tuple(sorted(sizes, reverse=True)), diag)


def random_feasible_case(seed: int, field: Field, n: int):
    """A (RandomInstance, FactorSpec) pair the l=2 decision accepts.

    The Jordan structure is constrained so some legal square-zero nullity
    exists (2 * n(G) >= n), then idempotent nullities are sampled and bumped
    until the rank budget holds.  Scalars stay at one: the constructive
    two-square-zero pipeline takes plain idempotents.
    """
    if n < 1:
        raise BadParameterError("order must be at least 1")
    rng = SplitMix64(seed)
    while True:
        target = _random_target(rng, field, n)
        g_nullity = target.zero_blocks + len(target.jordan_blocks)
        if 2 * g_nullity >= n:
            break
    inst = random_instance(rng.next_u64(), field, n, target)
    rank = n - g_nullity
    s_defect = max(rank - target.zero_blocks, 0)
    k = rng.span(1, 3)
    nullities = [rng.below(g_nullity + 1) for _ in range(k)]
    while sum(nullities) < s_defect:
        i = rng.below(k)
        if nullities[i] < g_nullity:
            nullities[i] += 1
    lo = (n + 1) // 2
    sqz = (rng.span(lo, g_nullity), rng.span(lo, g_nullity))
    return inst, FactorSpec(tuple(nullities), None, sqz)


def random_squarezero(rng, field, n, rank=None):
    """Random square-zero matrix: conjugated J2-blocks-plus-zeros canonical."""
    if rank is None:
        rank = rng.below(n // 2 + 1)
    if not 0 <= 2 * rank <= n:
        raise BadParameterError("square-zero rank cannot exceed half the order")
    target = InstanceTarget(n - 2 * rank, (2,) * rank, ())
    canon = canonical_form(field, target)
    return conjugate(random_invertible(rng, field, n), canon)


def random_squarezero_product_case(seed: int, field: Field, n: int) -> RandomInstance:
    """Random F with r(F) <= n0(F), i.e. a product of two square-zero matrices.

    The rank bound is enforced on the target: Jordan/invertible structure is
    resampled until rank <= zero-block count.
    """
    rng = SplitMix64(seed)
    target = _random_target(
        rng, field, n, max_rank=lambda z, m, b: z
    )
    return random_instance(rng.next_u64(), field, n, target)
