"""Deciding and constructing factorizations G = (c_1 E_1) ... (c_k E_k) Z_1 ... Z_l.

The factors are quadratically constrained singular matrices: idempotents
(E^2 = E, possibly scaled by nonzero constants c_i) and square-zero matrices
(Z^2 = 0), each with a prescribed nullity.  Feasibility over any field is a
short list of integer inequalities between the requested nullities and the
similarity invariants of G; this module evaluates those inequalities
(:func:`decide`) and, for the constructive shapes (two square-zero factors,
or none), produces an explicit :class:`Witness` that is re-verified before
being returned.

Supported square-zero counts are l in {0, 1, 2}; l = 1 is decide-only, and
l >= 3 is rejected outright.  All constructions are deterministic: basis
completions always scan candidate vectors in a fixed order, so the same
input yields the same witness on every run.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    BadBlockSizeError,
    BadParameterError,
    BadRankError,
    ConstructionError,
    FieldMismatchError,
    InfeasibleError,
    NotScaledIdempotentError,
    NotSquareError,
    ParseError,
    ShapeMismatchError,
    UnsupportedFactorShapeError,
    ZeroScalarError,
)
from .field import Field
from .invariants import fitting, invariant_report, n0, nilpotent_structure
from .matrix import IncrementalSpan, Matrix, block_diag, standard_basis


# ---------------------------------------------------------------------------
# Factor specifications
# ---------------------------------------------------------------------------


class FactorSpec:
    """Requested factor shape: idempotent nullities, scale factors, square-zero nullities.

    ``scalars`` defaults to all ones and must match ``idem_nullities`` in
    length; entries may be ints or field scalars and are interpreted in the
    field of the matrix being factored.  At most two square-zero nullities
    are representable.
    """

    __slots__ = ("idem_nullities", "scalars", "sqz_nullities")

    def __init__(self, idem_nullities=(), scalars=None, sqz_nullities=()):
        idem = tuple(idem_nullities)
        sqz = tuple(sqz_nullities)
        for v in idem + sqz:
            if not isinstance(v, int) or v < 0:
                raise BadParameterError(f"nullities must be nonnegative ints, got {v!r}")
        if len(sqz) > 2:
            raise UnsupportedFactorShapeError(
                f"at most 2 square-zero factors are supported, got {len(sqz)}"
            )
        if scalars is None:
            scalars = (1,) * len(idem)
        else:
            scalars = tuple(scalars)
            if len(scalars) != len(idem):
                raise BadParameterError("scalars must match idempotent nullities in length")
        for c in scalars:
            if not c:
                raise ZeroScalarError("scale factors must be nonzero")
        self.idem_nullities = idem
        self.scalars = scalars
        self.sqz_nullities = sqz

    @property
    def k(self) -> int:
        return len(self.idem_nullities)

    @property
    def l(self) -> int:
        return len(self.sqz_nullities)

    def field_scalars(self, field: Field) -> tuple:
        """The scale factors coerced into the given field."""
        out = tuple(field.scalar(c) for c in self.scalars)
        for c in out:
            if not c:
                raise ZeroScalarError("scale factor is zero in the target field")
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FactorSpec)
            and self.idem_nullities == other.idem_nullities
            and self.scalars == other.scalars
            and self.sqz_nullities == other.sqz_nullities
        )

    def __repr__(self):
        return (
            f"FactorSpec(idem={list(self.idem_nullities)}, "
            f"scalars={list(self.scalars)}, sqz={list(self.sqz_nullities)})"
        )

    @classmethod
    def parse(cls, text: str, field: Field) -> "FactorSpec":
        """Parse ``idem=... scalars=... sqz=...`` (any subset, whitespace separated)."""
        idem = ()
        scalars = None
        sqz = ()
        seen = set()
        for token in text.split():
            if "=" not in token:
                raise ParseError(f"bad spec token {token!r}")
            key, _, value = token.partition("=")
            if key in seen:
                raise ParseError(f"duplicate spec key {key!r}")
            seen.add(key)
            items = [v for v in value.split(",") if v != ""]
            if key in ("idem", "sqz"):
                try:
                    nums = tuple(int(v) for v in items)
                except ValueError as exc:
                    raise ParseError(f"bad integer list in {token!r}") from exc
                if key == "idem":
                    idem = nums
                else:
                    sqz = nums
            elif key == "scalars":
                scalars = tuple(field.parse(v) for v in items)
            else:
                raise ParseError(f"unknown spec key {key!r}")
        try:
            return cls(idem, scalars, sqz)
        except (BadParameterError, UnsupportedFactorShapeError, ZeroScalarError):
            raise
        except ValueError as exc:  # pragma: no cover - defensive
            raise ParseError(str(exc)) from exc

    def format(self, field: Field) -> str:
        parts = []
        if self.idem_nullities:
            parts.append("idem=" + ",".join(str(v) for v in self.idem_nullities))
            coerced = self.field_scalars(field)
            if any(c != field.one for c in coerced):
                parts.append("scalars=" + ",".join(field.format(c) for c in coerced))
        if self.sqz_nullities:
            parts.append("sqz=" + ",".join(str(v) for v in self.sqz_nullities))
        return " ".join(parts)


# ---------------------------------------------------------------------------
# Feasibility decisions
# ---------------------------------------------------------------------------


class Constructive(enum.Enum):
    FULL = "full"
    DECISION_ONLY = "decision-only"


@dataclass(frozen=True)
class ConditionReport:
    """One evaluated inequality with both sides spelled out."""

    cid: str
    label: str
    lhs: int
    relation: str
    rhs: int
    passed: bool


@dataclass(frozen=True)
class Decision:
    feasible: bool
    constructive: Constructive
    conditions: tuple

    def failed(self) -> list:
        return [c for c in self.conditions if not c.passed]


def _cond(cid, label, lhs, relation, rhs) -> ConditionReport:
    ok = lhs <= rhs if relation == "<=" else lhs >= rhs
    return ConditionReport(cid, label, lhs, relation, rhs, ok)


def decide(g: Matrix, spec: FactorSpec) -> Decision:
    """Evaluate the feasibility inequalities for factoring G per ``spec``.

    The conditions depend only on similarity invariants of G (and, when no
    square-zero factor is requested, on the rank of I - c G for the combined
    inverse scale c), so the verdict is invariant under similarity and under
    scaling G compatibly with the scalars.
    """
    if not g.is_square:
        raise NotSquareError("decide needs a square matrix")
    n = g.rows
    rep = invariant_report(g)
    k, l = spec.k, spec.l
    sum_idem = sum(spec.idem_nullities)
    all_nullities = spec.idem_nullities + spec.sqz_nullities
    conditions = []

    cap = _cond(
        "nullity_cap",
        "max factor nullity <= n(G)",
        max(all_nullities, default=0),
        "<=",
        rep.nullity,
    )
    floor = None
    if l >= 1:
        floor = _cond(
            "sqz_floor",
            "2*m_j >= n for each square-zero nullity m_j",
            2 * min(spec.sqz_nullities),
            ">=",
            n,
        )

    if l == 2:
        conditions.append(
            _cond(
                "rank_budget",
                "r(G) <= n_1+...+n_k + n0(G)",
                rep.rank,
                "<=",
                sum_idem + rep.n0,
            )
        )
        conditions.append(cap)
        conditions.append(floor)
    elif l == 1:
        conditions.append(cap)
        conditions.append(floor)
        conditions.append(
            _cond(
                "span_budget",
                "dim(R(G)+N(G)) <= n_1+...+n_k + m_1",
                rep.dim_sum,
                "<=",
                sum_idem + spec.sqz_nullities[0],
            )
        )
    else:
        conditions.append(cap)
        shifted = Matrix.identity(g.field, n) - g.scale(_combined_inverse_scale(g.field, spec))
        conditions.append(
            _cond(
                "identity_defect_budget",
                "r(I - c*G) <= n_1+...+n_k with c = (c_1*...*c_k)^-1",
                shifted.rank(),
                "<=",
                sum_idem,
            )
        )

    feasible = all(c.passed for c in conditions)
    if l == 2:
        constructive = Constructive.FULL
    elif l == 0:
        scaled = g.scale(_combined_inverse_scale(g.field, spec))
        constructive = Constructive.FULL if scaled.is_idempotent() else Constructive.DECISION_ONLY
    else:
        constructive = Constructive.DECISION_ONLY
    return Decision(feasible, constructive, tuple(conditions))


def _combined_inverse_scale(field: Field, spec: FactorSpec):
    c = field.one
    for s in spec.field_scalars(field):
        c = c * s
    return field.one / c


# ---------------------------------------------------------------------------
# Witnesses
# ---------------------------------------------------------------------------


class FactorRole(enum.Enum):
    IDEMPOTENT = "idempotent"
    SCALED_IDEMPOTENT = "scaled-idempotent"
    SQUARE_ZERO = "square-zero"


@dataclass(frozen=True)
class WitnessFactor:
    """One factor matrix with its declared role, nullity and scale."""

    matrix: Matrix
    role: FactorRole
    nullity: int
    scalar: object = None  # field scalar; defaults to the field's one

    def __post_init__(self):
        scalar = self.scalar
        if scalar is None:
            scalar = self.matrix.field.one
        else:
            scalar = self.matrix.field.scalar(scalar)
        if not scalar:
            raise ZeroScalarError("declared scale factor must be nonzero")
        if self.role is not FactorRole.SCALED_IDEMPOTENT and scalar != self.matrix.field.one:
            raise BadParameterError(f"role {self.role.value} requires scalar 1")
        object.__setattr__(self, "scalar", scalar)
        if not self.matrix.is_square:
            raise NotSquareError("witness factors must be square")
        if not isinstance(self.nullity, int) or self.nullity < 0:
            raise BadParameterError("declared nullity must be a nonnegative int")


@dataclass(frozen=True)
class Witness:
    """An ordered factor list claimed to multiply to some matrix."""

    field_: Field
    order: int
    factors: tuple

    def __post_init__(self):
        for f in self.factors:
            if f.matrix.field != self.field_:
                raise FieldMismatchError("witness factor field differs from witness field")
            if f.matrix.rows != self.order:
                raise ShapeMismatchError("witness factor order differs from witness order")

    def product(self) -> Matrix:
        result = Matrix.identity(self.field_, self.order)
        for f in self.factors:
            result = result @ f.matrix
        return result

    def to_text(self) -> str:
        chunks = []
        for i, f in enumerate(self.factors, start=1):
            header = (
                f"factor {i} role={f.role.value} nullity={f.nullity} "
                f"scalar={self.field_.format(f.scalar)}"
            )
            chunks.append(header + "\n" + f.matrix.to_text())
        return "".join(chunks)

    @classmethod
    def from_text(cls, text: str, field: Field | None = None, order: int | None = None) -> "Witness":
        """Parse a witness file.

        ``field`` and ``order`` supply the context for an empty witness (and
        are checked against the parsed factors when given).
        """
        lines = text.splitlines()
        factors = []
        idx = 0
        while True:
            while idx < len(lines) and not lines[idx].strip():
                idx += 1
            if idx >= len(lines):
                break
            header = lines[idx].split()
            if len(header) != 5 or header[0] != "factor" or not header[1].isdigit():
                raise ParseError(f"bad witness header {lines[idx]!r}")
            if int(header[1]) != len(factors) + 1:
                raise ParseError(f"factor index {header[1]} out of sequence")
            fields = {}
            for tok in header[2:]:
                key, _, value = tok.partition("=")
                fields[key] = value
            if set(fields) != {"role", "nullity", "scalar"}:
                raise ParseError(f"bad witness header {lines[idx]!r}")
            try:
                role = FactorRole(fields["role"])
            except ValueError as exc:
                raise ParseError(f"unknown role {fields['role']!r}") from exc
            if not fields["nullity"].isdigit():
                raise ParseError(f"bad nullity {fields['nullity']!r}")
            mat, rest = Matrix._parse_lines(lines[idx + 1 :])
            scalar = mat.field.parse(fields["scalar"])
            factors.append(WitnessFactor(mat, role, int(fields["nullity"]), scalar))
            consumed = (len(lines) - idx - 1) - len(rest)
            idx += 1 + consumed
        if factors:
            field = factors[0].matrix.field if field is None else field
            order = factors[0].matrix.rows if order is None else order
        elif field is None or order is None:
            raise ParseError("empty witness needs explicit field and order context")
        return cls(field, order, tuple(factors))


@dataclass(frozen=True)
class FactorCheck:
    index: int
    role: FactorRole
    property_ok: bool
    nullity_ok: bool
    declared_nullity: int
    actual_nullity: int


@dataclass(frozen=True)
class VerificationReport:
    product_ok: bool
    factor_checks: tuple

    @property
    def ok(self) -> bool:
        return self.product_ok and all(
            c.property_ok and c.nullity_ok for c in self.factor_checks
        )


def verify_witness(g: Matrix, witness: Witness) -> VerificationReport:
    """Independently re-check a witness against G.

    Factors are multiplied in the order given (any ordering is acceptable);
    each factor is checked against its declared role and nullity.
    """
    if not g.is_square:
        raise NotSquareError("verification target must be square")
    if g.field != witness.field_:
        raise FieldMismatchError("witness field differs from target field")
    if g.rows != witness.order:
        raise ShapeMismatchError("witness order differs from target order")
    checks = []
    for i, f in enumerate(witness.factors, start=1):
        m = f.matrix
        if f.role is FactorRole.SQUARE_ZERO:
            prop = m.is_squarezero()
        elif f.role is FactorRole.IDEMPOTENT:
            prop = m.is_idempotent()
        else:
            prop = m.scale(g.field.one / f.scalar).is_idempotent()
        actual = m.nullity()
        checks.append(FactorCheck(i, f.role, prop, actual == f.nullity, f.nullity, actual))
    product_ok = witness.product() == g
    return VerificationReport(product_ok, tuple(checks))


# ---------------------------------------------------------------------------
# Elementary constructions
# ---------------------------------------------------------------------------


def split_jordan_block(field: Field, k: int) -> tuple:
    """Write J_k(0) = E F with E idempotent of nullity 1 and n0(F) = 1.

    The pair leaves the kernel untouched (N(F) = N(J_k(0))) while breaking
    the range/kernel overlap: J_k(0) itself has n0 = 0 for k >= 2, but F
    regains one uncovered kernel direction, which is what makes square-zero
    pair extraction possible downstream.
    """
    if k < 2:
        raise BadBlockSizeError("splitting needs block size >= 2")
    zero, one = field.zero, field.one
    e = [[zero] * k for _ in range(k)]
    f = [[zero] * k for _ in range(k)]
    if k == 2:
        e[1][0] = one
        e[1][1] = one
        f[0][0] = one
    else:
        e[k - 1][0] = one
        for i in range(1, k):
            e[i][i] = one
        f[0][k - 2] = one
        for i in range(1, k - 1):
            f[i][i - 1] = one
    e_mat = Matrix.from_rows(field, e)
    f_mat = Matrix.from_rows(field, f)
    jk = Matrix.jordan_block(field, k)
    if e_mat @ f_mat != jk or not e_mat.is_idempotent() or e_mat.nullity() != 1:
        raise ConstructionError("block split failed verification")
    if f_mat.nullspace() != jk.nullspace():
        raise ConstructionError("block split moved the kernel")
    return e_mat, f_mat


def split_jordan_sum(field: Field, block_sizes, f_n0: int, e_nullity: int) -> tuple:
    """Write a direct sum of nilpotent Jordan blocks (sizes >= 2) as E F.

    E is idempotent with nullity ``e_nullity``; F keeps the kernel of the
    block sum and has exactly ``f_n0`` kernel directions outside its range.
    The first ``f_n0`` blocks are split, the next ones use rank-deficient
    identities to reach the requested nullity, the rest are left whole.
    """
    sizes = tuple(block_sizes)
    for k in sizes:
        if not isinstance(k, int) or k < 2:
            raise BadBlockSizeError("block sizes must be ints >= 2")
    m = len(sizes)
    if not 0 <= f_n0 <= e_nullity <= m:
        raise BadParameterError("need 0 <= f_n0 <= e_nullity <= number of blocks")
    e_parts = []
    f_parts = []
    for i, k in enumerate(sizes):
        if i < f_n0:
            e_i, f_i = split_jordan_block(field, k)
        elif i < e_nullity:
            e_i = Matrix.diagonal(field, [0] + [1] * (k - 1))
            f_i = Matrix.jordan_block(field, k)
        else:
            e_i = Matrix.identity(field, k)
            f_i = Matrix.jordan_block(field, k)
        e_parts.append(e_i)
        f_parts.append(f_i)
    e_mat = block_diag(field, e_parts)
    f_mat = block_diag(field, f_parts)
    j = block_diag(field, [Matrix.jordan_block(field, k) for k in sizes])
    if (
        e_mat @ f_mat != j
        or not e_mat.is_idempotent()
        or e_mat.nullity() != e_nullity
        or f_mat.nullspace() != j.nullspace()
        or n0(f_mat) != f_n0
    ):
        raise ConstructionError("block-sum split failed verification")
    return e_mat, f_mat


def idempotent_chain(field: Field, n: int, t: int, nullities) -> list:
    """Diagonal idempotents D_1..D_k with given nullities whose product is
    I_{n-t} (+) 0_t.

    Zeros are placed on the trailing ``t`` coordinates, assigned greedily
    left to right and wrapping, so the factors jointly zero out all of them.
    Feasible iff every nullity is at most t and their sum is at least t.
    """
    nullities = tuple(nullities)
    if len(nullities) < 1:
        raise BadParameterError("need at least one idempotent factor")
    if not 0 <= t <= n:
        raise BadParameterError("target nullity t must satisfy 0 <= t <= n")
    for v in nullities:
        if v > t:
            raise InfeasibleError(f"factor nullity {v} exceeds target nullity {t}")
    if sum(nullities) < t:
        raise InfeasibleError("factor nullities sum below target nullity")
    factors = []
    cursor = 0
    for v in nullities:
        diag = [field.one] * n
        for j in range(v):
            diag[n - t + (cursor + j) % t] = field.zero
        cursor += v
        factors.append(Matrix.diagonal(field, diag))
    target = Matrix.diagonal(field, [1] * (n - t) + [0] * t)
    prod = Matrix.identity(field, n)
    for d in factors:
        prod = prod @ d
    if prod != target or any(d.nullity() != v for d, v in zip(factors, nullities)):
        raise ConstructionError("idempotent chain failed verification")
    return factors


def squarezero_pair(f: Matrix, nz1: int, nz2: int) -> tuple:
    """Write F = Z_1 Z_2 with Z_i^2 = 0 and prescribed nullities.

    Feasible iff r(F) <= n0(F); the nullities must lie in the realizable
    interval [n - floor(n/2), n(F)] (equivalently r(F) <= r(Z_i) <= n/2).

    The construction picks one basis adapted to F: source directions v_i
    (standard vectors on the pivot columns), an r-dimensional piece U of the
    kernel clear of the range, and the leftover kernel and completion
    directions.  Z_2 sends v_i into U and Z_1 sends U onto the pivot columns
    of F; requested ranks above r(F) are realized by disjoint chain pairs
    inside the respective kernels, chosen so every Z_2 image stays inside
    the kernel of Z_1.
    """
    if not f.is_square:
        raise NotSquareError("squarezero_pair needs a square matrix")
    field = f.field
    n = f.rows
    red, pivots = f.rref()
    r = len(pivots)
    nsp = f.nullspace()
    rng = f.colspace()
    inter = rng.intersect(nsp)
    delta = inter.dim
    f_n0 = (n - r) - delta
    if r > f_n0:
        raise InfeasibleError(f"r(F) = {r} exceeds n0(F) = {f_n0}")
    for nz in (nz1, nz2):
        rho = n - nz
        if rho > n // 2 or rho < r:
            raise BadRankError(
                f"square-zero nullity {nz} outside the realizable interval "
                f"[{n - n // 2}, {n - r}]"
            )
    d1 = (n - nz1) - r
    d2 = (n - nz2) - r

    basis_e = standard_basis(field, n)
    v_vecs = [basis_e[p] for p in pivots]
    fv_vecs = [f.column(p) for p in pivots]

    # Kernel pieces: w's span R/\N, then u's (r of them) and m's complete N(F).
    w_vecs = list(inter.vectors)
    span = IncrementalSpan(field, n)
    for w in w_vecs:
        span.try_add(w)
    outside = span.extend_from(nsp.vectors)
    u_vecs = outside[:r]
    m_vecs = outside[r:]

    # Completion directions for the Z_1 domain basis: {u, Fv} + m's + h's.
    span1 = IncrementalSpan(field, n)
    for vec in u_vecs + fv_vecs + m_vecs:
        if not span1.try_add(vec):
            raise ConstructionError("adapted basis pieces are not independent")
    h_vecs = span1.extend_from(v_vecs)
    if span1.dim != n:
        raise ConstructionError("adapted basis failed to span the space")

    # Chain allocation.  Z_2 images prefer w's (always killed by Z_1); Z_1
    # sources must avoid whatever m's became Z_2 images, while Z_1 images may
    # reuse them.
    avail = w_vecs + m_vecs  # kernel directions beyond U, length n - 2r
    iota2 = avail[:d2]
    sigma2 = avail[d2 : 2 * d2]
    pool = m_vecs + h_vecs  # Z_1's free kernel directions, length n - 2r
    iota2_m = set(iota2) & set(m_vecs)
    sigma1 = [x for x in pool if x not in iota2_m][:d1]
    sigma1_set = set(sigma1)
    remaining = [x for x in pool if x not in sigma1_set]
    iota1 = remaining[len(remaining) - d1 :] if d1 else []
    if len(sigma2) != d2 or len(sigma1) != d1 or len(iota1) != d1:
        raise ConstructionError("chain allocation ran out of directions")

    # Z_2 on basis {v, u, w, m}: v_i -> u_i, sigma2[j] -> iota2[j], rest -> 0.
    z2_domain = v_vecs + u_vecs + w_vecs + m_vecs
    z2_map = {v: u for v, u in zip(v_vecs, u_vecs)}
    z2_map.update({x: y for x, y in zip(sigma2, iota2)})
    z2 = _from_basis_action(field, n, z2_domain, z2_map)

    # Z_1 on basis {u, Fv, m, h}: u_i -> F v_i, sigma1[j] -> iota1[j], rest -> 0.
    z1_domain = u_vecs + fv_vecs + m_vecs + h_vecs
    z1_map = {u: fv for u, fv in zip(u_vecs, fv_vecs)}
    z1_map.update({x: y for x, y in zip(sigma1, iota1)})
    z1 = _from_basis_action(field, n, z1_domain, z1_map)

    if (
        z1 @ z2 != f
        or not z1.is_squarezero()
        or not z2.is_squarezero()
        or z1.nullity() != nz1
        or z2.nullity() != nz2
    ):
        raise ConstructionError("square-zero pair failed verification")
    return z1, z2


def _from_basis_action(field: Field, n: int, domain: list, mapping: dict) -> Matrix:
    """Matrix sending each domain basis vector to mapping.get(vec, 0)."""
    zero_col = (field.zero,) * n
    basis = Matrix.from_columns(field, domain, ambient=n)
    images = Matrix.from_columns(
        field, [mapping.get(v, zero_col) for v in domain], ambient=n
    )
    return images @ basis.inverse()


# ---------------------------------------------------------------------------
# Full factorizations
# ---------------------------------------------------------------------------


def _diagonalizing_transform(m: Matrix) -> Matrix:
    """For idempotent M, the basis [range | kernel] diagonalizing it to I (+) 0."""
    cols = list(m.colspace().vectors) + list(m.nullspace().vectors)
    return Matrix.from_columns(m.field, cols, ambient=m.rows)


def factor_idempotents_squarezero_pair(g: Matrix, idem_nullities, nz1: int, nz2: int) -> Witness:
    """Construct G = E_1 ... E_k Z_1 Z_2 with the prescribed nullities.

    Pipeline: split off the invertible part of G, canonicalize the nilpotent
    part into zero and Jordan blocks, split the Jordan sum into an idempotent
    times a kernel-preserving remainder with enough uncovered kernel
    directions, expand the idempotent into the requested chain in its
    eigenbasis, extract the square-zero pair from the remainder, and undo
    the similarity.  The assembled witness is re-verified before returning.
    """
    idem_nullities = tuple(idem_nullities)
    spec = FactorSpec(idem_nullities, None, (nz1, nz2))
    decision = decide(g, spec)
    if not decision.feasible:
        bad = "; ".join(
            f"{c.label}: {c.lhs} {c.relation} {c.rhs} fails" for c in decision.failed()
        )
        raise InfeasibleError(bad)
    field = g.field
    n = g.rows
    k = len(idem_nullities)

    fd = fitting(g)
    st = nilpotent_structure(fd.nilpotent)
    z = st.zero_block_count
    sizes = st.block_sizes
    m = len(sizes)
    r_b = n - fd.nil_dim
    s_mat = fd.transform @ block_diag(
        field, [st.transform, Matrix.identity(field, r_b)]
    )

    rank = g.rank()
    s_defect = max(rank - z, 0)
    e_total = max(max(idem_nullities, default=0), s_defect)
    e_jordan = min(e_total, m)
    e_zero = e_total - e_jordan

    h1 = Matrix.diagonal(field, [1] * (z - e_zero) + [0] * e_zero)
    h2, f2 = split_jordan_sum(field, sizes, s_defect, e_jordan)
    e_canon = block_diag(field, [h1, h2, Matrix.identity(field, r_b)])
    f_canon = block_diag(field, [Matrix.zero(field, z), f2, fd.invertible])

    if k == 0:
        if e_canon != Matrix.identity(field, n):
            raise ConstructionError("empty idempotent stage left a nontrivial factor")
        idem_factors_canon = []
    else:
        p = _diagonalizing_transform(e_canon)
        p_inv = p.inverse()
        chain = idempotent_chain(field, n, e_total, idem_nullities)
        idem_factors_canon = [p @ d @ p_inv for d in chain]

    z1_canon, z2_canon = squarezero_pair(f_canon, nz1, nz2)

    s_inv = s_mat.inverse()
    factors = [
        WitnessFactor(s_mat @ mat @ s_inv, FactorRole.IDEMPOTENT, nv)
        for mat, nv in zip(idem_factors_canon, idem_nullities)
    ]
    factors.append(WitnessFactor(s_mat @ z1_canon @ s_inv, FactorRole.SQUARE_ZERO, nz1))
    factors.append(WitnessFactor(s_mat @ z2_canon @ s_inv, FactorRole.SQUARE_ZERO, nz2))
    witness = Witness(field, n, tuple(factors))
    if not verify_witness(g, witness).ok:
        raise ConstructionError("assembled witness failed verification")
    return witness


def factor_scaled_idempotents(g: Matrix, nullities, scalars=None) -> Witness:
    """Construct G = (c_1 E_1) ... (c_k E_k) when (c_1...c_k)^-1 G is idempotent.

    Feasible iff every nullity is at most n(G) and their sum covers
    r(I - c G); the chain is built in the eigenbasis of the idempotent.
    """
    nullities = tuple(nullities)
    if len(nullities) < 1:
        raise BadParameterError("need at least one factor; the empty product is identity")
    spec = FactorSpec(nullities, scalars, ())
    field = g.field
    if not g.is_square:
        raise NotSquareError("factorization target must be square")
    coerced = spec.field_scalars(field)
    c = _combined_inverse_scale(field, spec)
    target = g.scale(c)
    if not target.is_idempotent():
        raise NotScaledIdempotentError(
            "G divided by the combined scale is not idempotent; "
            "this shape is decide-only for such G"
        )
    decision = decide(g, spec)
    if not decision.feasible:
        bad = "; ".join(
            f"{c2.label}: {c2.lhs} {c2.relation} {c2.rhs} fails" for c2 in decision.failed()
        )
        raise InfeasibleError(bad)
    n = g.rows
    t = n - target.rank()
    p = _diagonalizing_transform(target)
    p_inv = p.inverse()
    chain = idempotent_chain(field, n, t, nullities)
    factors = []
    for d, nv, ci in zip(chain, nullities, coerced):
        mat = (p @ d @ p_inv).scale(ci)
        if ci == field.one:
            factors.append(WitnessFactor(mat, FactorRole.IDEMPOTENT, nv))
        else:
            factors.append(WitnessFactor(mat, FactorRole.SCALED_IDEMPOTENT, nv, ci))
    witness = Witness(field, n, tuple(factors))
    if not verify_witness(g, witness).ok:
        raise ConstructionError("assembled witness failed verification")
    return witness


def factor_for_spec(g: Matrix, spec: FactorSpec) -> Witness:
    """Dispatch a full factorization for any constructive spec shape.

    l = 2 uses the square-zero pair pipeline (scaling the idempotent stage
    when scalars are present); l = 0 uses the scaled-idempotent chain, with
    the empty spec accepting exactly the identity.  l = 1 has no
    construction and raises UnsupportedFactorShapeError.
    """
    field = g.field
    if spec.l == 1:
        raise UnsupportedFactorShapeError(
            "a single square-zero factor is decide-only; construction covers l in {0, 2}"
        )
    if spec.l == 0:
        if spec.k == 0:
            if g != Matrix.identity(field, g.rows):
                raise InfeasibleError("the empty product equals the identity only")
            return Witness(field, g.rows, ())
        return factor_scaled_idempotents(g, spec.idem_nullities, spec.scalars)

    coerced = spec.field_scalars(field)
    c = _combined_inverse_scale(field, spec)
    base = factor_idempotents_squarezero_pair(
        g.scale(c), spec.idem_nullities, spec.sqz_nullities[0], spec.sqz_nullities[1]
    )
    factors = []
    for f, ci in zip(base.factors, coerced):
        if ci == field.one:
            factors.append(f)
        else:
            factors.append(
                WitnessFactor(f.matrix.scale(ci), FactorRole.SCALED_IDEMPOTENT, f.nullity, ci)
            )
    factors.extend(base.factors[spec.k :])
    witness = Witness(field, g.rows, tuple(factors))
    if not verify_witness(g, witness).ok:
        raise ConstructionError("scaled witness failed verification")
    return witness
