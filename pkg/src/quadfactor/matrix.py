"""Dense exact matrices and subspace computations.

Matrices are immutable values: entries live in one :class:`~quadfactor.field.Field`,
are stored row-major in a tuple, and all derived data (echelon forms, bases)
is computed deterministically so repeated runs produce identical objects.
Row reduction always picks as pivot the first nonzero entry scanning columns
left to right and rows top to bottom; subspace bases are canonicalized to
the reduced row-echelon basis of their span, so equal subspaces compare
equal structurally.

Empty matrices (0 rows and/or 0 columns) are legal everywhere; a block
diagonal of an empty list is the 0x0 matrix.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from .errors import (
    AmbientMismatchError,
    BadBlockSizeError,
    FieldMismatchError,
    NotSquareError,
    ParseError,
    ShapeMismatchError,
    SingularMatrixError,
)
from .field import Field


class Matrix:
    """An immutable rows x cols matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: tuple):
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise ShapeMismatchError("entry count does not match dimensions")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        """Build a matrix from row sequences; int entries are coerced."""
        r = len(rows)
        c = len(rows[0]) if r else 0
        data = []
        for row in rows:
            if len(row) != c:
                raise ShapeMismatchError("ragged rows")
            data.extend(field.scalar(x) for x in row)
        return cls(field, r, c, tuple(data))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], ambient: int | None = None) -> "Matrix":
        """Build the matrix whose columns are the given vectors."""
        c = len(columns)
        if c == 0:
            if ambient is None:
                raise ShapeMismatchError("ambient dimension required for zero columns")
            return cls.zero(field, ambient, 0)
        r = len(columns[0])
        data = []
        for i in range(r):
            for col in columns:
                if len(col) != r:
                    raise ShapeMismatchError("ragged columns")
                data.append(field.scalar(col[i]))
        return cls(field, r, c, tuple(data))

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int | None = None) -> "Matrix":
        if cols is None:
            cols = rows
        z = field.zero
        return cls(field, rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        data = [z] * (n * n)
        for i in range(n):
            data[i * n + i] = o
        return cls(field, n, n, tuple(data))

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field.zero
        data = [z] * (n * n)
        for i, e in enumerate(entries):
            data[i * n + i] = field.scalar(e)
        return cls(field, n, n, tuple(data))

    @classmethod
    def jordan_block(cls, field: Field, k: int) -> "Matrix":
        """Nilpotent Jordan block J_k(0) with ones on the subdiagonal."""
        if k < 1:
            raise BadBlockSizeError("Jordan block size must be >= 1")
        z, o = field.zero, field.one
        data = [z] * (k * k)
        for i in range(k - 1):
            data[(i + 1) * k + i] = o
        return cls(field, k, k, tuple(data))

    # -- basic access ------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for x in self.data)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}: {body})"

    def _require_same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_field(other)
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatchError("addition needs equal shapes")
        data = tuple(a + b for a, b in zip(self.data, other.data))
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._require_same_field(other)
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeMismatchError("subtraction needs equal shapes")
        data = tuple(a - b for a, b in zip(self.data, other.data))
        return Matrix(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(-a for a in self.data))

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix(self.field, self.rows, self.cols, tuple(c * a for a in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._require_same_field(other)
        if self.cols != other.rows:
            raise ShapeMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.data, other.data
        zero = self.field.zero
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                acc = zero
                for t in range(k):
                    x = arow[t]
                    if x:
                        acc = acc + x * b[t * m + j]
                out.append(acc)
        return Matrix(self.field, n, m, tuple(out))

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product, returning a plain tuple."""
        if len(vector) != self.cols:
            raise ShapeMismatchError("vector length must equal column count")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            row = self.row(i)
            for x, v in zip(row, vector):
                if x and v:
                    acc = acc + x * v
            out.append(acc)
        return tuple(out)

    def matpow(self, e: int) -> "Matrix":
        """Nonnegative matrix power by repeated squaring."""
        if not self.is_square:
            raise NotSquareError("powers need a square matrix")
        if e < 0:
            raise ShapeMismatchError("negative powers not supported; invert first")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base if e > 1 else base
            e >>= 1
        return result

    def transpose(self) -> "Matrix":
        data = tuple(
            self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)
        )
        return Matrix(self.field, self.cols, self.rows, data)

    # -- elimination -------------------------------------------------------

    def rref(self) -> "RrefResult":
        """Reduced row-echelon form with deterministic pivoting.

        Pivots are chosen as the first nonzero entry scanning columns left
        to right and, within a column, rows top to bottom.
        """
        m = self.row_list()
        rows, cols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(cols):
            pivot_row = None
            for i in range(r, rows):
                if m[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = self.field.one / m[r][c]
            if inv != self.field.one:
                m[r] = [inv * x for x in m[r]]
            for i in range(rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        flat = tuple(x for row in m for x in row)
        return RrefResult(Matrix(self.field, rows, cols, flat), tuple(pivots))

    def rank(self) -> int:
        return len(self.rref().pivots)

    def nullity(self) -> int:
        return self.cols - self.rank()

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise NotSquareError("only square matrices can be inverted")
        n = self.rows
        aug = hstack(self, Matrix.identity(self.field, n))
        red, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        data = tuple(
            red.data[i * 2 * n + n + j] for i in range(n) for j in range(n)
        )
        return Matrix(self.field, n, n, data)

    # -- predicates used throughout ----------------------------------------

    def is_idempotent(self) -> bool:
        return self.is_square and self @ self == self

    def is_squarezero(self) -> bool:
        return self.is_square and (self @ self).is_zero()

    # -- subspaces -----------------------------------------------------------

    def nullspace(self) -> "SubspaceBasis":
        """Canonical basis of the kernel {x : Mx = 0}."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        zero, one = self.field.zero, self.field.one
        vectors = []
        for f in free:
            v = [zero] * self.cols
            v[f] = one
            for i, p in enumerate(pivots):
                v[p] = -red.data[i * self.cols + f]
            vectors.append(tuple(v))
        return SubspaceBasis(self.field, self.cols, vectors)

    def colspace(self) -> "SubspaceBasis":
        """Canonical basis of the column space (computed from pivot columns)."""
        pivots = self.rref().pivots
        return SubspaceBasis(self.field, self.rows, [self.column(j) for j in pivots])

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        """Serialize in the line-oriented matrix text format."""
        lines = [f"field {self.field.token()}", f"{self.rows} {self.cols}"]
        if self.cols > 0:
            for i in range(self.rows):
                lines.append(" ".join(self.field.format(x) for x in self.row(i)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        mat, rest = cls._parse_lines(text.splitlines())
        if any(line.strip() for line in rest):
            raise ParseError("trailing content after matrix")
        return mat

    @classmethod
    def _parse_lines(cls, lines: list) -> tuple:
        """Parse one matrix from a list of lines; return (matrix, remaining)."""
        idx = 0
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            raise ParseError("missing field header")
        header = lines[idx].strip()
        if not header.startswith("field "):
            raise ParseError(f"expected 'field ...' header, got {header!r}")
        field = Field.from_token(header[len("field "):])
        idx += 1
        if idx >= len(lines):
            raise ParseError("missing dimension line")
        dims = lines[idx].split()
        if len(dims) != 2 or not all(d.isdigit() for d in dims):
            raise ParseError(f"bad dimension line {lines[idx]!r}")
        rows, cols = int(dims[0]), int(dims[1])
        idx += 1
        data = []
        if cols > 0:
            for i in range(rows):
                if idx >= len(lines):
                    raise ParseError(f"expected {rows} rows, found {i}")
                toks = lines[idx].split()
                if len(toks) != cols:
                    raise ParseError(f"row {i + 1} has {len(toks)} entries, expected {cols}")
                data.extend(field.parse(t) for t in toks)
                idx += 1
        return cls(field, rows, cols, tuple(data)), lines[idx:]


class RrefResult(NamedTuple):
    matrix: Matrix
    pivots: tuple

    @property
    def rank(self) -> int:
        return len(self.pivots)


# -- stacking and block assembly ------------------------------------------


def hstack(*mats: Matrix) -> Matrix:
    """Concatenate matrices side by side."""
    first = mats[0]
    for m in mats[1:]:
        first._require_same_field(m)
        if m.rows != first.rows:
            raise ShapeMismatchError("hstack needs equal row counts")
    data = []
    for i in range(first.rows):
        for m in mats:
            data.extend(m.row(i))
    cols = sum(m.cols for m in mats)
    return Matrix(first.field, first.rows, cols, tuple(data))


def vstack(*mats: Matrix) -> Matrix:
    """Concatenate matrices top to bottom."""
    first = mats[0]
    for m in mats[1:]:
        first._require_same_field(m)
        if m.cols != first.cols:
            raise ShapeMismatchError("vstack needs equal column counts")
    data = []
    for m in mats:
        data.extend(m.data)
    rows = sum(m.rows for m in mats)
    return Matrix(first.field, rows, first.cols, tuple(data))


def block_diag(field: Field, parts: Iterable[Matrix]) -> Matrix:
    """Direct sum of square blocks; an empty list gives the 0x0 matrix."""
    parts = list(parts)
    for p in parts:
        if p.field != field:
            raise FieldMismatchError("block field differs from requested field")
        if not p.is_square:
            raise NotSquareError("block_diag blocks must be square")
    n = sum(p.rows for p in parts)
    zero = field.zero
    data = [zero] * (n * n)
    off = 0
    for p in parts:
        k = p.rows
        for i in range(k):
            row = p.row(i)
            base = (off + i) * n + off
            for j in range(k):
                data[base + j] = row[j]
        off += k
    return Matrix(field, n, n, tuple(data))


def conjugate(s: Matrix, m: Matrix) -> Matrix:
    """Similarity transform S * M * S^-1 (raises if S is singular)."""
    if not s.is_square or not m.is_square or s.rows != m.rows:
        raise ShapeMismatchError("conjugation needs square matrices of equal order")
    return s @ m @ s.inverse()


# -- subspaces --------------------------------------------------------------


class SubspaceBasis:
    """A subspace of F^n held in canonical form.

    Whatever spanning vectors are supplied, the stored basis is the reduced
    row-echelon basis of the span, so two equal subspaces have identical
    vector tuples.  Vectors are column vectors represented as plain tuples.
    """

    __slots__ = ("field", "ambient_dim", "vectors")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence]):
        vecs = [tuple(field.scalar(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise AmbientMismatchError("vector length differs from ambient dimension")
        if vecs:
            red, pivots = Matrix(field, len(vecs), ambient_dim,
                                 tuple(x for v in vecs for x in v)).rref()
            vecs = [red.row(i) for i in range(len(pivots))]
        self.field = field
        self.ambient_dim = ambient_dim
        self.vectors = tuple(vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def matrix(self) -> Matrix:
        """The ambient_dim x dim matrix whose columns are the basis vectors."""
        return Matrix.from_columns(self.field, list(self.vectors), ambient=self.ambient_dim)

    def contains(self, vector: Sequence) -> bool:
        vec = tuple(self.field.scalar(x) for x in vector)
        if len(vec) != self.ambient_dim:
            raise AmbientMismatchError("vector length differs from ambient dimension")
        span = IncrementalSpan(self.field, self.ambient_dim)
        for v in self.vectors:
            span.try_add(v)
        return not span.try_add(vec)

    def _require_compatible(self, other: "SubspaceBasis"):
        if self.field != other.field:
            raise FieldMismatchError("subspaces over different fields")
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatchError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def sum_dim(self, other: "SubspaceBasis") -> int:
        """Dimension of the subspace sum (rank of all vectors together)."""
        self._require_compatible(other)
        vecs = list(self.vectors) + list(other.vectors)
        if not vecs:
            return 0
        return Matrix(self.field, len(vecs), self.ambient_dim,
                      tuple(x for v in vecs for x in v)).rank()

    def intersect(self, other: "SubspaceBasis") -> "SubspaceBasis":
        """Canonical basis of the intersection (kernel-of-concatenation method)."""
        self._require_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return SubspaceBasis(self.field, self.ambient_dim, [])
        u = self.matrix()
        w = hstack(u, other.matrix().scale(-1))
        vectors = []
        for coeffs in w.nullspace().vectors:
            vectors.append(u.apply(coeffs[: self.dim]))
        return SubspaceBasis(self.field, self.ambient_dim, vectors)

    def __eq__(self, other):
        return (
            isinstance(other, SubspaceBasis)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.vectors == other.vectors
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim})"


class IncrementalSpan:
    """Grow a subspace one vector at a time with exact Gaussian elimination.

    Used for the deterministic greedy basis extensions in the constructions:
    candidates are offered in a fixed order and accepted exactly when they
    enlarge the span.
    """

    __slots__ = ("field", "ambient_dim", "_rows")

    def __init__(self, field: Field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows = {}  # pivot index -> reduced row (leading one)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vector: Sequence) -> list:
        v = [self.field.scalar(x) for x in vector]
        if len(v) != self.ambient_dim:
            raise AmbientMismatchError("vector length differs from ambient dimension")
        for p, row in self._rows.items():
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vector: Sequence) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self._reduce(vector))

    def try_add(self, vector: Sequence) -> bool:
        """Add the vector if independent of the span; return True if added."""
        v = self._reduce(vector)
        pivot = None
        for i, x in enumerate(v):
            if x:
                pivot = i
                break
        if pivot is None:
            return False
        inv = self.field.one / v[pivot]
        row = [inv * x for x in v]
        # Keep the stored rows mutually reduced so single-pass reduction stays
        # valid: clear the new pivot column from every existing row.
        for p, r in self._rows.items():
            if r[pivot]:
                f = r[pivot]
                self._rows[p] = [a - f * b for a, b in zip(r, row)]
        self._rows[pivot] = row
        return True

    def extend_from(self, candidates: Iterable[Sequence]) -> list:
        """Greedily add candidates in order; return the accepted ones."""
        added = []
        for cand in candidates:
            snapshot = tuple(cand)
            if self.try_add(snapshot):
                added.append(snapshot)
        return added


def standard_basis(field: Field, n: int) -> list:
    """The standard basis vectors e_0 .. e_{n-1} as tuples."""
    zero, one = field.zero, field.one
    out = []
    for i in range(n):
        v = [zero] * n
        v[i] = one
        out.append(tuple(v))
    return out
