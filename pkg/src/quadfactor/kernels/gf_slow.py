"""Pure-Python GF(p) kernels for exhaustive enumeration.

These functions power the brute-force oracle: matrices are flat row-major
int tuples (entries in [0, p)), or packed codes — the integer whose base-p
digits, least significant first, are the entries with entry (i, j) at digit
i*n + j.  A compiled twin (``_gf_fast``) implements the same signatures;
results must be identical, so everything here is deliberately loop-by-loop
simple.
"""


def decode(code, n, p):
    """Unpack a base-p code into a flat entry tuple of length n*n."""
    out = []
    for _ in range(n * n):
        out.append(code % p)
        code //= p
    return tuple(out)


def encode(flat, n, p):
    """Pack flat entries into the base-p code (inverse of decode)."""
    code = 0
    for x in reversed(flat):
        code = code * p + x
    return code


def matmul(a, b, n, p):
    """Product of two flat n x n matrices mod p."""
    out = [0] * (n * n)
    for i in range(n):
        base = i * n
        for t in range(n):
            x = a[base + t]
            if x:
                tb = t * n
                for j in range(n):
                    out[base + j] = (out[base + j] + x * b[tb + j]) % p
    return tuple(out)


def mat_rank(flat, rows, cols, p):
    """Rank of a flat rows x cols matrix mod p by row echelon elimination."""
    m = [list(flat[i * cols : (i + 1) * cols]) for i in range(rows)]
    rank = 0
    for c in range(cols):
        pivot = None
        for i in range(rank, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        row = m[rank]
        for j in range(c, cols):
            row[j] = row[j] * inv % p
        for i in range(rows):
            if i != rank and m[i][c]:
                f = m[i][c]
                other = m[i]
                for j in range(c, cols):
                    other[j] = (other[j] - f * row[j]) % p
        rank += 1
        if rank == rows:
            break
    return rank


def _rref_with_kernel(flat, n, p):
    """RREF of a flat n x n matrix; returns (rank, kernel basis columns)."""
    m = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, n):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    kernel = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-m[i][f]) % p
        kernel.append(v)
    return r, kernel


def invariants(flat, n, p):
    """(rank, nullity, n0, dim(R+N)) of one flat n x n matrix mod p."""
    rank, kernel = _rref_with_kernel(flat, n, p)
    nullity = n - rank
    # dim(R+N) = rank of the columns of G together with the kernel basis.
    width = n + nullity
    concat = []
    for i in range(n):
        concat.extend(flat[i * n : (i + 1) * n])
        concat.extend(v[i] for v in kernel)
    dim_sum = mat_rank(concat, n, width, p)
    return rank, nullity, dim_sum - rank, dim_sum


def invariant_table(n, p):
    """invariants() for every code in the domain, ascending."""
    return [invariants(decode(code, n, p), n, p) for code in range(p ** (n * n))]


def shifted_rank_table(n, p, c):
    """r(I - c*G) for every code G in the domain, ascending."""
    out = []
    size = p ** (n * n)
    for code in range(size):
        g = decode(code, n, p)
        shifted = [(-c * x) % p for x in g]
        for i in range(n):
            shifted[i * n + i] = (shifted[i * n + i] + 1) % p
        out.append(mat_rank(shifted, n, n, p))
    return out


def property_codes(n, p, kind):
    """Sorted codes of all idempotent or square-zero matrices in the domain."""
    if kind not in ("idempotent", "squarezero"):
        raise ValueError(f"unknown property kind {kind!r}")
    out = []
    size = p ** (n * n)
    for code in range(size):
        flat = decode(code, n, p)
        sq = matmul(flat, flat, n, p)
        if kind == "idempotent":
            if sq == flat:
                out.append(code)
        else:
            if not any(sq):
                out.append(code)
    return out


def multiply_sets(left_codes, right_codes, n, p):
    """Sorted unique codes of {A @ B} for A in left, B in right."""
    if not left_codes or not right_codes:
        return []
    rights = [decode(code, n, p) for code in right_codes]
    size = p ** (n * n)
    seen = bytearray(size)
    weights = [p ** k for k in range(n * n)]
    for lcode in left_codes:
        a = decode(lcode, n, p)
        for b in rights:
            prod = matmul(a, b, n, p)
            code = 0
            for x, w in zip(prod, weights):
                if x:
                    code += x * w
            seen[code] = 1
    return [code for code in range(size) if seen[code]]
