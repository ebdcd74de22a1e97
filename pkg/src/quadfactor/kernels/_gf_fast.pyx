# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python enumeration kernels.

Same signatures and bit-identical outputs as ``gf_slow``; the hot loops run
on C integers.  The tractability cap p**(n*n) <= 2**24 forces n <= 4, so
small fixed stack buffers cover every call.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

ctypedef long long ll

DEF MAXN = 5
DEF MAXE = MAXN * MAXN


cdef inline int _inv_mod(int a, int p):
    # p is a tiny prime; a brute scan is simplest and branch-predictable
    cdef int x
    for x in range(1, p):
        if (a * x) % p == 1:
            return x
    return 0


cdef void _decode(ll code, int n, int p, int* out):
    cdef int i
    for i in range(n * n):
        out[i] = <int>(code % p)
        code //= p


cdef ll _encode(int* flat, int n, int p):
    cdef ll code = 0
    cdef int i
    for i in range(n * n - 1, -1, -1):
        code = code * p + flat[i]
    return code


cdef void _matmul(int* a, int* b, int n, int p, int* out):
    cdef int i, j, t, x, base, tb
    for i in range(n * n):
        out[i] = 0
    for i in range(n):
        base = i * n
        for t in range(n):
            x = a[base + t]
            if x:
                tb = t * n
                for j in range(n):
                    out[base + j] = (out[base + j] + x * b[tb + j]) % p


cdef int _rank_inplace(int* m, int rows, int cols, int p):
    cdef int rank = 0
    cdef int c, i, j, piv, inv, f, tmp
    for c in range(cols):
        piv = -1
        for i in range(rank, rows):
            if m[i * cols + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = m[rank * cols + j]
                m[rank * cols + j] = m[piv * cols + j]
                m[piv * cols + j] = tmp
        inv = _inv_mod(m[rank * cols + c], p)
        for j in range(c, cols):
            m[rank * cols + j] = (m[rank * cols + j] * inv) % p
        for i in range(rows):
            if i != rank and m[i * cols + c]:
                f = m[i * cols + c]
                for j in range(c, cols):
                    tmp = (m[i * cols + j] - f * m[rank * cols + j]) % p
                    if tmp < 0:
                        tmp += p
                    m[i * cols + j] = tmp
        rank += 1
        if rank == rows:
            break
    return rank


cdef void _invariants_c(int* flat, int n, int p, int* res):
    cdef int work[MAXE]
    cdef int concat[MAXE * 2]
    cdef int pivots[MAXN]
    cdef int is_pivot[MAXN]
    cdef int i, j, c, piv, inv, f, tmp, val, col, fcol, width
    cdef int r = 0
    for i in range(n * n):
        work[i] = flat[i]
    for i in range(n):
        is_pivot[i] = 0
    for c in range(n):
        piv = -1
        for i in range(r, n):
            if work[i * n + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                tmp = work[r * n + j]
                work[r * n + j] = work[piv * n + j]
                work[piv * n + j] = tmp
        inv = _inv_mod(work[r * n + c], p)
        for j in range(n):
            work[r * n + j] = (work[r * n + j] * inv) % p
        for i in range(n):
            if i != r and work[i * n + c]:
                f = work[i * n + c]
                for j in range(n):
                    tmp = (work[i * n + j] - f * work[r * n + j]) % p
                    if tmp < 0:
                        tmp += p
                    work[i * n + j] = tmp
        pivots[r] = c
        is_pivot[c] = 1
        r += 1
    cdef int nullity = n - r
    width = n + nullity
    for i in range(n):
        for j in range(n):
            concat[i * width + j] = flat[i * n + j]
        for j in range(n, width):
            concat[i * width + j] = 0
    col = n
    for fcol in range(n):
        if is_pivot[fcol]:
            continue
        concat[fcol * width + col] = 1
        for i in range(r):
            val = work[i * n + fcol]
            if val:
                concat[pivots[i] * width + col] = (p - val) % p
        col += 1
    cdef int dim_sum = _rank_inplace(concat, n, width, p)
    res[0] = r
    res[1] = nullity
    res[2] = dim_sum - r
    res[3] = dim_sum


def decode(code, n, p):
    """Unpack a base-p code into a flat entry tuple of length n*n."""
    cdef int buf[MAXE]
    _decode(code, n, p, buf)
    return tuple(buf[i] for i in range(n * n))


def encode(flat, n, p):
    """Pack flat entries into the base-p code (inverse of decode)."""
    cdef int buf[MAXE]
    cdef int i
    for i in range(n * n):
        buf[i] = flat[i]
    return _encode(buf, n, p)


def matmul(a, b, n, p):
    """Product of two flat n x n matrices mod p."""
    cdef int ba[MAXE]
    cdef int bb[MAXE]
    cdef int out[MAXE]
    cdef int i
    for i in range(n * n):
        ba[i] = a[i]
        bb[i] = b[i]
    _matmul(ba, bb, n, p, out)
    return tuple(out[i] for i in range(n * n))


def mat_rank(flat, rows, cols, p):
    """Rank of a flat rows x cols matrix mod p by row echelon elimination."""
    cdef int buf[MAXE * 2]
    cdef int i
    for i in range(rows * cols):
        buf[i] = flat[i]
    return _rank_inplace(buf, rows, cols, p)


def invariants(flat, n, p):
    """(rank, nullity, n0, dim(R+N)) of one flat n x n matrix mod p."""
    cdef int buf[MAXE]
    cdef int res[4]
    cdef int i
    for i in range(n * n):
        buf[i] = flat[i]
    _invariants_c(buf, n, p, res)
    return (res[0], res[1], res[2], res[3])


def invariant_table(n, p):
    """invariants() for every code in the domain, ascending."""
    cdef ll size = 1
    cdef int i
    for i in range(n * n):
        size *= p
    cdef int buf[MAXE]
    cdef int res[4]
    cdef ll code
    out = [None] * size
    for code in range(size):
        _decode(code, n, p, buf)
        _invariants_c(buf, n, p, res)
        out[code] = (res[0], res[1], res[2], res[3])
    return out


def shifted_rank_table(n, p, c):
    """r(I - c*G) for every code G in the domain, ascending."""
    cdef ll size = 1
    cdef int i, j
    for i in range(n * n):
        size *= p
    cdef int buf[MAXE]
    cdef int shifted[MAXE]
    cdef int cc = c % p
    cdef ll code
    cdef int tmp
    out = [None] * size
    for code in range(size):
        _decode(code, n, p, buf)
        for i in range(n * n):
            tmp = (-cc * buf[i]) % p
            if tmp < 0:
                tmp += p
            shifted[i] = tmp
        for i in range(n):
            shifted[i * n + i] = (shifted[i * n + i] + 1) % p
        out[code] = _rank_inplace(shifted, n, n, p)
    return out


def property_codes(n, p, kind):
    """Sorted codes of all idempotent or square-zero matrices in the domain."""
    cdef int want_idem
    if kind == "idempotent":
        want_idem = 1
    elif kind == "squarezero":
        want_idem = 0
    else:
        raise ValueError(f"unknown property kind {kind!r}")
    cdef ll size = 1
    cdef int i
    for i in range(n * n):
        size *= p
    cdef int buf[MAXE]
    cdef int sq[MAXE]
    cdef ll code
    cdef int nn = n * n
    cdef int hit
    out = []
    for code in range(size):
        _decode(code, n, p, buf)
        _matmul(buf, buf, n, p, sq)
        hit = 1
        if want_idem:
            for i in range(nn):
                if sq[i] != buf[i]:
                    hit = 0
                    break
        else:
            for i in range(nn):
                if sq[i]:
                    hit = 0
                    break
        if hit:
            out.append(code)
    return out


def multiply_sets(left_codes, right_codes, n, p):
    """Sorted unique codes of {A @ B} for A in left, B in right."""
    if not left_codes or not right_codes:
        return []
    cdef ll size = 1
    cdef int i, j
    cdef int nn = n * n
    for i in range(nn):
        size *= p
    cdef ll w[MAXE]
    w[0] = 1
    for i in range(1, nn):
        w[i] = w[i - 1] * p
    cdef Py_ssize_t nright = len(right_codes)
    cdef int* rights = <int*>PyMem_Malloc(nright * nn * sizeof(int))
    if rights is NULL:
        raise MemoryError()
    flags = bytearray(size)
    cdef unsigned char[::1] fl = flags
    cdef int a[MAXE]
    cdef int prod[MAXE]
    cdef ll code
    cdef Py_ssize_t jr
    try:
        for jr in range(nright):
            _decode(right_codes[jr], n, p, rights + jr * nn)
        for lcode in left_codes:
            _decode(lcode, n, p, a)
            for jr in range(nright):
                _matmul(a, rights + jr * nn, n, p, prod)
                code = 0
                for i in range(nn):
                    if prod[i]:
                        code += prod[i] * w[i]
                fl[code] = 1
    finally:
        PyMem_Free(rights)
    out = []
    for code in range(size):
        if fl[code]:
            out.append(code)
    return out
