"""Enumeration kernels, with a compiled fast path when available.

``gf_slow`` is the always-present pure-Python implementation.  If the
Cython extension ``_gf_fast`` was built, it is selected automatically at
import; otherwise the pure backend is used.  ``BACKEND`` records which one
won.  Both expose the same functions and must return identical values —
``available_backends()`` hands out every importable implementation so the
test suite and the benchmark can compare them directly.
"""

from . import gf_slow

try:  # pragma: no cover - exercised only when the extension is built
    from . import _gf_fast
except ImportError:  # pragma: no cover
    _gf_fast = None

if _gf_fast is not None:  # pragma: no cover
    BACKEND = "compiled"
    _impl = _gf_fast
else:
    BACKEND = "pure"
    _impl = gf_slow

decode = _impl.decode
encode = _impl.encode
matmul = _impl.matmul
mat_rank = _impl.mat_rank
invariants = _impl.invariants
invariant_table = _impl.invariant_table
shifted_rank_table = _impl.shifted_rank_table
property_codes = _impl.property_codes
multiply_sets = _impl.multiply_sets


def available_backends():
    """Mapping of backend name -> module, for parity tests and benchmarks."""
    found = {"pure": gf_slow}
    if _gf_fast is not None:  # pragma: no cover
        found["compiled"] = _gf_fast
    return found


__all__ = [
    "BACKEND",
    "available_backends",
    "decode",
    "encode",
    "matmul",
    "mat_rank",
    "invariants",
    "invariant_table",
    "shifted_rank_table",
    "property_codes",
    "multiply_sets",
]
