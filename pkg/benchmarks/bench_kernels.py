#!/usr/bin/env python3
"""Time the pure-Python kernels against the compiled extension.

Runs each workload on every available backend and prints a small table with
the per-backend best-of-N wall time and the speedup over pure.  Workloads are
the three kernel entry points the exhaustive oracle leans on: whole-domain
invariant tables, property scans, and product-set expansion.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--heavy]

--heavy adds the GF(2) n=4 table (65536 matrices), the workload behind the
slow acceptance sweep.
"""

import argparse
import time

from quadfactor.kernels import available_backends


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _workloads(heavy):
    loads = [
        ("invariant_table n=3 GF(2)", lambda k: k.invariant_table(3, 2)),
        ("invariant_table n=2 GF(5)", lambda k: k.invariant_table(2, 5)),
        ("shifted_rank_table n=3 GF(3) c=2", lambda k: k.shifted_rank_table(3, 3, 2)),
        ("property_codes squarezero n=3 GF(3)", lambda k: k.property_codes(3, 3, "squarezero")),
        ("property_codes idempotent n=3 GF(3)", lambda k: k.property_codes(3, 3, "idempotent")),
    ]

    def products(k):
        sqz = k.property_codes(3, 2, "squarezero")
        return k.multiply_sets(sqz, sqz, 3, 2)

    loads.append(("multiply_sets squarezero^2 n=3 GF(2)", products))
    if heavy:
        loads.append(("invariant_table n=4 GF(2)", lambda k: k.invariant_table(4, 2)))
    return loads


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing (default 3)")
    parser.add_argument("--heavy", action="store_true", help="include the GF(2) n=4 table")
    args = parser.parse_args()

    backends = available_backends()
    names = list(backends)
    print(f"backends: {', '.join(names)}")
    if "compiled" not in backends:
        print("compiled extension not built; timing the pure backend only")
    header = f"{'workload':<40}" + "".join(f"{n:>12}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for label, fn in _workloads(args.heavy):
        times = {}
        for name in names:
            mod = backends[name]
            times[name] = _time(lambda m=mod: fn(m), args.repeat)
        row = f"{label:<40}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if "compiled" in times and "pure" in times and times["compiled"] > 0:
            row += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(row)

    # the two implementations must agree bit for bit on a spot check
    if len(names) > 1:
        pure, fast = backends["pure"], backends["compiled"]
        assert list(pure.invariant_table(2, 3)) == list(fast.invariant_table(2, 3))
        print("spot parity check (n=2 GF(3) table): ok")


if __name__ == "__main__":
    main()
