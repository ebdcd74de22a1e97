"""Command-line front end.

Five subcommands over the library: ``invariants``, ``decide``, ``factor``,
``verify`` and ``oracle``.  Matrices travel as text files that declare their
own field (a matrix is meaningless without one); witnesses use the factor
header format.  Exit codes: 0 success/feasible/verified, 1 infeasible or
verification failure, 2 usage or parse problems, 3 internal construction
defect.  All output is plain ASCII; ``--format=keyvalue`` swaps the human
renderer for stable ``key=value`` lines.
"""

import argparse
import sys

from .errors import (
    ConstructionError,
    InfeasibleError,
    QuadfactorError,
)
from .factor import (
    Constructive,
    FactorSpec,
    Witness,
    decide,
    factor_for_spec,
    verify_witness,
)
from .field import Field
from .invariants import invariant_report
from .matrix import Matrix
from .oracle import EnumerationDomain, cross_check

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_DEFECT = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise QuadfactorError(f"cannot read {path}: {exc}") from exc


def _read_matrix(path: str) -> Matrix:
    return Matrix.from_text(_read_text(path))


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _emit_pairs(pairs) -> None:
    for key, value in pairs:
        print(f"{key}={_fmt_value(value)}")


def _emit_aligned(pairs) -> None:
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        print(f"{key.ljust(width)}  {_fmt_value(value)}")


def _cmd_invariants(args) -> int:
    rep = invariant_report(_read_matrix(args.input))
    if args.format == "keyvalue":
        _emit_pairs(rep.as_pairs())
    else:
        _emit_aligned(rep.as_pairs())
    return EXIT_OK


def _decision_pairs(decision) -> list:
    pairs = [
        ("feasible", decision.feasible),
        ("constructive", decision.constructive.value),
    ]
    for c in decision.conditions:
        pairs.append((f"cond.{c.cid}.lhs", c.lhs))
        pairs.append((f"cond.{c.cid}.relation", c.relation))
        pairs.append((f"cond.{c.cid}.rhs", c.rhs))
        pairs.append((f"cond.{c.cid}.passed", c.passed))
    return pairs


def _print_decision(decision) -> None:
    for c in decision.conditions:
        verdict = "pass" if c.passed else "FAIL"
        print(f"{c.cid}: {c.label}: {c.lhs} {c.relation} {c.rhs} -> {verdict}")
    print(f"constructive: {decision.constructive.value}")
    print("feasible" if decision.feasible else "infeasible")


def _cmd_decide(args) -> int:
    g = _read_matrix(args.input)
    spec = FactorSpec.parse(args.spec, g.field)
    decision = decide(g, spec)
    if args.format == "keyvalue":
        _emit_pairs(_decision_pairs(decision))
    else:
        _print_decision(decision)
    return EXIT_OK if decision.feasible else EXIT_NEGATIVE


def _verification_pairs(report) -> list:
    pairs = []
    for c in report.factor_checks:
        pairs.append((f"factor.{c.index}.role", c.role.value))
        pairs.append((f"factor.{c.index}.property", c.property_ok))
        pairs.append((f"factor.{c.index}.nullity", c.nullity_ok))
        pairs.append((f"factor.{c.index}.declared_nullity", c.declared_nullity))
        pairs.append((f"factor.{c.index}.actual_nullity", c.actual_nullity))
    pairs.append(("product", report.product_ok))
    pairs.append(("verified", report.ok))
    return pairs


def _print_verification(report) -> None:
    for c in report.factor_checks:
        prop = "ok" if c.property_ok else "FAIL"
        nul = "ok" if c.nullity_ok else "FAIL"
        print(
            f"factor {c.index} role={c.role.value}: property {prop}, "
            f"nullity {nul} (declared {c.declared_nullity}, actual {c.actual_nullity})"
        )
    print(f"product {'ok' if report.product_ok else 'FAIL'}")
    print("verified" if report.ok else "verification failed")


def _cmd_factor(args) -> int:
    g = _read_matrix(args.input)
    spec = FactorSpec.parse(args.spec, g.field)
    decision = decide(g, spec)
    if not decision.feasible:
        if args.format == "keyvalue":
            _emit_pairs(_decision_pairs(decision))
        else:
            _print_decision(decision)
        return EXIT_NEGATIVE
    if decision.constructive is not Constructive.FULL:
        print(
            "error: this shape is decide-only (feasible, but no construction "
            "is implemented for it); use the decide subcommand",
            file=sys.stderr,
        )
        return EXIT_USAGE
    witness = factor_for_spec(g, spec)
    report = verify_witness(g, witness)
    if not report.ok:
        raise ConstructionError("emitted witness failed re-verification")
    if args.output == "-":
        sys.stdout.write(witness.to_text())
        stream = sys.stderr
    else:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(witness.to_text())
        stream = sys.stdout
    out = _verification_pairs(report)
    if args.format == "keyvalue":
        for key, value in out:
            print(f"{key}={_fmt_value(value)}", file=stream)
    else:
        print(f"{len(witness.factors)} factors verified", file=stream)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _read_matrix(args.input)
    witness = Witness.from_text(_read_text(args.witness), field=g.field, order=g.rows)
    report = verify_witness(g, witness)
    if args.format == "keyvalue":
        _emit_pairs(_verification_pairs(report))
    else:
        _print_verification(report)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _cmd_oracle(args) -> int:
    field = Field.from_token(args.field)
    dom = EnumerationDomain(field, args.order)
    spec = FactorSpec.parse(args.spec, field)
    report = cross_check(dom, spec)
    pairs = [
        ("field", field.token()),
        ("order", dom.n),
        ("checked", report.checked),
        ("feasible_count", report.feasible_count),
        ("product_count", report.product_count),
        ("mismatch_count", len(report.mismatches)),
    ]
    if args.format == "keyvalue":
        _emit_pairs(pairs)
        for i, mm in enumerate(report.mismatches, start=1):
            _emit_pairs(
                [
                    (f"mismatch.{i}.code", mm.code),
                    (f"mismatch.{i}.feasible", mm.feasible),
                    (f"mismatch.{i}.in_product_set", mm.in_product_set),
                ]
            )
    else:
        _emit_aligned(pairs)
        for mm in report.mismatches:
            print(
                f"mismatch code={mm.code} feasible={_fmt_value(mm.feasible)} "
                f"in_product_set={_fmt_value(mm.in_product_set)}"
            )
            sys.stdout.write(mm.matrix.to_text())
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "keyvalue"),
        default="text",
        help="output renderer (default: aligned human text)",
    )
    parser = argparse.ArgumentParser(
        prog="quadfactor",
        description=(
            "Decide and construct factorizations of exact matrices into "
            "idempotent and square-zero factors with prescribed nullities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "invariants", parents=[common], help="rank/nullity/n0 report for a matrix file"
    )
    p.add_argument("input", help="matrix file, or - for stdin")
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser(
        "decide", parents=[common], help="evaluate feasibility conditions for a spec"
    )
    p.add_argument("input", help="matrix file, or - for stdin")
    p.add_argument(
        "--spec",
        required=True,
        help="factor shape, e.g. 'idem=1,2 scalars=1,-1/2 sqz=2,2'",
    )
    p.set_defaults(handler=_cmd_decide)

    p = sub.add_parser(
        "factor", parents=[common], help="construct and verify a witness"
    )
    p.add_argument("input", help="matrix file, or - for stdin")
    p.add_argument("--spec", required=True, help="factor shape (same syntax as decide)")
    p.add_argument(
        "--output",
        default="-",
        help="witness file path; - (default) streams the witness to stdout "
        "and the verification summary to stderr",
    )
    p.set_defaults(handler=_cmd_factor)

    p = sub.add_parser(
        "verify", parents=[common], help="re-check a witness file against a matrix"
    )
    p.add_argument("input", help="matrix file, or - for stdin")
    p.add_argument("--witness", required=True, help="witness file to check")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser(
        "oracle",
        parents=[common],
        help="exhaustively cross-check decide against brute-force products",
    )
    p.add_argument("--field", required=True, help="prime field token, e.g. 'GF 2'")
    p.add_argument("--order", required=True, type=int, help="matrix order n")
    p.add_argument("--spec", required=True, help="factor shape (same syntax as decide)")
    p.set_defaults(handler=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except ConstructionError as exc:
        print(f"internal construction defect: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except QuadfactorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
