"""Command-line front end.

Subcommands map one-to-one onto the library: check-algebra, check-module,
annih-check, weights, solve-funceq, verify-prop36, scan-a1, snf.  Exit
codes: 0 all checks passed, 1 a check failed, 2 the spec or arguments were
invalid, 3 a computation needed a table entry beyond the truncation.

--json writes a machine report; identical inputs produce byte-identical
files (keys sorted, no timestamps), which golden tests rely on.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import InvalidStructure, TruncationExceeded, check_jacobi, check_skew
from .annihilation import AnnihAlgebra, check_annih_lie, weight_spaces
from .funceq import (
    FuncEqInstance,
    bcsx_variant_solver,
    solve_intertwiner,
    verify_solution_table,
)
from .grading import scan_grid, default_grid
from .modules import MissingAction
from .parsing import ParseError, parse_scalar
from .polymatrix import PolyMatrix, matmul, smith_normal_form, torsion_split
from .reports import Report
from .scalars import Scalar
from .specfile import DuplicateDefinition, SpecFile, UnknownGenerator, parse_spec

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_SPEC_ERROR = 2
EXIT_TRUNCATION = 3


def _load_spec(path: str) -> SpecFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _emit(args, command: str, status: str, report: Report | None, data: dict) -> None:
    if report is not None:
        print(report.summary())
        for item in report.failures:
            print(f"  FAIL {item.check_id}")
            for w in item.witnesses:
                print(f"       {w}")
        for item in report.skipped:
            print(f"  skip {item.check_id}")
    if getattr(args, "json", None):
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "status": status,
            "report": report.to_dict() if report is not None else None,
            "data": data,
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")


def _scalar_arg(text: str) -> Scalar:
    try:
        return parse_scalar(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cmd_check_algebra(args) -> int:
    spec = _load_spec(args.spec)
    report = Report("algebra axioms")
    report.checks.extend(check_skew(spec.algebra).checks)
    report.checks.extend(check_jacobi(spec.algebra).checks)
    status = "pass" if report.passed else "fail"
    _emit(args, "check-algebra", status, report, {"generators": list(spec.algebra.gens)})
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_check_module(args) -> int:
    from .modules import check_module

    spec = _load_spec(args.spec)
    if args.module not in spec.modules:
        raise InvalidStructure(f"spec has no module {args.module!r}")
    report = check_module(spec.algebra, spec.modules[args.module])
    status = "pass" if report.passed else "fail"
    _emit(args, "check-module", status, report, {"module": args.module})
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_annih_check(args) -> int:
    spec = _load_spec(args.spec)
    X = AnnihAlgebra(spec.algebra, args.depth)
    report = check_annih_lie(X)
    status = "pass" if report.passed else "fail"
    _emit(args, "annih-check", status, report, {"depth": args.depth})
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_weights(args) -> int:
    spec = _load_spec(args.spec)
    if args.module not in spec.modules:
        raise InvalidStructure(f"spec has no module {args.module!r}")
    module = spec.modules[args.module]
    gen = args.gen if args.gen is not None else spec.virasoro_gen
    reports = weight_spaces(module, args.degree, virasoro_gen=gen)
    data = {
        "degree_bound": args.degree,
        "virasoro_gen": gen,
        "weights": [
            {
                "weight": str(w.weight),
                "dim": w.dim,
                "vectors": [module.render_element(list(v)) for v in w.vectors],
            }
            for w in reports
        ],
    }
    for w in reports:
        print(f"weight {w.weight}: dim {w.dim}")
    _emit(args, "weights", "pass", None, data)
    return EXIT_OK


def _cmd_solve_funceq(args) -> int:
    inst = FuncEqInstance(
        args.a, args.b, args.delta_i, args.c_i, args.delta_j, args.c_j,
        args.degree_bound, args.homogeneous,
    )
    basis = bcsx_variant_solver(inst) if args.variant else solve_intertwiner(inst)
    for p in basis.basis:
        print(p.render())
    print(f"dimension {basis.dimension}")
    data = {
        "dimension": basis.dimension,
        "basis": [p.render() for p in basis.basis],
        "parameters": {
            "a": str(args.a), "b": str(args.b),
            "delta_i": str(args.delta_i), "c_i": str(args.c_i),
            "delta_j": str(args.delta_j), "c_j": str(args.c_j),
            "degree_bound": args.degree_bound,
            "homogeneous": args.homogeneous,
            "variant": bool(args.variant),
        },
    }
    _emit(args, "solve-funceq", "pass", None, data)
    return EXIT_OK


def _cmd_verify_prop36(args) -> int:
    kwargs = {}
    if args.a_samples:
        kwargs["a_samples"] = tuple(_scalar_arg(x) for x in args.a_samples.split(","))
    if args.delta_samples:
        kwargs["delta_samples"] = tuple(_scalar_arg(x) for x in args.delta_samples.split(","))
    result = verify_solution_table(**kwargs)
    status = "pass" if result.report.passed else "fail"
    rows = [
        {
            "row": rv.row_id,
            "a": str(rv.a),
            "delta_i": str(rv.delta_i),
            "delta_j": str(rv.delta_j),
            "k": rv.k,
            "stated_solves": rv.stated_solves,
            "dimension": rv.dimension,
            "expected_dimension": 1,
            "matches_table": rv.matches_table,
            "perturbed_dimensions": list(rv.perturbed_dimensions),
        }
        for rv in result.rows
    ]
    _emit(args, "verify-prop36", status, result.report, {"rows": rows})
    return EXIT_OK if result.report.passed else EXIT_CHECK_FAILED


def _parse_grid(text: str):
    if text.startswith("den"):
        parts = text.split(":")
        bound = int(parts[0][3:])
        lo = Fraction(parts[1]) if len(parts) > 1 else Fraction(1)
        hi = Fraction(parts[2]) if len(parts) > 2 else Fraction(2)
        return default_grid(bound, lo, hi)
    return [_scalar_arg(x) for x in text.split(",")]


def _cmd_scan_a1(args) -> int:
    grid = _parse_grid(args.grid)
    results = scan_grid(grid, args.horizon)
    for r in results:
        mark = "admissible" if r.admissible else "rejected"
        print(f"a1 = {r.a1}: {mark}")
    data = {"horizon": args.horizon, "results": [r.to_dict() for r in results]}
    _emit(args, "scan-a1", "pass", None, data)
    return EXIT_OK


def _cmd_snf(args) -> int:
    rows = []
    for chunk in args.matrix.split(";"):
        from .parsing import parse_poly

        rows.append([parse_poly(cell.strip()) for cell in chunk.split(",")])
    matrix = PolyMatrix(rows)
    snf = smith_normal_form(matrix)
    free_rank, torsion = torsion_split(matrix)
    product = matmul(matmul(snf.U, matrix), snf.V)
    exact = product == snf.D
    print("D =", snf.D.render())
    print("U =", snf.U.render())
    print("V =", snf.V.render())
    print(f"free rank {free_rank}; torsion invariants: "
          + (", ".join(p.render() for p in torsion) or "none"))
    data = {
        "D": snf.D.render(),
        "U": snf.U.render(),
        "V": snf.V.render(),
        "product_matches": exact,
        "free_rank": free_rank,
        "torsion_invariants": [p.render() for p in torsion],
    }
    _emit(args, "snf", "pass" if exact else "fail", None, data)
    return EXIT_OK if exact else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieconformal",
        description="exact checks and solvers for Lie conformal algebra structure tables",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", help="write a machine-readable report to this path")

    p = sub.add_parser("check-algebra", help="skew-symmetry and Jacobi checks")
    p.add_argument("spec")
    add_json(p)
    p.set_defaults(func=_cmd_check_algebra)

    p = sub.add_parser("check-module", help="module axiom checks")
    p.add_argument("spec")
    p.add_argument("--module", required=True)
    add_json(p)
    p.set_defaults(func=_cmd_check_module)

    p = sub.add_parser("annih-check", help="annihilation Lie algebra consistency")
    p.add_argument("spec")
    p.add_argument("--depth", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_annih_check)

    p = sub.add_parser("weights", help="weight spaces of the index-1 action")
    p.add_argument("spec")
    p.add_argument("--module", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--gen", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_weights)

    p = sub.add_parser("solve-funceq", help="solve the intertwiner functional equation")
    p.add_argument("--a", type=_scalar_arg, required=True)
    p.add_argument("--b", type=_scalar_arg, default=Scalar(0))
    p.add_argument("--delta-i", type=_scalar_arg, required=True)
    p.add_argument("--c-i", type=_scalar_arg, default=Scalar(0))
    p.add_argument("--delta-j", type=_scalar_arg, required=True)
    p.add_argument("--c-j", type=_scalar_arg, default=Scalar(0))
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--homogeneous", type=int, default=None)
    p.add_argument("--variant", action="store_true",
                   help="solve the shifted-by-m orientation instead")
    add_json(p)
    p.set_defaults(func=_cmd_solve_funceq)

    p = sub.add_parser("verify-prop36", help="verify the homogeneous solution table")
    p.add_argument("--a-samples", default=None)
    p.add_argument("--delta-samples", default=None)
    add_json(p)
    p.set_defaults(func=_cmd_verify_prop36)

    p = sub.add_parser("scan-a1", help="admissibility scan for the grade-one slope")
    p.add_argument("--grid", required=True,
                   help="comma-separated scalars, or denN[:lo:hi] for all "
                        "denominators up to N in [lo, hi]")
    p.add_argument("--horizon", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_scan_a1)

    p = sub.add_parser("snf", help="Smith normal form of a matrix over d-polynomials")
    p.add_argument("--matrix", required=True,
                   help='rows split by ";", entries by ","; e.g. "d,1;0,d"')
    add_json(p)
    p.set_defaults(func=_cmd_snf)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_SPEC_ERROR if exc.code not in (0, None) else 0
    started = time.monotonic()
    try:
        code = args.func(args)
    except (ParseError, InvalidStructure, UnknownGenerator, DuplicateDefinition,
            MissingAction, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except TruncationExceeded as exc:
        print(f"error: truncation insufficient: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    print(f"elapsed: {time.monotonic() - started:.3f}s")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
