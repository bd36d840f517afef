"""Command-line front end.

    ktverify system --d 3
    ktverify pmatrix --d 1 --format csv
    ktverify f43 --upper -1,2,-1,2 --lower 1,4,-2
    ktverify w --spins 1,1,2,2,2,1
    ktverify verify kt --d-max 60 --format json --out kt.json

Exit status: 0 on success or a passing campaign, 1 when a campaign finds a
violation or an input fails a domain check, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .exact import DomainError, HalfInt, Surd, SurdSum
from .hyper import HypParams, eval_4f3_unit
from .intersection import ROUTES, IntersectionTensor, b_matrix, p_tensor
from .leonard import RacahSystem, build_system, matrix_p, u_table, u_table_hyper
from .matrix import RationalMatrix
from .racah import racah_w
from .verify import (
    SampleSpec,
    VerificationReport,
    verify_be,
    verify_intersection_range,
    verify_kt,
    verify_leonard_range,
    verify_orthogonality_range,
    verify_w_closed,
    verify_whipple,
)

FORMATS = ("pretty", "json", "csv")
CLI_ROUTES = {"matrix": "matrix", "sum": "triple_sum", "triple_sum": "triple_sum", "racah": "racah", "appendix": "appendix"}


# ---------------------------------------------------------------------------
# rendering


def _approx(x: float) -> float:
    return float(f"{x:.12g}")


def _csv(rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _to_obj(value: Any) -> Any:
    if isinstance(value, (int, Fraction)):
        return {"value": str(Fraction(value))}
    if isinstance(value, Surd):
        return {"coeff": str(value.coeff), "radicand": str(value.radicand), "approx": _approx(float(value))}
    if isinstance(value, SurdSum):
        return {"terms": [{"coeff": str(c), "radicand": str(r)} for r, c in value.terms], "approx": _approx(float(value))}
    if isinstance(value, RationalMatrix):
        return {"rows": [[str(x) for x in r] for r in value.rows]}
    if isinstance(value, IntersectionTensor):
        return {"D": value.D, "route": value.route, "p": [[[str(x) for x in row] for row in m] for m in value.p]}
    if isinstance(value, VerificationReport):
        return value.to_dict()
    if isinstance(value, RacahSystem):
        return {
            "D": value.D,
            "c": [str(x) for x in value.c[1:]],
            "a": [str(x) for x in value.a],
            "b": [str(x) for x in value.b[:-1]],
            "theta": [str(x) for x in value.theta],
            "k": [str(x) for x in value.k],
            "nu": str(value.nu),
        }
    raise TypeError(f"cannot render {type(value).__name__}")


def _pretty_matrix(m: RationalMatrix) -> str:
    cells = [[str(x) for x in r] for r in m.rows]
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("  ".join(c.rjust(w) for c in r) for r in cells)


def _pretty_report(r: VerificationReport) -> str:
    params = ", ".join(f"{k}={v}" for k, v in r.params.items())
    lines = [
        f"campaign   {r.campaign} ({params})",
        f"checks     {r.checks_run}",
        f"violations {len(r.violations)}",
    ]
    if r.equality_cases is not None:
        lines.append(f"equality   {len(r.equality_cases)} cases with |value| = 1")
    if r.rng:
        lines.append(f"rng        {r.rng}")
    lines.append(f"elapsed    {r.elapsed_ms} ms")
    lines.append(f"result     {'PASS' if r.passed else 'FAIL'}")
    for v in r.violations[:20]:
        lines.append(f"  {v['check']} at {v['params']}: expected {v['expected']}, got {v['actual']}")
    if len(r.violations) > 20:
        lines.append(f"  ... {len(r.violations) - 20} more")
    return "\n".join(lines)


def render(value: Any, fmt: str = "pretty") -> str:
    """Exact text for a scalar, surd, matrix, tensor, system or report."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return json.dumps(_to_obj(value), indent=2)

    if isinstance(value, (int, Fraction, Surd, SurdSum)):
        return str(value)
    if isinstance(value, RationalMatrix):
        if fmt == "csv":
            return _csv([[f"c{j}" for j in range(value.shape[1])], *value.rows])
        return _pretty_matrix(value)
    if isinstance(value, IntersectionTensor):
        if fmt == "csv":
            return _csv([["h", "i", "j", "p"], *value.cells()])
        blocks = [f"D={value.D} route={value.route}; block h lists p^h_(i,j), rows i, columns j"]
        for h, m in enumerate(value.p):
            blocks.append(f"h = {h}\n{_pretty_matrix(RationalMatrix(m))}")
        return "\n".join(blocks)
    if isinstance(value, RacahSystem):
        rows = [
            [i, value.c[i] if i else "", value.a[i], value.b[i] if i < value.D else "", value.theta[i], value.k[i]]
            for i in range(value.D + 1)
        ]
        if fmt == "csv":
            return _csv([["i", "c", "a", "b", "theta", "k"], *rows])
        head = f"D={value.D}  nu={value.nu}"
        table = [["i", "c_i", "a_i", "b_i", "theta_i", "k_i"], *[[str(x) for x in r] for r in rows]]
        w = [max(len(r[k]) for r in table) for k in range(6)]
        return "\n".join([head, *("  ".join(c.rjust(w[k]) for k, c in enumerate(r)) for r in table)])
    if isinstance(value, VerificationReport):
        if fmt == "csv":
            d = value.to_dict()
            head = ["campaign", "params", "checks_run", "violations", "equality_cases", "elapsed_ms", "passed"]
            row = [
                d["campaign"],
                json.dumps(d["params"]),
                d["checks_run"],
                len(d["violations"]),
                len(d.get("equality_cases") or []),
                d["elapsed_ms"],
                d["passed"],
            ]
            return _csv([head, row])
        return _pretty_report(value)
    raise TypeError(f"cannot render {type(value).__name__}")


# ---------------------------------------------------------------------------
# argument parsing


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fracs(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals like -1/2, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="ktverify", description="Exact Racah-polynomial computations and verification campaigns.")
    parser.add_argument("--format", choices=FORMATS, default="pretty", help="output format (default pretty)")
    parser.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("system", parents=[common], help="coefficient tables c, a, b, theta, k")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("utable", parents=[common], help="u_i(theta_j), rows i")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--route", choices=("recurrence", "hyper"), default="recurrence")

    p = sub.add_parser("pmatrix", parents=[common], help="P with P[i, j] = v_j(theta_i)")
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("bmatrix", parents=[common], help="B_i = v_i(A)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = sub.add_parser("ptensor", parents=[common], help="intersection numbers p^h_(i,j)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--route", choices=(*CLI_ROUTES, "all"), default="matrix")

    p = sub.add_parser("f43", parents=[common], help="terminating 4F3 at z = 1")
    p.add_argument("--upper", type=_fracs, required=True)
    p.add_argument("--lower", type=_fracs, required=True)

    p = sub.add_parser("w", parents=[common], help="Racah coefficient W(a,b,c,d;e,f)")
    p.add_argument("--spins", type=_ints, required=True, help="six twice-spins, e.g. 1,1,2,2,2,1 for (1/2,1/2,1,1;1,1/2)")
    p.add_argument("--half", action="store_true", help="accepted for explicitness; spins are always twice-values")

    p = sub.add_parser("verify", parents=[common], help="run a verification campaign")
    p.add_argument("campaign", choices=("kt", "leonard", "intersection", "orthogonality", "be", "wclosed", "whipple"))
    p.add_argument("--d", type=int, help="a single D")
    p.add_argument("--d-min", type=int, default=1)
    p.add_argument("--d-max", type=int, default=10)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-spin", type=int, default=12, help="largest twice-spin (be) or parameter magnitude (whipple)")
    p.add_argument("--route", choices=(*CLI_ROUTES, "all"), default="all", help="intersection: routes compared")
    p.add_argument("--no-structure", action="store_true", help="intersection: skip the structure constants")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for D-range campaigns")
    return parser


def _run(args: argparse.Namespace) -> tuple[Any, int]:
    cmd = args.command
    if cmd == "system":
        return build_system(args.d), 0
    if cmd == "utable":
        sys_ = build_system(args.d)
        return (u_table(sys_) if args.route == "recurrence" else u_table_hyper(sys_)), 0
    if cmd == "pmatrix":
        return matrix_p(build_system(args.d)), 0
    if cmd == "bmatrix":
        return b_matrix(build_system(args.d), args.i), 0
    if cmd == "ptensor":
        sys_ = build_system(args.d)
        if args.route != "all":
            return p_tensor(sys_, CLI_ROUTES[args.route]), 0
        tensors = [p_tensor(sys_, r) for r in ROUTES]
        agree = all(t.p == tensors[0].p for t in tensors)
        if not agree:
            print("routes disagree", file=sys.stderr)
        return tensors[0], 0 if agree else 1
    if cmd == "f43":
        return eval_4f3_unit(HypParams(args.upper, args.lower)), 0
    if cmd == "w":
        if len(args.spins) != 6:
            raise DomainError(f"--spins takes six twice-values, got {len(args.spins)}")
        return racah_w(*(HalfInt(t) for t in args.spins)), 0
    if cmd == "verify":
        rep = _verify(args)
        return rep, 0 if rep.passed else 1
    raise AssertionError(cmd)


def _verify(args: argparse.Namespace) -> VerificationReport:
    d_min, d_max = (args.d, args.d) if args.d is not None else (args.d_min, args.d_max)
    c = args.campaign
    if c == "kt":
        return verify_kt(d_min, d_max, jobs=args.jobs)
    if c == "leonard":
        return verify_leonard_range(d_min, d_max, jobs=args.jobs)
    if c == "orthogonality":
        return verify_orthogonality_range(d_min, d_max, jobs=args.jobs)
    if c == "intersection":
        routes = ROUTES if args.route == "all" else ("matrix", CLI_ROUTES[args.route])
        return verify_intersection_range(d_min, d_max, routes=routes, structure=not args.no_structure, jobs=args.jobs)
    if c == "wclosed":
        return verify_w_closed(d_max, d_min=d_min, jobs=args.jobs)
    if c == "be":
        return verify_be(SampleSpec(42 if args.seed is None else args.seed, args.samples, args.max_spin))
    if c == "whipple":
        return verify_whipple(SampleSpec(7 if args.seed is None else args.seed, args.samples, args.max_spin))
    raise AssertionError(c)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        value, code = _run(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render(value, args.format) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
