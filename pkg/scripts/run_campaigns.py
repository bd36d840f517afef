"""Run every verification campaign at its acceptance size and write JSON reports.

    python3 scripts/run_campaigns.py --out-dir reports --jobs 4
"""
import argparse
import pathlib
import sys

from ktverify.intersection import ROUTES
from ktverify.verify import (
    SampleSpec,
    verify_be,
    verify_intersection_range,
    verify_kt,
    verify_leonard_range,
    verify_orthogonality_range,
    verify_w_closed,
    verify_whipple,
)


def campaigns(jobs):
    yield "kt", lambda: verify_kt(1, 60, jobs=jobs)
    yield "leonard", lambda: verify_leonard_range(1, 40, jobs=jobs)
    yield "intersection_routes", lambda: verify_intersection_range(1, 16, routes=ROUTES, structure=False, jobs=jobs)
    yield "intersection_nonneg", lambda: verify_intersection_range(1, 40, routes=("matrix",), structure=False, jobs=jobs)
    yield "intersection_structure", lambda: verify_intersection_range(1, 12, routes=("matrix",), jobs=jobs)
    yield "wclosed", lambda: verify_w_closed(20, jobs=jobs)
    yield "be", lambda: verify_be(SampleSpec(42, 200, 12))
    yield "whipple", lambda: verify_whipple(SampleSpec(7, 200, 12))
    yield "orthogonality", lambda: verify_orthogonality_range(1, 40, jobs=jobs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ok = True
    for name, run in campaigns(args.jobs):
        rep = run()
        (out / f"{name}.json").write_text(rep.to_json() + "\n")
        print(f"{'PASS' if rep.passed else 'FAIL'}  {name:24s} {rep.checks_run:>9d} checks  {rep.elapsed_ms} ms")
        ok &= rep.passed
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
