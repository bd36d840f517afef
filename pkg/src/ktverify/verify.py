"""Verification campaigns: exhaustive sweeps over D and seeded random samples.

Every check is exact. A campaign returns a VerificationReport; ranges over D
are run one D at a time (optionally in worker processes) and the per-D
reports are merged, so a sharded run and a serial run produce the same report.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Any, Callable, Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .exact import DomainError, HalfInt
from .hyper import HypParams, WhippleRoles, eval_4f3_unit, whipple_transform
from .intersection import (
    ROUTES,
    b_matrix,
    p_tensor,
    structure_violations,
    triple_products,
    w_kt_squared,
)
from .leonard import (
    ORTHOGONALITY_RELATIONS,
    build_system,
    matrix_a,
    matrix_a_star,
    matrix_p,
    orthogonality_gram,
    u_hyper,
    u_table,
    v_table,
)
from .matrix import RationalMatrix
from .racah import be_residual, racah_w, w_quarter_closed

RNG_ID = "numpy.random.PCG64(SeedSequence(seed)).random_raw; ranges by rejection on uint64"

REPORT_FIELDS = ("campaign", "params", "checks_run", "violations", "equality_cases", "elapsed_ms", "passed", "rng")


@dataclass
class VerificationReport:
    campaign: str
    params: dict[str, Any]
    checks_run: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)
    equality_cases: Optional[list[dict[str, Any]]] = None
    elapsed_ms: int = 0
    rng: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, ok: bool, check: str, params: Mapping[str, Any], expected: Any = None, actual: Any = None) -> bool:
        self.checks_run += 1
        if not ok:
            self.violations.append(
                {"check": check, "params": dict(params), "expected": str(expected), "actual": str(actual)}
            )
        return ok

    def check_many(self, total: int, failures: Iterable[tuple[str, Mapping[str, Any], Any, Any]]) -> None:
        """Count ``total`` checks of which ``failures`` are the broken ones."""
        for check, params, expected, actual in failures:
            self.violations.append(
                {"check": check, "params": dict(params), "expected": str(expected), "actual": str(actual)}
            )
        self.checks_run += total

    def to_dict(self, elapsed: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "campaign": self.campaign,
            "params": self.params,
            "checks_run": self.checks_run,
            "violations": self.violations,
        }
        if self.equality_cases is not None:
            out["equality_cases"] = self.equality_cases
        if elapsed:
            out["elapsed_ms"] = self.elapsed_ms
        out["passed"] = self.passed
        if self.rng is not None:
            out["rng"] = self.rng
        return out

    def to_json(self, elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(elapsed), indent=2)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> VerificationReport:
        rep = cls(
            d["campaign"],
            dict(d["params"]),
            d["checks_run"],
            list(d["violations"]),
            d.get("equality_cases"),
            d.get("elapsed_ms", 0),
            d.get("rng"),
        )
        if "passed" in d and d["passed"] != rep.passed:
            raise ValueError("report claims passed but lists violations (or the reverse)")
        return rep


def _record_key(rec: Mapping[str, Any]) -> tuple:
    params = rec.get("params", rec)
    return (rec.get("check", ""), tuple((k, _sortable(v)) for k, v in sorted(params.items())), json.dumps(rec, sort_keys=True))


def _sortable(v: Any) -> tuple:
    if isinstance(v, (list, tuple)):
        return (1, tuple(_sortable(x) for x in v))
    if isinstance(v, (int, float)):
        return (0, v)
    return (2, str(v))


def _merge_params(p: Mapping[str, Any], q: Mapping[str, Any]) -> dict[str, Any]:
    out = dict(p)
    for key, val in q.items():
        if key not in out:
            out[key] = val
        elif key == "d_min":
            out[key] = min(out[key], val)
        elif key == "d_max":
            out[key] = max(out[key], val)
        elif key == "count":
            out[key] = out[key] + val
        elif out[key] != val:
            raise ValueError(f"cannot merge reports with different {key!r}: {out[key]!r} vs {val!r}")
    return dict(sorted(out.items()))


def merge_reports(a: VerificationReport, b: VerificationReport) -> VerificationReport:
    """Combine two shard reports; associative and commutative."""
    if a.campaign != b.campaign or a.rng != b.rng:
        raise ValueError("reports belong to different campaigns")
    eq = None
    if a.equality_cases is not None or b.equality_cases is not None:
        eq = sorted((a.equality_cases or []) + (b.equality_cases or []), key=_record_key)
    return VerificationReport(
        a.campaign,
        _merge_params(a.params, b.params),
        a.checks_run + b.checks_run,
        sorted(a.violations + b.violations, key=_record_key),
        eq,
        a.elapsed_ms + b.elapsed_ms,
        a.rng,
    )


class _Timer:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms += int(round((time.perf_counter() - self.t0) * 1000))
        return False


def _over_d(one: Callable[[int], VerificationReport], d_min: int, d_max: int, jobs: int = 1) -> VerificationReport:
    if not 1 <= d_min <= d_max:
        raise DomainError(f"need 1 <= d_min <= d_max, got {d_min}, {d_max}")
    ds = range(d_min, d_max + 1)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            shards = list(pool.map(one, ds))
    else:
        shards = [one(D) for D in ds]
    out = shards[0]
    for s in shards[1:]:
        out = merge_reports(out, s)
    return out


# ---------------------------------------------------------------------------
# the bound |u_i(theta_j)| <= 1 and its Perron-Frobenius form


def _kt_one(D: int, inject: Optional[Mapping[tuple[int, int, int], Fraction]] = None) -> VerificationReport:
    rep = VerificationReport("kt", {"d_min": D, "d_max": D}, equality_cases=[])
    with _Timer(rep):
        sys = build_system(D)
        U = u_table(sys).rows
        V = v_table(sys).rows
        for i in range(D + 1):
            for j in range(D + 1):
                where = {"D": D, "i": i, "j": j}
                u = u_hyper(D, i, j)
                rep.check(u == U[i][j], "4F3 = recurrence u_i(theta_j)", where, U[i][j], u)
                if inject and (D, i, j) in inject:
                    u = Fraction(inject[D, i, j])
                rep.check(abs(u) <= 1, "|u_i(theta_j)| <= 1", where, "|x| <= 1", u)
                if abs(u) == 1:
                    rep.equality_cases.append({"D": D, "i": i, "j": j, "value": str(u)})
            k_i = sys.k[i]
            row = V[i]
            peak = max(abs(x) for x in row)
            rep.check(all(abs(x) <= k_i for x in row), "|v_i(theta_j)| <= k_i", {"D": D, "i": i}, k_i, peak)
            rep.check(row[0] == k_i and peak == k_i, "max_j |v_i(theta_j)| = k_i at j = 0", {"D": D, "i": i}, k_i, row[0])
    return rep


def verify_kt(
    d_min: int,
    d_max: int,
    *,
    jobs: int = 1,
    inject: Optional[Mapping[tuple[int, int, int], Fraction]] = None,
) -> VerificationReport:
    """|4F3[-i, i+1, -j, j+1; 1, D+2, -D; 1]| <= 1 for every D in range and 0 <= i, j <= D.

    ``inject`` overrides individual u values before the bound check; it is a
    negative-control hook for tests and is never set by the CLI.
    """
    if inject:
        return _over_d(partial(_kt_one, inject=dict(inject)), d_min, d_max, jobs=1)
    return _over_d(_kt_one, d_min, d_max, jobs)


# ---------------------------------------------------------------------------
# Leonard pair relations


def verify_leonard(D: int) -> VerificationReport:
    rep = VerificationReport("leonard", {"d_min": D, "d_max": D})
    with _Timer(rep):
        sys = build_system(D)
        n = sys.size
        where = {"D": D}
        bad = sys.check_invariants()
        rep.check(not bad, "system invariants", where, [], bad)
        A, As, P = matrix_a(sys), matrix_a_star(sys), matrix_p(sys)
        rep.check(len(set(sys.theta)) == n, "theta distinct", where, n, len(set(sys.theta)))
        rep.check(A.is_irreducible_tridiagonal(), "A irreducible tridiagonal", where, True, False)
        rep.check(As.is_diagonal(), "A* diagonal", where, True, False)
        P2 = P @ P
        rep.check(P2 == RationalMatrix.identity(n).scale(sys.nu), "P^2 = nu I", where, f"{sys.nu} I", P2)
        rep.check(P @ A == P.scale_rows(sys.theta), "P A = A* P", where)
        rep.check(P.scale_cols(sys.theta) == A @ P, "P A* = A P", where)
        rep.check(all(x == 1 for x in P.column(0)), "P_i0 = 1", where, 1, P.column(0))
        rep.check(P.rows[0] == sys.k, "P_0j = k_j", where, sys.k, P.rows[0])
        V = v_table(sys).rows
        ones = (Fraction(1),) * n
        for i in range(n):
            Bi = b_matrix(sys, i)
            wi = {"D": D, "i": i}
            rep.check(P @ Bi == P.scale_rows(V[i]), "P B_i = B*_i P", wi)
            rep.check(P.scale_cols(V[i]) == Bi @ P, "P B*_i = B_i P", wi)
            got = Bi.apply(ones)
            rep.check(got == (sys.k[i],) * n, "B_i 1 = k_i 1", wi, sys.k[i], got)
    return rep


def verify_orthogonality(D: int) -> VerificationReport:
    rep = VerificationReport("orthogonality", {"d_min": D, "d_max": D})
    with _Timer(rep):
        sys = build_system(D)
        for rel in ORTHOGONALITY_RELATIONS:
            got, want = orthogonality_gram(sys, rel)
            for n in range(sys.size):
                for m in range(sys.size):
                    rep.check(got[n, m] == want[n, m], rel, {"D": D, "n": n, "m": m}, want[n, m], got[n, m])
    return rep


# ---------------------------------------------------------------------------
# intersection numbers


def verify_intersection(
    D: int,
    *,
    routes: Sequence[str] = ROUTES,
    structure: bool = True,
) -> VerificationReport:
    """Route agreement, tensor invariants (nonnegativity included), structure
    constants and, when the racah route is on, the specialized
    Biedenharn-Elliott identity sum_t k_t u_t u_t u_t = (D+1)^3 W^2."""
    routes = tuple(dict.fromkeys(("matrix", *routes)))
    rep = VerificationReport(
        "intersection",
        {"d_min": D, "d_max": D, "routes": list(routes), "structure": structure},
    )
    with _Timer(rep):
        sys = build_system(D)
        base = p_tensor(sys, "matrix")
        rep.check_many(
            base.invariant_count(),
            ((name, {"D": D, "index": list(idx)}, want, got) for name, idx, want, got in base.invariant_violations()),
        )
        for route in routes[1:]:
            other = p_tensor(sys, route)
            for h, i, j, x in base.cells():
                y = other[h, i, j]
                rep.check(x == y, f"matrix = {route}", {"D": D, "h": h, "i": i, "j": j}, x, y)
        if structure:
            rep.check_many(
                2 * (D + 1) ** 2,
                ((name, {"D": D, "index": list(idx)}, want, got) for name, idx, want, got in structure_violations(sys)),
            )
        if "racah" in routes:
            M = triple_products(D)
            cube = (D + 1) ** 3
            for h, i, j, _ in base.cells():
                lhs = M[h][i, j]
                rhs = cube * w_kt_squared(D, h, i, j)
                rep.check(lhs == rhs, "sum_t k_t u_t(h)u_t(i)u_t(j) = (D+1)^3 W^2", {"D": D, "h": h, "i": i, "j": j}, rhs, lhs)
    return rep


# ---------------------------------------------------------------------------
# W closed form


def _w_closed_one(D: int) -> VerificationReport:
    rep = VerificationReport("wclosed", {"d_min": D, "d_max": D})
    with _Timer(rep):
        half = HalfInt(D)
        for i in range(D + 1):
            for j in range(D + 1):
                w = racah_w(half, half, half, half, i, j)
                closed = w_quarter_closed(D, i, j)
                rep.check(
                    w.is_rational and w.coeff == closed,
                    "W(D/2,D/2,D/2,D/2;i,j) = closed form",
                    {"D": D, "i": i, "j": j, "branch": "i+j<=D" if i + j <= D else "i+j>D"},
                    closed,
                    w,
                )
    return rep


def verify_w_closed(d_max: int, *, d_min: int = 1, jobs: int = 1) -> VerificationReport:
    return _over_d(_w_closed_one, d_min, d_max, jobs)


# ---------------------------------------------------------------------------
# seeded sampling


@dataclass(frozen=True)
class SampleSpec:
    seed: int
    count: int
    max_twice_spin: int = 12

    def __post_init__(self):
        if not 0 <= self.seed < 1 << 64:
            raise DomainError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.count < 1 or self.max_twice_spin < 1:
            raise DomainError("count and max_twice_spin must be positive")

    def params(self) -> dict[str, Any]:
        return {"count": self.count, "max_twice_spin": self.max_twice_spin, "seed": self.seed}


class SampleStream:
    """Portable integer stream: raw PCG64 words, ranges by rejection."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def word(self) -> int:
        return int(self._bits.random_raw())

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError(f"empty range [{lo}, {hi}]")
        limit = (1 << 64) - (1 << 64) % span
        while True:
            w = self.word()
            if w < limit:
                return lo + w % span

    def choice(self, seq: Sequence):
        return seq[self.randint(0, len(seq) - 1)]


def _third(rng: SampleStream, pairs: Sequence[tuple[int, int]], cap: int) -> Optional[int]:
    """Twice-spin z admissible with every (x, y) in pairs, z <= cap; None if none exists."""
    parity = {(x + y) % 2 for x, y in pairs}
    if len(parity) != 1:
        return None
    lo = max(abs(x - y) for x, y in pairs)
    hi = min(min(x + y for x, y in pairs), cap)
    if lo > hi:
        return None
    return rng.choice(range(lo, hi + 1, 2))


def sample_be_tuples(spec: SampleSpec) -> Iterator[tuple[int, ...]]:
    """Twice-spins (a,a',b,b',c,c',e,f,g) making both right-hand W factors nonzero.

    Built constructively: (e, f, g), then (a, b) around g, then c against
    (a, f) and (b, e); the primed chain likewise. Dead ends are redrawn.
    """
    rng = SampleStream(spec.seed)
    T = spec.max_twice_spin
    made = 0
    while made < spec.count:
        e, f = rng.randint(0, T), rng.randint(0, T)
        g = _third(rng, [(e, f)], T)
        if g is None:
            continue
        a, ap = rng.randint(0, T), rng.randint(0, T)
        b = _third(rng, [(a, g)], T)
        bp = _third(rng, [(ap, g)], T)
        if b is None or bp is None:
            continue
        c = _third(rng, [(a, f), (b, e)], T)
        cp = _third(rng, [(ap, f), (bp, e)], T)
        if c is None or cp is None:
            continue
        made += 1
        yield a, ap, b, bp, c, cp, e, f, g


def verify_be(spec: SampleSpec) -> VerificationReport:
    rep = VerificationReport("be", spec.params(), rng=RNG_ID)
    with _Timer(rep):
        for twice in sample_be_tuples(spec):
            res = be_residual(*(HalfInt(t) for t in twice))
            rep.check(res.is_zero, "Biedenharn-Elliott residual = 0", {"twice": list(twice)}, 0, res)
    return rep


# the worked instance D=2, i=j=1: 4F3[-1,-1,-1,-1; 1,-5,1] with coefficient 8/5
WORKED_WHIPPLE = (HypParams((-1, -1, -1, -1), (1, -5, 1)), WhippleRoles((0, 1, 2, 3), (0, 1, 2)))


def _lower_ok(lower: Sequence[Fraction], m: int) -> bool:
    # no lower parameter in {0, -1, ..., -(m-1)}
    return all(not (b.denominator == 1 and -m < b <= 0) for b in lower)


def sample_whipple(spec: SampleSpec) -> Iterator[tuple[HypParams, WhippleRoles]]:
    """Balanced integer instances with nonvanishing lower Pochhammers on both sides.

    Parameters lie in [-T, T] with T = max_twice_spin; the roles are shuffled so
    the slot bookkeeping is exercised too.
    """
    rng = SampleStream(spec.seed)
    T = spec.max_twice_spin
    made = 0
    while made < spec.count:
        m = rng.randint(0, max(1, T // 2))
        q, a1, a2, r, b1 = (rng.randint(-T, T) for _ in range(5))
        b2 = q + a1 + a2 + 1 - r - b1 - m
        up_perm = _shuffled(rng, 4)
        lo_perm = _shuffled(rng, 3)
        upper = [None] * 4
        lower = [None] * 3
        for slot, val in zip(up_perm, (-m, q, a1, a2)):
            upper[slot] = val
        for slot, val in zip(lo_perm, (r, b1, b2)):
            lower[slot] = val
        params = HypParams(upper, lower)
        lhs_lower = [Fraction(x) for x in (r, b1, b2)]
        rhs_lower = [Fraction(x) for x in (r, 1 + q - b1 - m, 1 + q - b2 - m)]
        if not (_lower_ok(lhs_lower, m) and _lower_ok(rhs_lower, m)):
            continue
        made += 1
        yield params, WhippleRoles(tuple(up_perm), tuple(lo_perm))


def _shuffled(rng: SampleStream, n: int) -> list[int]:
    out = list(range(n))
    for k in range(n - 1, 0, -1):
        s = rng.randint(0, k)
        out[k], out[s] = out[s], out[k]
    return out


def check_whipple_instance(rep: VerificationReport, params: HypParams, roles: WhippleRoles) -> None:
    coeff, transformed = whipple_transform(params, roles)
    lhs = eval_4f3_unit(params)
    rhs = coeff * eval_4f3_unit(transformed)
    where = {
        "upper": [str(x) for x in params.upper],
        "lower": [str(x) for x in params.lower],
        "roles_upper": list(roles.upper),
        "roles_lower": list(roles.lower),
    }
    rep.check(lhs == rhs, "4F3 = coefficient * transformed 4F3", where, lhs, rhs)


def verify_whipple(spec: SampleSpec) -> VerificationReport:
    rep = VerificationReport("whipple", spec.params(), rng=RNG_ID)
    with _Timer(rep):
        params, roles = WORKED_WHIPPLE
        coeff, _ = whipple_transform(params, roles)
        rep.check(coeff == Fraction(8, 5), "worked instance coefficient", {"D": 2, "i": 1, "j": 1}, "8/5", coeff)
        check_whipple_instance(rep, params, roles)
        for params, roles in sample_whipple(spec):
            check_whipple_instance(rep, params, roles)
    return rep


# ---------------------------------------------------------------------------
# range wrappers used by the CLI


def verify_leonard_range(d_min: int, d_max: int, *, jobs: int = 1) -> VerificationReport:
    return _over_d(verify_leonard, d_min, d_max, jobs)


def verify_orthogonality_range(d_min: int, d_max: int, *, jobs: int = 1) -> VerificationReport:
    return _over_d(verify_orthogonality, d_min, d_max, jobs)


def verify_intersection_range(
    d_min: int,
    d_max: int,
    *,
    routes: Sequence[str] = ROUTES,
    structure: bool = True,
    jobs: int = 1,
) -> VerificationReport:
    one = partial(verify_intersection, routes=tuple(routes), structure=structure)
    return _over_d(one, d_min, d_max, jobs)
