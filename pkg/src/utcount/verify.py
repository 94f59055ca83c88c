"""Verification suites.  Each suite returns a RunReport of named checks.

A failing check names the offending instance (partition, q, e) so it can be
replayed with ``python3 -m utcount count``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import countpoly as cp
from .charfun import inner_product, superchar_fn
from .gfq import field_make
from .nilalg import (
    build_crossing,
    build_un,
    crossing_quotients,
    is_associative,
    is_nilpotent,
    iso_check,
    nilpotency_index,
    quasi_monomial,
)
from .orbitengine import adjoint_orbits, coadjoint_orbits, lambda_counts, point_cap
from .setpartition import (
    all_crossings_even,
    arc_set,
    count_table,
    crossing_data,
    enumerate_partitions,
    format_partition,
    parse,
    transpose,
)

EX13 = "1,5,7,9,13/2,6,8,12/3,10/4,11"
EXCEPTIONAL = "1,6,8,13/2,7,12/3,9/4,10/5,11"
EX13_Q2 = {15: 24, 16: 58, 17: 16}
MAX_FAILURES = 20


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class RunReport:
    command: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0
    artifacts: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def as_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "ok": self.ok,
            "wall_time": round(self.wall_time, 3),
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "artifacts": self.artifacts,
        }

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in self.checks]
        out.append(f"{self.command}: {'PASS' if self.ok else 'FAIL'} ({len(self.checks)} checks, {self.wall_time:.1f}s)")
        return out


class _Tally:
    """Collects instance-level failures for one aggregated check."""

    def __init__(self):
        self.count = 0
        self.bad: list[str] = []

    def __call__(self, ok: bool, instance: str):
        self.count += 1
        if not ok:
            self.bad.append(instance)

    def flush(self, report: RunReport, name: str):
        detail = f"{self.count} instances"
        if self.bad:
            shown = "; ".join(self.bad[:MAX_FAILURES])
            detail = f"{len(self.bad)}/{self.count} failed: {shown}"
        report.add(name, not self.bad and self.count > 0, detail)


def _poly_values(polys: dict[int, cp.IntPolynomial], q: int) -> dict[int, int]:
    return {e: p.at_q(q) for e, p in polys.items() if p.at_q(q)}


# ---------------------------------------------------------------------------
# suites


def suite_table1(max_n: int = 12) -> RunReport:
    r = RunReport("table1", {"max_n": max_n})
    ref = cp.load_table1()
    for n in range(1, max_n + 1):
        got = count_table(n)
        r.add(f"n={n}", got == ref[n], f"got {got}, table {ref[n]}")
    return r


def suite_appendix(raw_max_n: int = 12) -> RunReport:
    r = RunReport("appendix", {"raw_max_n": raw_max_n})
    for name, ok in cp.verify_manifest().items():
        r.add(f"sha256 {name}", ok)
    tables = cp.load_tables()
    r.add("tilde(1,0) = q", cp.tilde_lookup(1, 0).to("q") == cp.Q)
    for e in range(1, cp.MAX_E + 1):
        t = _Tally()
        for n in range(2 * e + 1, 2 * e + 9):
            a, b = cp.theorem_intro_eval(n, e), cp.assemble_N(n, e)
            t(a == b, f"n={n} e={e}: bivariate {a} vs assembled {b}")
        t.flush(r, f"bivariate formula = assembly, e={e}, 2e < n <= 2e+8")
    t = _Tally()
    for e in range(cp.MAX_E + 1):
        for n in range(1, raw_max_n + 1):
            t(cp.assemble_N(n, e) == cp.assemble_N_raw(n, e), f"n={n} e={e}")
    t.flush(r, f"collapsed sum = raw composition sum, n <= {raw_max_n}")
    for (n, e), poly in sorted(tables.nlarge.items()):
        r.add(f"stored N_{{{n},{e}}} = assembly", cp.assemble_N(n, e) == poly)
    t = _Tally()
    for key, poly in tables.tilde.items():
        t(poly.to("q").to("q-1") == poly, f"tilde{key}")
    for key, poly in tables.nlarge.items():
        t(poly.to("q-1").to("q") == poly, f"nlarge{key}")
    t.flush(r, "basis round trip on stored polynomials")
    return r


def suite_structure() -> RunReport:
    r = RunReport("structure", {})
    for e in range(1, cp.MAX_E + 1):
        rep = cp.bivariate_check(e, span=0)
        r.add(f"e={e} deg f = e+1-c", rep.degrees_ok)
        r.add(f"e={e} leading coefficients Narayana palindrome", rep.narayana_ok)
        r.add(f"e={e} f_1(x) = x+e", rep.f1_ok)
        r.add(f"e={e} c!/e! f integral, x in [0,100]", rep.integral_ok)
        odd, even = cp.ab_observation_check(e)
        r.add(f"e={e} A-triangle row at n=2e+1", odd)
        r.add(f"e={e} A/B-triangle row at n=2e", even)
    return r


def suite_nonneg(max_n: int = 30) -> RunReport:
    r = RunReport("nonneg", {"max_n": max_n})
    t = _Tally()
    for e in range(cp.MAX_E + 1):
        for n in range(1, max_n + 1):
            c = cp.assemble_N(n, e).to("q-1").coeffs
            t(all(x >= 0 for x in c), f"n={n} e={e}: {c}")
    t.flush(r, f"N_(n,e) in (q-1) has nonnegative coefficients, n <= {max_n}, e <= {cp.MAX_E}")
    return r


def suite_congruence(max_n: int = 30) -> RunReport:
    r = RunReport("congruence", {"max_n": max_n})
    tc, td = _Tally(), _Tally()
    for e in range(cp.MAX_E + 1):
        for n in range(1, max_n + 1):
            tc(cp.congruence_check(n, e), f"n={n} e={e}")
            d = cp.derivative_at_1(n, e)
            td(d == max(n - e - 1, 0), f"n={n} e={e}: derivative {d}")
    tc.flush(r, "N = delta + max(0,n-e-1)(q-1) mod (q-1)^2")
    td.flush(r, "N'(1) = max(n-e-1, 0)")
    return r


def _expected_un(n: int, q: int) -> tuple[dict[int, int], str]:
    """e -> N_{n,e}(q): assembled for e <= 8, any single e > 8 from the degree-square sum."""
    top = cp.m_cap(n)
    exp = {}
    for e in range(0, min(top, cp.MAX_E) + 1):
        v = cp.assemble_N(n, e)(q)
        if v:
            exp[e] = v
    note = ""
    beyond = list(range(cp.MAX_E + 1, top + 1))
    if len(beyond) == 1:
        e = beyond[0]
        rest = q ** (n * (n - 1) // 2) - sum(v * q ** (2 * k) for k, v in exp.items())
        if rest % q ** (2 * e):
            raise AssertionError(f"n={n} q={q}: residual {rest} not divisible by q^{2 * e}")
        exp[e] = rest // q ** (2 * e)
        note = f"e={e} from |G| = sum N_e q^(2e)"
    elif beyond:
        raise cp.NoData(f"n={n}: more than one degree beyond e = {cp.MAX_E}")
    return exp, note


def suite_oracle_un(max_n2: int = 7, max_n3: int = 5) -> RunReport:
    r = RunReport("oracle-un", {"max_n2": max_n2, "max_n3": max_n3})
    for q, top in ((2, max_n2), (3, max_n3)):
        F = field_make(q)
        for n in range(1, top + 1):
            U = build_un(n, F)
            _, hist = coadjoint_orbits(U)
            exp, note = _expected_un(n, q)
            r.add(f"u_{n}({q}) coadjoint degree histogram = assembly", hist == exp, f"engine {hist}, assembly {exp}" + (f"; {note}" if note else ""))
            k = adjoint_orbits(U).orbit_count
            r.add(f"u_{n}({q}) sum_e N = class number", sum(exp.values()) == k, f"class number {k}")
    return r


def suite_ex13(q3: bool = True) -> RunReport:
    r = RunReport("ex13", {"q3": q3})
    lam = parse(EX13)
    got = lambda_counts(lam, 2).counts
    r.add("q=2 counts 24/58/16 at e=15/16/17", got == EX13_Q2, f"{got}")
    r.add("q=2 total 98", sum(got.values()) == 98, f"{sum(got.values())}")
    polys = cp.lambda13_polys(EX13)
    r.add("q=2 stored polynomials", _poly_values(polys, 2) == got)
    dim = len(crossing_data(lam).cr) + 1
    if q3 and 3**dim <= point_cap():
        got3 = lambda_counts(lam, 3).counts
        r.add("q=3 stored polynomials", _poly_values(polys, 3) == got3, f"engine {got3}")
    elif q3:
        r.add("q=3 skipped (cap)", True, f"3^{dim} > {point_cap()}")
    return r


def suite_lambda13() -> RunReport:
    r = RunReport("lambda13", {})
    for part in (EX13, EXCEPTIONAL):
        polys = cp.lambda13_polys(part)
        got = lambda_counts(parse(part), 2).counts
        r.add(f"{part} q=2 orbit counts = stored polynomials", _poly_values(polys, 2) == got, f"engine {got}")
    neg = cp.lambda13_polys(EXCEPTIONAL).get(20)
    r.add("exceptional e=20 has a negative (q-1) coefficient", neg is not None and min(neg.coeffs) < 0, str(neg))
    return r


def suite_factorization(max_n: int = 8, q: int = 2) -> RunReport:
    r = RunReport("factorization", {"max_n": max_n, "q": q})
    for n in range(1, max_n + 1):
        t = _Tally()
        for lam in enumerate_partitions(n):
            a, b = lambda_counts(lam, q).counts, cp.product_counts(lam, q)
            t(a == b, f"{format_partition(lam)} q={q}: direct {a} vs product {b}")
        t.flush(r, f"n={n} direct count = crossing-component convolution")
    return r


def suite_fact_identities(max_n: int = 5, qs=(2, 3)) -> RunReport:
    r = RunReport("fact-identities", {"max_n": max_n, "qs": list(qs)})
    for q in qs:
        F = field_make(q)
        for n in range(1, max_n + 1):
            U = build_un(n, F)
            t1, t2 = _Tally(), _Tally()
            for lam in enumerate_partitions(n):
                cd = crossing_data(lam)
                chi = superchar_fn(U, quasi_monomial(lam, n, F))
                deg = chi.at_identity()
                t1(deg == q**cd.d_stat, f"{format_partition(lam)} q={q}: chi(1) = {deg}")
                norm = inner_product(chi, chi)
                t2(norm == q ** len(cd.cr), f"{format_partition(lam)} q={q}: <chi,chi> = {norm}")
            t1.flush(r, f"n={n} q={q} chi(1) = q^d")
            t2.flush(r, f"n={n} q={q} <chi,chi> = q^|Cr|")
    return r


def suite_maxcross(max_n: int = 8, q: int = 2) -> RunReport:
    r = RunReport("maxcross", {"max_n": max_n, "q": q})
    for n in range(1, max_n + 1):
        t = _Tally()
        for lam in enumerate_partitions(n):
            if not all_crossings_even(lam):
                continue
            cd = crossing_data(lam)
            want = {cd.d_stat - len(cd.cr) // 2: 1}
            got = lambda_counts(lam, q).counts
            t(got == want, f"{format_partition(lam)} q={q}: {got} vs {want}")
        t.flush(r, f"n={n} even maximal crossings give one constituent")
    return r


def suite_prop_eval(max_n: int = 8, qs=(2, 3), transpose_q: int = 2) -> RunReport:
    r = RunReport("prop-eval", {"max_n": max_n, "qs": list(qs)})
    for q in qs:
        for n in range(1, max_n + 1):
            t = _Tally()
            for lam in enumerate_partitions(n):
                closed = cp.prop_eval(lam)
                if closed is None:
                    continue
                want = _poly_values(closed, q)
                got = lambda_counts(lam, q).counts
                t(got == want, f"{format_partition(lam)} q={q}: engine {got} vs closed form {want}")
            t.flush(r, f"n={n} q={q} closed forms for |Cr| <= 2")
    for n in range(1, max_n + 1):
        t = _Tally()
        for lam in enumerate_partitions(n):
            a, b = lambda_counts(lam, transpose_q).counts, lambda_counts(transpose(lam), transpose_q).counts
            t(a == b, f"{format_partition(lam)} q={transpose_q}: {a} vs transpose {b}")
        t.flush(r, f"n={n} q={transpose_q} transpose symmetry")
    return r


def suite_algebra(max_n: int = 9, iso_max_n: int = 7, qs=(2, 3), all_coeffs: bool = True) -> RunReport:
    r = RunReport("algebra", {"max_n": max_n, "iso_max_n": iso_max_n, "qs": list(qs), "all_coeffs": all_coeffs})
    for q in qs:
        F = field_make(q)
        for n in range(1, max_n + 1):
            t = _Tally()
            for lam in enumerate_partitions(n):
                m = len(crossing_data(lam).cr)
                for ext in (False, True):
                    A = build_crossing(lam, F, ext)
                    ok = is_associative(A) and is_nilpotent(A) and A.dim == m + ext
                    t(ok, f"{format_partition(lam)} q={q} extended={ext} nilpotency index {nilpotency_index(A)}")
            t.flush(r, f"n={n} q={q} crossing algebras associative, nilpotent, dim = |Cr| (+1)")
        for n in range(1, iso_max_n + 1):
            t = _Tally()
            for lam in enumerate_partitions(n):
                plain, ext = build_crossing(lam, F), build_crossing(lam, F, True)
                choices = itertools.product(range(1, q), repeat=len(arc_set(lam))) if all_coeffs else [None]
                for co in choices:
                    co = None if co is None else list(co)
                    P, E, Mp, Me = crossing_quotients(lam, n, F, co)
                    ok = iso_check(P, plain, Mp) and (E is None or iso_check(E, ext, Me))
                    t(ok, f"{format_partition(lam)} q={q} coeffs={co}")
            t.flush(r, f"n={n} q={q} s/l and s/k isomorphic to the crossing algebras")
    return r


SUITES = {
    "table1": suite_table1,
    "appendix": suite_appendix,
    "structure": suite_structure,
    "nonneg": suite_nonneg,
    "congruence": suite_congruence,
    "oracle-un": suite_oracle_un,
    "ex13": suite_ex13,
    "lambda13": suite_lambda13,
    "factorization": suite_factorization,
    "fact-identities": suite_fact_identities,
    "maxcross": suite_maxcross,
    "prop-eval": suite_prop_eval,
    "algebra": suite_algebra,
}


def run_suite(name: str, **params) -> RunReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    rep = SUITES[name](**params)
    rep.wall_time = time.perf_counter() - t0
    return rep
