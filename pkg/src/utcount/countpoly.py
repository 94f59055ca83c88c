"""Exact polynomials in q, q-1 or x, the tabulated data, and the assembly formulas.

All arithmetic is on Python integers; rational factors appear only inside
``theorem_intro_eval`` and integrality is asserted there.
"""

from __future__ import annotations

import hashlib
import math
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .setpartition import (
    SetPartition,
    arc_set,
    crossing_components,
    crossing_data,
    enumerate_partitions,
    parse,
)

VARS = ("q", "q-1", "x")
MAX_E = 8


class DataError(RuntimeError):
    pass


class NoData(ValueError):
    pass


# ---------------------------------------------------------------------------
# IntPolynomial


@dataclass(frozen=True)
class IntPolynomial:
    """sum_i coeffs[i] * var^i with var one of q, q-1, x."""

    coeffs: tuple[int, ...]
    var: str = "q"

    def __post_init__(self):
        if self.var not in VARS:
            raise ValueError(f"unknown variable {self.var!r}")
        c = list(self.coeffs)
        for a in c:
            if isinstance(a, Fraction) and a.denominator != 1:
                raise ValueError(f"non-integral coefficient {a}")
        c = [int(a) for a in c]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, var="q"):
        return cls((), var)

    @classmethod
    def const(cls, a: int, var="q"):
        return cls((a,), var)

    @classmethod
    def monomial(cls, k: int, a: int = 1, var="q"):
        return cls((0,) * k + (a,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other):
        if isinstance(other, int):
            return IntPolynomial.const(other, self.var)
        if other.var != self.var:
            raise ValueError(f"variable mismatch {self.var} vs {other.var}")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-a for a in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero(self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPolynomial.const(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, value):
        """Evaluate at var = value (value is the variable itself, not q when var = q-1)."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * value + a
        return acc

    def at_q(self, q):
        if self.var == "q":
            return self(q)
        if self.var == "q-1":
            return self(q - 1)
        raise ValueError("polynomial in x has no q value")

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs))[1:], self.var)

    def to(self, var: str) -> IntPolynomial:
        """Exact change of basis between q and q-1."""
        if var == self.var:
            return self
        if {var, self.var} != {"q", "q-1"}:
            raise ValueError(f"cannot convert {self.var} to {var}")
        sign = 1 if var == "q-1" else -1  # q = (q-1) + 1 ;  q-1 = q - 1
        out = [0] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if a:
                for j in range(k + 1):
                    out[j] += a * math.comb(k, j) * sign ** (k - j)
        return IntPolynomial(tuple(out), var)

    def __str__(self):
        if self.is_zero():
            return "0"
        v = self.var if self.var != "q-1" else "(q-1)"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if not a:
                continue
            mag = abs(a)
            if k == 0:
                term = str(mag)
            else:
                term = ("" if mag == 1 else f"{mag}*") + (v if k == 1 else f"{v}^{k}")
            sign = "-" if a < 0 else "+"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def as_json(self) -> dict:
        return {"var": self.var, "coeffs": list(self.coeffs), "text": str(self)}


Q = IntPolynomial((0, 1), "q")
ONE = IntPolynomial((1,), "q")


# ---------------------------------------------------------------------------
# data tables

DATA_FILES = ("tilde.txt", "fcoeffs.txt", "nlarge.txt", "lambda13.txt", "table1.txt")


def _data_dir():
    return resources.files("utcount") / "data"


def _read_manifest() -> dict[str, str]:
    out = {}
    for line in (_data_dir() / "MANIFEST.sha256").read_text().splitlines():
        if line.strip():
            digest, name = line.split()
            out[name] = digest
    return out


def sha256_of(name: str) -> str:
    return hashlib.sha256((_data_dir() / name).read_bytes()).hexdigest()


def verify_manifest() -> dict[str, bool]:
    manifest = _read_manifest()
    return {name: manifest.get(name) == sha256_of(name) for name in DATA_FILES}


def _rows(name: str) -> Iterator[list[str]]:
    text = (_data_dir() / name).read_text()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            yield line.split()


@dataclass(frozen=True)
class AppendixTables:
    tilde: dict[tuple[int, int], IntPolynomial]
    fcoeffs: dict[tuple[int, int], IntPolynomial]
    nlarge: dict[tuple[int, int], IntPolynomial]
    lambda13: dict[tuple[str, int], IntPolynomial]


@lru_cache(maxsize=1)
def load_tables(check_hashes: bool = True) -> AppendixTables:
    if check_hashes:
        bad = [k for k, ok in verify_manifest().items() if not ok]
        if bad:
            raise DataError(f"checksum mismatch for {bad}")
    tilde, fco, big, lam = {}, {}, {}, {}
    for r in _rows("tilde.txt"):
        n, e, *c = map(int, r)
        if (n, e) in tilde or not c:
            raise DataError(f"bad tilde row {r}")
        tilde[(n, e)] = IntPolynomial(tuple(c), "q-1")
    for r in _rows("fcoeffs.txt"):
        e, i, *a = map(int, r)
        if not (1 <= e <= MAX_E and 1 <= i <= 2 * e) or (e, i) in fco:
            raise DataError(f"bad f row {r}")
        fco[(e, i)] = IntPolynomial(tuple(a), "x")
    for r in _rows("nlarge.txt"):
        n, e, *c = map(int, r)
        big[(n, e)] = IntPolynomial(tuple(c), "q")
    for r in _rows("lambda13.txt"):
        p, e, *c = r
        parse(p)  # validates the partition string
        lam[(p, int(e))] = IntPolynomial(tuple(map(int, c)), "q-1")
    if len(fco) != sum(2 * e for e in range(1, MAX_E + 1)):
        raise DataError("f table incomplete")
    return AppendixTables(tilde, fco, big, lam)


# ---------------------------------------------------------------------------
# number families


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell(k) for k in range(n))


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.comb(2 * n, n) // (n + 1)


def narayana(m: int, k: int) -> int:
    if not 1 <= k <= m:
        raise ValueError(f"narayana({m},{k}) out of range")
    num = math.comb(m - 1, k - 1) * math.comb(m, k - 1)
    assert num % k == 0
    return num // k


def m_cap(n: int) -> int:
    """Largest e with N_{n,e} != 0."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n // 2) * ((n - 1) // 2)


@lru_cache(maxsize=None)
def a_tri(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k == 0 or k == n:
        return 1
    if not 1 <= k <= n - 1:
        return 0
    s = a_tri(n - 1, k - 1) + a_tri(n - 1, k)
    if n % 2 == 0:
        s += a_tri(n - 2, k - 1)
    return s


@lru_cache(maxsize=None)
def b_tri(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k == 0 or k == n:
        return 1
    if not 1 <= k <= n - 1:
        return 0
    s = b_tri(n - 1, k - 1) + b_tri(n - 1, k)
    if n % 2 == 1:
        s += b_tri(n - 2, k - 1)
    return s


def c_coeff(e: int, i: int) -> int:
    """1/2 + |1/2 + e - i| computed in integers."""
    if not (e >= 1 and 1 <= i <= 2 * e):
        raise ValueError(f"c_coeff({e},{i}) out of range")
    return max(e - i + 1, i - e)


# ---------------------------------------------------------------------------
# compositions


def compositions(total: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` (positive parts), optionally with a fixed length."""
    if total == 0:
        if parts in (None, 0):
            yield ()
        return
    for first in range(1, total + 1):
        if parts is not None and parts <= 0:
            return
        for rest in compositions(total - first, None if parts is None else parts - 1):
            yield (first,) + rest


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# tilde table and the assembly formulas


def tilde_lookup(n: int, e: int) -> IntPolynomial:
    """Ntilde_{n,e}(q) in the (q-1) basis; zero where the table has no entry."""
    if e > MAX_E:
        raise NoData(f"no data for e = {e} > {MAX_E}")
    if n < 1 or e < 0:
        return IntPolynomial.zero("q-1")
    return load_tables().tilde.get((n, e), IntPolynomial.zero("q-1"))


def _tilde_q(n: int, e: int) -> IntPolynomial:
    return _tilde_q_cached(n, e)


@lru_cache(maxsize=None)
def _tilde_q_cached(n: int, e: int) -> IntPolynomial:
    return tilde_lookup(n, e).to("q")


def _nonzero_tilde_sizes(d: int) -> list[int]:
    """Part sizes c with Ntilde_{c,d} != 0 in the table."""
    return sorted(n for (n, e) in load_tables().tilde if e == d)


def assemble_N(n: int, e: int) -> IntPolynomial:
    """N_{n,e}(q) as a polynomial in q, summing over compositions with zero parts collapsed."""
    if e > MAX_E:
        raise NoData(f"no data for e = {e} > {MAX_E}")
    if n < 1:
        raise ValueError("n must be positive")
    return _assemble(n, e)


@lru_cache(maxsize=None)
def _assemble(n: int, e: int) -> IntPolynomial:
    if e < 0:
        return IntPolynomial.zero()
    if e == 0:
        return IntPolynomial.monomial(n - 1)
    if n == 1:
        return IntPolynomial.zero()
    m = n - 1
    total = IntPolynomial.zero()
    for d in compositions(e):
        ell = len(d)
        options = [_nonzero_tilde_sizes(di) for di in d]
        for c in _product_bounded(options, m):
            size = sum(c)
            term = IntPolynomial.const(math.comb(m - size + ell, ell)) * IntPolynomial.monomial(m - size)
            for ci, di in zip(c, d):
                term = term * _tilde_q(ci, di)
            total = total + term
    return total


def _product_bounded(options: list[list[int]], bound: int, prefix=()):
    if not options:
        yield prefix
        return
    used = sum(prefix)
    for c in options[0]:
        if used + c <= bound:
            yield from _product_bounded(options[1:], bound, prefix + (c,))


def assemble_N_raw(n: int, e: int) -> IntPolynomial:
    """N_{n,e}(q) straight from the sum over (composition of n-1, weak composition of e)."""
    if e > MAX_E:
        raise NoData(f"no data for e = {e} > {MAX_E}")
    # T[m][w]: sum over pairs (c, w') of m and w with equal length of prod Ntilde
    T = [[IntPolynomial.zero() for _ in range(e + 1)] for _ in range(n)]
    T[0][0] = ONE
    for m in range(1, n):
        for w in range(e + 1):
            acc = IntPolynomial.zero()
            for c1 in range(1, m + 1):
                for w1 in range(w + 1):
                    t = _tilde_q(c1, w1)
                    if not t.is_zero() and not T[m - c1][w - w1].is_zero():
                        acc = acc + t * T[m - c1][w - w1]
            T[m][w] = acc
    return T[n - 1][e]


def theorem_intro_eval(n: int, e: int) -> IntPolynomial:
    """q^{n-e-2} sum_i (c_{e,i}!/e!) f_{e,i}(n-2e-1) (q-1)^i, for n > 2e."""
    if not 1 <= e <= MAX_E:
        raise NoData(f"no f data for e = {e}")
    if n <= 2 * e:
        raise ValueError(f"formula valid only for n > 2e (n={n}, e={e})")
    x = n - 2 * e - 1
    coeffs = [0] * (2 * e + 1)
    fac_e = math.factorial(e)
    for i in range(1, 2 * e + 1):
        c = c_coeff(e, i)
        val = Fraction(math.factorial(c), fac_e) * load_tables().fcoeffs[(e, i)](x)
        if val.denominator != 1:
            raise AssertionError(f"c!/e! f_{e},{i}({x}) = {val} is not an integer")
        coeffs[i] = int(val)
    inner = IntPolynomial(tuple(coeffs), "q-1").to("q")
    return IntPolynomial.monomial(n - e - 2) * inner


@dataclass(frozen=True)
class BivariateReport:
    e: int
    degrees_ok: bool
    narayana_ok: bool
    f1_ok: bool
    integral_ok: bool
    agreement: dict[int, bool]

    @property
    def ok(self) -> bool:
        return self.degrees_ok and self.narayana_ok and self.f1_ok and self.integral_ok and all(self.agreement.values())


def integrality_ok(e: int, xmax: int = 100) -> bool:
    fac_e = math.factorial(e)
    fco = load_tables().fcoeffs
    for i in range(1, 2 * e + 1):
        c = c_coeff(e, i)
        for x in range(xmax + 1):
            v = Fraction(math.factorial(c), fac_e) * fco[(e, i)](x)
            if v.denominator != 1 or v < 0:
                return False
    return True


def bivariate_check(e: int, span: int = 8) -> BivariateReport:
    fco = load_tables().fcoeffs
    degs = all(fco[(e, i)].degree == e + 1 - c_coeff(e, i) for i in range(1, 2 * e + 1))
    lead = [fco[(e, i)].coeffs[-1] for i in range(1, 2 * e + 1)]
    nar = [narayana(e, k) for k in range(1, e + 1)]
    agreement = {n: theorem_intro_eval(n, e) == assemble_N(n, e) for n in range(2 * e + 1, 2 * e + span + 1)}
    return BivariateReport(
        e,
        degs,
        lead == nar + nar[::-1],
        fco[(e, 1)] == IntPolynomial((e, 1), "x"),
        integrality_ok(e),
        agreement,
    )


def congruence_check(n: int, e: int) -> bool:
    """N_{n,e} = delta_{e,0} + max(0, n-e-1)(q-1) mod (q-1)^2."""
    c = assemble_N(n, e).to("q-1").coeffs + (0, 0)
    return c[0] == (1 if e == 0 else 0) and c[1] == max(0, n - e - 1)


def derivative_at_1(n: int, e: int) -> int:
    return assemble_N(n, e).derivative()(1)


def ab_observation_check(e: int) -> tuple[bool, bool]:
    """(n = 2e+1 row, n = 2e row) against the A/B triangles."""
    n = 2 * e + 1
    odd = IntPolynomial.zero("q-1")
    for k in range(n - 1):
        odd = odd + IntPolynomial.monomial(n - e + k, a_tri(n - 2, k), "q-1")
    n = 2 * e
    even = IntPolynomial.zero("q-1")
    for k in range(n - 1):
        even = even + IntPolynomial.monomial(n - e + k, a_tri(n - 2, k) + (e - 1) * b_tri(n - 2, k), "q-1")
    return odd == tilde_lookup(2 * e + 1, e), even == tilde_lookup(2 * e, e)


# ---------------------------------------------------------------------------
# closed forms and shape-level formulas


def prop_eval(lam: SetPartition) -> dict[int, IntPolynomial] | None:
    """Closed form e -> N_{Lambda,e}(q) when |Cr| <= 2; None otherwise."""
    cd = crossing_data(lam)
    cr = set(cd.cr)
    d = cd.d_stat
    if len(cr) <= 1:
        t = len(cr)
        return {d - t: IntPolynomial.monomial(t)}
    if len(cr) == 2:
        arcs = set(arc_set(lam))
        triple = any((i, k) in arcs for (i, j) in cr for (jj, k) in cr if j == jj)
        t = 1 if triple else 2
        return {d - t: IntPolynomial.monomial(2 * t - 2)}
    return None


def _convolve(dists: list[dict[int, int]]) -> dict[int, int]:
    out = {0: 1}
    for dist in dists:
        nxt: dict[int, int] = {}
        for a, x in out.items():
            for b, y in dist.items():
                nxt[a + b] = nxt.get(a + b, 0) + x * y
        out = {k: v for k, v in nxt.items() if v}
    return dict(sorted(out.items()))


def product_counts(lam: SetPartition, q: int, cap: int | None = None) -> dict[int, int]:
    """e -> sum over weak compositions of prod over crossing components of N_{Gamma,w}(q)."""
    from .orbitengine import lambda_counts

    comps = crossing_components(lam)
    return _convolve([lambda_counts(g, q, cap).counts for g in comps])


def product_formula(lam: SetPartition, e: int, q: int, cap: int | None = None) -> int:
    return product_counts(lam, q, cap).get(e, 0)


def shape_sum(n: int, e: int, q: int, cap: int | None = None) -> int:
    """sum over Lambda of [n] of (q-1)^{n - #parts} N_{Lambda,e}(q), each term from the orbit engine."""
    from .orbitengine import lambda_counts

    total = 0
    for lam in enumerate_partitions(n):
        c = lambda_counts(lam, q, cap).counts.get(e, 0)
        if c:
            total += (q - 1) ** (n - len(lam)) * c
    return total


@lru_cache(maxsize=1)
def load_table1() -> dict[int, tuple[int, int, int, int]]:
    """n -> (all, atomic, connected, crossing-connected) set partition counts."""
    out = {}
    for r in _rows("table1.txt"):
        n, *c = map(int, r)
        if len(c) != 4:
            raise DataError(f"bad table1 row {r}")
        out[n] = tuple(c)
    return out


def lambda13_polys(partition: str) -> dict[int, IntPolynomial]:
    return {e: p for (s, e), p in load_tables().lambda13.items() if s == partition}
