"""Exhaustive orbit enumeration for algebra groups G = 1 + n over small F_q.

Every action considered is linear on F_q^dim (functionals or algebra
elements), so each generator 1 + t e_i is precomputed as a sparse matrix and
the scan itself runs in a numba kernel over base-q integer codes.

The counting surrogate: the number of irreducible characters of degree q^f of
an algebra group is replaced by the number of coadjoint orbits of size q^{2f}
(Kirillov functions).  count_lambda_e turns these into N_{Lambda,e}(q) through
the crossing algebras, with two independent tallies compared on every call.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .gfq import Field, decode, encode, field_make
from .nilalg import NilpotentAlgebra, build_crossing
from .setpartition import SetPartition, crossing_data, standardize

DEFAULT_CAP = 2**26
ACTIONS = ("coadjoint", "left", "right", "two_sided", "adjoint")


class CapExceeded(RuntimeError):
    pass


class OrbitError(AssertionError):
    """An invariant that cannot fail mathematically did fail."""


def point_cap() -> int:
    return int(os.environ.get("UTCOUNT_MAX_POINTS", DEFAULT_CAP))


def memory_estimate(total_points: int) -> int:
    """Bytes for the visited array and DFS stack."""
    return 9 * total_points


def _human_bytes(b: int) -> str:
    for unit in ("B", "KiB", "MiB", "GiB"):
        if b < 1024 or unit == "GiB":
            return f"{b:.0f} {unit}" if unit == "B" else f"{b:.1f} {unit}"
        b /= 1024


def _check_cap(A: NilpotentAlgebra, cap: int | None = None):
    cap = point_cap() if cap is None else cap
    total = A.q**A.dim
    if total > cap:
        raise CapExceeded(
            f"{A.name}: q^dim = {A.q}^{A.dim} = {total} points exceeds cap {cap} "
            f"(needs about {_human_bytes(memory_estimate(total))}; raise UTCOUNT_MAX_POINTS)"
        )
    return total


# ---------------------------------------------------------------------------
# group elements and generators


@dataclass(frozen=True, eq=False)
class GroupElement:
    """g = 1 + x."""

    A: NilpotentAlgebra
    x: np.ndarray

    def __mul__(self, other: GroupElement) -> GroupElement:
        F = self.A.F
        s = F.vadd(F.vadd(self.x, other.x), self.A.mul(self.x, other.x))
        return GroupElement(self.A, s)

    def inverse(self) -> GroupElement:
        """1 - x + x^2 - ..., which terminates by nilpotency."""
        F, A = self.A.F, self.A
        negx = F.smul(int(F.neg[1]), self.x)
        term = negx.copy()
        acc = np.zeros_like(self.x)
        for _ in range(A.dim + 1):
            if not term.any():
                break
            acc = F.vadd(acc, term)
            term = A.mul(term, negx)
        return GroupElement(A, acc)

    def code(self) -> int:
        return encode(self.A.F, self.x)


def generators(A: NilpotentAlgebra) -> list[GroupElement]:
    """The elements 1 + t e_i that generate 1 + n.

    When e_i^2 = 0 the map t -> 1 + t e_i is a homomorphism, so t only needs to
    run over an F_p-basis of F_q (the codes p^j).  Otherwise all t != 0 are used.
    """
    F = A.F
    out = []
    fp_basis = [F.p**j for j in range(F.k)]
    for i in range(A.dim):
        sq_zero = not A.table[i, i].any()
        for t in fp_basis if sq_zero else list(F.units()):
            x = np.zeros(A.dim, dtype=np.int64)
            x[i] = t
            out.append(GroupElement(A, x))
    return out


def closure_size(A: NilpotentAlgebra, cap: int = 2**16) -> int:
    """Order of the subgroup generated by generators(A), by brute-force closure."""
    gens = generators(A)
    identity = GroupElement(A, np.zeros(A.dim, dtype=np.int64))
    seen = {identity.code(): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = h * g
                c = k.code()
                if c not in seen:
                    seen[c] = k
                    nxt.append(k)
                    if len(seen) > cap:
                        raise CapExceeded("closure exceeds cap")
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# action matrices: v -> v T for row vectors v


def _conj_matrix(g: GroupElement) -> np.ndarray:
    """Column b holds the coordinates of g e_b g^{-1}."""
    A, F = g.A, g.A.F
    y = g.inverse().x
    d = A.dim
    M = np.zeros((d, d), dtype=np.int64)
    E = np.eye(d, dtype=np.int64)
    for b in range(d):
        eb = E[b]
        left = F.vadd(eb, A.mul(g.x, eb))  # g e_b
        col = F.vadd(left, A.mul(left, y))  # (g e_b)(1 + y)
        M[:, b] = col
    return M


def action_matrix(g: GroupElement, kind: str) -> np.ndarray:
    A, F = g.A, g.A.F
    d = A.dim
    E = np.eye(d, dtype=np.int64)
    if kind == "coadjoint":
        return _conj_matrix(g)  # lambda'(e_b) = lambda(g e_b g^-1)
    if kind == "adjoint":
        return _conj_matrix(g).T  # X' = g X g^-1
    if kind == "left":
        return np.stack([F.vadd(E[b], A.mul(g.x, E[b])) for b in range(d)], axis=1) if d else E
    if kind == "right":
        return np.stack([F.vadd(E[b], A.mul(E[b], g.x)) for b in range(d)], axis=1) if d else E
    raise ValueError(f"unknown action {kind!r}")


@dataclass(frozen=True, eq=False)
class SparseAction:
    """Column-sparse N = T - I for each generator, flattened for the kernels."""

    q: int
    dim: int
    col_ptr: np.ndarray
    col_b: np.ndarray
    term_ptr: np.ndarray
    term_a: np.ndarray
    term_c: np.ndarray
    col_mask: np.ndarray = field(repr=False)


def sparse_action(A: NilpotentAlgebra, kind: str) -> SparseAction:
    F = A.F
    kinds = ("left", "right") if kind == "two_sided" else (kind,)
    col_ptr, col_b, term_ptr, term_a, term_c, masks = [0], [], [0], [], [], []
    for k in kinds:
        for g in generators(A):
            T = action_matrix(g, k)
            N = T.copy()
            for i in range(A.dim):
                N[i, i] = F.sub(int(T[i, i]), 1)
            for b in range(A.dim):
                rows = np.flatnonzero(N[:, b])
                if rows.size == 0:
                    continue
                col_b.append(b)
                mask = 0
                for a in rows:
                    term_a.append(int(a))
                    term_c.append(int(N[a, b]))
                    mask |= 1 << int(a)
                masks.append(mask)
                term_ptr.append(len(term_a))
            col_ptr.append(len(col_b))
    arr = lambda x: np.asarray(x, dtype=np.int64)  # noqa: E731
    return SparseAction(F.q, A.dim, arr(col_ptr), arr(col_b), arr(term_ptr), arr(term_a), arr(term_c), arr(masks))


# ---------------------------------------------------------------------------
# summaries


@dataclass(frozen=True)
class OrbitSummary:
    q: int
    dim: int
    total_points: int
    orbit_count: int
    histogram: dict[int, int]  # orbit size -> number of orbits
    reps: tuple[int, ...] | None = None
    split: dict[int, tuple[int, int]] | None = None  # size -> (zero, nonzero) on the split coordinate

    def degree_histogram(self) -> dict[int, int]:
        """f -> number of orbits of size q^{2f}; raises on an odd power."""
        out = {}
        for size, cnt in self.histogram.items():
            f = _half_log(size, self.q)
            out[f] = out.get(f, 0) + cnt
        return dict(sorted(out.items()))

    def as_json(self, algebra: str = "") -> dict:
        return {
            "algebra": algebra,
            "q": self.q,
            "orbit_count": self.orbit_count,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def _half_log(size: int, q: int) -> int:
    e, s = 0, size
    while s % q == 0:
        s //= q
        e += 1
    if s != 1 or e % 2:
        raise OrbitError(f"coadjoint orbit of size {size} is not an even power of q={q}")
    return e // 2


def orbit_summary(
    A: NilpotentAlgebra,
    kind: str = "coadjoint",
    split: int | None = None,
    want_reps: bool = False,
    cap: int | None = None,
    threads: int = 1,
) -> OrbitSummary:
    """Scan all q^dim points under the given action.

    ``split`` names a coordinate whose value is constant on orbits (a central
    basis element for the coadjoint action); the summary then also reports
    counts separately for orbits with zero and nonzero value there.
    ``threads`` is accepted for interface compatibility; the scan is the
    single-threaded reference implementation.
    """
    if kind not in ACTIONS:
        raise ValueError(f"unknown action {kind!r}")
    total = _check_cap(A, cap)
    F = A.F
    S = sparse_action(A, kind)
    nexp = A.dim * F.k + 1
    reps = np.empty(total if want_reps else 0, dtype=np.int64)
    zc = -1 if split is None else int(split)
    if F.q == 2:
        hist, norb, status = _kernels.orbit_scan_gf2(A.dim, S.col_ptr, S.col_b, S.col_mask, zc, nexp, reps)
    else:
        hist, norb, status = _kernels.orbit_scan(
            F.q, F.p, A.dim, F.add, F.mul, S.col_ptr, S.col_b, S.term_ptr, S.term_a, S.term_c, zc, nexp, reps
        )
    if status:
        raise OrbitError("orbit size is not a power of p")
    histogram, sp = {}, {}
    for e in range(nexp):
        z0, z1 = int(hist[0, e]), int(hist[1, e])
        if z0 or z1:
            histogram[F.p**e] = z0 + z1
            sp[F.p**e] = (z0, z1)
    mass = sum(size * c for size, c in histogram.items())
    if mass != total or sum(histogram.values()) != norb:
        raise OrbitError(f"orbit sizes sum to {mass}, expected {total}")
    return OrbitSummary(
        F.q,
        A.dim,
        total,
        int(norb),
        histogram,
        tuple(int(r) for r in reps[:norb]) if want_reps else None,
        sp if split is not None else None,
    )


def adjoint_orbits(A: NilpotentAlgebra, **kw) -> OrbitSummary:
    return orbit_summary(A, "adjoint", **kw)


def coadjoint_orbits(A: NilpotentAlgebra, **kw) -> tuple[OrbitSummary, dict[int, int]]:
    s = orbit_summary(A, "coadjoint", **kw)
    return s, s.degree_histogram()


def orbit_of(A: NilpotentAlgebra, v, kind: str = "coadjoint", cap: int | None = None) -> np.ndarray:
    """Sorted codes of the orbit of the vector v."""
    _check_cap(A, cap)
    F = A.F
    S = sparse_action(A, kind)
    start = encode(F, v)
    return _kernels.single_orbit(start, F.q, A.dim, F.add, F.mul, S.col_ptr, S.col_b, S.term_ptr, S.term_a, S.term_c)


@dataclass(frozen=True)
class SidedOrbits:
    left: int
    right: int
    two_sided: int
    both: int  # |G lam  intersect  lam G|


def sided_orbits(A: NilpotentAlgebra, lam, cap: int | None = None) -> SidedOrbits:
    L = orbit_of(A, lam, "left", cap)
    R = orbit_of(A, lam, "right", cap)
    LR = orbit_of(A, lam, "two_sided", cap)
    both = np.intersect1d(L, R, assume_unique=True).size
    out = SidedOrbits(L.size, R.size, LR.size, int(both))
    if out.left * out.right != out.two_sided * out.both or out.left != out.right:
        raise OrbitError(f"two-sided orbit identity fails: {out}")
    return out


def coadjoint_orbit_size_by_rank(A: NilpotentAlgebra, lam) -> int:
    """q^{rank of (X, Y) -> lam([X, Y])}, an independent formula for |lam^G|."""
    from .gfq import rank
    from .nilalg import gram

    F = A.F
    B = gram(A, lam)
    skew = F.add[B, F.neg[B.T]] if A.dim else B
    return F.q ** rank(F, skew)


# ---------------------------------------------------------------------------
# N_{Lambda,e}(q)


@dataclass(frozen=True)
class LambdaCount:
    """All nonzero N_{Lambda,e}(q) at one numeric q, with both tallies."""

    q: int
    counts: dict[int, int]  # e -> N_{Lambda,e}(q)
    kir_ext: dict[int, int]  # f -> Kirillov count on 1 + C~
    kir_plain: dict[int, int]  # f -> Kirillov count on 1 + C
    z_nonzero: dict[int, int]  # f -> orbits of C~ with lam(z) != 0


@lru_cache(maxsize=4096)
def _count_standard(lam: SetPartition, q: int, cap: int) -> LambdaCount:
    F = field_make(q)
    ext = build_crossing(lam, F, extended=True)
    plain = build_crossing(lam, F, extended=False)
    s_ext = orbit_summary(ext, "coadjoint", split=ext.dim - 1, cap=cap)
    s_plain = orbit_summary(plain, "coadjoint", cap=cap)
    kir_ext = s_ext.degree_histogram()
    kir_plain = s_plain.degree_histogram()
    z0, z1 = {}, {}
    for size, (a, b) in s_ext.split.items():
        f = _half_log(size, q)
        z0[f] = z0.get(f, 0) + a
        z1[f] = z1.get(f, 0) + b
    z0 = {f: c for f, c in z0.items() if c}
    z1 = {f: c for f, c in z1.items() if c}
    if z0 != kir_plain:
        raise OrbitError(f"{lam}, q={q}: z = 0 slice of C~ disagrees with C: {z0} vs {kir_plain}")
    cd = crossing_data(lam)
    counts = {}
    for f in sorted(set(kir_ext) | set(kir_plain)):
        diff = kir_ext.get(f, 0) - kir_plain.get(f, 0)
        if diff != z1.get(f, 0):
            raise OrbitError(f"{lam}, q={q}, f={f}: K~ - K = {diff} but z-filter gives {z1.get(f, 0)}")
        if diff % (q - 1):
            raise OrbitError(f"{lam}, q={q}, f={f}: (K~ - K) = {diff} not divisible by q-1")
        if diff:
            counts[f - len(cd.cr) + cd.d_stat] = diff // (q - 1)
    return LambdaCount(q, dict(sorted(counts.items())), kir_ext, kir_plain, z1)


def lambda_counts(lam: SetPartition, q: int, cap: int | None = None) -> LambdaCount:
    """N_{Lambda,e}(q) for every e, via the crossing algebras of st(Lambda)."""
    st, shift = standardize(lam)
    cap = point_cap() if cap is None else cap
    base = _count_standard(st, q, cap)
    if shift == 0:
        return base
    return LambdaCount(q, {e + shift: c for e, c in base.counts.items()}, base.kir_ext, base.kir_plain, base.z_nonzero)


def count_lambda_e(lam: SetPartition, q: int, e: int, cap: int | None = None) -> int:
    return lambda_counts(lam, q, cap).counts.get(e, 0)


def min_nonzero_degree(lam: SetPartition, q: int, cap: int | None = None) -> int:
    counts = lambda_counts(lam, q, cap).counts
    return min(counts)


def kirillov_degree_counts(n: int, q: int, cap: int | None = None) -> dict[int, int]:
    """f -> number of coadjoint orbits of u_n(q) of size q^{2f}."""
    from .nilalg import build_un

    return coadjoint_orbits(build_un(n, field_make(q)), cap=cap)[1]


def functional_vector(A: NilpotentAlgebra, code: int) -> np.ndarray:
    return decode(A.F, code, A.dim)


__all__ = [
    "CapExceeded",
    "GroupElement",
    "LambdaCount",
    "OrbitError",
    "OrbitSummary",
    "SidedOrbits",
    "adjoint_orbits",
    "closure_size",
    "coadjoint_orbits",
    "count_lambda_e",
    "generators",
    "lambda_counts",
    "min_nonzero_degree",
    "orbit_of",
    "orbit_summary",
    "sided_orbits",
    "Field",
]
