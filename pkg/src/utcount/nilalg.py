"""Nilpotent F_q-algebras stored as structure-constant tables.

An algebra of dimension d is a (d, d, d) array ``table`` with
``e_i * e_j = sum_k table[i, j, k] e_k``.  The builders here give the strictly
upper triangular algebra u_n(q), pattern subalgebras, and the crossing algebras
attached to a set partition, together with the subquotients s/l and s/k cut
out by a functional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import gfq
from .gfq import Field
from .setpartition import SetPartition, arc_set, crossing_data


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class NilpotentAlgebra:
    F: Field
    labels: tuple
    table: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self):
        d = len(self.labels)
        if self.table.shape != (d, d, d):
            raise AlgebraError(f"table shape {self.table.shape} does not match dim {d}")
        self.table.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def q(self) -> int:
        return self.F.q

    def index(self, label) -> int:
        return self.labels.index(label)

    def terms(self) -> list[tuple[int, int, int, int]]:
        """Nonzero structure constants as (i, j, k, c)."""
        return [tuple(int(t) for t in x) + (int(self.table[tuple(x)]),) for x in np.argwhere(self.table)]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul_rows(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Row-wise products X[r] * Y[r]."""
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
        F = self.F
        if F.is_prime:
            return np.einsum("ri,rj,ijk->rk", X, Y, self.table) % F.p
        out = np.zeros((X.shape[0], self.dim), dtype=np.int64)
        for i, j, k, c in self.terms():
            out[:, k] = F.add[out[:, k], F.mul[F.mul[X[:, i], Y[:, j]], c]]
        return out

    def mul(self, x, y) -> np.ndarray:
        return self.mul_rows(x, y)[0]

    def __repr__(self):
        return f"NilpotentAlgebra({self.name or '?'}, dim={self.dim}, q={self.q})"

    def dump(self) -> str:
        lines = [f"{self.dim} {self.q}"]
        for i in range(self.dim):
            for j in range(self.dim):
                v = self.table[i, j]
                if v.any():
                    lines.append(f"{i} {j} -> " + " ".join(map(str, v)))
        return "\n".join(lines)


def _zero_table(d: int) -> np.ndarray:
    return np.zeros((d, d, d), dtype=np.int64)


def un_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def is_closed(P) -> bool:
    P = set(P)
    return all((i, l) in P for (i, j) in P for (k, l) in P if j == k)


def build_pattern(n: int, P, F: Field) -> NilpotentAlgebra:
    P = sorted(set(P))
    for i, j in P:
        if not 1 <= i < j <= n:
            raise AlgebraError(f"position {(i, j)} is not strictly upper triangular in size {n}")
    if not is_closed(P):
        raise AlgebraError("pattern is not closed under composition")
    pos = {ij: t for t, ij in enumerate(P)}
    T = _zero_table(len(P))
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                T[a, b, pos[(i, l)]] = 1
    return NilpotentAlgebra(F, tuple(P), T, name=f"u_{n},P")


def build_un(n: int, F: Field) -> NilpotentAlgebra:
    if n < 1:
        raise AlgebraError("n must be positive")
    A = build_pattern(n, un_positions(n), F)
    return NilpotentAlgebra(F, A.labels, A.table.copy(), name=f"u_{n}")


Z_LABEL = "z"


def build_crossing(lam: SetPartition, F: Field, extended: bool = False) -> NilpotentAlgebra:
    """C_Lambda(q), or its central extension by z_Lambda when ``extended``."""
    cr = crossing_data(lam).cr
    arcs = set(arc_set(lam))
    crs = set(cr)
    pos = {ij: t for t, ij in enumerate(cr)}
    d = len(cr) + (1 if extended else 0)
    T = _zero_table(d)
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j != k:
                continue
            if (i, l) in crs:
                T[a, b, pos[(i, l)]] = 1
            elif extended and (i, l) in arcs:
                T[a, b, d - 1] = 1
    labels = tuple(cr) + ((Z_LABEL,) if extended else ())
    return NilpotentAlgebra(F, labels, T, name=("C~" if extended else "C") + f"[{lam}]")


def extension_splits(lam: SetPartition) -> bool:
    """True when no product of crossing units lands on z_Lambda.

    In that case the extended algebra is the direct sum of the plain one and
    the central line.
    """
    cr = set(crossing_data(lam).cr)
    arcs = set(arc_set(lam))
    return not any((i, l) in arcs for (i, j) in cr for (k, l) in cr if j == k)


def chain_condition(lam: SetPartition) -> bool:
    """For all i<j<k<l<m at most one of (i,j,k,l), (j,k,l,m) is a crossing."""
    quads = set(crossing_data(lam).crossings4)
    for i, j, k, l in quads:
        for m in range(l + 1, max(lam.ground) + 1):
            if (j, k, l, m) in quads:
                return False
    return True


# ---------------------------------------------------------------------------
# structural checks


def is_associative(A: NilpotentAlgebra) -> bool:
    d = A.dim
    if d == 0:
        return True
    F = A.F
    T = A.table
    if F.is_prime or T.max() < F.p:
        # constants in the prime subfield: integer arithmetic mod p is exact
        left = np.einsum("ijm,mkn->ijkn", T, T) % F.p
        right = np.einsum("jkm,imn->ijkn", T, T) % F.p
        return bool(np.array_equal(left, right))
    E = np.eye(d, dtype=np.int64)
    for i, j, k in product(range(d), repeat=3):
        lhs = A.mul(A.mul(E[i], E[j]), E[k])
        rhs = A.mul(E[i], A.mul(E[j], E[k]))
        if not np.array_equal(lhs, rhs):
            return False
    return True


def power_chain(A: NilpotentAlgebra) -> list[int]:
    """Dimensions of n, n^2, n^3, ... down to the first zero power."""
    d = A.dim
    F = A.F
    cur = np.eye(d, dtype=np.int64)
    dims = [d]
    steps = 0
    while cur.shape[0] > 0:
        if steps > d + 1:
            raise AlgebraError("power chain does not terminate; algebra is not nilpotent")
        m = cur.shape[0]
        X = np.repeat(cur, d, axis=0)
        Y = np.tile(np.eye(d, dtype=np.int64), (m, 1))
        prods = A.mul_rows(X, Y) if m else np.zeros((0, d), dtype=np.int64)
        prods = prods[prods.any(axis=1)]
        cur = gfq.span_rref(F, prods, d)
        dims.append(cur.shape[0])
        steps += 1
    return dims


def nilpotency_index(A: NilpotentAlgebra) -> int:
    """Least k with n^k = 0."""
    return len(power_chain(A))


def is_nilpotent(A: NilpotentAlgebra) -> bool:
    try:
        power_chain(A)
    except AlgebraError:
        return False
    return True


# ---------------------------------------------------------------------------
# functionals and the subspaces k, l, s


def quasi_monomial(lam: SetPartition, n: int, F: Field, coeffs=None) -> np.ndarray:
    """The functional sum a_ij e_ij^* over Arc(lam) on u_n(q); default a_ij = 1."""
    arcs = arc_set(lam)
    if coeffs is None:
        coeffs = [1] * len(arcs)
    coeffs = list(coeffs)
    if len(coeffs) != len(arcs):
        raise AlgebraError("need one coefficient per arc")
    if any(c % F.q == 0 or c >= F.q for c in coeffs):
        raise AlgebraError("arc coefficients must be nonzero field elements")
    pos = {ij: t for t, ij in enumerate(un_positions(n))}
    lamv = np.zeros(len(pos), dtype=np.int64)
    for (i, j), c in zip(arcs, coeffs):
        if (i, j) not in pos:
            raise AlgebraError(f"arc {(i, j)} does not fit in u_{n}")
        lamv[pos[(i, j)]] = c
    return lamv


def gram(A: NilpotentAlgebra, lam: np.ndarray) -> np.ndarray:
    """B[i, j] = lam(e_i e_j)."""
    lam = np.asarray(lam, dtype=np.int64)
    F = A.F
    if F.is_prime:
        return np.einsum("ijk,k->ij", A.table, lam) % F.p
    B = np.zeros((A.dim, A.dim), dtype=np.int64)
    for i in range(A.dim):
        for j in range(A.dim):
            B[i, j] = F.dot(A.table[i, j], lam)
    return B


@dataclass(frozen=True, eq=False)
class FunctionalSubspaces:
    k: np.ndarray
    l: np.ndarray
    s: np.ndarray


def functional_subspaces(A: NilpotentAlgebra, lam: np.ndarray) -> FunctionalSubspaces:
    F, d = A.F, A.dim
    B = gram(A, lam)
    l = gfq.left_kernel(F, B)
    # B restricted to n x l:  M[i, t] = lam(e_i * l_t)
    M = gfq.mat_mul(F, B, l.T) if l.shape[0] else np.zeros((d, 0), dtype=np.int64)
    s = gfq.left_kernel(F, M)
    kerlam = gfq.nullspace(F, np.asarray(lam, dtype=np.int64).reshape(1, d))
    k = gfq.intersect_subspaces(F, [l, kerlam], d)
    return FunctionalSubspaces(k, l, s)


def is_subalgebra(A: NilpotentAlgebra, S: np.ndarray) -> bool:
    m = S.shape[0]
    if m == 0:
        return True
    X = np.repeat(S, m, axis=0)
    Y = np.tile(S, (m, 1))
    return gfq.spans_all(A.F, S, A.mul_rows(X, Y))


def is_ideal_in(A: NilpotentAlgebra, I: np.ndarray, S: np.ndarray) -> bool:
    """Two-sided ideal test for I inside the subalgebra S."""
    if I.shape[0] == 0 or S.shape[0] == 0:
        return True
    X = np.repeat(I, S.shape[0], axis=0)
    Y = np.tile(S, (I.shape[0], 1))
    prods = np.concatenate([A.mul_rows(X, Y), A.mul_rows(Y, X)])
    return gfq.spans_all(A.F, I, prods)


def quotient(A: NilpotentAlgebra, S: np.ndarray, I: np.ndarray, reps=None, labels=None) -> NilpotentAlgebra:
    """The algebra S/I, with basis the cosets of ``reps`` (rows in S)."""
    F, d = A.F, A.dim
    S = gfq.span_rref(F, S, d)
    I = gfq.span_rref(F, I, d)
    if not gfq.spans_all(F, S, I):
        raise AlgebraError("ideal is not contained in the subalgebra")
    if not is_ideal_in(A, I, S):
        raise AlgebraError("subspace is not a two-sided ideal")
    if reps is None:
        R, piv = (gfq.rref(F, I) if I.shape[0] else (I, []))
        rem = [gfq.reduce_mod(F, R, piv, v) for v in S]
        rem = [v for v in rem if v.any()]
        reps = gfq.span_rref(F, np.array(rem), d)
    reps = gfq.as_rows(reps, d)
    m = reps.shape[0]
    if m + I.shape[0] != S.shape[0]:
        raise AlgebraError("representatives do not give a basis of the quotient")
    cols = np.concatenate([reps, I]).T
    if gfq.rank(F, cols) != m + I.shape[0]:
        raise AlgebraError("representatives are dependent modulo the ideal")
    T = _zero_table(m)
    if m:
        prods = A.mul_rows(np.repeat(reps, m, axis=0), np.tile(reps, (m, 1)))
        X = gfq.solve_many(F, cols, prods.T)
        if X is None:
            raise AlgebraError("product leaves the subalgebra")
        T[:] = X[:m].T.reshape(m, m, m)
    if labels is None:
        labels = tuple(range(m))
    return NilpotentAlgebra(F, tuple(labels), T, name=f"{A.name}/quot")


def iso_check(A: NilpotentAlgebra, B: NilpotentAlgebra, basis_map: np.ndarray) -> bool:
    """Does e_i -> basis_map[i] (a vector of B) define an algebra isomorphism?"""
    if A.F != B.F or A.dim != B.dim:
        return False
    d, F = A.dim, A.F
    M = np.asarray(basis_map, dtype=np.int64).reshape(d, d)
    if gfq.rank(F, M) != d:
        return False
    if d == 0:
        return True
    X = np.repeat(M, d, axis=0)
    Y = np.tile(M, (d, 1))
    lhs = B.mul_rows(X, Y)
    rhs = gfq.mat_mul(F, A.table.reshape(d * d, d), M)
    return bool(np.array_equal(lhs, rhs))


def crossing_quotients(lam: SetPartition, n: int, F: Field, coeffs=None):
    """Return (s/l, s/k, map_plain, map_ext) for the quasi-monomial functional of shape lam.

    The representatives are e_ij for (i,j) in Cr(lam), plus z = e_kl for the
    first arc.  The maps send these onto the crossing algebras; with general
    arc coefficients a diagonal rescaling d_i/d_j is needed.
    """
    U = build_un(n, F)
    lamv = quasi_monomial(lam, n, F, coeffs)
    sub = functional_subspaces(U, lamv)
    cr = crossing_data(lam).cr
    arcs = arc_set(lam)
    pos = {ij: t for t, ij in enumerate(U.labels)}
    E = np.eye(U.dim, dtype=np.int64)
    reps = gfq.as_rows([E[pos[ij]] for ij in cr], U.dim)
    plain = quotient(U, sub.s, sub.l, reps, labels=cr)
    zrep = E[pos[arcs[0]]] if arcs else np.zeros(U.dim, dtype=np.int64)
    ext = None
    if arcs:
        ext = quotient(U, sub.s, sub.k, np.concatenate([reps, zrep[None, :]]), labels=tuple(cr) + (Z_LABEL,))
    # torus scaling: d_first = 1 along each block, d_next = d_prev / a
    a = dict(zip(arcs, coeffs if coeffs is not None else [1] * len(arcs)))
    dscale = {}
    for blk in lam.blocks:
        dscale[blk[0]] = 1
        for x, y in zip(blk, blk[1:]):
            dscale[y] = F.mul[dscale[x], F.inverse(a[(x, y)])]
    m = len(cr)
    Mp = np.zeros((m, m), dtype=np.int64)
    for t, (i, j) in enumerate(cr):
        Mp[t, t] = F.mul[dscale[i], F.inverse(dscale[j])]
    Me = None
    if arcs:
        Me = np.zeros((m + 1, m + 1), dtype=np.int64)
        Me[:m, :m] = Mp
        Me[m, m] = a[arcs[0]]
    return plain, ext, Mp, Me


# ---------------------------------------------------------------------------


def pattern_to_partition(n: int, P) -> SetPartition:
    """A partition of [2n] whose crossing set is P (P and its complement closed)."""
    P = set(P)
    J = set(un_positions(n))
    if not P <= J:
        raise AlgebraError("pattern has positions outside the upper triangle")
    comp = J - P
    if not (is_closed(P) and is_closed(comp)):
        raise AlgebraError("pattern or its complement is not closed; no total order")
    # i < j in the order iff (i,j) in P or (j,i) in the complement
    below = {j: 0 for j in range(1, n + 1)}
    for i, j in P:
        below[j] += 1
    for i, j in comp:
        below[i] += 1
    h = {j: below[j] + 1 for j in below}
    if sorted(h.values()) != list(range(1, n + 1)):
        raise AlgebraError("height function is not a permutation")
    return SetPartition.of([[j, n + h[j]] for j in range(1, n + 1)])
