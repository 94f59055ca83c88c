"""Small finite fields F_q and dense linear algebra over them.

Elements of F_q are integers 0..q-1.  For q = p^k the integer ``a`` encodes
the polynomial sum_i d_i x^i where d_i are the base-p digits of ``a``, reduced
modulo a fixed irreducible.  Arithmetic goes through precomputed q x q tables,
so every routine here works unchanged for prime and non-prime q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# coefficient lists (low degree first) of the monic irreducibles used for q = p^k
_IRREDUCIBLES = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
}


class FieldError(ValueError):
    pass


def _prime_power(q: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7):
        k, m = 0, q
        while m % p == 0:
            m //= p
            k += 1
        if m == 1 and k > 0:
            return p, k
    raise FieldError(f"unsupported field order q={q}; supported: {SUPPORTED_Q}")


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def _polymul_mod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus from the top degree down
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
    return prod[:k]


@dataclass(frozen=True, eq=False)
class Field:
    q: int
    p: int
    k: int
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)  # inv[0] is a sentinel 0
    trace: np.ndarray = field(repr=False)  # absolute trace F_q -> F_p
    primitive: int = 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(("Field", self.q))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def inverse(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.q)
        return int(self.inv[a])

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    # vector helpers; arrays of dtype int64 with entries < q
    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return (a + b) % self.p
        return self.add[a, b]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return (a - b) % self.p
        return self.add[a, self.neg[b]]

    def smul(self, c: int, v: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return (c * v) % self.p
        return self.mul[c, v]

    def dot(self, a: np.ndarray, b: np.ndarray) -> int:
        if self.is_prime:
            return int(np.dot(a, b) % self.p)
        acc = 0
        for x in self.mul[a, b]:
            acc = self.add[acc, x]
        return int(acc)


@lru_cache(maxsize=None)
def field_make(q: int) -> Field:
    """Build F_q with addition/multiplication tables."""
    if q not in SUPPORTED_Q:
        raise FieldError(f"unsupported field order q={q}; supported: {SUPPORTED_Q}")
    p, k = _prime_power(q)
    idx = np.arange(q)
    if k == 1:
        add = (idx[:, None] + idx[None, :]) % p
        mul = (idx[:, None] * idx[None, :]) % p
    else:
        mod = _IRREDUCIBLES[q]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = _digits(a, p, k)
            for b in range(q):
                db = _digits(b, p, k)
                add[a, b] = _undigits([(x + y) % p for x, y in zip(da, db)], p)
                mul[a, b] = _undigits(_polymul_mod(da, db, mod, p), p)
    add = add.astype(np.int64)
    mul = mul.astype(np.int64)
    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
    # trace t + t^p + ... + t^(p^(k-1)); lands in the prime subfield {0..p-1}
    trace = np.zeros(q, dtype=np.int64)
    for a in range(q):
        acc, power = 0, a
        for _ in range(k):
            acc = add[acc, power]
            nxt = 1
            for _ in range(p):
                nxt = mul[nxt, power]
            power = nxt
        trace[a] = acc
    assert trace.max() < p
    primitive = 0
    for g in range(1, q):
        x, order = g, 1
        while x != 1:
            x = mul[x, g]
            order += 1
        if order == q - 1:
            primitive = g
            break
    for arr in (add, mul, neg, inv, trace):
        arr.setflags(write=False)
    return Field(q, p, k, add, mul, neg, inv, trace, primitive)


# ---------------------------------------------------------------------------
# dense linear algebra; matrices are 2-d int64 arrays with entries < q


def as_matrix(F: Field, rows, ncols: int | None = None) -> np.ndarray:
    M = np.asarray(rows, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(0 if M.size == 0 else 1, -1) if ncols is None else M.reshape(-1, ncols)
    if M.size and (M.min() < 0 or M.max() >= F.q):
        raise FieldError("matrix entries out of range for F_%d" % F.q)
    return M


def mat_mul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"dimension mismatch {A.shape} x {B.shape}")
    if F.is_prime:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for t in range(A.shape[1]):
        out = F.add[out, F.mul[A[:, t][:, None], B[t, :][None, :]]]
    return out


def rref(F: Field, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        s = r + int(nz[0])
        if s != r:
            R[[r, s]] = R[[s, r]]
        R[r] = F.smul(F.inverse(int(R[r, c])), R[r])
        for i in range(nrows):
            if i != r and R[i, c]:
                R[i] = F.vsub(R[i], F.smul(int(R[i, c]), R[r]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(F: Field, M: np.ndarray) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: Field, M: np.ndarray) -> np.ndarray:
    """Basis (rows, RREF) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(piv):
            v[pc] = F.neg[R[row, f]]
        basis.append(v)
    if not basis:
        return np.zeros((0, ncols), dtype=np.int64)
    return rref(F, np.array(basis))[0]


def left_kernel(F: Field, A: np.ndarray) -> np.ndarray:
    """Basis (rows, RREF) of {k : k A = 0}."""
    A = np.asarray(A, dtype=np.int64)
    return nullspace(F, A.T)


def solve(F: Field, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution x of A x = b, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise ValueError("dimension mismatch")
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, piv = rref(F, aug)
    ncols = A.shape[1]
    if ncols in piv:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for row, pc in enumerate(piv):
        x[pc] = R[row, ncols]
    return x


def solve_many(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
    """X with A X = B (one column per right-hand side), or None if any column is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64).reshape(A.shape[0], -1)
    R, piv = rref(F, np.concatenate([A, B], axis=1))
    ncols = A.shape[1]
    if piv and piv[-1] >= ncols:
        return None
    X = np.zeros((ncols, B.shape[1]), dtype=np.int64)
    for row, pc in enumerate(piv):
        X[pc] = R[row, ncols:]
    return X


def as_rows(M, ncols: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return M.reshape(-1, ncols)


def span_rref(F: Field, rows: np.ndarray, ncols: int) -> np.ndarray:
    rows = as_rows(rows, ncols)
    if rows.shape[0] == 0:
        return rows
    return rref(F, rows)[0]


def intersect_subspaces(F: Field, bases: list[np.ndarray], ncols: int) -> np.ndarray:
    """Intersection of row spaces, as an RREF basis."""
    cur = np.eye(ncols, dtype=np.int64)
    for B in bases:
        B = as_rows(B, ncols)
        if cur.shape[0] == 0 or B.shape[0] == 0:
            return np.zeros((0, ncols), dtype=np.int64)
        # x cur = y B  <=>  [cur; -B]^T kernel
        stacked = np.concatenate([cur, F.neg[B]], axis=0)
        K = left_kernel(F, stacked)
        if K.shape[0] == 0:
            return np.zeros((0, ncols), dtype=np.int64)
        cur = span_rref(F, mat_mul(F, K[:, : cur.shape[0]], cur), ncols)
    return cur


def in_span(F: Field, basis: np.ndarray, v: np.ndarray) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64).reshape(1, -1)
    if not v.any():
        return True
    if basis.shape[0] == 0:
        return False
    return rank(F, np.concatenate([basis, v])) == rank(F, basis)


def spans_all(F: Field, basis: np.ndarray, V: np.ndarray) -> bool:
    """Is every row of V in the row space of ``basis``?  One rank computation."""
    basis = np.asarray(basis, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    if V.size == 0:
        return True
    V = V.reshape(-1, V.shape[-1])
    V = V[V.any(axis=1)]
    if V.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return False
    return rank(F, np.concatenate([basis, V])) == rank(F, basis)


def reduce_mod(F: Field, R: np.ndarray, pivots: list[int], v: np.ndarray) -> np.ndarray:
    """Canonical representative of v modulo the row space of the RREF matrix R."""
    v = np.array(v, dtype=np.int64, copy=True)
    for row, pc in enumerate(pivots):
        if v[pc]:
            v = F.vsub(v, F.smul(int(v[pc]), R[row]))
    return v


def enumerate_vectors(F: Field, dim: int) -> np.ndarray:
    """All q^dim vectors as rows; row index equals the base-q code sum_i v_i q^i."""
    n = F.q**dim
    codes = np.arange(n, dtype=np.int64)
    out = np.empty((n, dim), dtype=np.int64)
    for i in range(dim):
        out[:, i] = codes % F.q
        codes //= F.q
    return out


def encode(F: Field, v) -> int:
    return int(sum(int(x) * F.q**i for i, x in enumerate(v)))


def decode(F: Field, code: int, dim: int) -> np.ndarray:
    out = np.empty(dim, dtype=np.int64)
    for i in range(dim):
        out[i] = code % F.q
        code //= F.q
    return out
