"""Exact class functions on small algebra groups with values in Q(zeta_p).

A value sum_k v_k zeta^k is first held as an integer vector v in the group
ring Z[C_p]; a class function is an (N, p) integer array together with one
rational scale.  Reduction to Q(zeta_p) uses zeta^{p-1} = -(1 + ... + zeta^{p-2}),
so the fixed basis of Q(zeta_p) is 1, zeta, ..., zeta^{p-2}.

The character theta is t -> zeta^{tr(t)}.  Orbit sums of theta_mu over a set of
functionals are computed as a Fourier transform of the set's indicator, one
coordinate axis at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gfq import enumerate_vectors, mat_mul
from .nilalg import NilpotentAlgebra
from .orbitengine import action_matrix, generators, orbit_of

DENSE_CAP = 2**16


class CharError(ValueError):
    pass


def _reduce(v) -> tuple[int, ...]:
    v = [int(x) for x in v]
    top = v[-1]
    return tuple(x - top for x in v[:-1])


@dataclass(frozen=True)
class Cyclotomic:
    """sum_k coords[k] zeta_p^k, k = 0..p-2."""

    p: int
    coords: tuple[Fraction, ...]

    @classmethod
    def from_group_ring(cls, p: int, v, scale=1) -> Cyclotomic:
        scale = Fraction(scale)
        return cls(p, tuple(Fraction(x) * scale for x in _reduce(v)))

    @classmethod
    def rational(cls, p: int, r) -> Cyclotomic:
        return cls(p, (Fraction(r),) + (Fraction(0),) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> Cyclotomic:
        v = [0] * p
        v[k % p] = 1
        return cls.from_group_ring(p, v)

    def _ring(self) -> list[Fraction]:
        return list(self.coords) + [Fraction(0)]

    def __add__(self, other: Cyclotomic) -> Cyclotomic:
        self._same(other)
        return Cyclotomic(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Cyclotomic) -> Cyclotomic:
        self._same(other)
        return Cyclotomic(self.p, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.p, tuple(-a for a in self.coords))

    def __mul__(self, other) -> Cyclotomic:
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.p, tuple(a * Fraction(other) for a in self.coords))
        self._same(other)
        p = self.p
        out = [Fraction(0)] * p
        for i, a in enumerate(self._ring()):
            if a:
                for j, b in enumerate(other._ring()):
                    out[(i + j) % p] += a * b
        top = out[-1]
        return Cyclotomic(p, tuple(x - top for x in out[:-1]))

    __rmul__ = __mul__

    def conj(self) -> Cyclotomic:
        p = self.p
        out = [Fraction(0)] * p
        for i, a in enumerate(self._ring()):
            out[(-i) % p] += a
        top = out[-1]
        return Cyclotomic(p, tuple(x - top for x in out[:-1]))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise CharError(f"{self} is not rational")
        return self.coords[0]

    def _same(self, other):
        if self.p != other.p:
            raise CharError("mixing different cyclotomic fields")

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.p == other.p and self.coords == other.coords
        try:
            return self.is_rational() and self.coords[0] == Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.p, self.coords))

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coords) if c]
        return f"Cyclotomic(p={self.p}: {' + '.join(terms) or '0'})"


@dataclass(frozen=True, eq=False)
class ClassFunction:
    A: NilpotentAlgebra
    ring: np.ndarray  # (q^dim, p) group-ring coefficients, row = code of x for g = 1 + x
    scale: Fraction = Fraction(1)

    @property
    def p(self) -> int:
        return self.A.F.p

    def __call__(self, code: int) -> Cyclotomic:
        return Cyclotomic.from_group_ring(self.p, self.ring[code], self.scale)

    def at_identity(self) -> Cyclotomic:
        return self(0)

    def canonical(self) -> np.ndarray:
        """Reduced integer coordinates times the scale's numerator over denominator."""
        r = self.ring - self.ring[:, -1:]
        return r[:, :-1]

    def equals(self, other: ClassFunction) -> bool:
        if other.A is not self.A:
            return False
        a = self.canonical() * self.scale.numerator * other.scale.denominator
        b = other.canonical() * other.scale.numerator * self.scale.denominator
        return bool(np.array_equal(a, b))

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        """Pointwise product (tensor product of characters)."""
        _same_group(self, other)
        p = self.p
        out = np.zeros_like(self.ring)
        for m in range(p):
            out += self.ring[:, [m]] * np.roll(other.ring, m, axis=1)
        return ClassFunction(self.A, out, self.scale * other.scale)


def _same_group(f: ClassFunction, g: ClassFunction):
    if f.A is not g.A:
        raise CharError("class functions live on different groups")


def _dense_check(A: NilpotentAlgebra, cap: int):
    if A.q**A.dim > cap:
        raise CharError(f"|G| = {A.q}^{A.dim} exceeds the dense table cap {cap}")


def _trace_pairing(A: NilpotentAlgebra) -> np.ndarray:
    F = A.F
    return F.trace[F.mul]  # tr(a b) for a, b in F_q


def fourier_indicator(A: NilpotentAlgebra, codes, cap: int = DENSE_CAP) -> np.ndarray:
    """Group-ring table of x -> sum_{mu in codes} zeta^{tr mu(x)}."""
    _dense_check(A, cap)
    F, d, p, q = A.F, A.dim, A.F.p, A.F.q
    N = q**d
    arr = np.zeros((N, p), dtype=np.int64)
    arr[np.asarray(codes, dtype=np.int64), 0] = 1
    arr = arr.reshape((q,) * d + (p,))
    pair = _trace_pairing(A)
    for ax in range(d):
        out = np.zeros_like(arr)
        for a in range(q):
            src = np.take(arr, a, axis=ax)
            for b in range(q):
                s = int(pair[a, b])
                idx = [slice(None)] * (d + 1)
                idx[ax] = b
                out[tuple(idx)] += np.roll(src, s, axis=-1)
        arr = out
    return arr.reshape(N, p)


def theta_fn(A: NilpotentAlgebra, lam, cap: int = DENSE_CAP) -> ClassFunction:
    """theta_lambda(1 + x) = zeta^{tr lambda(x)}; a function on G, not a class function in general."""
    _dense_check(A, cap)
    F = A.F
    X = enumerate_vectors(F, A.dim)
    lam = np.asarray(lam, dtype=np.int64)
    vals = mat_mul(F, X, lam.reshape(-1, 1))[:, 0] if A.dim else np.zeros(1, dtype=np.int64)
    ring = np.zeros((X.shape[0], F.p), dtype=np.int64)
    ring[np.arange(X.shape[0]), F.trace[vals]] = 1
    return ClassFunction(A, ring)


def _isqrt_exact(n: int) -> int:
    r = int(round(n**0.5))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    if r * r != n:
        raise CharError(f"{n} is not a perfect square")
    return r


def kirillov_fn(A: NilpotentAlgebra, lam, cap: int = DENSE_CAP, check: bool = True) -> ClassFunction:
    orbit = orbit_of(A, lam, "coadjoint")
    root = _isqrt_exact(orbit.size)
    f = ClassFunction(A, fourier_indicator(A, orbit, cap), Fraction(1, root))
    if check and not is_class_function(f):
        raise CharError("Kirillov function is not constant on conjugacy classes")
    return f


def superchar_fn(A: NilpotentAlgebra, lam, cap: int = DENSE_CAP, check: bool = True) -> ClassFunction:
    left = orbit_of(A, lam, "left")
    two = orbit_of(A, lam, "two_sided")
    if two.size % left.size:
        raise CharError("|G lam G| is not a multiple of |G lam|")
    f = ClassFunction(A, fourier_indicator(A, two, cap), Fraction(left.size, two.size))
    if check and not is_class_function(f):
        raise CharError("supercharacter is not constant on conjugacy classes")
    return f


def trivial_fn(A: NilpotentAlgebra) -> ClassFunction:
    ring = np.zeros((A.q**A.dim, A.F.p), dtype=np.int64)
    ring[:, 0] = 1
    return ClassFunction(A, ring)


def is_class_function(f: ClassFunction) -> bool:
    """Invariance under conjugation by every generator."""
    A, F = f.A, f.A.F
    if A.dim == 0:
        return True
    X = enumerate_vectors(F, A.dim)
    pw = F.q ** np.arange(A.dim, dtype=np.int64)
    vals = f.canonical()
    for g in generators(A):
        T = action_matrix(g, "adjoint")
        img = mat_mul(F, X, T) @ pw
        if not np.array_equal(vals[img], vals):
            return False
    return True


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum_x f(x) conj(g(x))."""
    _same_group(f, g)
    p = f.p
    N = f.ring.shape[0]
    acc = [0] * p
    F_ = f.ring.astype(object) if N * f.ring.max(initial=1) * g.ring.max(initial=1) > 2**62 else f.ring
    G_ = g.ring.astype(object) if F_.dtype == object else g.ring
    for m in range(p):
        # coefficient of zeta^m in f * conj(g): f_j g_k with j - k = m
        acc[m] = int((F_ * np.roll(G_, m, axis=1)).sum())
    return Cyclotomic.from_group_ring(p, acc, f.scale * g.scale / N)
