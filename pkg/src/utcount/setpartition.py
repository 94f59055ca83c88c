"""Set partitions, their arcs and crossings, and the connectivity taxonomy.

A set partition of a finite set S of positive integers is stored as a tuple of
sorted blocks ordered by their minima.  Its arcs join consecutive elements of
each block; a crossing is a quadruple i<j<k<l with (i,k) and (j,l) arcs.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

Arc = tuple[int, int]

ENUM_CAP = int(os.environ.get("UTCOUNT_MAX_N", "13"))


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SetPartition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise PartitionError("empty block")
            if list(b) != sorted(b):
                raise PartitionError("blocks must be sorted")
            for x in b:
                if not isinstance(x, int) or x < 1:
                    raise PartitionError(f"bad element {x!r}")
                if x in seen:
                    raise PartitionError(f"duplicate element {x}")
                seen.add(x)
        if list(self.blocks) != sorted(self.blocks, key=lambda b: b[0]):
            raise PartitionError("blocks must be ordered by minimum")

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> SetPartition:
        bl = [tuple(sorted(int(x) for x in b)) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise PartitionError("empty block")
        return cls(tuple(sorted(bl, key=lambda b: b[0])))

    @classmethod
    def from_arcs(cls, ground: Iterable[int], arcs: Iterable[Arc]) -> SetPartition:
        """Rebuild the unique partition of ``ground`` with the given arc set."""
        ground = sorted(ground)
        nxt = {}
        has_pred = set()
        for i, j in arcs:
            if i in nxt or j in has_pred:
                raise PartitionError("arcs do not form disjoint chains")
            nxt[i] = j
            has_pred.add(j)
        blocks = []
        for v in ground:
            if v in has_pred:
                continue
            b = [v]
            while b[-1] in nxt:
                b.append(nxt[b[-1]])
            blocks.append(b)
        if sum(map(len, blocks)) != len(ground):
            raise PartitionError("arcs leave the ground set")
        return cls.of(blocks)

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(sorted(x for b in self.blocks for x in b))

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return format_partition(self)

    def is_standard(self) -> bool:
        """True when the ground set is [n]."""
        g = self.ground
        return g == tuple(range(1, len(g) + 1))


def parse(text: str) -> SetPartition:
    """Parse ``"1,3,5/2,4,6"``."""
    text = text.strip()
    if not text:
        raise PartitionError("empty partition string")
    blocks = []
    for chunk in text.split("/"):
        toks = [t.strip() for t in chunk.split(",")]
        if toks == [""]:
            raise PartitionError("empty block")
        try:
            vals = [int(t) for t in toks]
        except ValueError as exc:
            raise PartitionError(f"non-integer token in {chunk!r}") from exc
        if len(set(vals)) != len(vals):
            raise PartitionError(f"duplicate element in block {chunk!r}")
        blocks.append(vals)
    return SetPartition.of(blocks)


def format_partition(lam: SetPartition) -> str:
    return "/".join(",".join(map(str, b)) for b in lam.blocks)


def arc_set(lam: SetPartition) -> tuple[Arc, ...]:
    return tuple(sorted((b[t], b[t + 1]) for b in lam.blocks for t in range(len(b) - 1)))


@dataclass(frozen=True)
class CrossingData:
    crossings4: tuple[tuple[int, int, int, int], ...]
    crossing_pairs: frozenset[Arc]
    d_stat: int

    @property
    def cr(self) -> tuple[Arc, ...]:
        """Crossing pairs in lexicographic order."""
        return tuple(sorted(self.crossing_pairs))


def crossing_data(lam: SetPartition) -> CrossingData:
    arcs = arc_set(lam)
    quads = []
    for i, k in arcs:
        for j, l in arcs:
            if i < j < k < l:
                quads.append((i, j, k, l))
    quads.sort()
    return CrossingData(
        tuple(quads),
        frozenset((i, j) for i, j, _, _ in quads),
        sum(k - i - 1 for i, k in arcs),
    )


def d_stat(lam: SetPartition) -> int:
    return sum(k - i - 1 for i, k in arc_set(lam))


def max_crossings(lam: SetPartition) -> list[tuple[tuple[int, ...], int]]:
    """All maximal k-crossings as (vertex sequence, k), including k = 0."""
    arcs = arc_set(lam)
    right = dict(arcs)
    left = {j: i for i, j in arcs}
    ground = lam.ground
    out = []
    for a, c in arcs:
        for b in ground:
            if not a < b < c:
                continue
            # a 0-crossing (a,b,c) starts a maximal crossing iff no arc (x,b), x<a
            if b in left and left[b] < a:
                continue
            seq = [a, b, c]
            while seq[-2] in right and right[seq[-2]] > seq[-1]:
                seq.append(right[seq[-2]])
            out.append((tuple(seq), len(seq) - 3))
    out.sort()
    return out


def all_crossings_even(lam: SetPartition) -> bool:
    return all(k % 2 == 0 for _, k in max_crossings(lam))


def standardize(lam: SetPartition) -> tuple[SetPartition, int]:
    """Order-preserving relabel onto [k]; also returns d(lam) - d(st(lam))."""
    pos = {v: i + 1 for i, v in enumerate(lam.ground)}
    st = SetPartition.of([[pos[x] for x in b] for b in lam.blocks])
    return st, d_stat(lam) - d_stat(st)


def shift(lam: SetPartition, m: int) -> SetPartition:
    return SetPartition.of([[x + m for x in b] for b in lam.blocks])


def join(gamma: SetPartition, lam: SetPartition) -> SetPartition:
    """Gamma | Lambda: place lam to the right of gamma (gamma over [m])."""
    m = gamma.size
    return SetPartition.of(list(gamma.blocks) + list(shift(lam, m).blocks))


def _require_standard(lam: SetPartition) -> int:
    if not lam.is_standard():
        raise PartitionError(f"expected a partition of [n], got ground {lam.ground}")
    return lam.size


def transpose(lam: SetPartition) -> SetPartition:
    """Apply i -> n+1-i."""
    n = _require_standard(lam)
    return SetPartition.of([[n + 1 - x for x in b] for b in lam.blocks])


def _covered(lam: SetPartition) -> list[bool]:
    """covered[m] for m=1..n-1: some arc (x,y) has x <= m < y."""
    n = lam.size
    reach = [0] * (n + 2)
    for x, y in arc_set(lam):
        reach[x] = max(reach[x], y)
    out = [False] * (n + 1)
    best = 0
    for m in range(1, n + 1):
        best = max(best, reach[m])
        out[m] = best > m
    return out


def split_atomic(lam: SetPartition) -> list[SetPartition]:
    n = _require_standard(lam)
    cov = _covered(lam)
    cuts = [m for m in range(1, n) if not cov[m]] + [n]
    pieces, lo = [], 0
    for m in cuts:
        blocks = [b for b in lam.blocks if lo < b[0] <= m]
        pieces.append(shift(SetPartition.of(blocks), -lo))
        lo = m
    return pieces


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def groups(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted(sorted(g) for g in out.values())


def connected_components(lam: SetPartition) -> list[SetPartition]:
    """Comp(lam): blocks linked whenever an arc of one crosses an arc of the other."""
    block_of = {x: bi for bi, b in enumerate(lam.blocks) for x in b}
    dsu = _DSU(range(len(lam.blocks)))
    for i, j, _, _ in crossing_data(lam).crossings4:
        dsu.union(block_of[i], block_of[j])
    return [SetPartition.of([lam.blocks[bi] for bi in g]) for g in dsu.groups()]


def crossing_components(lam: SetPartition) -> list[SetPartition]:
    """CrComp(lam): one partition per crossing-class of arcs, plus singleton parts."""
    arcs = arc_set(lam)
    dsu = _DSU(arcs)
    for i, j, k, l in crossing_data(lam).crossings4:
        dsu.union((i, k), (j, l))
    comps = []
    for cls in dsu.groups():
        ground = sorted({v for arc in cls for v in arc})
        comps.append(SetPartition.from_arcs(ground, cls))
    comps += [SetPartition(((b[0],),)) for b in lam.blocks if len(b) == 1]
    comps.sort(key=lambda g: (g.ground[0], g.ground))
    return comps


@dataclass(frozen=True)
class Classification:
    atomic: bool
    connected: bool
    crossing_connected: bool
    noncrossing: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(
            atomic=self.atomic,
            connected=self.connected,
            crossing_connected=self.crossing_connected,
            noncrossing=self.noncrossing,
        )


def classify(lam: SetPartition) -> Classification:
    n = _require_standard(lam)
    cov = _covered(lam)
    atomic = all(cov[m] for m in range(1, n))
    connected = len(connected_components(lam)) == 1
    cr = crossing_data(lam)
    arcs = arc_set(lam)
    if arcs:
        n_classes = len([g for g in crossing_components(lam) if len(g.ground) > 1])
        cc = connected and n_classes == 1
    else:
        cc = n == 1
    return Classification(atomic, connected, cc, not cr.crossing_pairs)


def is_disconnected_by_intervals(lam: SetPartition) -> bool:
    """Definition check: some union of parts is a proper nonempty subinterval of [n].

    Exponential in the number of parts; used as an independent oracle.
    """
    n = _require_standard(lam)
    blocks = lam.blocks
    for r in range(1, len(blocks) + 1):
        for sub in combinations(blocks, r):
            elems = sorted(x for b in sub for x in b)
            if len(elems) < n and elems == list(range(elems[0], elems[-1] + 1)):
                return True
    return False


# ---------------------------------------------------------------------------
# enumeration


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All RGS a_1..a_n (a_1 = 0, a_{i+1} <= 1 + max(a_1..a_i)) in lexicographic order."""
    if n < 1:
        raise PartitionError("n must be positive")
    a = [0] * n
    m = [0] * n  # m[i] = max(a[0..i])
    while True:
        yield list(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def from_rgs(rgs: list[int]) -> SetPartition:
    blocks: list[list[int]] = []
    for pos, lab in enumerate(rgs, start=1):
        if lab == len(blocks):
            blocks.append([])
        blocks[lab].append(pos)
    return SetPartition(tuple(tuple(b) for b in blocks))


def enumerate_partitions(n: int, filter: str | None = None, cap: int | None = None) -> Iterator[SetPartition]:
    """Stream the partitions of [n] in RGS order, optionally restricted by a classification flag."""
    cap = ENUM_CAP if cap is None else cap
    if n > cap:
        raise PartitionError(f"n={n} exceeds enumeration cap {cap}")
    if filter not in (None, "atomic", "connected", "crossing_connected", "noncrossing"):
        raise PartitionError(f"unknown filter {filter!r}")
    for rgs in restricted_growth_strings(n):
        lam = from_rgs(rgs)
        if filter is None or getattr(classify(lam), filter):
            yield lam


def count_table_slow(n: int) -> tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]
    for lam in enumerate_partitions(n):
        c = classify(lam)
        counts[0] += 1
        counts[1] += c.atomic
        counts[2] += c.connected
        counts[3] += c.crossing_connected
    return tuple(counts)


def count_table(n: int, cap: int | None = None) -> tuple[int, int, int, int]:
    """(B_n, atomic, connected, crossing-connected) for partitions of [n]."""
    cap = ENUM_CAP if cap is None else cap
    if n < 1 or n > cap:
        raise PartitionError(f"n={n} outside 1..{cap}")
    from ._kernels import classify_counts

    return tuple(int(x) for x in classify_counts(n))


# ---------------------------------------------------------------------------
# outlines (cut points crossed by no arc)


def outline(lam: SetPartition) -> tuple[int, ...]:
    n = _require_standard(lam)
    arcs = arc_set(lam)
    return tuple(v for v in range(1, n + 1) if not any(x < v < y for x, y in arcs))


def restrict(lam: SetPartition, i: int) -> SetPartition:
    """The standardized piece of lam on [a_{i-1}, a_i]."""
    a = outline(lam)
    if not 1 <= i < len(a):
        raise PartitionError(f"piece index {i} out of range 1..{len(a) - 1}")
    lo, hi = a[i - 1], a[i]
    blocks = [[x for x in b if lo <= x <= hi] for b in lam.blocks]
    blocks = [b for b in blocks if b]
    return shift(SetPartition.of(blocks), -(lo - 1))


def involves_ends(lam: SetPartition) -> bool:
    """Some crossing-connected component contains both min and max of the ground set."""
    g = lam.ground
    return any(c.ground[0] == g[0] and c.ground[-1] == g[-1] for c in crossing_components(lam))
