import math

import pytest
from conftest import rgs_partitions
from hypothesis import given

from utcount.setpartition import (
    PartitionError,
    SetPartition,
    all_crossings_even,
    arc_set,
    classify,
    connected_components,
    count_table,
    count_table_slow,
    crossing_components,
    crossing_data,
    enumerate_partitions,
    format_partition,
    is_disconnected_by_intervals,
    join,
    max_crossings,
    outline,
    parse,
    restrict,
    split_atomic,
    standardize,
    transpose,
)


def P(s):
    return parse(s)


def test_parse_roundtrip_and_errors():
    lam = P("2,5/1,3")
    assert lam.blocks == ((1, 3), (2, 5))
    assert format_partition(lam) == "1,3/2,5"
    for bad in ["", "1,1", "1,x", "0,2", "1,2/2"]:
        with pytest.raises(PartitionError):
            parse(bad)


def test_crossing_data_examples():
    cd = crossing_data(P("1,3,4/2,5"))
    assert cd.cr == ((1, 2),) and cd.d_stat == 3
    cd = crossing_data(P("1,4/2,5/3,6"))
    assert set(cd.cr) == {(1, 2), (2, 3), (1, 3)} and cd.d_stat == 6
    cd = crossing_data(P("1,2/3,4"))
    assert cd.cr == () and cd.d_stat == 0


def test_crossings4_brute_force():
    for lam in enumerate_partitions(7):
        arcs = set(arc_set(lam))
        brute = sorted((i, j, k, l) for (i, k) in arcs for (j, l) in arcs if i < j < k < l)
        assert sorted(crossing_data(lam).crossings4) == brute


def test_max_crossings_examples():
    assert max_crossings(P("1,3,5/2,4")) == [((1, 2, 3, 4, 5), 2)]
    assert all_crossings_even(P("1,3,5/2,4"))
    assert max_crossings(P("1,3/2,4")) == [((1, 2, 3, 4), 1)]
    assert not all_crossings_even(P("1,3/2,4"))
    assert max_crossings(P("1,2")) == []
    # an arc spanning a vertex is a crossing of length 0
    assert max_crossings(P("1,3/2")) == [((1, 2, 3), 0)]


def _brute_max_crossings(lam):
    arcs = set(arc_set(lam))
    seqs = set()
    verts = lam.ground

    def grow(seq):
        ext = False
        for v in verts:
            if v > seq[-1] and (seq[-2], v) in arcs:
                grow(seq + (v,))
                ext = True
        if not ext:
            seqs.add(seq)

    for a in verts:
        for b in verts:
            for c in verts:
                if a < b < c and (a, c) in arcs:
                    grow((a, b, c))
    # drop sequences that extend to the left
    out = set()
    for s in seqs:
        if any(x < s[0] and (x, s[1]) in arcs for x in verts):
            continue
        if any(s == t[len(t) - len(s):] for t in seqs if len(t) > len(s)):
            continue
        out.add((s, len(s) - 3))
    return sorted(out)


def test_max_crossings_against_exhaustive_search():
    for n in range(1, 7):
        for lam in enumerate_partitions(n):
            assert sorted(max_crossings(lam)) == _brute_max_crossings(lam), lam


def test_standardize_examples():
    st, f = standardize(SetPartition.of([[4, 9], [6, 14], [10]]))
    assert st == P("1,3/2,5/4") and f == 8
    st, f = standardize(SetPartition.of([[2, 4]]))
    assert st == P("1,2") and f == 1
    lam = P("1,4/2,3")
    assert standardize(lam) == (lam, 0)


def test_transpose_examples():
    assert transpose(P("1,2/3")) == P("1/2,3")
    ex = P("1,5,7,9,13/2,6,8,12/3,10/4,11")
    assert transpose(ex) == ex
    for lam in enumerate_partitions(6):
        assert transpose(transpose(lam)) == lam


def test_split_and_components_examples():
    assert split_atomic(P("1,2/3,4")) == [P("1,2"), P("1,2")]
    assert split_atomic(P("1,5/2,3,4")) == [P("1,5/2,3,4")]
    assert split_atomic(P("1/2/3")) == [P("1")] * 3
    assert crossing_components(P("1,5/2,3,4")) == [P("1,5"), SetPartition.of([[2, 3]]), SetPartition.of([[3, 4]])]
    assert crossing_components(P("1,3/2,4,5")) == [P("1,3/2,4"), SetPartition.of([[4, 5]])]
    assert crossing_components(P("1,3,5/2,4")) == [P("1,3,5/2,4")]
    assert crossing_components(P("1/2/3")) == [SetPartition.of([[i]]) for i in (1, 2, 3)]


def test_classify_examples():
    a, b, c = classify(P("1,5/2,3,4")), classify(P("1,3/2,4,5")), classify(P("1,3,5/2,4"))
    assert a.atomic and not a.connected
    assert b.connected and not b.crossing_connected
    assert c.crossing_connected
    assert [lam for lam in enumerate_partitions(5, "crossing_connected")] == [P("1,3,5/2,4")]


def test_outline_and_restrict():
    lam = P("1,3/2,5/4/6,7/8/9/10,13/11,12")
    assert outline(lam) == (1, 5, 6, 7, 8, 9, 10, 13)
    assert restrict(lam, 1) == P("1,3/2,5/4")
    assert restrict(lam, 2) == P("1/2")
    assert restrict(lam, 3) == P("1,2")
    assert restrict(lam, 7) == P("1,4/2,3")
    with pytest.raises(PartitionError):
        restrict(lam, 8)


def test_count_table():
    assert count_table(1) == (1, 1, 1, 1)
    assert count_table(6) == (203, 92, 21, 5)
    for n in range(1, 9):
        assert count_table(n) == count_table_slow(n)


def test_noncrossing_catalan_and_bell():
    for n in range(1, 11):
        nc = sum(1 for _ in enumerate_partitions(n, "noncrossing"))
        assert nc == math.comb(2 * n, n) // (n + 1)
    bell = [count_table(n)[0] for n in range(1, 10)]
    b = [1] + bell
    for n in range(1, 9):
        assert b[n + 1] == sum(math.comb(n, k) * b[k] for k in range(n + 1))


def test_enumeration_cap():
    with pytest.raises(PartitionError):
        next(enumerate_partitions(40))


def test_connected_matches_interval_definition():
    for n in range(1, 8):
        for lam in enumerate_partitions(n):
            assert (len(connected_components(lam)) > 1) == is_disconnected_by_intervals(lam), lam


@given(rgs_partitions(max_n=9))
def test_arc_count_and_disjoint_union(lam):
    n = lam.size
    assert len(arc_set(lam)) == n - len(lam)
    comps = crossing_components(lam)
    arcs = [a for g in comps for a in arc_set(g)]
    crs = [c for g in comps for c in crossing_data(g).cr]
    assert sorted(arcs) == sorted(arc_set(lam)) and len(set(arcs)) == len(arcs)
    assert sorted(crs) == sorted(crossing_data(lam).cr) and len(set(crs)) == len(crs)


@given(rgs_partitions(max_n=9))
def test_classification_chain_and_transpose(lam):
    c = classify(lam)
    assert not c.crossing_connected or c.connected
    assert not c.connected or c.atomic
    a, b = crossing_data(lam), crossing_data(transpose(lam))
    assert len(a.cr) == len(b.cr) and a.d_stat == b.d_stat


@given(rgs_partitions(max_n=9))
def test_split_reconstructs(lam):
    parts = split_atomic(lam)
    acc = parts[0]
    for g in parts[1:]:
        acc = join(acc, g)
    assert acc == lam
    assert all(classify(g).atomic for g in parts)


@given(rgs_partitions(max_n=9))
def test_standardize_shift_nonnegative(lam):
    shifted = SetPartition.of([[2 * x + 1 for x in b] for b in lam.blocks])
    st, f = standardize(shifted)
    assert st == lam
    assert f == crossing_data(shifted).d_stat - crossing_data(lam).d_stat >= 0
    assert len(crossing_data(shifted).cr) == len(crossing_data(lam).cr)
