import itertools

import numpy as np
import pytest
from conftest import rgs_partitions
from hypothesis import given, strategies as st

from utcount import gfq
from utcount.gfq import field_make
from utcount.nilalg import (
    AlgebraError,
    Z_LABEL,
    build_crossing,
    build_pattern,
    build_un,
    chain_condition,
    crossing_quotients,
    extension_splits,
    functional_subspaces,
    is_associative,
    is_closed,
    is_ideal_in,
    is_nilpotent,
    is_subalgebra,
    iso_check,
    nilpotency_index,
    pattern_to_partition,
    quasi_monomial,
    quotient,
    un_positions,
)
from utcount.setpartition import arc_set, crossing_data, parse

F2, F3 = field_make(2), field_make(3)


def unit(A, label):
    return A.basis_vector(A.index(label))


def test_un_examples():
    U = build_un(3, F2)
    assert U.dim == 3
    assert U.terms() == [(U.index((1, 2)), U.index((2, 3)), U.index((1, 3)), 1)]
    U2 = build_un(2, F2)
    assert U2.dim == 1 and not U2.table.any()
    assert nilpotency_index(build_un(4, F3)) == 4
    with pytest.raises(AlgebraError):
        build_un(0, F2)


def test_crossing_examples():
    lam = parse("1,3,5/2,4")
    C, Ct = build_crossing(lam, F2), build_crossing(lam, F2, True)
    assert C.labels == ((1, 2), (2, 3))
    assert not C.mul(unit(C, (1, 2)), unit(C, (2, 3))).any()
    assert Ct.labels[-1] == Z_LABEL
    assert np.array_equal(Ct.mul(unit(Ct, (1, 2)), unit(Ct, (2, 3))), unit(Ct, Z_LABEL))
    lam = parse("1,4/2,5/3,6")
    C = build_crossing(lam, F3)
    assert np.array_equal(C.mul(unit(C, (1, 2)), unit(C, (2, 3))), unit(C, (1, 3)))
    # identical structure constants to u_3
    U = build_un(3, F3)
    assert iso_check(C, U, np.eye(3, dtype=np.int64)[[U.index(lab) for lab in C.labels]])
    assert build_crossing(parse("1,2/3,4"), F2).dim == 0
    Z = build_crossing(parse("1/2"), F2, True)
    assert Z.dim == 1 and not Z.table.any()


def test_pattern_examples():
    assert is_closed({(1, 2), (2, 3), (1, 3)})
    assert not is_closed({(1, 2), (2, 3)})
    assert is_closed(set())
    assert build_pattern(3, [], F2).dim == 0
    with pytest.raises(AlgebraError):
        build_pattern(3, [(1, 2), (2, 3)], F2)
    full = build_pattern(3, un_positions(3), F2)
    assert np.array_equal(full.table, build_un(3, F2).table)


def test_pattern_to_partition_examples():
    lam = pattern_to_partition(2, {(1, 2)})
    assert lam == parse("1,3/2,4") and crossing_data(lam).cr == ((1, 2),)
    lam = pattern_to_partition(2, set())
    assert lam == parse("1,4/2,3") and crossing_data(lam).cr == ()
    lam = pattern_to_partition(3, set(un_positions(3)))
    assert lam == parse("1,4/2,5/3,6")
    with pytest.raises(AlgebraError):
        pattern_to_partition(3, {(1, 2), (2, 3)})


def _closed_with_closed_complement(n):
    J = un_positions(n)
    for bits in itertools.product([0, 1], repeat=len(J)):
        P = {ij for ij, b in zip(J, bits) if b}
        if is_closed(P) and is_closed(set(J) - P):
            yield P


def test_pattern_to_partition_realises_every_pattern():
    for n in range(1, 5):
        for P in _closed_with_closed_complement(n):
            assert set(crossing_data(pattern_to_partition(n, P)).cr) == P


def test_functional_subspace_examples():
    U = build_un(4, F2)
    lam = quasi_monomial(parse("1,3/2,4"), 4, F2)
    sub = functional_subspaces(U, lam)
    assert sub.s.shape[0] - sub.l.shape[0] == 1
    U3 = build_un(3, F2)
    lam = np.zeros(3, dtype=np.int64)
    lam[U3.index((1, 3))] = 1
    sub = functional_subspaces(U3, lam)
    span = lambda *labs: gfq.span_rref(F2, np.array([unit(U3, x) for x in labs]), 3)  # noqa: E731
    assert np.array_equal(sub.l, span((1, 3), (2, 3)))
    assert np.array_equal(sub.k, span((2, 3)))
    sub0 = functional_subspaces(U3, np.zeros(3, dtype=np.int64))
    assert sub0.k.shape[0] == sub0.l.shape[0] == sub0.s.shape[0] == 3


def test_quotient_by_everything_is_zero():
    U = build_un(4, F3)
    Q = quotient(U, np.eye(6, dtype=np.int64), np.eye(6, dtype=np.int64))
    assert Q.dim == 0


def test_quotient_rejects_non_ideal():
    U = build_un(3, F2)
    S = np.eye(3, dtype=np.int64)
    I = unit(U, (1, 2))[None, :]
    with pytest.raises(AlgebraError):
        quotient(U, S, I)


@given(rgs_partitions(max_n=6), st.sampled_from([2, 3]), st.data())
def test_functional_subspace_postconditions_and_isomorphisms(lam, q, data):
    F = field_make(q)
    n = lam.size
    arcs = arc_set(lam)
    coeffs = data.draw(st.lists(st.integers(1, q - 1), min_size=len(arcs), max_size=len(arcs)))
    U = build_un(n, F)
    sub = functional_subspaces(U, quasi_monomial(lam, n, F, coeffs))
    assert is_subalgebra(U, sub.s)
    assert is_ideal_in(U, sub.l, sub.s) and is_ideal_in(U, sub.k, sub.s)
    assert sub.l.shape[0] - sub.k.shape[0] in (0, 1)
    assert sub.s.shape[0] - sub.l.shape[0] == len(crossing_data(lam).cr)
    P, E, Mp, Me = crossing_quotients(lam, n, F, coeffs)
    assert iso_check(P, build_crossing(lam, F), Mp)
    if arcs:
        assert iso_check(E, build_crossing(lam, F, True), Me)
    else:
        assert E is None


@given(rgs_partitions(max_n=8))
def test_crossing_algebras_well_formed(lam):
    m = len(crossing_data(lam).cr)
    for ext in (False, True):
        A = build_crossing(lam, F3, ext)
        assert A.dim == m + ext
        assert is_associative(A) and is_nilpotent(A)


@given(rgs_partitions(max_n=8))
def test_split_extension_when_chain_condition_holds(lam):
    if chain_condition(lam):
        assert extension_splits(lam)
    if extension_splits(lam):
        Ct = build_crossing(lam, F2, True)
        assert not Ct.table[:, :, -1].any()


def test_iso_check_rejects_wrong_map():
    lam = parse("1,3,5/2,4")
    C = build_crossing(lam, F3, True)
    assert iso_check(C, C, np.eye(3, dtype=np.int64))
    assert not iso_check(C, C, np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))
    assert not iso_check(C, C, np.zeros((3, 3), dtype=np.int64))


def test_non_prime_field_algebra():
    F4 = field_make(4)
    A = build_crossing(parse("1,4/2,5/3,6"), F4)
    assert is_associative(A) and nilpotency_index(A) == 3
    assert A.labels == ((1, 2), (1, 3), (2, 3))
    x = np.array([2, 3, 0])  # x e12 + (x+1) e13
    y = np.array([0, 1, 2])  # e13 + x e23
    assert A.mul(x, y).tolist() == [0, F4.mul[2, 2], 0]
