import itertools

import numpy as np
import pytest
from conftest import rgs_partitions
from hypothesis import given, strategies as st

from utcount import countpoly as cp
from utcount.gfq import encode, enumerate_vectors, field_make
from utcount.nilalg import build_crossing, build_un, quasi_monomial
from utcount.orbitengine import (
    CapExceeded,
    GroupElement,
    action_matrix,
    adjoint_orbits,
    closure_size,
    coadjoint_orbit_size_by_rank,
    coadjoint_orbits,
    count_lambda_e,
    generators,
    lambda_counts,
    min_nonzero_degree,
    orbit_of,
    orbit_summary,
    sided_orbits,
)
from utcount.setpartition import SetPartition, crossing_data, enumerate_partitions, parse

F2, F3 = field_make(2), field_make(3)


def test_generators_and_closure():
    for q in (2, 3, 4):
        U = build_un(2, field_make(q))
        assert len(generators(U)) == field_make(q).k and closure_size(U) == q
    U3 = build_un(3, F2)
    assert len(generators(U3)) == 3 and closure_size(U3) == 8
    Z = build_crossing(parse("1,2/3,4"), F2, True)
    assert len(generators(Z)) == 1 and closure_size(Z) == 2
    for lam in enumerate_partitions(6):
        for F in (F2, F3):
            A = build_crossing(lam, F, True)
            if A.q**A.dim <= 2**12:
                assert closure_size(A) == A.q**A.dim


def test_group_element_inverse():
    U = build_un(4, F3)
    for code in (1, 17, 200, 728):
        g = GroupElement(U, enumerate_vectors(F3, 6)[code])
        assert not (g * g.inverse()).x.any()


def test_coadjoint_action_matches_definition():
    # the row-vector matrix sends lam to X -> lam(g X g^-1), the coadjoint action of g^-1;
    # orbits are the same as for the g-action
    U = build_un(3, F3)
    X = enumerate_vectors(F3, 3)
    for g in generators(U):
        T = action_matrix(g, "coadjoint")
        gi = g.inverse()
        for lam in X[::5]:
            new = (lam @ T) % 3
            for x in X:
                conj = (g * GroupElement(U, x) * gi).x
                assert (new @ x) % 3 == (lam @ conj) % 3


def test_orbit_examples():
    U3 = build_un(3, F2)
    assert adjoint_orbits(U3).orbit_count == 5
    assert coadjoint_orbits(U3)[1] == {0: 4, 1: 1}
    for q in (2, 3, 5):
        U2 = build_un(2, field_make(q))
        s = adjoint_orbits(U2)
        assert s.orbit_count == q and s.histogram == {1: q}
        assert coadjoint_orbits(U2)[1] == {0: q}
    U4 = build_un(4, F2)
    assert adjoint_orbits(U4).orbit_count == sum(cp.assemble_N(4, e)(2) for e in range(3))


def test_sided_orbit_examples():
    U = build_un(4, F2)
    z = sided_orbits(U, np.zeros(6, dtype=np.int64))
    assert (z.left, z.right, z.two_sided, z.both) == (1, 1, 1, 1)
    lam = quasi_monomial(parse("1,4/2/3"), 4, F2)
    s = sided_orbits(U, lam)
    assert (s.left, s.two_sided) == (4, 16)


@pytest.mark.parametrize("q", [2, 3])
def test_sided_orbits_give_fact_identities(q):
    F = field_make(q)
    for n in range(1, 6 if q == 2 else 5):
        U = build_un(n, F)
        for lam in enumerate_partitions(n):
            cd = crossing_data(lam)
            s = sided_orbits(U, quasi_monomial(lam, n, F))
            assert s.both == q ** len(cd.cr)
            # |G lam| = q^d for quasi-monomial lam
            assert s.left == q**cd.d_stat
            assert s.left * s.right == s.two_sided * s.both


def test_orbit_size_matches_rank_formula():
    U = build_un(4, F3)
    X = enumerate_vectors(F3, 6)
    for code in range(0, 729, 37):
        assert orbit_of(U, X[code]).size == coadjoint_orbit_size_by_rank(U, X[code])


def test_count_examples():
    lam = parse("1,3,5/2,4,6")
    assert lambda_counts(lam, 2).counts == {2: 2}
    assert count_lambda_e(lam, 2, 3) == 0
    nc = parse("1,4/2,3/5")
    assert lambda_counts(nc, 3).counts == {crossing_data(nc).d_stat: 1}
    assert min_nonzero_degree(nc, 2) == crossing_data(nc).d_stat
    assert min_nonzero_degree(parse("1,3,5/2,4"), 2) == 2
    assert min_nonzero_degree(parse("1,3/2,4"), 3) == 1
    ex = parse("1,5,7,9,13/2,6,8,12/3,10/4,11")
    got = lambda_counts(ex, 2).counts
    assert got == {15: 24, 16: 58, 17: 16} and sum(got.values()) == 98


def test_standardization_shift_is_applied():
    lam = SetPartition.of([[4, 9], [6, 14], [10]])
    base = lambda_counts(parse("1,3/2,5/4"), 2).counts
    assert lambda_counts(lam, 2).counts == {e + 8: c for e, c in base.items()}


def test_cap_is_enforced():
    with pytest.raises(CapExceeded, match="needs about"):
        orbit_summary(build_un(5, F2), cap=100)


def test_mass_identity_and_even_powers():
    for F in (F2, F3, field_make(4)):
        U = build_un(4 if F.q > 2 else 5, F)
        s, hist = coadjoint_orbits(U)
        assert sum(c * F.q ** (2 * f) for f, c in hist.items()) == F.q**U.dim
        assert s.total_points == F.q**U.dim


def test_non_prime_field_oracle():
    # u_4(4): the assembled polynomials at q = 4
    s, hist = coadjoint_orbits(build_un(4, field_make(4)))
    assert hist == {e: cp.assemble_N(4, e)(4) for e in range(3)}


@given(rgs_partitions(max_n=5), st.data())
def test_count_is_coefficient_independent(lam, data):
    # orbit sizes of s/l-type functionals on u_n(3) do not depend on arc coefficients
    n = lam.size
    arcs = len(quasi_monomial(lam, n, F3).nonzero()[0])
    coeffs = data.draw(st.lists(st.sampled_from([1, 2]), min_size=arcs, max_size=arcs))
    U = build_un(n, F3)
    a = sided_orbits(U, quasi_monomial(lam, n, F3))
    b = sided_orbits(U, quasi_monomial(lam, n, F3, coeffs))
    assert a == b


def test_coefficient_independence_exhaustive_small():
    for n in range(1, 5):
        U = build_un(n, F3)
        for lam in enumerate_partitions(n):
            k = len(quasi_monomial(lam, n, F3).nonzero()[0])
            ref = None
            for co in itertools.product([1, 2], repeat=k):
                v = quasi_monomial(lam, n, F3, list(co))
                s = coadjoint_orbit_size_by_rank(U, v), sided_orbits(U, v)
                ref = ref or s
                assert s == ref


def test_orbit_reps_are_minimal_codes():
    U = build_un(3, F3)
    s = orbit_summary(U, "coadjoint", want_reps=True)
    for r in s.reps:
        orb = orbit_of(U, enumerate_vectors(F3, 3)[r])
        assert orb[0] == r
    assert encode(F3, np.zeros(3, dtype=np.int64)) in s.reps


def _counts_from_pair(plain, ext, lam, q):
    """N_{Lambda,e}(q) from a (C, C~)-like pair, by the same recipe as lambda_counts."""
    kp = coadjoint_orbits(plain)[1]
    ke = coadjoint_orbits(ext)[1]
    cd = crossing_data(lam)
    out = {}
    for f in set(kp) | set(ke):
        diff = ke.get(f, 0) - kp.get(f, 0)
        assert diff % (q - 1) == 0
        if diff:
            out[f - len(cd.cr) + cd.d_stat] = diff // (q - 1)
    return out


def test_counts_from_quotients_are_coefficient_independent():
    from utcount.nilalg import crossing_quotients
    from utcount.setpartition import arc_set

    for n in range(1, 6):
        for lam in enumerate_partitions(n):
            arcs = arc_set(lam)
            if not arcs:
                continue
            want = lambda_counts(lam, 3).counts
            for co in itertools.product([1, 2], repeat=len(arcs)):
                P, E, _, _ = crossing_quotients(lam, n, F3, list(co))
                assert _counts_from_pair(P, E, lam, 3) == want, (lam, co)
