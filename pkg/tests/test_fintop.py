import pytest
from hypothesis import given, settings, strategies as st

from contactdual import fintop as ft
from contactdual.errors import BoundExceeded, NotATopology, NotEquivalence, NotContinuous, PreconditionFailed


def count_topologies_oracle(n):
    """Families of subsets closed under union and intersection, with the empty and full set."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    total = 0
    for mask in range(1 << len(middle)):
        fam = {0, full} | {S for k, S in enumerate(middle) if mask >> k & 1}
        if all(U | V in fam and U & V in fam for U in fam for V in fam):
            total += 1
    return total


def closure_oracle(X, M):
    out = X.full
    for U in X.opens:
        F = X.full & ~U
        if M & ~F == 0:
            out &= F
    return out


def interior_oracle(X, M):
    out = 0
    for U in X.opens:
        if U & ~M == 0:
            out |= U
    return out


def points(*xs):
    m = 0
    for x in xs:
        m |= 1 << x
    return m


A_, B_, C_ = 0, 1, 2


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 4), (3, 29)])
def test_topology_counts_small(n, count):
    assert count_topologies_oracle(n) == count
    assert len(list(ft.enumerate_topologies(n))) == count


def test_topology_count_four_points():
    spaces = list(ft.enumerate_topologies(4))
    assert len(spaces) == 355 == count_topologies_oracle(4)
    assert len({X.opens for X in spaces}) == 355


def test_five_points_needs_sampling():
    with pytest.raises(BoundExceeded):
        list(ft.enumerate_topologies(5))
    sample = list(ft.enumerate_topologies(5, sample=True, samples=20))
    assert sample and len({X.opens for X in sample}) == len(sample)


def test_invalid_topology_rejected():
    with pytest.raises(NotATopology):
        ft.new_space(2, [(), (0,), (1,)])


def test_pinch_closure_interior():
    P3 = ft.pinch()
    ci = ft.cl_int(P3, points(B_))
    assert ci.closure == points(B_) and ci.interior == 0


def test_sierpinski_rc():
    R = ft.rc_algebra(ft.sierpinski())
    assert sorted(R.rc_sets) == [0, 0b11]
    assert R.algebra.n_atoms == 1


def test_pinch_rc():
    R = ft.rc_algebra(ft.pinch())
    assert sorted(R.rc_sets) == sorted([0, points(A_, B_), points(B_, C_), 0b111])
    assert R.algebra.n_atoms == 2


def test_pinch_standard_contact():
    P3 = ft.pinch()
    R = ft.rc_algebra(P3)
    C = ft.standard_contact(P3)
    assert C.contact(R.element_of(points(A_, B_)), R.element_of(points(B_, C_)))


def test_discrete_contact_is_smallest():
    for n in range(1, 4):
        assert ft.standard_contact(ft.discrete(n)).is_smallest


def test_constant_map_to_point():
    P3 = ft.pinch()
    f = ft.ContMap(P3, ft.discrete(1), (0, 0, 0))
    m = ft.map_predicates(f)
    assert m.quasi_open and not m.irreducible


def test_discrete_to_sierpinski_identity_carrier():
    f = ft.ContMap(ft.discrete(2), ft.sierpinski(), (0, 1))
    m = ft.map_predicates(f)
    assert m.continuous and not m.closed


def test_discontinuous_rejected():
    with pytest.raises(NotContinuous):
        ft.ContMap(ft.sierpinski(), ft.discrete(2), (0, 1))


def test_phi_p_indiscrete_to_point():
    p = ft.ContMap(ft.indiscrete(2), ft.discrete(1), (0, 0))
    ph = ft.phi_p(p)
    assert ph.forward.table == (0, 1) and ph.inverse.table == (0, 1)


def test_phi_p_requires_closed_irreducible():
    f = ft.ContMap(ft.discrete(2), ft.discrete(1), (0, 0))
    with pytest.raises(PreconditionFailed):
        ft.phi_p(f)


def test_quotient_glueing_two_points():
    with pytest.raises(NotEquivalence):
        ft.quotient_space(ft.discrete(3), {(0, 1), (1, 0)})
    Q = ft.quotient_space(ft.discrete(3), ft.equality_relation(3) | {(0, 1), (1, 0)})
    assert Q.space.n_points == 2 and Q.space.is_discrete
    assert ft.is_quotient_map(Q.q)


def test_f_sharp_of_identity():
    X = ft.pinch()
    f = ft.identity_map(X)
    for U in X.opens:
        assert ft.f_sharp(f, U) == U


spaces_up_to_3 = [X for n in range(1, 4) for X in ft.enumerate_topologies(n)]
space_st = st.sampled_from(spaces_up_to_3)


@given(space_st, st.integers(0, 7))
def test_closure_interior_match_oracle(X, M):
    M &= X.full
    assert X.closure(M) == closure_oracle(X, M)
    assert X.interior(M) == interior_oracle(X, M)
    assert X.interior(M) == X.full & ~X.closure(X.full & ~M)


@given(space_st)
def test_regular_closed_are_cl_int_fixed(X):
    expect = {F for F in range(X.full + 1) if X.closure(X.interior(F)) == F}
    assert set(X.regular_closed) == expect
    R = ft.rc_algebra(X)
    assert set(R.rc_sets) == expect


@settings(max_examples=60)
@given(space_st, space_st, st.data())
def test_map_predicate_implications(X, Y, data):
    maps = ft.continuous_maps(X, Y)
    f = data.draw(st.sampled_from(maps))
    m = ft.map_predicates(f)
    crit = ft.skeletal_criteria(f)
    if m.quasi_open:
        assert m.skeletal
    assert m.skeletal == crit["dense_preimage"] == crit["image_closure"]
    if m.skeletal:
        assert m.rc_preimage_condition
    if m.closed and m.irreducible:
        assert m.quasi_open


@given(space_st, space_st)
def test_continuous_maps_match_direct_enumeration(X, Y):
    from itertools import product

    def continuous(t):
        pre = lambda V: sum(1 << i for i, y in enumerate(t) if V >> y & 1)
        return all(pre(V) in X.opens for V in Y.opens)

    direct = [t for t in product(range(Y.n_points), repeat=X.n_points) if continuous(t)]
    assert sorted(f.table for f in ft.continuous_maps(X, Y)) == sorted(direct)
