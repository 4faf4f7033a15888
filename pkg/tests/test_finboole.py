from itertools import product

import pytest
from hypothesis import given, strategies as st

from contactdual import finboole as fb
from contactdual.errors import BoundExceeded


def brute_ultrafilters(n):
    """Subsets of B_n passing the filter axioms plus maximality, by plain search."""
    size = 1 << n
    one = size - 1
    out = []
    for mask in range(1 << size):
        S = {a for a in range(size) if mask >> a & 1}
        if one not in S or 0 in S:
            continue
        if any(a & b not in S for a in S for b in S):
            continue
        if any(b not in S for a in S for b in range(size) if a & ~b == 0):
            continue
        if any(a not in S and (a ^ one) not in S for a in range(size)):
            continue
        out.append(frozenset(S))
    return sorted(out, key=sorted)


def brute_hom_tables(m, n):
    A, B = 1 << m, 1 << n
    one_a, one_b = A - 1, B - 1
    found = []
    for t in product(range(B), repeat=A):
        if t[0] != 0 or t[one_a] != one_b:
            continue
        if any(t[a | b] != t[a] | t[b] or t[a & b] != t[a] & t[b] for a in range(A) for b in range(A)):
            continue
        if any(t[a ^ one_a] != t[a] ^ one_b for a in range(A)):
            continue
        found.append(t)
    return sorted(found)


def test_zero_atoms_is_one_element_algebra():
    A = fb.new_algebra(0)
    assert A.size == 1 and A.zero == A.one == 0
    assert A.is_degenerate
    assert fb.ultrafilters(A) == []


def test_bound_enforced():
    with pytest.raises(BoundExceeded):
        fb.new_algebra(7)


@pytest.mark.parametrize("n", range(0, 4))
def test_ultrafilters_match_bruteforce(n):
    A = fb.FinBoolAlg(n)
    got = sorted((u.carrier for u in fb.ultrafilters(A)), key=sorted)
    assert got == brute_ultrafilters(n)


def test_b3_has_three_ultrafilters():
    assert len(brute_ultrafilters(3)) == 3
    assert len(fb.ultrafilters(fb.FinBoolAlg(3))) == 3


@pytest.mark.parametrize("m,n", [(m, n) for m in range(3) for n in range(3)])
def test_all_homs_match_bruteforce(m, n):
    got = sorted(h.table for h in fb.all_homs(fb.FinBoolAlg(m), fb.FinBoolAlg(n)))
    assert got == brute_hom_tables(m, n)


def test_hom_count_b2_b2_is_four():
    B2 = fb.FinBoolAlg(2)
    assert len(brute_hom_tables(2, 2)) == 4
    assert len(fb.all_homs(B2, B2)) == 4


def test_collapsing_table_is_not_hom():
    # both atoms to atom 1, extended by joins: 0, x, x, x
    B2 = fb.FinBoolAlg(2)
    chk = fb.check_hom(B2, B2, (0, 1, 1, 1))
    assert not chk.is_hom
    assert chk.point_map is None


def test_hom_point_map_round_trip():
    A, B = fb.FinBoolAlg(2), fb.FinBoolAlg(3)
    for h in fb.all_homs(A, B):
        assert fb.table_from_point_map(A, B, h.point_map) == h.table
        assert fb.check_hom(A, B, h.table).preserves_all_suprema


def test_generated_filter_and_ops():
    A = fb.FinBoolAlg(3)
    ops = fb.filter_ops(A, [0b011])
    assert ops["is_filter"] is False  # not upward closed
    assert ops["generated_filter"] == frozenset({0b011, 0b111})
    gen = fb.generated_filter(A, [0b011])
    assert fb.is_filter(A, gen)
    assert not fb.is_ultrafilter(A, gen)
    assert fb.is_ultrafilter(A, fb.generated_filter(A, [0b001]))


elements3 = st.integers(0, 7)


@given(elements3, elements3, elements3)
def test_boolean_laws_b3(a, b, c):
    A = fb.FinBoolAlg(3)
    assert A.meet(a, A.join(b, c)) == A.join(A.meet(a, b), A.meet(a, c))
    assert A.complement(A.join(a, b)) == A.meet(A.complement(a), A.complement(b))
    assert A.leq(a, b) == (A.meet(a, b) == a)
    assert A.sup([a, b, c]) == a | b | c and A.inf([a, b, c]) == a & b & c


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_hom_composition_is_hom(m, n, k, data):
    A, B, C = fb.FinBoolAlg(m), fb.FinBoolAlg(n), fb.FinBoolAlg(k)
    hs, gs = fb.all_homs(A, B), fb.all_homs(B, C)
    if not hs or not gs:
        return
    h = data.draw(st.sampled_from(hs))
    g = data.draw(st.sampled_from(gs))
    gh = fb.compose_homs(g, h)
    assert fb.hom_failure(A, C, gh.table) is None
    assert all(gh(a) == g(h(a)) for a in A.elements())
