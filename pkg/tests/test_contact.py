from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from contactdual import contact as ct
from contactdual import finboole as fb
from contactdual import fintop as ft
from contactdual.errors import DegenerateAlgebra, NotContact


def raw_matrix(C):
    A = C.algebra
    return [[C.contact(a, b) for b in A.elements()] for a in A.elements()]


def oracle_clusters(A, M):
    """Subsets satisfying the three cluster conditions, by scanning every subset."""
    E = list(A.elements())
    out = []
    for mask in range(1, 1 << len(E)):
        S = {a for a in E if mask >> a & 1}
        if not all(M[x][y] for x in S for y in S):
            continue
        if any((x | y) in S and x not in S and y not in S for x in E for y in E):
            continue
        if any(x not in S and all(M[x][y] for y in S) for x in E):
            continue
        out.append(frozenset(S))
    return sorted(out, key=sorted)


def oracle_is_nca(A, M):
    E = list(A.elements())
    one = A.one
    c1 = all(M[a][a] for a in E if a)
    c2 = all(a and b for a in E for b in E if M[a][b])
    c3 = all(M[a][b] == M[b][a] for a in E for b in E)
    c4 = all(M[a][b | c] == (M[a][b] or M[a][c]) for a in E for b in E for c in E)
    c5 = all(M[a][b] or any(not M[a][c] and not M[b][c ^ one] for c in E) for a in E for b in E)
    c6 = all(a == one or any(b and not M[b][a] for b in E) for a in E)
    return c1 and c2 and c3 and c4 and c5 and c6


def test_rho_s_is_normal():
    for n in range(1, 5):
        assert ct.check_axioms(fb.FinBoolAlg(n), ct.rho_s(fb.FinBoolAlg(n))).is_nca


def test_rho_l_fails_c6():
    A = fb.FinBoolAlg(2)
    rep = ct.check_axioms(A, ct.rho_l(A))
    assert rep.is_ca and not rep.c6


def test_pinch_contact_is_not_normal():
    P3 = ft.pinch()
    R = ft.rc_algebra(P3)
    rep = ct.check_axioms(R.algebra, ft.standard_contact(P3))
    assert rep.is_ca and not rep.is_nca


def test_degenerate_algebra_has_no_rho_s():
    with pytest.raises(DegenerateAlgebra):
        ct.rho_s(fb.FinBoolAlg(0))


def test_path_kernel_separates_ends():
    A = fb.FinBoolAlg(3)
    C = ct.kernel_to_contact(A, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)])
    assert not C.contact(0b001, 0b100)
    assert C.contact(0b001, 0b010)
    R = ct.r_relation(A, C)
    assert not R.transitive and not R.is_equivalence


def test_rho_s_r_is_equality():
    for n in range(1, 5):
        R = ct.r_relation(fb.FinBoolAlg(n), ct.rho_s(fb.FinBoolAlg(n)))
        assert R.pairs() == {(i, i) for i in range(n)}


def test_pinch_witness():
    P3 = ft.pinch()
    R = ft.rc_algebra(P3)
    C = ft.standard_contact(P3)
    p, q = R.element_of(0b011), R.element_of(0b110)
    u, v = ct.witness_contact(R.algebra, C, p, q)
    assert p in u and q in v


def test_cluster_counts():
    for n in range(1, 5):
        A = fb.FinBoolAlg(n)
        cls = ct.clusters(A, ct.rho_s(A))
        assert len(cls) == n
        assert [c.carrier for c in cls] == sorted((u.carrier for u in fb.ultrafilters(A)), key=sorted)
    P3 = ft.pinch()
    R = ft.rc_algebra(P3)
    cls = ct.clusters(R.algebra, ft.standard_contact(P3))
    assert [c.carrier for c in cls] == [frozenset({1, 2, 3})]
    B2 = fb.FinBoolAlg(2)
    assert [c.carrier for c in ct.clusters(B2, ct.rho_l(B2))] == [frozenset({1, 2, 3})]


def test_point_clusters_of_pinch():
    P3 = ft.pinch()
    C = ft.standard_contact(P3)
    assert ct.point_cluster(P3, 1) == frozenset({1, 2, 3})
    assert ct.is_cluster(C, ct.point_cluster(P3, 1))
    at_a = ct.point_cluster(P3, 0)
    assert at_a == frozenset({1, 3})
    assert ct.cluster_failure(C, at_a).startswith("CL3")
    assert not P3.is_regular


def test_sigma_u_for_rho_s_is_u():
    A = fb.FinBoolAlg(3)
    for u in fb.ultrafilters(A):
        assert ct.sigma_u(A, ct.rho_s(A), u).carrier == u.carrier


def test_non_contact_relation_rejected():
    A = fb.FinBoolAlg(2)
    M = [[False] * 4 for _ in range(4)]
    M[1][2] = True  # not symmetric, not reflexive
    with pytest.raises(NotContact):
        ct.as_contact(A, M)


@pytest.mark.parametrize("n", range(1, 5))
def test_exactly_one_normal_kernel(n):
    A = fb.FinBoolAlg(n)
    normal = [C for C in ct.all_kernels(A) if ct.is_nca(C)]
    assert normal == [ct.rho_s(A)]
    assert len(ct.all_kernels(A)) == 2 ** (n * (n - 1) // 2)


@pytest.mark.parametrize("n", range(1, 4))
def test_nca_flag_matches_oracle(n):
    A = fb.FinBoolAlg(n)
    for C in ct.all_kernels(A):
        assert ct.is_nca(C) == oracle_is_nca(A, raw_matrix(C))


@pytest.mark.parametrize("n", range(1, 4))
def test_clusters_match_oracle(n):
    A = fb.FinBoolAlg(n)
    for C in ct.all_kernels(A):
        got = [c.carrier for c in ct.clusters(A, C)]
        assert got == oracle_clusters(A, raw_matrix(C))


def test_contact_relations_on_b2_are_kernel_determined():
    # every C1-C4 relation on B2 is the contact of its atom pairs
    A = fb.FinBoolAlg(2)
    nz = [1, 2, 3]
    cells = [(a, b) for a in nz for b in nz]
    found = 0
    for mask in range(1 << len(cells)):
        M = [[False] * 4 for _ in range(4)]
        for k, (a, b) in enumerate(cells):
            if mask >> k & 1:
                M[a][b] = True
        if ct.check_axioms(A, M).is_ca:
            found += 1
            assert raw_matrix(ct.as_contact(A, M)) == M
    assert found == 2


kernels3 = [C for C in ct.all_kernels(fb.FinBoolAlg(3))]


@given(st.sampled_from(kernels3), st.integers(0, 7), st.integers(0, 7))
def test_witness_agrees_with_contact(C, a, b):
    A = C.algebra
    assert (ct.witness_contact(A, C, a, b) is not None) == C.contact(a, b)


@given(st.sampled_from(kernels3), st.integers(0, 7), st.integers(0, 7))
def test_ll_is_contact_of_complement(C, a, b):
    assert C.ll(a, b) == (not C.contact(a, b ^ C.algebra.one))


@given(st.integers(1, 4), st.data())
def test_kernel_round_trip(n, data):
    A = fb.FinBoolAlg(n)
    C = data.draw(st.sampled_from(ct.all_kernels(A)))
    assert ct.contact_to_kernel(C) == C.kernel
    rep = ct.check_axioms(A, C)
    assert rep.is_ca and rep.round_trip


@pytest.mark.parametrize("n", range(1, 5))
def test_normal_clusters_unique_over_ultrafilters(n):
    A = fb.FinBoolAlg(n)
    C = ct.rho_s(A)
    cls = ct.clusters(A, C)
    for u in fb.ultrafilters(A):
        assert sum(u.carrier <= c.carrier for c in cls) == 1
    for s, t in combinations(cls, 2):
        assert not s.carrier <= t.carrier and not t.carrier <= s.carrier
