from itertools import product

import pytest
from hypothesis import given, strategies as st

from contactdual import contact as ct
from contactdual import devries as dv
from contactdual import finboole as fb
from contactdual import fintop as ft
from contactdual.errors import NotComposable, NotDVMorphism


def rs(n):
    return ct.rho_s(fb.FinBoolAlg(n))


def oracle_dv_tables(C, C2):
    """Every table A -> A2 passing the four de Vries conditions, by exhaustive search."""
    A, A2 = C.algebra, C2.algebra
    E = list(A.elements())
    found = []
    for t in product(A2.elements(), repeat=A.size):
        if t[0] != 0:
            continue
        if any(t[a & b] != t[a] & t[b] for a in E for b in E):
            continue
        if any(C.ll(a, b) and not C2.ll(t[a ^ A.one] ^ A2.one, t[b]) for a in E for b in E):
            continue
        check = []
        for a in E:
            acc = 0
            for b in E:
                if C.ll(b, a):
                    acc |= t[b]
            check.append(acc)
        if tuple(check) != t:
            continue
        found.append(t)
    return sorted(found)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 3) for n in range(1, 3)])
def test_dv_morphisms_match_oracle_rho_s(m, n):
    got = sorted(p.table for p in dv.dv_morphisms(rs(m), rs(n)))
    assert got == oracle_dv_tables(rs(m), rs(n))
    assert got == sorted(h.table for h in fb.all_homs(fb.FinBoolAlg(m), fb.FinBoolAlg(n)))


def test_dv_morphisms_match_oracle_all_kernels_b2():
    A = fb.FinBoolAlg(2)
    for C in ct.all_kernels(A):
        for C2 in ct.all_kernels(A):
            assert sorted(p.table for p in dv.dv_morphisms(C, C2)) == oracle_dv_tables(C, C2)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 3) for n in range(1, 3)])
def test_meet_preserving_count(m, n):
    maps = dv.meet_preserving_maps(rs(m), rs(n))
    assert len(maps) == (1 + 2**m) ** n == len({p.table for p in maps})
    assert sorted(p.table for p in maps) == sorted(p.table for p in dv.meet_preserving_maps_bruteforce(rs(m), rs(n)))


def test_homs_satisfy_condition_F():
    for m in range(1, 4):
        for n in range(1, 4):
            for h in fb.all_homs(fb.FinBoolAlg(m), fb.FinBoolAlg(n)):
                phi = dv.check_dv(h.table, rs(m), rs(n))
                assert phi.condition_F and phi.condition_F_prime


def test_identity_into_largest_contact_breaks_dv3():
    B2 = fb.FinBoolAlg(2)
    phi = dv.DVMap(ct.rho_s(B2), ct.rho_l(B2), (0, 1, 2, 3))
    assert not phi.dv3
    assert phi.dv3_witness == (1, 1)


def test_cuk_examples():
    B2 = fb.FinBoolAlg(2)
    ident = (0, 1, 2, 3)
    assert dv.cuk(ident, ct.rho_s(B2)) == ident
    assert dv.cuk(ident, ct.rho_l(B2)) == (0, 0, 0, 3)


def test_fact_checks_reject_non_dv():
    B2 = fb.FinBoolAlg(2)
    with pytest.raises(NotDVMorphism):
        dv.fact_dvm_checks(dv.DVMap(ct.rho_s(B2), ct.rho_l(B2), (0, 1, 2, 3)))


def test_diamond_rejects_mismatch():
    p = dv.identity_dv(rs(1))
    q = dv.identity_dv(rs(2))
    with pytest.raises(NotComposable):
        dv.diamond(q, p)


def test_psi_t_of_discrete_is_power_set_with_rho_s():
    for n in range(1, 4):
        R, C = dv.psi_t(ft.discrete(n))
        assert R.algebra.n_atoms == n and C == rs(n)


def test_psi_t_mor_discrete_is_preimage():
    X, Y = ft.discrete(3), ft.discrete(2)
    for f in ft.continuous_maps(X, Y):
        assert dv.psi_t_mor(f) == tuple(f.preimage(G) for G in range(4))


def test_cluster_space_of_rho_s():
    for n in range(1, 4):
        P = dv.psi_a(rs(n))
        assert P.space.n_points == n and P.space.is_discrete


def test_upsilon_and_t_prime():
    for n in range(1, 4):
        assert dv.upsilon_check(rs(n)).is_dv_iso
        assert dv.t_prime_is_homeomorphism(ft.discrete(n))


dv_pairs = [(m, n) for m in range(1, 3) for n in range(1, 3)]


@given(st.sampled_from(dv_pairs), st.sampled_from(dv_pairs), st.data())
def test_diamond_is_plain_composite_for_homs(p1, p2, data):
    m, n = p1
    k = p2[1]
    f = data.draw(st.sampled_from(dv.dv_morphisms(rs(m), rs(n))))
    g = data.draw(st.sampled_from(dv.dv_morphisms(rs(n), rs(k))))
    d = dv.diamond(g, f)
    assert d == dv.plain_composite(g, f)
    assert d.is_dv
    assert all(dv.fact_dvm_checks(d).values())


@given(st.sampled_from(ct.all_kernels(fb.FinBoolAlg(2))), st.sampled_from(ct.all_kernels(fb.FinBoolAlg(2))), st.data())
def test_diamond_closed_and_unital(C, C2, data):
    ms = dv.dv_morphisms(C, C2)
    phi = data.draw(st.sampled_from(ms))
    assert dv.diamond(phi, dv.identity_dv(C)) == phi
    assert dv.diamond(dv.identity_dv(C2), phi) == phi
    ms2 = dv.dv_morphisms(C2, C)
    psi = data.draw(st.sampled_from(ms2))
    assert dv.diamond(psi, phi).is_dv


@given(st.sampled_from(ct.all_kernels(fb.FinBoolAlg(2))), st.data())
def test_cuk_is_idempotent(C, data):
    t = data.draw(st.sampled_from(dv.meet_preserving_maps(C, C)))
    once = dv.cuk(t.table, C)
    assert dv.cuk(once, C) == once
