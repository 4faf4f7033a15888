import pytest
from hypothesis import given, strategies as st

from contactdual import contact as ct
from contactdual import extender as ex
from contactdual import fedbridge as fb
from contactdual import finboole as bo
from contactdual import fintop as ft
from contactdual import stonedual as sd
from contactdual.errors import NotDiscrete, NotNormal, NotSurjective, PreconditionFailed


def B(n):
    return bo.FinBoolAlg(n)


def rs(n):
    return ct.rho_s(B(n))


def bell(n):
    # Bell triangle
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@pytest.fixture(scope="module")
def topcat():
    return ex.run_extension(ex.topcat())


@pytest.mark.parametrize("n", range(0, 6))
def test_set_partitions_count(n):
    parts = list(fb.set_partitions(n))
    assert len(parts) == len(set(parts)) == bell(n)


def test_bijective_cover_gives_rho_s():
    for n in range(1, 4):
        X = sd.stone_space(B(n)).space
        for f in ft.continuous_maps(X, ft.discrete(n)):
            if f.is_injective:
                assert fb.contact_of_cover(B(n), f) == rs(n)


def test_non_irreducible_cover_rejected():
    X = sd.stone_space(B(2)).space
    with pytest.raises(PreconditionFailed):
        fb.contact_of_cover(B(2), ft.ContMap(X, ft.discrete(1), (0, 0)))


def test_cover_of_rho_s_b3_is_identity():
    cov = fb.cover_of_contact(B(3), rs(3))
    assert cov.pi.table == (0, 1, 2)
    assert cov.pi.target.is_discrete


def test_cover_of_rho_l_is_not_normal():
    with pytest.raises(NotNormal):
        fb.cover_of_contact(B(2), ct.rho_l(B(2)))


@pytest.mark.parametrize("n", range(1, 5))
def test_relation_bijection(n):
    rep = fb.ncrel_irel_check(B(n))
    assert rep.ok
    assert rep.ncrel == [rs(n)]
    assert rep.irel == [ft.equality_relation(n)]


@pytest.mark.parametrize("n", range(1, 5))
def test_transitive_R_kernels_match_partitions(n):
    # a kernel has transitive R exactly when its atom graph is a disjoint union of cliques
    count = sum(ct.r_relation(B(n), C).is_equivalence for C in ct.all_kernels(B(n)))
    assert count == bell(n)


def test_f_alpha_b2_b3_is_dual_map():
    for h in bo.all_homs(B(2), B(3)):
        f = fb.f_alpha(h, rs(2), rs(3))
        assert f.table == sd.dual_of_hom(h).table


def test_fed_D_round_trip():
    for n in range(1, 4):
        x = fb.fed_to_D(B(n), rs(n))
        assert fb.D_to_fed(x) == (B(n), rs(n))
        assert fb.fed_to_D(*fb.D_to_fed(x)) == x


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
def test_morphism_equivalence_over_rho_s(m, n):
    for h in bo.all_homs(B(m), B(n)):
        r = fb.check_morphism_equiv(h, rs(m), rs(n))
        assert r.condition_F and r.relation_preserved


def test_morphism_equivalence_findings_small():
    assert fb.morphism_equiv_findings(2) == []


def test_h_homeo_and_naturality():
    assert fb.h_homeo(B(3), rs(3)).ok
    for h in bo.all_homs(B(2), B(2)):
        assert fb.h_naturality(h, rs(2), rs(2))


def test_factorize_merging_map():
    f = ft.ContMap(ft.discrete(3), ft.discrete(2), (0, 0, 1))
    fac = fb.factorize(f)
    assert fac.q.table == (0, 0, 1)
    assert ft.is_homeomorphism(fac.h)
    with pytest.raises(NotSurjective):
        fb.factorize(ft.ContMap(ft.discrete(1), ft.discrete(2), (0,)))


def test_quotient_functors(topcat):
    qf = fb.quotient_functors(topcat)
    assert all(qf.flags.values()), qf.witnesses
    assert len(qf.D_nqm.objects) == 3


def test_fed_functor(topcat):
    r = fb.fed_functor_check(topcat)
    assert all(r.flags.values()), r.witnesses


def test_finite_shadow_two_points():
    r = fb.finite_shadow(ft.discrete(2))
    assert r.is_ca_iso and r.phi == (0, 1, 2, 3)


def test_finite_shadow_all_small():
    spaces = [ft.discrete(n) for n in range(1, 4)]
    for X in spaces:
        r = fb.finite_shadow(X, spaces)
        assert r.ok, r.morphism_failures[:1]
        assert r.morphisms_checked == sum(Y.n_points ** X.n_points for Y in spaces)


def test_finite_shadow_needs_discrete():
    with pytest.raises(NotDiscrete):
        fb.finite_shadow(ft.sierpinski())


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_fed_morphisms_land_in_D(m, n, data):
    h = data.draw(st.sampled_from(bo.all_homs(B(m), B(n))))
    d = fb.fed_mor_to_D(h, rs(m), rs(n))
    assert d.phi == h
    assert d.source == fb.fed_to_D(B(m), rs(m)) and d.target == fb.fed_to_D(B(n), rs(n))


def test_one_atom_cover_onto_point():
    X = sd.stone_space(B(1)).space
    assert fb.contact_of_cover(B(1), ft.ContMap(X, ft.discrete(1), (0,))) == rs(1)
