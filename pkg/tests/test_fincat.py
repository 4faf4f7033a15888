import pytest
from hypothesis import given, strategies as st

from contactdual import fincat as fc
from contactdual import stonedual as sd
from contactdual.errors import FixtureSyntaxError, LawViolation, PreconditionFailed


def preorder_category(n, pairs):
    """Thin category of the reflexive transitive closure of ``pairs`` on ``range(n)``."""
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return fc.FinCategory.build(
        "PRE",
        range(n),
        sorted(rel),
        dom=lambda f: f[0],
        cod=lambda f: f[1],
        identity=lambda x: (x, x),
        compose=lambda g, f: (f[0], g[1]),
    )


def test_syncat1_is_valid():
    C = fc.syncat1().category
    assert fc.validate_category(C) is C
    assert set(C.hom("C0", "C0")) == {"id_C0", "e"}


def test_associativity_violation_detected():
    # e.e = 1 forces (e.e).p0 = p0, while e.(e.p0) = e.p0' = p0'
    text = fc.SYNCAT2.replace("compose e.e=e", "compose e.e=id_C0")
    with pytest.raises(LawViolation) as exc:
        fc.validate_category(fc.parse_fixture(text).category)
    assert exc.value.kind == "associativity"


def test_fixture_syntax_errors():
    with pytest.raises(FixtureSyntaxError):
        fc.parse_fixture("object X\nmorphism f X Y\n")
    with pytest.raises(FixtureSyntaxError):
        fc.parse_fixture("object X\nidentity Y 1_Y\n")


def test_fixture_text_round_trip():
    fx = fc.syncat2()
    text = fc.fixture_text(fx.category, fx.subcat_objects, fx.P)
    again = fc.parse_fixture(text, fx.category.name)
    assert again.category == fx.category
    assert again.P == fx.P and tuple(again.subcat_objects) == tuple(fx.subcat_objects)


def test_opposite_is_involution():
    C = fc.syncat2().category
    assert fc.opposite(fc.opposite(C)) == C
    Cop = fc.opposite(C)
    assert Cop.compose("p0", "e") == "p0'"


def test_stone_pack_is_dual_equivalence():
    pack = sd.duality_pack(2)
    res = fc.check_dual_equivalence(pack.T, pack.S, pack.eta, pack.eps)
    assert res.ok
    assert set(res.flags) >= {"eta_iso", "eps_iso", "eta_natural", "eps_natural", "triangle_T", "triangle_S"}


def test_covering_syncat1_all_true():
    rep = fc.check_covering_class(fc.syncat1().covering_class())
    assert all(rep.flags.values()), rep.witnesses


def test_covering_syncat2_p5_fails_with_witness():
    rep = fc.check_covering_class(fc.syncat2().covering_class())
    assert not rep.flags["P5"]
    assert rep.witnesses["P5"] == ("e", "p0", "p0")
    assert all(rep.flags[k] for k in ("P1", "P2", "P3", "P4"))


def test_derive_e_pi_syncat1():
    K = fc.syncat1().covering_class()
    data = fc.derive_E_pi(K)
    assert data.E.ob("C0") == "B1"
    assert data.E("e") == "id_B1"
    assert data.pi.components["C0"] == "p0"
    ok, _ = fc.check_couniversal(data)
    assert ok
    assert fc.derive_P_from_pi(data.E, data.pi, data.I) == K.P


def test_derive_e_pi_needs_p5():
    with pytest.raises(PreconditionFailed):
        fc.derive_E_pi(fc.syncat2().covering_class())


def test_semi_adjoint_syncat1():
    data = fc.derive_E_pi(fc.syncat1().covering_class())
    sigma = fc.sigma_from_pi(data.I, data.E, data.pi)
    chk = fc.check_semi_adjoint(data.I, data.E, data.pi, sigma)
    assert chk.triangular and chk.fully and chk.left_adjoint


def test_non_full_inclusion_is_not_fully():
    I, E, pi = fc.non_full_gate()
    chk = fc.check_semi_adjoint(I, E, pi, fc.sigma_from_pi(I, E, pi))
    assert not chk.fully


def test_self_duality_is_dual_equivalence():
    B = fc.syncat1().covering_class().B
    pack = fc.self_duality(B)
    assert fc.check_dual_equivalence(pack.T, pack.S, pack.eta, pack.eps).ok


relations = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=6)


@given(relations)
def test_preorder_categories_are_valid(pairs):
    C = preorder_category(4, pairs)
    fc.validate_category(C)
    Cop = fc.opposite(C)
    fc.validate_category(Cop)
    assert fc.opposite(Cop) == C
    for f in C.morphisms:
        # in a thin category isomorphisms are exactly the symmetric pairs
        assert C.is_iso(f) == ((f[1], f[0]) in C.morphisms)


@given(relations)
def test_identity_functor_full_faithful(pairs):
    C = preorder_category(4, pairs)
    F = fc.validate_functor(C.identity_functor())
    full, faithful, _ = fc.is_full_and_faithful(F)
    assert full and faithful
    assert fc.functor_difference(F.after(F), F) is None


def test_explicit_hat_missing_triple_fails_p5():
    text = fc.SYNCAT1.replace("hat p0 e p0 = id_B1\n", "")
    fx = fc.parse_fixture(text)
    assert fx.hat is not None
    rep = fc.check_covering_class(fx.covering_class())
    assert not rep.flags["P5"]
    assert rep.witnesses["P5"] == ("missing", "e", "p0", "p0")


def test_explicit_hat_round_trips_through_text():
    fx = fc.syncat1()
    text = fc.fixture_text(fx.category, fx.subcat_objects, fx.P, fx.chosen, fx.hat)
    assert fc.parse_fixture(text).hat == fx.hat
