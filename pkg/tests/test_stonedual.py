import pytest

from contactdual import finboole as fb
from contactdual import fincat as fc
from contactdual import fintop as ft
from contactdual import stonedual as sd
from contactdual.errors import NotStone


def test_stone_space_of_b3_is_discrete():
    X = sd.stone_space(fb.FinBoolAlg(3)).space
    assert X.n_points == 3 and X.is_discrete


def test_sierpinski_is_not_stone():
    with pytest.raises(NotStone):
        sd.clopen_algebra(ft.sierpinski())


def test_dual_of_unique_hom_b1_b2():
    (h,) = fb.all_homs(fb.FinBoolAlg(1), fb.FinBoolAlg(2))
    f = sd.dual_of_hom(h)
    assert f.source.n_points == 2 and f.target.n_points == 1
    assert f.table == (0, 0)


def test_dual_of_hom_by_preimages():
    # the point of the dual map at u' is the ultrafilter h^-1(u')
    for m in range(3):
        for n in range(3):
            A, B = fb.FinBoolAlg(m), fb.FinBoolAlg(n)
            for h in fb.all_homs(A, B):
                f = sd.dual_of_hom(h)
                for j, u2 in enumerate(fb.ultrafilters(B)):
                    pre = {a for a in A.elements() if h(a) in u2.carrier}
                    assert pre == fb.ultrafilters(A)[f(j)].carrier


def test_contravariant_composition():
    algs = [fb.FinBoolAlg(k) for k in range(3)]
    for A in algs:
        for B in algs:
            for C in algs:
                for h in fb.all_homs(A, B):
                    for g in fb.all_homs(B, C):
                        lhs = sd.dual_of_hom(fb.compose_homs(g, h))
                        rhs = ft.compose_maps(sd.dual_of_hom(h), sd.dual_of_hom(g))
                        assert lhs == rhs


def test_duality_pack_two_atoms():
    pack = sd.duality_pack(2)
    assert len(pack.A.objects) == 3
    res = fc.check_dual_equivalence(pack.T, pack.S, pack.eta, pack.eps)
    assert res.ok, res.witnesses


def test_eps_b2_is_iso():
    e = sd.eps_component(fb.FinBoolAlg(2))
    assert sorted(e.table) == list(range(4))


def test_eta_on_two_points_is_homeomorphism():
    pack = sd.duality_pack(2)
    X = sd.stone_space(fb.FinBoolAlg(2)).space
    assert ft.is_homeomorphism(pack.eta.components[X])


@pytest.mark.parametrize("n", range(0, 4))
def test_open_maps_are_all_maps(n):
    X = ft.discrete(n)
    for k in range(0, 3):
        assert sd.open_maps_are_all_maps(X, ft.discrete(k))
