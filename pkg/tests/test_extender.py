import pytest

from contactdual import extender as ex
from contactdual import fincat as fc
from contactdual.errors import PreconditionFailed


@pytest.fixture(scope="module")
def syncat1():
    return ex.run_extension(ex.extension_fixture("syncat1"))


@pytest.fixture(scope="module")
def topcat():
    return ex.run_extension(ex.extension_fixture("topcat"))


def test_syncat1_D_shape(syncat1):
    D = syncat1.D
    assert {(x.A, x.p) for x in D.objects} == {("B1", "id_B1"), ("B1", "p0")}
    x = ex.DObject("B1", "p0")
    homs = D.hom(x, x)
    assert len(homs) == 2
    assert {m.f for m in homs} == {"id_C0", "e"}
    assert {m.phi for m in homs} == {"id_B1"}


def test_syncat1_all_identities(syncat1):
    bad = {k: syncat1.witnesses.get(k) for k, v in syncat1.flags.items() if not v}
    assert not bad
    assert len(syncat1.flags) >= 30


def test_topcat_all_identities(topcat):
    bad = {k: topcat.witnesses.get(k) for k, v in topcat.flags.items() if not v}
    assert not bad
    assert topcat.flags["Tt_full_faithful"] and topcat.flags["Tt_surjective_on_objects"]


@pytest.mark.parametrize("name", ["syncat1", "topcat"])
def test_eta_tilde_is_literal_identity(name, syncat1, topcat):
    ext = syncat1 if name == "syncat1" else topcat
    C = ext.C
    for c in C.objects:
        assert ext.eta_t.components[c] == C.identity(c)
        assert ext.Tt.ob(ext.St.ob(c)) == c


@pytest.mark.parametrize("name", ["syncat1", "topcat"])
def test_rho_on_J_image_is_identity(name, syncat1, topcat):
    ext = syncat1 if name == "syncat1" else topcat
    for A in ext.duality.A.objects:
        x = ext.J.ob(A)
        assert ext.rho.components[x] == ext.D.identity(x)


def test_J_full_faithful(syncat1, topcat):
    for ext in (syncat1, topcat):
        full, faithful, _ = fc.is_full_and_faithful(ext.J)
        assert full and faithful


def test_syncat2_cannot_be_extended():
    with pytest.raises(PreconditionFailed):
        ex.run_extension(ex.extension_fixture("syncat2"))


@pytest.mark.parametrize("name", ["syncat1", "topcat"])
def test_functorial_round_trip(name):
    fx = ex.extension_fixture(name)
    rt = ex.check_functorial_round_trip(fx.covering)
    assert all(rt.flags.values()), rt.witnesses


def test_mutated_beta_is_caught(topcat):
    B = topcat.core.B
    for x, b in topcat.beta.components.items():
        others = [m for m in B.hom(B.dom[b], B.cod[b]) if m != b]
        if others:
            break
    m = ex.mutate_beta(topcat, x, others[0])
    flags = ex.verify_identities(m)
    assert not flags["beta_natural"] or not flags["beta_iso"]
    assert not flags["id3_pi_beta_eq_Tt_rho"]


def test_topcat_sizes(topcat):
    assert len(topcat.D.objects) == 7
    assert len(topcat.D.morphisms) == 99
