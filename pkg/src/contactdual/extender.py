"""Extension of a dual equivalence along a covering class.

Given ``T: A <-> B: S`` and a covering class ``P`` of ``B`` inside ``C``,
build the category ``D`` of pairs ``(A, p)`` with ``p: TA -> C`` in ``P``,
the dual equivalence ``D <-> C`` and every comparison transformation, and
check the identities relating them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionFailed, RigidityRequired, ShapeMismatch
from .fincat import (
    CoreflectionData,
    CoveringClass,
    CoveringReport,
    FinCategory,
    Functor,
    NatTrans,
    check_couniversal,
    check_covering_class,
    check_dual_equivalence,
    check_semi_adjoint,
    derive_E_pi,
    derive_P_from_pi,
    functor_difference,
    hat_from_pi,
    is_full_and_faithful,
    naturality_failure,
    opposite,
    self_duality,
    sigma_from_pi,
    syncat1,
    syncat2,
    _hat_failure,
)
from .fintop import continuous_maps, equality_relation, quotient_space
from .finboole import FinBoolAlg, cached_hash
from .stonedual import DualityPack, duality_pack, stone_space


@dataclass(frozen=True)
class DObject:
    A: object
    p: object

    def __hash__(self):
        return cached_hash(self, self.A, self.p)

    def __repr__(self):
        return f"({self.A!r}, {self.p!r})"


@dataclass(frozen=True)
class DMorphism:
    phi: object  # A -> A'
    f: object  # C' -> C
    source: DObject
    target: DObject

    def __hash__(self):
        return cached_hash(self, self.phi, self.f, self.source, self.target)

    def __repr__(self):
        return f"({self.phi!r}, {self.f!r})"


@dataclass
class ExtensionPack:
    duality: DualityPack
    covering: CoveringClass
    report: CoveringReport
    core: CoreflectionData
    D: FinCategory
    J: Functor
    F: Functor
    Tt: Functor  # op(D) -> C
    hat: dict
    St: Optional[Functor] = None  # op(C) -> D
    eta_t: Optional[NatTrans] = None
    eps_t: Optional[NatTrans] = None
    beta: Optional[NatTrans] = None
    gamma: Optional[NatTrans] = None
    rho: Optional[NatTrans] = None
    iota_unique: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def C(self) -> FinCategory:
        return self.covering.host

    def put(self, name, witness):
        self.flags[name] = witness is None
        if witness is None:
            self.witnesses.pop(name, None)
        else:
            self.witnesses[name] = witness


def _same_subcategory(B: FinCategory, K: CoveringClass) -> bool:
    KB = K.B
    return (
        set(B.objects) == set(KB.objects)
        and set(B.morphisms) == set(KB.morphisms)
        and B.table == KB.table
        and B.identities == KB.identities
    )


def build_D(pack: DualityPack, K: CoveringClass) -> ExtensionPack:
    dual = check_dual_equivalence(pack.T, pack.S, pack.eta, pack.eps)
    if not dual.ok:
        failed = [k for k, v in dual.flags.items() if not v]
        raise PreconditionFailed(f"not a dual equivalence: {', '.join(failed)}", failed)
    if not _same_subcategory(pack.B, K):
        raise ShapeMismatch("the duality must land in the covering class's subcategory")
    report = check_covering_class(K)
    failed = [k for k in ("P1", "P2", "P3", "P4", "P4'", "P5") if not report.flags[k]]
    if failed:
        raise PreconditionFailed(f"covering class fails {', '.join(failed)}", failed)
    core = derive_E_pi(K, report)
    A, C, T = pack.A, K.host, pack.T
    hat = report.hat
    Ps = [p for p in C.morphisms if p in K.P]

    objects = [DObject(a, p) for a in A.objects for p in Ps if C.dom[p] == T.ob(a)]
    morphisms = []
    for src in objects:
        c = C.cod[src.p]
        for tgt in objects:
            c2 = C.cod[tgt.p]
            for f in C.hom(c2, c):
                h = hat[(tgt.p, f, src.p)]
                for phi in A.hom(src.A, tgt.A):
                    if T(phi) == h:
                        morphisms.append(DMorphism(phi, f, src, tgt))

    def compose(m2: DMorphism, m1: DMorphism) -> DMorphism:
        return DMorphism(A.compose(m2.phi, m1.phi), C.compose(m1.f, m2.f), m1.source, m2.target)

    def identity(x: DObject) -> DMorphism:
        return DMorphism(A.identity(x.A), C.identity(C.cod[x.p]), x, x)

    D = FinCategory.build(
        "D", objects, morphisms, dom=lambda m: m.source, cod=lambda m: m.target, identity=identity, compose=compose
    )
    J_obj = {a: DObject(a, C.identity(T.ob(a))) for a in A.objects}
    J = Functor(
        A,
        D,
        J_obj,
        {phi: DMorphism(phi, T(phi), J_obj[A.dom[phi]], J_obj[A.cod[phi]]) for phi in A.morphisms},
        name="J",
    )
    F = Functor(D, A, {x: x.A for x in objects}, {m: m.phi for m in morphisms}, name="F")
    Tt = Functor(opposite(D), C, {x: C.cod[x.p] for x in objects}, {m: m.f for m in morphisms}, name="T~")
    return ExtensionPack(pack, K, report, core, D, J, F, Tt, hat)


def _beta(ext: ExtensionPack, x: DObject):
    C, pi = ext.C, ext.core.pi
    c = C.cod[x.p]
    return ext.hat[(x.p, C.identity(c), pi[c])]


def build_companions(ext: ExtensionPack) -> ExtensionPack:
    if not ext.report.flags["P4*"]:
        raise RigidityRequired(f"chosen covers are not rigid: {ext.report.witnesses.get('P4*')}")
    pack, C, D = ext.duality, ext.C, ext.D
    A, B, T, S, eta, eps = pack.A, pack.B, pack.T, pack.S, pack.eta, pack.eps
    E, pi = ext.core.E, ext.core.pi
    dmor = set(D.morphisms)

    def dm(phi, f, src, tgt):
        m = DMorphism(phi, f, src, tgt)
        if m not in dmor:
            raise ShapeMismatch(f"{m!r} is not a morphism {src!r} -> {tgt!r} of D")
        return m

    St_obj = {c: DObject(S.ob(E.ob(c)), C.compose(pi[c], B.inverse(eta[E.ob(c)]))) for c in C.objects}
    St = Functor(
        opposite(C),
        D,
        St_obj,
        {f: dm(S(E(f)), f, St_obj[C.cod[f]], St_obj[C.dom[f]]) for f in C.morphisms},
        name="S~",
    )
    eta_t = NatTrans(C.identity_functor(), ext.Tt.after(St.op()), {c: C.identity(c) for c in C.objects}, name="eta~")
    eps_c, beta_c, rho_c = {}, {}, {}
    for x in D.objects:
        c = C.cod[x.p]
        b = _beta(ext, x)
        beta_c[x] = b
        eps_c[x] = dm(A.compose(S(B.inverse(b)), eps[x.A]), C.identity(c), x, St_obj[c])
    eps_t = NatTrans(D.identity_functor(), St.after(ext.Tt.op()), eps_c, name="eps~")
    beta = NatTrans(T.after(ext.F.op()), E.after(ext.Tt), beta_c, name="beta")
    gamma = NatTrans(
        ext.J.after(S),
        St.after(ext.core.I.op()),
        {b: dm(S(pi[b]), eta[b], ext.J.ob(S.ob(b)), St_obj[b]) for b in B.objects},
        name="gamma",
    )
    for x in D.objects:
        c = C.cod[x.p]
        ta = T.ob(x.A)
        target_hat = ext.hat[(C.identity(ta), x.p, x.p)]
        sols = [i for i in A.hom(x.A, x.A) if T(i) == target_hat]
        solved = [i for i in A.hom(x.A, x.A) if C.compose(x.p, T(i)) == x.p]
        ext.iota_unique[x] = len(solved) == 1 and solved == sols
        if len(sols) != 1:
            raise ShapeMismatch(f"no unique iota for {x!r}")
        rho_c[x] = dm(sols[0], x.p, x, ext.J.ob(x.A))
    rho = NatTrans(D.identity_functor(), ext.J.after(ext.F), rho_c, name="rho")
    ext.St, ext.eta_t, ext.eps_t, ext.beta, ext.gamma, ext.rho = St, eta_t, eps_t, beta, gamma, rho
    return ext


def _first(items):
    return next(iter(items), None)


def verify_identities(ext: ExtensionPack) -> dict:
    """Every identity of the extension, componentwise; returns ``ext.flags``."""
    if ext.St is None:
        raise PreconditionFailed("companions not built", ["companions"])
    pack, C, D = ext.duality, ext.C, ext.D
    A, B, T, S, eta, eps = pack.A, pack.B, pack.T, pack.S, pack.eta, pack.eps
    E, pi, I = ext.core.E, ext.core.pi, ext.core.I
    J, F, Tt, St = ext.J, ext.F, ext.Tt, ext.St
    beta, gamma, rho, eps_t, eta_t = ext.beta, ext.gamma, ext.rho, ext.eps_t, ext.eta_t

    # D is a category and J, F, T~ are functors with F J = Id
    from .fincat import is_law_valid, validate_category, validate_functor

    ext.put("D_category", is_law_valid(validate_category, D)[1])
    for G in (J, F, Tt, St):
        ext.put(f"functor_{G.name}", is_law_valid(validate_functor, G)[1])
    ext.put("FJ_identity", functor_difference(F.after(J), A.identity_functor()))
    full, faithful, w = is_full_and_faithful(J)
    ext.put("J_full_faithful", None if full and faithful else w)

    # T~ is a dual equivalence extending T
    full, faithful, w = is_full_and_faithful(Tt)
    ext.put("Tt_full_faithful", None if full and faithful else w)
    hit = {Tt.ob(x) for x in D.objects}
    ext.put("Tt_surjective_on_objects", _first(c for c in C.objects if c not in hit))
    ext.put("beta_natural", naturality_failure(beta))
    ext.put("beta_iso", _first(x for x in D.objects if not B.is_iso(beta[x])))

    # (1)
    ext.put("id1_TtJ_eq_IT", functor_difference(Tt.after(J.op()), I.after(T)))
    ext.put("id1_FSt_eq_SE", functor_difference(F.after(St), S.after(E.op())))
    # (2)
    ext.put("id2_TtSt_identity", functor_difference(Tt.after(St.op()), C.identity_functor()))
    ext.put("id2_eta_identity", _first(c for c in C.objects if eta_t[c] != C.identity(c)))
    ext.put("id2_Tt_eps_identity", _first(x for x in D.objects if Tt(eps_t[x]) != C.identity(Tt.ob(x))))
    ext.put("id2_eps_St_identity", _first(c for c in C.objects if eps_t[St.ob(c)] != D.identity(St.ob(c))))
    dual = check_dual_equivalence(Tt, St, eta_t, eps_t)
    for k, v in dual.flags.items():
        ext.put(f"extended_{k}", dual.witnesses.get(k) if not v else None)
    # (3)
    ext.put(
        "id3_pi_beta_eq_Tt_rho",
        _first(x for x in D.objects if C.compose(pi[Tt.ob(x)], beta[x]) != Tt(rho[x])),
    )
    ext.put(
        "id3_gamma_rho_eq_St_pi",
        _first(c for c in C.objects if D.compose(gamma[E.ob(c)], rho[St.ob(c)]) != St(pi[c])),
    )
    # (4); the second half is stated without proof and is checked here
    ext.put("id4_Tt_gamma_eq_I_eta", _first(b for b in B.objects if Tt(gamma[b]) != eta[b]))
    ext.put(
        "id4_S_beta_F_eps_eq_eps_F",
        _first(x for x in D.objects if A.compose(S(beta[x]), F(eps_t[x])) != eps[x.A]),
    )
    # gamma, rho
    ext.put("gamma_natural", naturality_failure(gamma))
    ext.put("gamma_iso", _first(b for b in B.objects if not D.is_iso(gamma[b])))
    ext.put("rho_natural", naturality_failure(rho))
    ext.put("rho_J_identity", _first(a for a in A.objects if rho[J.ob(a)] != D.identity(J.ob(a))))
    ext.put("rho_corigid", _corigid_failure(ext))
    ext.put("iota_unique", _first(x for x, ok in ext.iota_unique.items() if not ok))
    return ext.flags


def _corigid_failure(ext: ExtensionPack):
    """A non-identity automorphism ``J psi`` of ``JF x`` with ``J psi . rho_x == rho_x``."""
    A, D, J = ext.duality.A, ext.D, ext.J
    for x in D.objects:
        a = x.A
        for psi in A.isos(a, a):
            if psi == A.identity(a):
                continue
            if D.compose(J(psi), ext.rho[x]) == ext.rho[x]:
                return (x, psi)
    return None


@dataclass
class FunctorialCheck:
    flags: dict
    witnesses: dict


def check_functorial_round_trip(K: CoveringClass, report: Optional[CoveringReport] = None) -> FunctorialCheck:
    """Covering class to ``(E, pi)`` and back, plus the coreflectivity criterion."""
    report = report or check_covering_class(K)
    flags, wit = {}, {}

    def put(name, witness):
        flags[name] = witness is None
        if witness is not None:
            wit[name] = witness

    core = derive_E_pi(K, report)
    C = K.host
    put("pi_I_identity", _first(b for b in core.B.objects if core.pi[b] != C.identity(b)))
    P_pi = derive_P_from_pi(core.E, core.pi, core.I)
    put("P_pi_equals_P", None if P_pi == K.P else sorted(map(repr, P_pi ^ K.P)))
    back = CoveringClass(
        C, K.subcat_objects, P_pi, dict(report.chosen), hat_from_pi(core.E, core.pi, core.I, P_pi), K.subcat_name
    )
    rep2 = check_covering_class(back)
    put("P_pi_covering", _first(k for k in ("P1", "P2", "P3", "P4", "P5") if not rep2.flags[k]))
    put("P_pi_hat_valid", _hat_failure(back, back.hat))
    couni, w = check_couniversal(core)
    put("P5star_iff_couniversal", None if couni == report.flags["P5*"] else (couni, report.flags["P5*"], w))
    sigma = sigma_from_pi(core.I, core.E, core.pi)
    semi = check_semi_adjoint(core.I, core.E, core.pi, sigma)
    put("semi_triangular", semi.witnesses.get("triangular") if not semi.triangular else None)
    put("semi_fully", semi.witnesses.get("fully") if not semi.fully else None)
    put("semi_left_adjoint", semi.witnesses.get("left_adjoint") if not semi.left_adjoint else None)
    return FunctorialCheck(flags, wit)


def mutate_beta(ext: ExtensionPack, x: DObject, replacement) -> ExtensionPack:
    """Copy of ``ext`` with one component of ``beta`` replaced (negative gate)."""
    comps = dict(ext.beta.components)
    comps[x] = replacement
    out = ExtensionPack(**{k: getattr(ext, k) for k in ext.__dataclass_fields__})
    out.flags, out.witnesses = {}, {}
    out.beta = NatTrans(ext.beta.source, ext.beta.target, comps, name="beta")
    return out


# ----------------------------------------------------------------- fixtures


@dataclass
class ExtensionFixture:
    name: str
    duality: DualityPack
    covering: CoveringClass


def syncat_fixture(which: int = 1) -> ExtensionFixture:
    fx = syncat1() if which == 1 else syncat2()
    K = fx.covering_class()
    return ExtensionFixture(fx.category.name, self_duality(K.B), K)


def topcat(max_atoms: int = 2) -> ExtensionFixture:
    """Discrete spaces ``X_k`` (the Stone spaces of ``B_k``) and relabelled
    copies ``Q_k`` obtained as quotients by equality; covers are bijections
    out of some ``X_k`` and the chosen cover of ``Q_k`` is its class map."""
    pack = duality_pack(max_atoms)
    xs = [stone_space(FinBoolAlg(k)).space for k in range(max_atoms + 1)]
    quots = {}
    for k in range(1, max_atoms + 1):
        quots[k] = quotient_space(xs[k], equality_relation(k))
    objects = xs + [quots[k].space for k in quots]
    maps = [f for X in objects for Y in objects for f in continuous_maps(X, Y)]
    from .fintop import ContMap, compose_maps

    C = FinCategory.build(
        "TOPCAT",
        objects,
        maps,
        dom=lambda f: f.source,
        cod=lambda f: f.target,
        identity=lambda X: ContMap(X, X, tuple(range(X.n_points))),
        compose=compose_maps,
    )
    xset = set(xs)
    P = frozenset(f for f in maps if f.source in xset and f.is_injective and f.is_surjective)
    chosen = {quots[k].space: quots[k].q for k in quots}
    K = CoveringClass(C, xs, P, chosen, subcat_name=pack.B.name)
    return ExtensionFixture("TOPCAT", pack, K)


def extension_fixture(name: str) -> ExtensionFixture:
    if name == "syncat1":
        return syncat_fixture(1)
    if name == "syncat2":
        return syncat_fixture(2)
    if name == "topcat":
        return topcat()
    raise KeyError(name)


def run_extension(fx: ExtensionFixture) -> ExtensionPack:
    ext = build_D(fx.duality, fx.covering)
    build_companions(ext)
    verify_identities(ext)
    return ext
