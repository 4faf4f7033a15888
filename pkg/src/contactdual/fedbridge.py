"""Bridge between normal contact algebras and irreducible covers of Stone
spaces: contact relations from covers, covers from contact relations, the
morphism correspondence and the factorization of covers through their
natural quotients.

Every finite normal contact algebra is ``rho_s``, so most theorem-scoped
results here are exact but degenerate; each report carries a scope note.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .contact import ContactRelation, all_kernels, is_nca, r_relation, rho_s, sigma_u
from .devries import DVMap, psi_a, psi_a_mor, psi_t, psi_t_mor
from .errors import (
    BoundExceeded,
    ConditionFFailed,
    InternalContradiction,
    NotDiscrete,
    NotNormal,
    NotSurjective,
    NotWellDefined,
    PreconditionFailed,
    ShapeMismatch,
)
from .extender import DMorphism, DObject, ExtensionPack
from .finboole import BoolHom, FinBoolAlg, all_homs, compose_homs, identity_hom, ultrafilters
from .fincat import Functor, NatTrans, functor_difference, full_subcategory, is_law_valid, naturality_failure, validate_functor
from .fintop import (
    ContMap,
    FinTopSpace,
    Quotient,
    compose_maps,
    continuous_maps,
    fibre_relation,
    identity_map,
    is_homeomorphism,
    is_quotient_map,
    map_predicates,
    quotient_space,
)
from .stonedual import clopen_algebra, dual_of_hom, dual_of_map, stone_space

DEGENERATE_NOTE = "finite normal contact algebras are exactly (B_n, rho_s); the check is exact but degenerate"
ABSOLUTE_NOTE = "finite discrete spaces are their own absolutes, so E X = X and pi_X is the identity"
NCREL_BOUND = 4


@dataclass(frozen=True)
class Cover:
    algebra: FinBoolAlg
    pi: ContMap

    def __post_init__(self):
        if self.pi.source != stone_space(self.algebra).space:
            raise ShapeMismatch("a cover must start at the Stone space of its algebra")

    @property
    def flags(self) -> dict:
        m = map_predicates(self.pi)
        return {"irreducible": m.irreducible, "closed": m.closed, "surjective": self.pi.is_surjective}


def _require_nca(C: ContactRelation):
    if not is_nca(C):
        raise NotNormal(f"{C!r} is not a normal contact algebra")


def contact_of_cover(A: FinBoolAlg, pi: ContMap) -> ContactRelation:
    """``a C b`` iff the images of ``s(a)`` and ``s(b)`` meet."""
    cover = Cover(A, pi)
    flags = cover.flags
    missing = [k for k in ("closed", "irreducible") if not flags[k]]
    if missing:
        raise PreconditionFailed(f"cover is not {' and '.join(missing)}", missing)
    n = A.n_atoms
    kernel = tuple(sum(1 << j for j in range(n) if pi(i) == pi(j)) for i in range(n))
    C = ContactRelation(A, kernel)
    s = stone_space(A).s
    us = ultrafilters(A)
    for a in A.elements():
        for b in A.elements():
            direct = bool(pi.image(s[a]) & pi.image(s[b]))
            via_points = any(pi(u.atom) == pi(v.atom) for u in us if a in u for v in us if b in v)
            if not (C.contact(a, b) == direct == via_points):
                raise InternalContradiction("the three descriptions of the cover contact disagree")
    if pi.target.is_hausdorff and not is_nca(C):
        raise InternalContradiction("cover onto a Hausdorff space gave a non-normal contact")
    return C


def cover_of_contact(A: FinBoolAlg, C) -> Cover:
    """Quotient of the Stone space by ``R`` for a normal contact algebra."""
    if not isinstance(C, ContactRelation):
        from .contact import as_contact

        C = as_contact(A, C)
    _require_nca(C)
    R = r_relation(A, C)
    if not R.is_equivalence:
        raise InternalContradiction("R is not an equivalence on a normal contact algebra")
    Q = quotient_space(stone_space(A).space, R.pairs())
    flags = map_predicates(Q.q)
    if not flags.irreducible:
        raise InternalContradiction("the quotient map is not irreducible")
    if not Q.space.is_discrete:
        raise InternalContradiction("the quotient is not Hausdorff")
    return Cover(A, Q.q)


# ------------------------------------------------------ relation bijection


def set_partitions(n: int):
    """Restricted growth strings of length ``n``."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            yield from rec(prefix + [v], max(top, v))

    yield from rec([0], 0)


@dataclass
class RelationBijection:
    ncrel: list
    irel: list
    forward_ok: bool
    backward_ok: bool
    round_trips: bool
    scope_note: str = DEGENERATE_NOTE
    findings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.forward_ok and self.backward_ok and self.round_trips and len(self.ncrel) == len(self.irel)


def ncrel_irel_check(A: FinBoolAlg, bound: int = NCREL_BOUND) -> RelationBijection:
    if A.n_atoms > bound:
        raise BoundExceeded(f"{A.n_atoms} atoms exceeds bound {bound}")
    X = stone_space(A).space
    n = A.n_atoms
    ncrel = [C for C in all_kernels(A) if is_nca(C)]
    irel = []
    all_equiv = []
    for rgs in set_partitions(n):
        R = fibre_relation(rgs)
        all_equiv.append(R)
        if map_predicates(quotient_space(X, R).q).irreducible:
            irel.append(R)

    def f(C):
        return r_relation(A, C).pairs()

    def g(R):
        return contact_of_cover(A, quotient_space(X, R).q)

    forward = all(f(C) in irel for C in ncrel)
    backward = all(g(R) in ncrel for R in irel)
    trips = all(g(f(C)) == C for C in ncrel) and all(f(g(R)) == R for R in irel)
    # exploratory: every contact relation against every equivalence
    findings = []
    transitive = 0
    for C in all_kernels(A):
        RC = r_relation(A, C)
        if RC.is_equivalence:
            transitive += 1
            if RC.pairs() not in all_equiv:
                findings.append(("R is an equivalence not found among partitions", repr(C)))
        elif is_nca(C):
            findings.append(("R not transitive on a normal algebra", repr(C)))
    findings.append(("contact relations with transitive R", transitive, "equivalences", len(all_equiv)))
    return RelationBijection(ncrel, irel, forward, backward, trips, findings=findings)


# ------------------------------------------------------------ morphisms


def fed_to_D(A: FinBoolAlg, C) -> DObject:
    return DObject(A, cover_of_contact(A, C).pi)


def D_to_fed(x: DObject) -> tuple:
    return (x.A, contact_of_cover(x.A, x.p))


def f_alpha(alpha: BoolHom, C: ContactRelation, C2: ContactRelation) -> ContMap:
    """The map between cover targets induced by a morphism ``alpha: (A, C) -> (A', C')``."""
    _require_nca(C)
    _require_nca(C2)
    phi = DVMap(C, C2, alpha.table)
    if not (phi.is_boolean_hom and phi.is_sup_preserving):
        raise ShapeMismatch("alpha must be a sup-preserving Boolean homomorphism")
    if not phi.condition_F:
        raise ConditionFFailed("alpha does not reflect contact")
    p = cover_of_contact(alpha.source, C).pi
    p2 = cover_of_contact(alpha.target, C2).pi
    Ta = dual_of_hom(alpha)
    table = [None] * p2.target.n_points
    for u2 in range(p2.source.n_points):
        x2 = p2(u2)
        val = p(Ta(u2))
        if table[x2] is not None and table[x2] != val:
            raise NotWellDefined("pi . T(alpha) is not constant on a fibre")
        table[x2] = val
    f = ContMap(p2.target, p.target, tuple(table))
    if compose_maps(f, p2) != compose_maps(p, Ta):
        raise InternalContradiction("the defining square does not commute")
    if not map_predicates(f).quasi_open:
        raise InternalContradiction("f_alpha is not quasi-open")
    return f


def fed_mor_to_D(alpha: BoolHom, C: ContactRelation, C2: ContactRelation) -> DMorphism:
    f = f_alpha(alpha, C, C2)
    return DMorphism(alpha, f, fed_to_D(alpha.source, C), fed_to_D(alpha.target, C2))


@dataclass
class MorphismEquiv:
    condition_F: bool
    relation_preserved: bool
    scope_note: Optional[str] = None

    @property
    def agree(self) -> bool:
        return self.condition_F == self.relation_preserved


def _morphism_equiv(psi: BoolHom, C: ContactRelation, C2: ContactRelation) -> MorphismEquiv:
    phi = DVMap(C, C2, psi.table)
    R = r_relation(psi.source, C).matrix
    R2 = r_relation(psi.target, C2).matrix
    Tp = dual_of_hom(psi)
    n2 = psi.target.n_atoms
    rel = all(R[Tp(u)][Tp(v)] for u in range(n2) for v in range(n2) if R2[u][v])
    return MorphismEquiv(phi.condition_F, rel)


def check_morphism_equiv(psi: BoolHom, C: ContactRelation, C2: ContactRelation) -> MorphismEquiv:
    """(F) against preservation of ``R`` by the dual map, for normal algebras."""
    _require_nca(C)
    _require_nca(C2)
    out = _morphism_equiv(psi, C, C2)
    out.scope_note = DEGENERATE_NOTE
    return out


def morphism_equiv_findings(max_atoms: int = 2) -> list:
    """Homomorphism and contact-algebra pairs where the two sides differ."""
    out = []
    algs = [FinBoolAlg(k) for k in range(1, max_atoms + 1)]
    for A in algs:
        for A2 in algs:
            homs = all_homs(A, A2)
            for C in all_kernels(A):
                for C2 in all_kernels(A2):
                    for psi in homs:
                        r = _morphism_equiv(psi, C, C2)
                        if not r.agree:
                            out.append((repr(C), repr(C2), psi.table, r.condition_F, r.relation_preserved))
    return out


# ------------------------------------------------------------ homeomorphism


@dataclass
class HomeoCheck:
    h: ContMap
    bijective: bool
    continuous_inverse: bool
    image_formula: bool
    scope_note: str = DEGENERATE_NOTE

    @property
    def ok(self) -> bool:
        return self.bijective and self.continuous_inverse and self.image_formula


def h_homeo(A: FinBoolAlg, C: ContactRelation) -> HomeoCheck:
    """Class of ``u`` to the cluster ``sigma_u``."""
    _require_nca(C)
    p = cover_of_contact(A, C).pi
    P = psi_a(C)
    table = [None] * p.target.n_points
    for u in ultrafilters(A):
        idx = P.index(sigma_u(A, C, u).carrier)
        x = p(u.atom)
        if table[x] is not None and table[x] != idx:
            raise NotWellDefined("equivalent ultrafilters give different clusters")
        table[x] = idx
    h = ContMap(p.target, P.space, tuple(table))
    bij = h.is_injective and h.is_surjective
    inv_ok = bij and is_homeomorphism(h)
    s = stone_space(A).s
    img = all(h.image(p.image(s[a])) == P.upsilon[a] for a in A.elements())
    return HomeoCheck(h, bij, inv_ok, img)


def h_naturality(alpha: BoolHom, C: ContactRelation, C2: ContactRelation) -> bool:
    """Cluster map of ``alpha`` after ``h'`` equals ``h`` after ``f_alpha``."""
    h = h_homeo(alpha.source, C).h
    h2 = h_homeo(alpha.target, C2).h
    f = f_alpha(alpha, C, C2)
    clus = psi_a_mor(DVMap(C, C2, alpha.table))
    return compose_maps(clus, h2) == compose_maps(h, f)


# --------------------------------------------------------- factorization


@dataclass(frozen=True)
class Factorization:
    relation: frozenset
    quotient: Quotient
    h: ContMap  # from the quotient onto the target

    @property
    def q(self) -> ContMap:
        return self.quotient.q


def factorize(f: ContMap) -> Factorization:
    if not f.is_surjective:
        raise NotSurjective("only surjections factor through their fibre quotient")
    R = fibre_relation(f.table)
    Q = quotient_space(f.source, R)
    table = [None] * Q.space.n_points
    for x in range(f.source.n_points):
        table[Q.q(x)] = f(x)
    h = ContMap(Q.space, f.target, tuple(table))
    if compose_maps(h, Q.q) != f:
        raise InternalContradiction("h . q differs from f")
    if is_homeomorphism(h) != is_quotient_map(f):
        raise InternalContradiction("h is a homeomorphism exactly for quotient maps")
    return Factorization(R, Q, h)


def is_natural_quotient(x: DObject) -> bool:
    return factorize(x.p).q == x.p


@dataclass
class QuotientFunctors:
    D_nqm: object
    F2: Functor
    F2p: Functor
    iso: NatTrans  # Id_D -> F2 F2'
    flags: dict
    witnesses: dict


def quotient_functors(ext: ExtensionPack) -> QuotientFunctors:
    """Inclusion of natural-quotient objects and its retraction onto them."""
    D, C = ext.D, ext.C
    nqm = [x for x in D.objects if is_natural_quotient(x)]
    Dn = full_subcategory(D, nqm, name="D_nqm")
    F2 = Functor(Dn, D, {x: x for x in Dn.objects}, {m: m for m in Dn.morphisms}, name="F2")
    fac = {x: factorize(x.p) for x in D.objects}
    obj = {x: DObject(x.A, fac[x].q) for x in D.objects}
    mor = {}
    for m in D.morphisms:
        src, tgt = m.source, m.target
        hinv = C.inverse(fac[src].h)
        f = C.compose_all(hinv, m.f, fac[tgt].h)
        mor[m] = DMorphism(m.phi, f, obj[src], obj[tgt])
    F2p = Functor(D, Dn, obj, mor, name="F2'")
    flags, wit = {}, {}

    def put(name, witness):
        flags[name] = witness is None
        if witness is not None:
            wit[name] = witness

    put("nqm_nonempty", None if nqm else "no natural-quotient objects")
    put("F2_functor", is_law_valid(validate_functor, F2)[1])
    put("F2p_functor", is_law_valid(validate_functor, F2p)[1])
    put("F2p_F2_identity", functor_difference(F2p.after(F2), Dn.identity_functor()))
    comps = {}
    missing = None
    dmor = set(D.morphisms)
    for x in D.objects:
        m = DMorphism(ext.duality.A.identity(x.A), fac[x].h, x, obj[x])
        if m not in dmor:
            missing = missing or x
        comps[x] = m
    put("iso_components_in_D", missing)
    iso = NatTrans(D.identity_functor(), F2.after(F2p), comps, name="(1,h)")
    if missing is None:
        put("iso_natural", naturality_failure(iso))
        put("iso_components_iso", next((x for x in D.objects if not D.is_iso(comps[x])), None))
    return QuotientFunctors(Dn, F2, F2p, iso, flags, wit)


# ---------------------------------------------------- Fed into D, and back


@dataclass
class FedFunctorCheck:
    flags: dict
    witnesses: dict
    scope_note: str = DEGENERATE_NOTE


def fed_functor_check(ext: ExtensionPack, max_atoms: int = 2) -> FedFunctorCheck:
    """The assignment ``(A, C) -> (A, pi)`` on objects and ``alpha -> (alpha, f_alpha)``
    on morphisms, against the D built from the topological fixture."""
    D = ext.D
    dobjs = set(D.objects)
    dmor = set(D.morphisms)
    # the one-element algebra carries no contact relation, so it is left out
    algs = [FinBoolAlg(k) for k in range(1, max_atoms + 1)]
    flags, wit = {}, {}

    def put(name, witness):
        flags[name] = witness is None
        if witness is not None:
            wit[name] = witness

    nca = {A: rho_s(A) for A in algs}
    objs = {A: fed_to_D(A, nca[A]) for A in algs}
    put("objects_in_D", next((A for A in algs if objs[A] not in dobjs), None))
    put("objects_natural_quotient", next((A for A in algs if not is_natural_quotient(objs[A])), None))
    put("round_trip_fed", next((A for A in algs if D_to_fed(objs[A]) != (A, nca[A])), None))
    nq = [x for x in D.objects if x.A.n_atoms and is_natural_quotient(x)]
    put(
        "round_trip_D",
        next((x for x in nq if fed_to_D(*D_to_fed(x)) != x), None),
    )
    images = {}
    bad = None
    for A in algs:
        for A2 in algs:
            for alpha in all_homs(A, A2):
                m = fed_mor_to_D(alpha, nca[A], nca[A2])
                if m not in dmor:
                    bad = bad or alpha
                images[alpha] = m
    put("morphisms_in_D", bad)
    bad = None
    for A in algs:
        i = identity_hom(A)
        if images[i] != D.identity(objs[A]):
            bad = bad or A
        for A2 in algs:
            for A3 in algs:
                for a1 in all_homs(A, A2):
                    for a2 in all_homs(A2, A3):
                        if images[compose_homs(a2, a1)] != D.compose(images[a2], images[a1]):
                            bad = bad or (a1, a2)
    put("functorial", bad)
    bad = None
    for A in algs:
        for A2 in algs:
            homs = all_homs(A, A2)
            hit = {images[a] for a in homs}
            if len(hit) != len(homs):
                bad = bad or ("not faithful", A, A2)
            if hit != set(D.hom(objs[A], objs[A2])):
                bad = bad or ("not full", A, A2)
    put("full_faithful", bad)
    targets = set(objs.values())
    put(
        "essentially_surjective",
        next((x for x in D.objects if x.A.n_atoms and not any(D.isos(x, y) for y in targets)), None),
    )
    return FedFunctorCheck(flags, wit)


# --------------------------------------------------- finite shadow


@dataclass
class ShadowReport:
    space: FinTopSpace
    phi: tuple  # element of CO(X) -> element of RC(X)
    is_ca_iso: bool
    morphisms_checked: int
    morphism_failures: list
    scope_note: str = ABSOLUTE_NOTE

    @property
    def ok(self) -> bool:
        return self.is_ca_iso and not self.morphism_failures


def _shadow_object(X: FinTopSpace):
    P = clopen_algebra(X)
    A = P.algebra
    t = P.t
    p = ContMap(t.target, X, tuple(t.table.index(u) for u in range(X.n_points)))
    C = contact_of_cover(A, p)
    R, rho = psi_t(X)
    piX = identity_map(X)
    phi = tuple(R.element_of(piX.image(P.sets[a])) for a in A.elements())
    return P, A, C, R, rho, phi


def _absolute_map(f: ContMap) -> ContMap:
    """The unique ``g: EX -> EX'`` with ``pi' . g = f . pi`` (both covers identities)."""
    sols = [
        g
        for g in continuous_maps(f.source, f.target)
        if compose_maps(identity_map(f.target), g) == compose_maps(f, identity_map(f.source))
    ]
    if len(sols) != 1:
        raise InternalContradiction("the lift through the absolutes is not unique")
    return sols[0]


def finite_shadow(X: FinTopSpace, others=None) -> ShadowReport:
    """Compare the contact algebra built from the cover of ``X`` with ``(RC(X), rho_X)``,
    and the two morphism assignments on every map out of ``X``."""
    if not X.is_discrete:
        raise NotDiscrete("the shadow is only computed for discrete spaces")
    P, A, C, R, rho, phi = _shadow_object(X)
    iso = (
        len(set(phi)) == A.size == R.algebra.size
        and all(phi[a & b] == phi[a] & phi[b] and phi[a | b] == phi[a] | phi[b] for a in A.elements() for b in A.elements())
        and all(C.contact(a, b) == rho.contact(phi[a], phi[b]) for a in A.elements() for b in A.elements())
    )
    fails = []
    checked = 0
    for Y in others if others is not None else [X]:
        if not Y.is_discrete:
            raise NotDiscrete("targets must be discrete")
        PY, AY, CY, RY, rhoY, phiY = _shadow_object(Y)
        inv_phiY = {v: k for k, v in enumerate(phiY)}
        for f in continuous_maps(X, Y):
            checked += 1
            Ef = _absolute_map(f)
            St = dual_of_map(Ef).table  # CO(Y) -> CO(X)
            lhs = psi_t_mor(f)
            rhs = tuple(phi[St[inv_phiY[g]]] for g in range(RY.algebra.size))
            if lhs != rhs:
                fails.append(f)
    return ShadowReport(X, phi, iso, checked, fails)
