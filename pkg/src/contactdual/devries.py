"""de Vries morphisms between finite contact algebras and the functors
between finite spaces and contact algebras built from regular closed sets
and clusters."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .contact import ContactRelation, clusters, is_cluster, is_nca, sigma_u
from .errors import (
    InternalContradiction,
    NotComposable,
    NotDVMorphism,
    NotWellDefined,
    ShapeMismatch,
)
from .finboole import hom_failure, preserves_all_suprema, ultrafilter_of, ultrafilters
from .fintop import ContMap, FinTopSpace, is_homeomorphism, rc_algebra, standard_contact


@dataclass(frozen=True)
class DVMap:
    source: ContactRelation
    target: ContactRelation
    table: tuple

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        A, A2 = self.source.algebra, self.target.algebra
        if len(table) != A.size or any(not A2.contains(v) for v in table):
            raise ShapeMismatch(f"table must send the {A.size} elements of {A!r} into {A2!r}")

    def __call__(self, a: int) -> int:
        return self.table[a]

    # flags are properties so they always reflect the table

    @property
    def dv1(self) -> bool:
        return self.table[0] == 0

    @property
    def dv2(self) -> bool:
        t = self.table
        E = self.source.algebra.elements()
        return all(t[a & b] == t[a] & t[b] for a in E for b in E)

    @property
    def dv3(self) -> bool:
        return self.dv3_witness is None

    @property
    def dv3_witness(self) -> Optional[tuple]:
        A, C, C2 = self.source.algebra, self.source, self.target
        t = self.table
        one2 = self.target.algebra.one
        for a in A.elements():
            for b in A.elements():
                if C.ll(a, b) and not C2.ll(t[A.complement(a)] ^ one2, t[b]):
                    return (a, b)
        return None

    @property
    def dv4(self) -> bool:
        return self.table == cuk(self.table, self.source)

    @property
    def is_dv(self) -> bool:
        return self.dv1 and self.dv2 and self.dv3 and self.dv4

    @property
    def is_boolean_hom(self) -> bool:
        return hom_failure(self.source.algebra, self.target.algebra, self.table) is None

    @property
    def is_sup_preserving(self) -> bool:
        return preserves_all_suprema(self.source.algebra, self.target.algebra, self.table)

    @property
    def condition_F(self) -> bool:
        """``phi(a) C' phi(b)`` implies ``a C b``."""
        t, C, C2 = self.table, self.source, self.target
        E = self.source.algebra.elements()
        return all(C.contact(a, b) for a in E for b in E if C2.contact(t[a], t[b]))

    @property
    def condition_F_prime(self) -> bool:
        """``a << b`` implies ``phi(a) << phi(b)``."""
        t, C, C2 = self.table, self.source, self.target
        E = self.source.algebra.elements()
        return all(C2.ll(t[a], t[b]) for a in E for b in E if C.ll(a, b))

    @property
    def is_fed_morphism(self) -> bool:
        return self.is_boolean_hom and self.is_sup_preserving and self.condition_F

    def flags(self) -> dict:
        return {
            "dv1": self.dv1,
            "dv2": self.dv2,
            "dv3": self.dv3,
            "dv4": self.dv4,
            "is_boolean_hom": self.is_boolean_hom,
            "is_sup_preserving": self.is_sup_preserving,
            "condition_F": self.condition_F,
            "condition_F_prime": self.condition_F_prime,
        }


def check_dv(table: Sequence[int], src: ContactRelation, tgt: ContactRelation) -> DVMap:
    phi = DVMap(src, tgt, tuple(table))
    if phi.is_boolean_hom and phi.condition_F != phi.condition_F_prime:
        raise InternalContradiction("(F) and (F') disagree on a Boolean homomorphism")
    return phi


def cuk(psi: Sequence[int], src: ContactRelation) -> tuple:
    """``a -> sup { psi(b) : b << a }``."""
    A = src.algebra
    out = []
    for a in A.elements():
        acc = 0
        for b in A.elements():
            if src.ll(b, a):
                acc |= psi[b]
        out.append(acc)
    return tuple(out)


def diamond(phi2: DVMap, phi1: DVMap) -> DVMap:
    """``(phi2 . phi1)`` followed by the check operator."""
    if phi1.target != phi2.source:
        raise NotComposable("target of the first map is not the source of the second")
    comp = tuple(phi2.table[v] for v in phi1.table)
    return DVMap(phi1.source, phi2.target, cuk(comp, phi1.source))


def plain_composite(phi2: DVMap, phi1: DVMap) -> DVMap:
    if phi1.target != phi2.source:
        raise NotComposable("target of the first map is not the source of the second")
    return DVMap(phi1.source, phi2.target, tuple(phi2.table[v] for v in phi1.table))


def identity_dv(C: ContactRelation) -> DVMap:
    return DVMap(C, C, tuple(C.algebra.elements()))


def fact_dvm_checks(phi: DVMap) -> dict:
    """Consequences (a), (b), (c) of the de Vries axioms."""
    if not phi.is_dv:
        failed = [k for k in ("dv1", "dv2", "dv3", "dv4") if not getattr(phi, k)]
        raise NotDVMorphism(f"fails {', '.join(failed)}")
    A, A2 = phi.source.algebra, phi.target.algebra
    t = phi.table
    E = A.elements()
    return {
        "top": t[A.one] == A2.one,
        "complement": all(A2.leq(t[A.complement(a)], A2.complement(t[a])) for a in E),
        "ll": all(phi.target.ll(t[a], t[b]) for a in E for b in E if phi.source.ll(a, b)),
    }


def meet_preserving_maps(src: ContactRelation, tgt: ContactRelation) -> list[DVMap]:
    """Every map preserving binary meets, as a DVMap candidate.

    For such a map and a target atom ``y`` the set ``{a : y <= phi(a)}`` is
    empty or the principal up-set of some element ``x``; choosing ``None`` or
    ``x`` for every target atom gives each map exactly once, so there are
    ``(1 + 2^m)^n`` of them.
    """
    A, A2 = src.algebra, tgt.algebra
    options = [None] + list(A.elements())
    out = []
    for choice in product(options, repeat=A2.n_atoms):
        table = []
        for a in A.elements():
            img = 0
            for j, x in enumerate(choice):
                if x is not None and x & ~a == 0:
                    img |= 1 << j
            table.append(img)
        out.append(DVMap(src, tgt, tuple(table)))
    return out


def meet_preserving_maps_bruteforce(src: ContactRelation, tgt: ContactRelation) -> list[DVMap]:
    A, A2 = src.algebra, tgt.algebra
    out = []
    for table in product(A2.elements(), repeat=A.size):
        if all(table[a & b] == table[a] & table[b] for a in A.elements() for b in A.elements()):
            out.append(DVMap(src, tgt, table))
    return out


def dv_morphisms(src: ContactRelation, tgt: ContactRelation) -> list[DVMap]:
    """All de Vries morphisms ``src -> tgt`` (they preserve binary meets)."""
    return [phi for phi in meet_preserving_maps(src, tgt) if phi.is_dv]


# ------------------------------------------------------------- spaces side


def psi_t(X: FinTopSpace):
    """Regular closed algebra with the standard contact."""
    return rc_algebra(X), standard_contact(X)


def psi_t_mor(f: ContMap) -> tuple:
    """``G -> cl(f^-1(int G))`` as a table from RC(target) to RC(source)."""
    X, Y = f.source, f.target
    RX, RY = rc_algebra(X), rc_algebra(Y)
    out = []
    for G in RY.rc_sets:
        F = X.closure(f.preimage(Y.interior(G)))
        out.append(RX.element_of(F))
    return tuple(out)


def psi_t_dvmap(f: ContMap) -> DVMap:
    return DVMap(standard_contact(f.target), standard_contact(f.source), psi_t_mor(f))


@dataclass(frozen=True)
class ClusterSpace:
    contact: ContactRelation
    clusters: tuple
    space: FinTopSpace
    upsilon: tuple  # element -> point bit set of clusters containing it

    def index(self, carrier) -> int:
        carrier = frozenset(carrier)
        for i, s in enumerate(self.clusters):
            if s.carrier == carrier:
                return i
        raise KeyError("not a cluster of this algebra")


def _closed_family(n: int, base) -> set:
    """Close ``base`` under pairwise unions and intersections, with the empty set and the whole space."""
    full = (1 << n) - 1
    fam = set(base) | {0, full}
    frontier = list(fam)
    while frontier:
        new = []
        for F in frontier:
            for G in list(fam):
                for H in (F | G, F & G):
                    if H not in fam:
                        fam.add(H)
                        new.append(H)
        frontier = new
    return fam


def psi_a(C: ContactRelation) -> ClusterSpace:
    """Clusters with the closed base ``upsilon(a) = {sigma : a in sigma}``."""
    A = C.algebra
    cls = tuple(clusters(A, C))
    n = len(cls)
    ups = tuple(sum(1 << i for i, s in enumerate(cls) if a in s) for a in A.elements())
    closed = _closed_family(n, ups)
    full = (1 << n) - 1
    opens = frozenset(full & ~F for F in closed)
    X = FinTopSpace(n, opens, cls)
    return ClusterSpace(C, cls, X, ups)


def psi_a_images(phi: DVMap) -> list[frozenset]:
    """Raw images of each target cluster under the general formula."""
    A = phi.source.algebra
    A2 = phi.target.algebra
    C = phi.source
    t = phi.table
    out = []
    for s2 in clusters(A2, phi.target):
        img = frozenset(
            a
            for a in A.elements()
            if all(A2.complement(t[b]) in s2 for b in A.elements() if C.ll(b, A.complement(a)))
        )
        out.append(img)
    return out


def psi_a_mor(phi: DVMap) -> ContMap:
    """Continuous map from the clusters of the target to those of the source."""
    P, P2 = psi_a(phi.source), psi_a(phi.target)
    table = []
    for img in psi_a_images(phi):
        if not is_cluster(phi.source, img):
            raise NotWellDefined(f"image {sorted(img)} is not a cluster")
        table.append(P.index(img))
    return ContMap(P2.space, P.space, tuple(table))


def psi_a_findings(phi: DVMap) -> list:
    """Target clusters whose image under the general formula is not a cluster."""
    bad = []
    for s2, img in zip(clusters(phi.target.algebra, phi.target), psi_a_images(phi)):
        if not is_cluster(phi.source, img):
            bad.append((s2.key(), tuple(sorted(img))))
    return bad


def psi_a_mor_simplified(phi: DVMap) -> ContMap:
    """``sigma_u' -> sigma_(phi^-1 u')`` for Boolean homomorphisms between normal algebras."""
    if not phi.is_boolean_hom:
        raise ShapeMismatch("the simplified formula needs a Boolean homomorphism")
    if not (is_nca(phi.source) and is_nca(phi.target)):
        raise ShapeMismatch("the simplified formula needs normal contact algebras")
    A, A2 = phi.source.algebra, phi.target.algebra
    P, P2 = psi_a(phi.source), psi_a(phi.target)
    table = [None] * len(P2.clusters)
    for u2 in ultrafilters(A2):
        i2 = P2.index(sigma_u(A2, phi.target, u2).carrier)
        u = ultrafilter_of(A, (a for a in A.elements() if phi(a) in u2.carrier))
        table[i2] = P.index(sigma_u(A, phi.source, u).carrier)
    if None in table:
        raise InternalContradiction("some cluster is not of the form sigma_u")
    return ContMap(P2.space, P.space, tuple(table))


@dataclass(frozen=True)
class UpsilonCheck:
    table: tuple  # element of A -> element of RC(cluster space)
    regular_closed: bool
    bijective: bool
    boolean_iso: bool
    preserves_ll: bool
    reflects_ll: bool

    @property
    def is_dv_iso(self) -> bool:
        return self.regular_closed and self.bijective and self.boolean_iso and self.preserves_ll and self.reflects_ll


def upsilon_check(C: ContactRelation) -> UpsilonCheck:
    """Compare ``(A, C)`` with the regular closed algebra of its cluster space."""
    P = psi_a(C)
    RC = rc_algebra(P.space)
    C2 = standard_contact(P.space)
    A = C.algebra
    if not all(F in RC.index for F in P.upsilon):
        return UpsilonCheck((), False, False, False, False, False)
    table = tuple(RC.element_of(F) for F in P.upsilon)
    bij = len(set(table)) == A.size == RC.algebra.size
    iso = bij and hom_failure(A, RC.algebra, table) is None
    E = A.elements()
    pres = all(C2.ll(table[a], table[b]) for a in E for b in E if C.ll(a, b))
    refl = all(C.ll(a, b) for a in E for b in E if C2.ll(table[a], table[b]))
    return UpsilonCheck(table, True, bij, iso, pres, refl)


def t_prime(X: FinTopSpace) -> ContMap:
    """``x -> sigma_x``, the clusters of regular closed sets through ``x``."""
    R = rc_algebra(X)
    C = standard_contact(X)
    P = psi_a(C)
    table = []
    for x in range(X.n_points):
        carrier = frozenset(a for a, F in enumerate(R.rc_sets) if F >> x & 1)
        if not is_cluster(C, carrier):
            raise NotWellDefined(f"the regular closed sets through point {x} do not form a cluster")
        table.append(P.index(carrier))
    return ContMap(X, P.space, tuple(table))


def t_prime_is_homeomorphism(X: FinTopSpace) -> bool:
    return is_homeomorphism(t_prime(X))
