"""Stone duality between finite Boolean algebras and finite discrete spaces."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BoundExceeded, InternalContradiction, NotStone, ShapeMismatch
from .finboole import (
    DEFAULT_ATOM_BOUND,
    BoolHom,
    FinBoolAlg,
    all_homs,
    compose_homs,
    identity_hom,
    make_hom,
    ultrafilter_of,
    ultrafilters,
)
from .fintop import ContMap, FinTopSpace, compose_maps, continuous_maps


@dataclass(frozen=True)
class StonePack:
    algebra: FinBoolAlg
    space: FinTopSpace
    s: tuple  # element -> clopen point set of ``space``


@lru_cache(maxsize=None)
def stone_space(A: FinBoolAlg) -> StonePack:
    us = ultrafilters(A)
    n = len(us)
    opens = frozenset(range(1 << n))
    X = FinTopSpace(n, opens, tuple(us))
    s = []
    for a in A.elements():
        s.append(sum(1 << k for k, u in enumerate(us) if a in u.carrier))
    s = tuple(s)
    # {s(a)} must be a base: every open set is a union of members
    for U in X.opens:
        if U != 0 and sum_union(V for V in s if V & ~U == 0) != U:
            raise InternalContradiction("s_A(A) is not a base")
    make_hom(A, FinBoolAlg(n), s)
    if len(set(s)) != A.size or set(s) != set(X.opens & X.closeds):
        raise InternalContradiction("s_A is not a bijection onto the clopen sets")
    return StonePack(A, X, s)


def sum_union(sets) -> int:
    out = 0
    for V in sets:
        out |= V
    return out


@dataclass(frozen=True)
class ClopenPack:
    space: FinTopSpace
    algebra: FinBoolAlg
    sets: tuple  # element -> clopen point set
    t: ContMap  # x -> u_x, into stone_space(algebra).space


@lru_cache(maxsize=None)
def clopen_algebra(X: FinTopSpace) -> ClopenPack:
    if not X.is_discrete:
        raise NotStone("a finite Stone space must be discrete")
    n = X.n_points
    A = FinBoolAlg(n)
    sets = tuple(A.elements())  # element bits are point bits
    if any(P not in X.opens or P not in X.closeds for P in sets):
        raise InternalContradiction("clopen enumeration is wrong")
    target = stone_space(A).space
    table = []
    for x in range(n):
        ux = frozenset(a for a in A.elements() if sets[a] >> x & 1)
        table.append(ultrafilter_of(A, ux).atom)
    t = ContMap(X, target, tuple(table))
    if not (t.is_injective and t.is_surjective):
        raise InternalContradiction("t_X is not a bijection")
    return ClopenPack(X, A, sets, t)


def dual_of_hom(phi: BoolHom) -> ContMap:
    """``u' -> phi^-1(u')`` from the space of the target to that of the source."""
    A, A2 = phi.source, phi.target
    table = []
    for u2 in ultrafilters(A2):
        pre = frozenset(a for a in A.elements() if phi(a) in u2.carrier)
        table.append(ultrafilter_of(A, pre).atom)
    return ContMap(stone_space(A2).space, stone_space(A).space, tuple(table))


def dual_of_map(f: ContMap) -> BoolHom:
    """``F -> f^-1(F)`` from the clopen algebra of the target to that of the source."""
    PX, PY = clopen_algebra(f.source), clopen_algebra(f.target)
    table = []
    for b in PY.algebra.elements():
        pre = f.preimage(PY.sets[b])
        table.append(PX.sets.index(pre))
    return make_hom(PY.algebra, PX.algebra, table)


# ---------------------------------------------------------- duality pack


@dataclass(frozen=True)
class DualityPack:
    A: object  # FinCategory
    B: object
    T: object  # Functor(op(A), B)
    S: object  # Functor(op(B), A)
    eta: object  # NatTrans Id_B -> T S
    eps: object  # NatTrans Id_A -> S T


def eps_component(A: FinBoolAlg) -> BoolHom:
    """``s_A`` as a homomorphism ``A -> S(T(A))``."""
    P = stone_space(A)
    C = clopen_algebra(P.space)
    return make_hom(A, C.algebra, [C.sets.index(V) for V in P.s])


@lru_cache(maxsize=None)
def duality_pack(max_atoms: int = 2, bound: int = DEFAULT_ATOM_BOUND) -> DualityPack:
    from .fincat import FinCategory, Functor, NatTrans, opposite

    if max_atoms > bound:
        raise BoundExceeded(f"{max_atoms} atoms exceeds bound {bound}")
    algs = [FinBoolAlg(k) for k in range(max_atoms + 1)]
    homs = [h for a in algs for b in algs for h in all_homs(a, b)]
    A = FinCategory.build(
        "BoolFin",
        algs,
        homs,
        dom=lambda h: h.source,
        cod=lambda h: h.target,
        identity=identity_hom,
        compose=compose_homs,
    )
    spaces = [stone_space(a).space for a in algs]
    maps = [f for X in spaces for Y in spaces for f in continuous_maps(X, Y)]
    B = FinCategory.build(
        "StoneFin",
        spaces,
        maps,
        dom=lambda f: f.source,
        cod=lambda f: f.target,
        identity=lambda X: ContMap(X, X, tuple(range(X.n_points))),
        compose=compose_maps,
    )
    T = Functor(opposite(A), B, {a: stone_space(a).space for a in algs}, {h: dual_of_hom(h) for h in homs}, name="T")
    S = Functor(
        opposite(B), A, {X: clopen_algebra(X).algebra for X in spaces}, {f: dual_of_map(f) for f in maps}, name="S"
    )
    TS = T.after(S.op())
    ST = S.after(T.op())
    eta = NatTrans(B.identity_functor(), TS, {X: clopen_algebra(X).t for X in spaces}, name="eta")
    eps = NatTrans(A.identity_functor(), ST, {a: eps_component(a) for a in algs}, name="eps")
    return DualityPack(A, B, T, S, eta, eps)


def open_maps_are_all_maps(X: FinTopSpace, Y: FinTopSpace) -> bool:
    """Between finite discrete spaces every map is continuous and open."""
    if not (X.is_discrete and Y.is_discrete):
        raise ShapeMismatch("both spaces must be discrete")
    maps = continuous_maps(X, Y)
    return len(maps) == Y.n_points ** X.n_points and all(
        all(f.image(U) in Y.opens for U in X.opens) for f in maps
    )
