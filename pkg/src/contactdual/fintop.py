"""Finite topological spaces, regular closed algebras and map predicates.

Point sets are ``int`` bit sets over point positions ``0 .. n_points-1``;
``FinTopSpace.points`` only carries display/identity labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (
    BoundExceeded,
    InternalContradiction,
    NotATopology,
    NotContinuous,
    NotEquivalence,
    NotOpen,
    PreconditionFailed,
    ShapeMismatch,
)
from .finboole import FinBoolAlg, bits, cached_hash, make_hom, BoolHom

EXHAUSTIVE_POINT_BOUND = 4
SAMPLED_POINT_BOUND = 5


@dataclass(frozen=True)
class FinTopSpace:
    n_points: int
    opens: frozenset
    points: Optional[tuple] = None

    def __post_init__(self):
        opens = frozenset(self.opens)
        object.__setattr__(self, "opens", opens)
        if self.points is None:
            object.__setattr__(self, "points", tuple(range(self.n_points)))
        elif len(self.points) != self.n_points:
            raise ShapeMismatch("one label per point required")
        full = (1 << self.n_points) - 1
        for U in opens:
            if U & ~full or U < 0:
                raise NotATopology(f"open set {U:b} is not a subset of the points", (U,))
        ordered = sorted(opens)
        for U, V in combinations(ordered, 2):
            if U | V not in opens:
                raise NotATopology(f"union of {U:b} and {V:b} missing", (U, V))
            if U & V not in opens:
                raise NotATopology(f"intersection of {U:b} and {V:b} missing", (U, V))
        if 0 not in opens:
            raise NotATopology("empty set missing", None)
        if full not in opens:
            raise NotATopology("whole space missing", None)

    def __hash__(self):
        return cached_hash(self, self.n_points, self.opens, self.points)

    @property
    def full(self) -> int:
        return (1 << self.n_points) - 1

    def subsets(self) -> range:
        return range(1 << self.n_points)

    @cached_property
    def closeds(self) -> frozenset:
        return frozenset(self.full ^ U for U in self.opens)

    @cached_property
    def _cl(self) -> tuple:
        full = self.full
        out = []
        for M in self.subsets():
            c = full
            for F in self.closeds:
                if M & ~F == 0:
                    c &= F
            out.append(c)
        return tuple(out)

    @cached_property
    def _int(self) -> tuple:
        out = []
        for M in self.subsets():
            i = 0
            for U in self.opens:
                if U & ~M == 0:
                    i |= U
            out.append(i)
        return tuple(out)

    def closure(self, M: int) -> int:
        return self._cl[M]

    def interior(self, M: int) -> int:
        return self._int[M]

    def is_open(self, M: int) -> bool:
        return M in self.opens

    def is_closed(self, M: int) -> bool:
        return M in self.closeds

    def is_dense(self, M: int) -> bool:
        return self._cl[M] == self.full

    @cached_property
    def regular_closed(self) -> tuple:
        return tuple(F for F in sorted(self.closeds) if self._cl[self._int[F]] == F)

    @property
    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.n_points

    @property
    def is_hausdorff(self) -> bool:
        for x, y in combinations(range(self.n_points), 2):
            if not any(U >> x & 1 and V >> y & 1 and not U & V for U in self.opens for V in self.opens):
                return False
        return True

    @property
    def is_regular(self) -> bool:
        """Points and disjoint closed sets have disjoint open neighbourhoods."""
        for x in range(self.n_points):
            for F in self.closeds:
                if F >> x & 1:
                    continue
                if not any(
                    U >> x & 1 and F & ~V == 0 and not U & V for U in self.opens for V in self.opens
                ):
                    return False
        return True

    def label(self, M: int) -> str:
        return "{" + ",".join(str(self.points[i]) for i in bits(M)) + "}"

    def __repr__(self):
        opens = ", ".join(self.label(U) for U in sorted(self.opens))
        return f"FinTopSpace({self.n_points}, [{opens}])"


def new_space(n_points: int, opens: Iterable, points=None) -> FinTopSpace:
    """Validated space; open sets may be given as bit masks or point collections."""
    masks = set()
    for U in opens:
        if isinstance(U, int):
            masks.add(U)
        else:
            m = 0
            for p in U:
                if not 0 <= p < n_points:
                    raise NotATopology(f"point {p!r} outside the space", (U,))
                m |= 1 << p
            masks.add(m)
    return FinTopSpace(n_points, frozenset(masks), tuple(points) if points is not None else None)


def discrete(n: int, points=None) -> FinTopSpace:
    return FinTopSpace(n, frozenset(range(1 << n)), tuple(points) if points is not None else None)


def indiscrete(n: int) -> FinTopSpace:
    return FinTopSpace(n, frozenset({0, (1 << n) - 1}))


def sierpinski() -> FinTopSpace:
    """Points 0, 1 with {1} the only non-trivial open set."""
    return new_space(2, [(), (1,), (0, 1)])


def pinch() -> FinTopSpace:
    """Points a=0, b=1, c=2 with opens {}, {a}, {c}, {a,c}, X."""
    return new_space(3, [(), (0,), (2,), (0, 2), (0, 1, 2)], points=("a", "b", "c"))


class ClInt(NamedTuple):
    closure: int
    interior: int


def cl_int(X: FinTopSpace, M: int) -> ClInt:
    return ClInt(X.closure(M), X.interior(M))


# ------------------------------------------------------------------ maps


@dataclass(frozen=True)
class ContMap:
    source: FinTopSpace
    target: FinTopSpace
    table: tuple

    def __post_init__(self):
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.source.n_points:
            raise ShapeMismatch("table must assign an image to every point")
        if any(not 0 <= y < self.target.n_points for y in table):
            raise ShapeMismatch("table value outside the target")
        for V in self.target.opens:
            if self.preimage(V) not in self.source.opens:
                raise NotContinuous(f"preimage of open {self.target.label(V)} is not open", V)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __hash__(self):
        return cached_hash(self, self.source, self.target, self.table)

    def image(self, M: int) -> int:
        out = 0
        for i, y in enumerate(self.table):
            if M >> i & 1:
                out |= 1 << y
        return out

    def preimage(self, N: int) -> int:
        out = 0
        for i, y in enumerate(self.table):
            if N >> y & 1:
                out |= 1 << i
        return out

    @property
    def is_surjective(self) -> bool:
        return self.image(self.source.full) == self.target.full

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def __repr__(self):
        return f"ContMap({list(self.table)})"


def compose_maps(g: ContMap, f: ContMap) -> ContMap:
    """``g . f``."""
    if f.target != g.source:
        raise ShapeMismatch("maps are not composable")
    return ContMap(f.source, g.target, tuple(g.table[y] for y in f.table))


def identity_map(X: FinTopSpace) -> ContMap:
    return ContMap(X, X, tuple(range(X.n_points)))


def is_continuous_table(X: FinTopSpace, Y: FinTopSpace, table: Sequence[int]) -> bool:
    for V in Y.opens:
        pre = 0
        for i, y in enumerate(table):
            if V >> y & 1:
                pre |= 1 << i
        if pre not in X.opens:
            return False
    return True


def continuous_maps(X: FinTopSpace, Y: FinTopSpace) -> list[ContMap]:
    return [
        ContMap(X, Y, t)
        for t in product(range(Y.n_points), repeat=X.n_points)
        if is_continuous_table(X, Y, t)
    ]


@dataclass(frozen=True)
class MapPredicates:
    continuous: bool
    open: bool
    closed: bool
    quasi_open: bool
    skeletal: bool
    irreducible: bool
    rc_preimage_condition: bool
    perfect: bool


def _is_quasi_open(f: ContMap) -> bool:
    Y = f.target
    return all(Y.interior(f.image(U)) for U in f.source.opens if U)


def _is_skeletal(f: ContMap) -> bool:
    X, Y = f.source, f.target
    return all(X.interior(f.preimage(Y.closure(V))) & ~X.closure(f.preimage(V)) == 0 for V in Y.opens)


def _is_irreducible(f: ContMap) -> bool:
    X, Y = f.source, f.target
    if not f.is_surjective:
        return False
    return all(f.image(F) != Y.full for F in X.closeds if F != X.full)


def _rc_preimage_condition(f: ContMap) -> bool:
    X, Y = f.source, f.target
    return all(
        X.closure(X.interior(f.preimage(F))) == X.closure(f.preimage(Y.interior(F))) for F in Y.regular_closed
    )


def map_predicates(f: ContMap) -> MapPredicates:
    X, Y = f.source, f.target
    closed = all(f.image(F) in Y.closeds for F in X.closeds)
    return MapPredicates(
        continuous=is_continuous_table(X, Y, f.table),
        open=all(f.image(U) in Y.opens for U in X.opens),
        closed=closed,
        quasi_open=_is_quasi_open(f),
        skeletal=_is_skeletal(f),
        irreducible=_is_irreducible(f),
        rc_preimage_condition=_rc_preimage_condition(f),
        perfect=closed,
    )


def skeletal_criteria(f: ContMap) -> dict:
    """The three alternative descriptions of skeletal maps, evaluated directly.

    ``image_closure``: every non-empty open ``U`` has ``int(cl(f(U)))`` non-empty.
    ``dense_preimage``: ``cl(f^-1(V)) == X`` for every dense open ``V``.
    ``rc_image``: ``cl(f(F))`` is regular closed for every regular closed ``F``.
    """
    X, Y = f.source, f.target
    return {
        "image_closure": all(Y.interior(Y.closure(f.image(U))) for U in X.opens if U),
        "dense_preimage": all(
            X.closure(f.preimage(V)) == X.full for V in Y.opens if Y.closure(V) == Y.full
        ),
        "rc_image": all(Y.closure(f.image(F)) in Y.regular_closed for F in X.regular_closed),
    }


def f_sharp(f: ContMap, U: int) -> int:
    """Points of the target whose whole fibre lies inside the open set ``U``."""
    if U not in f.source.opens:
        raise NotOpen(f"{f.source.label(U)} is not open")
    out = 0
    for y in range(f.target.n_points):
        if f.preimage(1 << y) & ~U == 0:
            out |= 1 << y
    return out


# ------------------------------------------------------ regular closed sets


@dataclass(frozen=True)
class RCAlgebra:
    space: FinTopSpace
    algebra: FinBoolAlg
    rc_sets: tuple  # element -> point bit set
    index: dict = field(compare=False, repr=False)  # point bit set -> element

    def element_of(self, F: int) -> int:
        return self.index[F]


def _verify_rc_laws(X: FinTopSpace, A: FinBoolAlg, rc: tuple):
    full = X.full
    for a in A.elements():
        F = rc[a]
        if X.closure(X.interior(F)) != F:
            raise InternalContradiction(f"{X.label(F)} is not regular closed")
        if rc[A.complement(a)] != X.closure(full & ~F):
            raise InternalContradiction(f"complement of {X.label(F)} disagrees")
        for b in A.elements():
            G = rc[b]
            if rc[a | b] != F | G:
                raise InternalContradiction("join is not union")
            if rc[a & b] != X.closure(X.interior(F & G)):
                raise InternalContradiction("meet is not cl(int(F & G))")
    # arbitrary families; incremental union/intersection over subfamily masks
    k = len(rc)
    uni = [0] * (1 << k)
    uni_int = [0] * (1 << k)
    inter = [full] * (1 << k)
    elem_sup = [0] * (1 << k)
    elem_inf = [A.one] * (1 << k)
    for fam in range(1, 1 << k):
        low = fam & -fam
        i = low.bit_length() - 1
        rest = fam ^ low
        uni[fam] = uni[rest] | rc[i]
        uni_int[fam] = uni_int[rest] | X.interior(rc[i])
        inter[fam] = inter[rest] & rc[i]
        elem_sup[fam] = elem_sup[rest] | i
        elem_inf[fam] = elem_inf[rest] & i
        sup = rc[elem_sup[fam]]
        if not (sup == X.closure(uni[fam]) == X.closure(uni_int[fam]) == X.closure(X.interior(uni[fam]))):
            raise InternalContradiction("sup formula fails")
        if rc[elem_inf[fam]] != X.closure(X.interior(inter[fam])):
            raise InternalContradiction("inf formula fails")


@lru_cache(maxsize=4096)
def rc_algebra(X: FinTopSpace, verify: bool = True) -> RCAlgebra:
    family = X.regular_closed
    atoms = sorted(F for F in family if F and not any(G and G != F and G & ~F == 0 for G in family))
    A = FinBoolAlg(len(atoms))
    rc = []
    for a in A.elements():
        F = 0
        for i in bits(a):
            F |= atoms[i]
        rc.append(F)
    rc = tuple(rc)
    if sorted(rc) != sorted(family) or len(set(rc)) != len(rc):
        raise InternalContradiction("regular closed sets are not the joins of the atoms")
    if verify:
        _verify_rc_laws(X, A, rc)
    return RCAlgebra(X, A, rc, {F: a for a, F in enumerate(rc)})


def standard_contact(X: FinTopSpace):
    """``F rho G`` iff ``F & G`` is non-empty, on ``rc_algebra(X)``."""
    from .contact import ContactRelation

    R = rc_algebra(X)
    A = R.algebra
    atoms = [R.rc_sets[1 << i] for i in range(A.n_atoms)]
    kernel = tuple(
        sum(1 << j for j in range(A.n_atoms) if atoms[i] & atoms[j]) for i in range(A.n_atoms)
    )
    C = ContactRelation(A, kernel)
    for a in A.elements():
        for b in A.elements():
            F, G = R.rc_sets[a], R.rc_sets[b]
            if C.contact(a, b) != bool(F & G):
                raise InternalContradiction("kernel form disagrees with F & G != 0")
            if C.ll(a, b) != (F & ~X.interior(G) == 0):
                raise InternalContradiction("F << G disagrees with F <= int(G)")
    return C


# --------------------------------------------------------------- phi_p


@dataclass(frozen=True)
class PhiP:
    forward: BoolHom
    inverse: BoolHom
    source_rc: RCAlgebra
    target_rc: RCAlgebra


def phi_p(p: ContMap) -> PhiP:
    """``H -> p(H)`` from RC(source) onto RC(target) for closed irreducible ``p``."""
    flags = map_predicates(p)
    missing = [name for name in ("closed", "irreducible") if not getattr(flags, name)]
    if missing:
        raise PreconditionFailed(f"map is not {' and '.join(missing)}", missing)
    RX, RY = rc_algebra(p.source), rc_algebra(p.target)
    fwd = []
    for H in RX.rc_sets:
        img = p.image(H)
        if img not in RY.index:
            raise InternalContradiction(f"image {p.target.label(img)} is not regular closed")
        fwd.append(RY.index[img])
    inv = []
    for K in RY.rc_sets:
        pre = p.source.closure(p.preimage(p.target.interior(K)))
        if pre not in RX.index:
            raise InternalContradiction("cl(p^-1(int K)) is not regular closed")
        inv.append(RX.index[pre])
    f_hom = make_hom(RX.algebra, RY.algebra, fwd)
    i_hom = make_hom(RY.algebra, RX.algebra, inv)
    for a in RX.algebra.elements():
        if inv[fwd[a]] != a:
            raise InternalContradiction("inverse formula is not a left inverse")
    for b in RY.algebra.elements():
        if fwd[inv[b]] != b:
            raise InternalContradiction("inverse formula is not a right inverse")
    return PhiP(f_hom, i_hom, RX, RY)


# ------------------------------------------------------------- quotients


class Quotient(NamedTuple):
    space: FinTopSpace
    q: ContMap


def _as_relation(n: int, R) -> list[list[bool]]:
    rel = [[False] * n for _ in range(n)]
    for i, j in R:
        if not (0 <= i < n and 0 <= j < n):
            raise NotEquivalence(f"pair {(i, j)} outside the points")
        rel[i][j] = True
    return rel


def check_equivalence(n: int, R) -> list[list[bool]]:
    rel = _as_relation(n, R)
    for i in range(n):
        if not rel[i][i]:
            raise NotEquivalence(f"not reflexive at {i}")
        for j in range(n):
            if rel[i][j] and not rel[j][i]:
                raise NotEquivalence(f"not symmetric at {(i, j)}")
            for k in range(n):
                if rel[i][j] and rel[j][k] and not rel[i][k]:
                    raise NotEquivalence(f"not transitive at {(i, j, k)}")
    return rel


def equality_relation(n: int) -> frozenset:
    return frozenset((i, i) for i in range(n))


def fibre_relation(table: Sequence[int]) -> frozenset:
    n = len(table)
    return frozenset((i, j) for i in range(n) for j in range(n) if table[i] == table[j])


def classes_of(n: int, R) -> list[int]:
    """Equivalence classes as bit sets, ordered by their least member."""
    rel = check_equivalence(n, R)
    out = []
    seen = 0
    for i in range(n):
        if seen >> i & 1:
            continue
        cls = sum(1 << j for j in range(n) if rel[i][j])
        out.append(cls)
        seen |= cls
    return out


def quotient_space(X: FinTopSpace, R) -> Quotient:
    classes = classes_of(X.n_points, R)
    table = [0] * X.n_points
    for c, cls in enumerate(classes):
        for i in bits(cls):
            table[i] = c
    m = len(classes)
    opens = set()
    for V in range(1 << m):
        pre = 0
        for c in bits(V):
            pre |= classes[c]
        if pre in X.opens:
            opens.add(V)
    labels = tuple(frozenset(X.points[i] for i in bits(cls)) for cls in classes)
    Q = FinTopSpace(m, frozenset(opens), labels)
    q = ContMap(X, Q, tuple(table))
    if not is_quotient_map(q):
        raise InternalContradiction("class map is not a quotient map")
    return Quotient(Q, q)


def is_quotient_map(f: ContMap) -> bool:
    """Surjective, and a set is open exactly when its preimage is."""
    if not f.is_surjective:
        return False
    Y = f.target
    return all((V in Y.opens) == (f.preimage(V) in f.source.opens) for V in Y.subsets())


def is_homeomorphism(f: ContMap) -> bool:
    if not (f.is_injective and f.is_surjective):
        return False
    return all(f.image(U) in f.target.opens for U in f.source.opens)


# ----------------------------------------------------------- enumeration


def _preorder_topology(n: int, up: list[int]) -> FinTopSpace:
    """Open sets = up-sets of the preorder whose up-closures are ``up``."""
    opens = frozenset(U for U in range(1 << n) if all(up[x] & ~U == 0 for x in bits(U)))
    return FinTopSpace(n, opens)


def _transitive(n: int, up: list[int]) -> bool:
    return all(up[y] & ~up[x] == 0 for x in range(n) for y in bits(up[x]))


def enumerate_topologies(
    n_points: int, sample: bool = False, samples: int = 200, seed: int = 0
) -> Iterator[FinTopSpace]:
    """Every labeled topology on ``n_points`` points, each exactly once.

    Five points are only reachable with ``sample=True``; the sample draws
    random relations, closes them transitively, and yields distinct spaces.
    """
    if n_points < 0:
        raise ValueError("n_points must be non-negative")
    if n_points > SAMPLED_POINT_BOUND or (n_points > EXHAUSTIVE_POINT_BOUND and not sample):
        raise BoundExceeded(f"{n_points} points needs sampling or exceeds the bound")
    n = n_points
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    if not sample:
        for chosen in range(1 << len(pairs)):
            up = [1 << x for x in range(n)]
            for k, (x, y) in enumerate(pairs):
                if chosen >> k & 1:
                    up[x] |= 1 << y
            if _transitive(n, up):
                yield _preorder_topology(n, up)
        return
    rng = random.Random(seed)
    seen = set()
    attempts = 0
    while len(seen) < samples and attempts < samples * 50:
        attempts += 1
        up = [1 << x for x in range(n)]
        for x, y in pairs:
            if rng.random() < 0.3:
                up[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for x in range(n):
                closure = up[x]
                for y in bits(up[x]):
                    closure |= up[y]
                if closure != up[x]:
                    up[x] = closure
                    changed = True
        X = _preorder_topology(n, up)
        if X not in seen:
            seen.add(X)
            yield X


def canonical_form(X: FinTopSpace) -> tuple:
    """Lexicographically least relabeled open-set list; equal iff homeomorphic."""
    n = X.n_points
    best = None
    for perm in permutations(range(n)):
        relabeled = sorted(sum(1 << perm[i] for i in bits(U)) for U in X.opens)
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return (n, best)


def up_to_homeomorphism(spaces: Iterable[FinTopSpace]) -> list[FinTopSpace]:
    reps = {}
    for X in spaces:
        reps.setdefault(canonical_form(X), X)
    return list(reps.values())
