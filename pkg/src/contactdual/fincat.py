"""Finite categories, functors, natural transformations and covering classes.

Morphisms are arbitrary hashable labels; a category stores their domains,
codomains, identities and the full composition table.  Contravariant
functors are ordinary functors out of an opposite category.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional

from .errors import FixtureSyntaxError, LawViolation, PreconditionFailed, ShapeMismatch

OP_SUFFIX = "^op"


class FinCategory:
    def __init__(self, name, objects, morphisms, dom, cod, identities, table):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom = dict(dom)
        self.cod = dict(cod)
        self.identities = dict(identities)
        self.table = dict(table)  # (g, f) -> g . f
        self._obj_set = frozenset(self.objects)
        self._homs = {}
        for f in self.morphisms:
            self._homs.setdefault((self.dom[f], self.cod[f]), []).append(f)
        self._homs = {k: tuple(v) for k, v in self._homs.items()}
        self._inverse = {}
        for x in self.objects:
            if x not in self.identities:
                raise LawViolation("shape", x, f"object {x!r} has no identity")

    @classmethod
    def build(cls, name, objects, morphisms, dom: Callable, cod: Callable, identity: Callable, compose: Callable):
        """Category whose composition is computed by ``compose(g, f)``."""
        objects = list(objects)
        morphisms = list(morphisms)
        D = {f: dom(f) for f in morphisms}
        Cd = {f: cod(f) for f in morphisms}
        ids = {x: identity(x) for x in objects}
        by_dom = {}
        for f in morphisms:
            by_dom.setdefault(D[f], []).append(f)
        table = {}
        for f in morphisms:
            for g in by_dom.get(Cd[f], ()):
                table[(g, f)] = compose(g, f)
        return cls(name, objects, morphisms, D, Cd, ids, table)

    # equality is by data so that op(op(C)) == C
    def _key(self):
        return (self.name, self.objects, frozenset(self.morphisms))

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self._key() == other._key()
            and self.dom == other.dom
            and self.cod == other.cod
            and self.identities == other.identities
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.name, self.objects))

    def __repr__(self):
        return f"FinCategory({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def has_object(self, x) -> bool:
        return x in self._obj_set

    def hom(self, x, y) -> tuple:
        return self._homs.get((x, y), ())

    def compose(self, g, f):
        """``g . f``."""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise ShapeMismatch(f"{g!r} . {f!r} is not defined in {self.name}") from None

    def compose_all(self, *ms):
        """``ms[0] . ms[1] . ... . ms[-1]``."""
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def identity(self, x):
        return self.identities[x]

    def is_identity(self, f) -> bool:
        return self.identities.get(self.dom[f]) == f

    def inverse(self, f):
        """Two-sided inverse of ``f`` or ``None``."""
        if f not in self._inverse:
            x, y = self.dom[f], self.cod[f]
            inv = None
            for g in self.hom(y, x):
                if self.table[(g, f)] == self.identities[x] and self.table[(f, g)] == self.identities[y]:
                    inv = g
                    break
            self._inverse[f] = inv
        return self._inverse[f]

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    def isos(self, x, y) -> list:
        return [f for f in self.hom(x, y) if self.is_iso(f)]

    def identity_functor(self) -> "Functor":
        return Functor(self, self, {x: x for x in self.objects}, {f: f for f in self.morphisms}, name=f"Id_{self.name}")


def validate_category(C: FinCategory) -> FinCategory:
    for f in C.morphisms:
        if not (C.has_object(C.dom[f]) and C.has_object(C.cod[f])):
            raise LawViolation("shape", f, f"{f!r} has an unknown endpoint")
    for x, i in C.identities.items():
        if C.dom.get(i) != x or C.cod.get(i) != x:
            raise LawViolation("identity", (x, i))
    by_dom = {}
    for f in C.morphisms:
        by_dom.setdefault(C.dom[f], []).append(f)
    for f in C.morphisms:
        for g in by_dom.get(C.cod[f], ()):
            if (g, f) not in C.table:
                raise LawViolation("shape", (g, f), f"composite {g!r} . {f!r} missing")
            h = C.table[(g, f)]
            if C.dom.get(h) != C.dom[f] or C.cod.get(h) != C.cod[g]:
                raise LawViolation("shape", (g, f), f"composite {g!r} . {f!r} has wrong type")
    for f in C.morphisms:
        x, y = C.dom[f], C.cod[f]
        if C.table[(f, C.identities[x])] != f or C.table[(C.identities[y], f)] != f:
            raise LawViolation("identity", f)
    for f in C.morphisms:
        for g in by_dom.get(C.cod[f], ()):
            gf = C.table[(g, f)]
            for h in by_dom.get(C.cod[g], ()):
                if C.table[(h, gf)] != C.table[(C.table[(h, g)], f)]:
                    raise LawViolation("associativity", (h, g, f))
    return C


def opposite(C: FinCategory) -> FinCategory:
    name = C.name[: -len(OP_SUFFIX)] if C.name.endswith(OP_SUFFIX) else C.name + OP_SUFFIX
    table = {(f, g): h for (g, f), h in C.table.items()}
    return FinCategory(name, C.objects, C.morphisms, C.cod, C.dom, C.identities, table)


def full_subcategory(C: FinCategory, objects: Iterable, name: Optional[str] = None) -> FinCategory:
    objs = [x for x in C.objects if x in set(objects)]
    keep = set(objs)
    morphisms = [f for f in C.morphisms if C.dom[f] in keep and C.cod[f] in keep]
    return subcategory(C, objs, morphisms, name or f"{C.name}|full")


def subcategory(C: FinCategory, objects, morphisms, name: Optional[str] = None) -> FinCategory:
    objs = list(objects)
    ms = list(morphisms)
    mset = set(ms)
    table = {}
    for (g, f), h in C.table.items():
        if g in mset and f in mset:
            if h not in mset:
                raise LawViolation("shape", (g, f), "subcategory is not closed under composition")
            table[(g, f)] = h
    return FinCategory(
        name or f"{C.name}|sub",
        objs,
        ms,
        {f: C.dom[f] for f in ms},
        {f: C.cod[f] for f in ms},
        {x: C.identities[x] for x in objs},
        table,
    )


# ----------------------------------------------------------------- functors


class Functor:
    def __init__(self, source: FinCategory, target: FinCategory, obj_map: dict, mor_map: dict, name: str = ""):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def ob(self, x):
        return self.obj_map[x]

    def __call__(self, f):
        return self.mor_map[f]

    def op(self) -> "Functor":
        return Functor(opposite(self.source), opposite(self.target), self.obj_map, self.mor_map, self.name + OP_SUFFIX)

    def after(self, G: "Functor") -> "Functor":
        """``self . G``."""
        if G.target != self.source:
            raise ShapeMismatch(f"{self.name} cannot follow {G.name}")
        return Functor(
            G.source,
            self.target,
            {x: self.obj_map[G.obj_map[x]] for x in G.source.objects},
            {f: self.mor_map[G.mor_map[f]] for f in G.source.morphisms},
            name=f"{self.name}{G.name}",
        )

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    __hash__ = None

    def __repr__(self):
        return f"Functor({self.name}: {self.source.name} -> {self.target.name})"


def functor_difference(F: Functor, G: Functor):
    """First object or morphism on which two parallel functors differ."""
    if F.source != G.source or F.target != G.target:
        return ("shape", None)
    for x in F.source.objects:
        if F.obj_map.get(x) != G.obj_map.get(x):
            return ("object", x)
    for f in F.source.morphisms:
        if F.mor_map.get(f) != G.mor_map.get(f):
            return ("morphism", f)
    return None


def validate_functor(F: Functor) -> Functor:
    A, B = F.source, F.target
    for x in A.objects:
        if x not in F.obj_map or not B.has_object(F.obj_map[x]):
            raise LawViolation("shape", x, f"{F.name} undefined on object {x!r}")
    for f in A.morphisms:
        if f not in F.mor_map:
            raise LawViolation("shape", f, f"{F.name} undefined on {f!r}")
        Ff = F.mor_map[f]
        if B.dom.get(Ff) != F.obj_map[A.dom[f]] or B.cod.get(Ff) != F.obj_map[A.cod[f]]:
            raise LawViolation("shape", f, f"{F.name}({f!r}) has the wrong type")
    for x in A.objects:
        if F.mor_map[A.identities[x]] != B.identities[F.obj_map[x]]:
            raise LawViolation("functoriality", A.identities[x], f"{F.name} does not preserve the identity of {x!r}")
    for (g, f), h in A.table.items():
        if F.mor_map[h] != B.compose(F.mor_map[g], F.mor_map[f]):
            raise LawViolation("functoriality", (g, f))
    return F


def is_full_and_faithful(F: Functor) -> tuple[bool, bool, object]:
    full = faithful = True
    witness = None
    A = F.source
    for x in A.objects:
        for y in A.objects:
            images = [F.mor_map[f] for f in A.hom(x, y)]
            if len(set(images)) != len(images):
                faithful = False
                witness = witness or ("not faithful", x, y)
            if set(images) != set(F.target.hom(F.obj_map[x], F.obj_map[y])):
                full = False
                witness = witness or ("not full", x, y)
    return full, faithful, witness


class NatTrans:
    def __init__(self, source: Functor, target: Functor, components: dict, name: str = ""):
        if source.source != target.source or source.target != target.target:
            raise ShapeMismatch("natural transformation between non-parallel functors")
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name

    def __getitem__(self, x):
        return self.components[x]

    def __repr__(self):
        return f"NatTrans({self.name}: {self.source.name} -> {self.target.name})"


def validate_nattrans(alpha: NatTrans) -> NatTrans:
    F, G = alpha.source, alpha.target
    A, B = F.source, F.target
    for x in A.objects:
        c = alpha.components.get(x)
        if c is None or B.dom.get(c) != F.obj_map[x] or B.cod.get(c) != G.obj_map[x]:
            raise LawViolation("shape", x, f"component of {alpha.name} at {x!r} has the wrong type")
    for f in A.morphisms:
        x, y = A.dom[f], A.cod[f]
        if B.compose(G.mor_map[f], alpha.components[x]) != B.compose(alpha.components[y], F.mor_map[f]):
            raise LawViolation("naturality", f, f"{alpha.name} is not natural at {f!r}")
    return alpha


def naturality_failure(alpha: NatTrans):
    try:
        validate_nattrans(alpha)
    except LawViolation as exc:
        return exc.witness
    return None


def is_law_valid(check, value) -> tuple[bool, object]:
    try:
        check(value)
    except LawViolation as exc:
        return False, (exc.kind, exc.witness)
    return True, None


# -------------------------------------------------------- dual equivalence


@dataclass
class DualEquivalenceCheck:
    flags: dict
    witnesses: dict

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


def check_dual_equivalence(T: Functor, S: Functor, eta: NatTrans, eps: NatTrans) -> DualEquivalenceCheck:
    """``T: op(A) -> B``, ``S: op(B) -> A``, ``eta: Id_B -> TS``, ``eps: Id_A -> ST``."""
    A, B = S.target, T.target
    if T.source != opposite(A) or S.source != opposite(B):
        raise ShapeMismatch("T and S must be contravariant between the same two categories")
    flags, wit = {}, {}

    def put(name, witness):
        flags[name] = witness is None
        if witness is not None:
            wit[name] = witness

    for F, name in ((T, "T_functor"), (S, "S_functor")):
        ok, w = is_law_valid(validate_functor, F)
        put(name, w)
    TS = T.after(S.op())
    ST = S.after(T.op())
    if eta.source != B.identity_functor() or eta.target != TS:
        raise ShapeMismatch("eta must go from Id_B to TS")
    if eps.source != A.identity_functor() or eps.target != ST:
        raise ShapeMismatch("eps must go from Id_A to ST")
    put("eta_iso", next((x for x in B.objects if not B.is_iso(eta[x])), None))
    put("eps_iso", next((x for x in A.objects if not A.is_iso(eps[x])), None))
    put("eta_natural", naturality_failure(eta))
    put("eps_natural", naturality_failure(eps))
    # T eps_A . eta_TA = 1_TA and S eta_B . eps_SB = 1_SB
    put(
        "triangle_T",
        next(
            (a for a in A.objects if B.compose(T(eps[a]), eta[T.ob(a)]) != B.identity(T.ob(a))),
            None,
        ),
    )
    put(
        "triangle_S",
        next(
            (b for b in B.objects if A.compose(S(eta[b]), eps[S.ob(b)]) != A.identity(S.ob(b))),
            None,
        ),
    )
    return DualEquivalenceCheck(flags, wit)


def self_duality(B: FinCategory):
    """``op(B)`` dual to ``B`` through identity functors."""
    from .stonedual import DualityPack

    A = opposite(B)
    T = Functor(B, B, {x: x for x in B.objects}, {f: f for f in B.morphisms}, name="T")
    S = Functor(A, A, {x: x for x in B.objects}, {f: f for f in B.morphisms}, name="S")
    # T: op(A) = B -> B and S: op(B) = A -> A
    eta = NatTrans(B.identity_functor(), T.after(S.op()), {x: B.identity(x) for x in B.objects}, name="eta")
    eps = NatTrans(A.identity_functor(), S.after(T.op()), {x: A.identity(x) for x in A.objects}, name="eps")
    return DualityPack(A, B, T, S, eta, eps)


# ----------------------------------------------------------- covering class


@dataclass
class CoveringClass:
    host: FinCategory
    subcat_objects: tuple
    P: frozenset
    chosen: Optional[dict] = None  # C -> pi_C
    hat: Optional[dict] = None  # (p, v, p') -> morphism; None means search
    subcat_name: Optional[str] = None

    def __post_init__(self):
        self.subcat_objects = tuple(self.subcat_objects)
        self.P = frozenset(self.P)
        for p in self.P:
            if p not in self.host.dom:
                raise ShapeMismatch(f"{p!r} is not a morphism of the host")

    @property
    def B(self) -> FinCategory:
        return full_subcategory(self.host, self.subcat_objects, name=self.subcat_name or f"{self.host.name}|B")


@dataclass
class CoveringReport:
    flags: dict
    witnesses: dict
    chosen: dict
    hat: Optional[dict]
    candidates: dict = field(repr=False, default_factory=dict)

    @property
    def covering_ok(self) -> bool:
        return all(self.flags[k] for k in ("P1", "P2", "P3", "P4", "P5"))


SEARCH_LIMIT = 100_000


def _triples(K: CoveringClass):
    C = K.host
    P = sorted(K.P, key=C.morphisms.index)
    for p in P:
        for v in C.morphisms:
            if C.dom[v] != C.cod[p]:
                continue
            for p2 in P:
                if C.cod[p2] == C.cod[v]:
                    yield (p, v, p2)


def _hat_failure(K: CoveringClass, hat: dict):
    """First violated (P5) law for an explicit assignment, or ``None``."""
    C = K.host
    triples = list(_triples(K))
    for p, v, p2 in triples:
        m = hat.get((p, v, p2))
        if m is None:
            return ("missing", v, p, p2)
        if C.dom.get(m) != C.dom[p] or C.cod.get(m) != C.dom[p2]:
            return ("type", v, p, p2)
        if C.compose(v, p) != C.compose(p2, m):
            return ("square", v, p, p2)
    for p in K.P:
        if hat[(p, C.identity(C.cod[p]), p)] != C.identity(C.dom[p]):
            return ("identity", p)
    by_cover = {}
    for p, v, p2 in triples:
        by_cover.setdefault(p, []).append((v, p2))
    for p, v, p2 in triples:
        for w, p3 in by_cover.get(p2, ()):
            if C.dom[w] != C.cod[v]:
                continue
            if hat[(p, C.compose(w, v), p3)] != C.compose(hat[(p2, w, p3)], hat[(p, v, p2)]):
                return ("composition", w, v, p, p2, p3)
    return None


def _search_hat(K: CoveringClass, candidates: dict):
    multi = [t for t, cs in candidates.items() if len(cs) > 1]
    base = {t: cs[0] for t, cs in candidates.items() if len(cs) == 1}
    size = 1
    for t in multi:
        size *= len(candidates[t])
    if size > SEARCH_LIMIT:
        return None, ("search space too large", size)
    last = None
    for choice in product(*(candidates[t] for t in multi)):
        hat = dict(base)
        hat.update(zip(multi, choice))
        last = _hat_failure(K, hat)
        if last is None:
            return hat, None
    return None, last


def check_covering_class(K: CoveringClass) -> CoveringReport:
    C = K.host
    Bobjs = set(K.subcat_objects)
    if not Bobjs <= set(C.objects):
        raise ShapeMismatch("subcategory objects must be host objects")
    flags, wit = {}, {}

    def put(name, witness):
        flags[name] = witness is None
        if witness is not None:
            wit[name] = witness

    def iso_B(f):
        return C.dom[f] in Bobjs and C.cod[f] in Bobjs and C.is_iso(f)

    put("P1", next((p for p in K.P if C.dom[p] not in Bobjs), None))
    put("P2", next((b for b in K.subcat_objects if C.identity(b) not in K.P), None))
    put("P2'", next((f for f in C.morphisms if iso_B(f) and f not in K.P), None))
    put(
        "P3",
        next(
            ((p, b) for p in K.P for b in C.morphisms if iso_B(b) and C.cod[b] == C.dom[p] and C.compose(p, b) not in K.P),
            None,
        ),
    )
    put("P4", next((c for c in C.objects if not any(C.cod[p] == c for p in K.P)), None))

    chosen = dict(K.chosen or {})
    for c in C.objects:
        if c in chosen:
            continue
        if c in Bobjs:
            chosen[c] = C.identity(c)
        else:
            options = [p for p in C.morphisms if p in K.P and C.cod[p] == c]
            if options:
                chosen[c] = options[0]
    bad = None
    for c in C.objects:
        pc = chosen.get(c)
        if pc is None or pc not in K.P or C.cod[pc] != c or (c in Bobjs and pc != C.identity(c)):
            bad = c
            break
    put("P4'", bad)

    def rigid(pc):
        e = C.dom[pc]
        for a in C.isos(e, e):
            if a != C.identity(e) and C.compose(pc, a) == pc:
                return a
        return None

    rig = None
    if bad is None:
        for c in C.objects:
            a = rigid(chosen[c])
            if a is not None:
                rig = (c, a)
                break
    else:
        rig = ("no chosen cover", bad)
    put("P4*", rig)

    candidates = {}
    for p, v, p2 in _triples(K):
        candidates[(p, v, p2)] = [m for m in C.hom(C.dom[p], C.dom[p2]) if C.compose(p2, m) == C.compose(v, p)]
    put("P5*", next(((v, p, p2) for (p, v, p2), cs in candidates.items() if len(cs) != 1), None))

    hat = None
    if K.hat is not None:
        w = _hat_failure(K, K.hat)
        if w is None:
            hat = dict(K.hat)
        put("P5", w)
    else:
        empty = [(p, v, p2) for (p, v, p2), cs in candidates.items() if not cs]
        if empty:
            # report a square between genuine covers first: it is the most informative
            p, v, p2 = min(empty, key=lambda t: (C.is_identity(t[0]) or C.is_identity(t[2]), C.morphisms.index(t[1])))
            put("P5", (v, p, p2))
            wit["P5_all"] = [(v, p, p2) for p, v, p2 in empty]
        else:
            hat, w = _search_hat(K, candidates)
            put("P5", w)
    return CoveringReport(flags, wit, chosen, hat, candidates)


# ------------------------------------------------- E, pi and their converse


@dataclass
class CoreflectionData:
    B: FinCategory
    I: Functor
    E: Functor
    pi: NatTrans


def inclusion(B: FinCategory, C: FinCategory) -> Functor:
    return Functor(B, C, {x: x for x in B.objects}, {f: f for f in B.morphisms}, name="I")


def derive_E_pi(K: CoveringClass, report: Optional[CoveringReport] = None) -> CoreflectionData:
    report = report or check_covering_class(K)
    failed = [k for k in ("P1", "P2", "P3", "P4", "P4'", "P5") if not report.flags[k]]
    if failed:
        raise PreconditionFailed(f"covering class fails {', '.join(failed)}", failed)
    C, B = K.host, K.B
    pi_c = report.chosen
    hat = report.hat
    E = Functor(
        C,
        B,
        {c: C.dom[pi_c[c]] for c in C.objects},
        {v: hat[(pi_c[C.dom[v]], v, pi_c[C.cod[v]])] for v in C.morphisms},
        name="E",
    )
    I = inclusion(B, C)
    pi = NatTrans(I.after(E), C.identity_functor(), pi_c, name="pi")
    validate_functor(E)
    validate_nattrans(pi)
    return CoreflectionData(B, I, E, pi)


def _beta(C: FinCategory, B: FinCategory, E: Functor, pi: NatTrans, p):
    c = C.cod[p]
    for b in B.isos(C.dom[p], E.ob(c)):
        if C.compose(pi[c], b) == p:
            return b
    return None


def derive_P_from_pi(E: Functor, pi: NatTrans, I: Functor) -> frozenset:
    """All ``pi_C . beta`` with ``beta: B -> EC`` an isomorphism of ``B``."""
    C, B = I.target, I.source
    bobjs = set(B.objects)
    return frozenset(p for p in C.morphisms if C.dom[p] in bobjs and _beta(C, B, E, pi, p) is not None)


def hat_from_pi(E: Functor, pi: NatTrans, I: Functor, P) -> dict:
    """``hat(p, v, p') = beta_p'^-1 . Ev . beta_p`` with one chosen ``beta`` per cover."""
    C, B = I.target, I.source
    betas = {p: _beta(C, B, E, pi, p) for p in P}
    if any(b is None for b in betas.values()):
        raise PreconditionFailed("some cover does not factor through pi", "P_pi")
    K = CoveringClass(C, B.objects, P, hat={})
    out = {}
    for p, v, p2 in _triples(K):
        out[(p, v, p2)] = B.compose_all(B.inverse(betas[p2]), E(v), betas[p])
    return out


def check_couniversal(data: CoreflectionData) -> tuple[bool, object]:
    """Every ``v: IB -> C`` factors uniquely as ``pi_C . Ig``."""
    C, B = data.I.target, data.B
    for c in C.objects:
        ec = data.E.ob(c)
        for b in B.objects:
            for v in C.hom(b, c):
                sols = [g for g in B.hom(b, ec) if C.compose(data.pi[c], g) == v]
                if len(sols) != 1:
                    return False, (v, len(sols))
    return True, None


@dataclass
class SemiAdjointCheck:
    triangular: bool
    fully: bool
    left_adjoint: bool
    witnesses: dict


def sigma_from_pi(I: Functor, E: Functor, pi: NatTrans) -> Optional[NatTrans]:
    """The transformation with ``I sigma = (pi I)^-1`` when it exists."""
    B, C = I.source, I.target
    comps = {}
    for b in B.objects:
        inv = C.inverse(pi[I.ob(b)])
        if inv is None:
            return None
        sols = [g for g in B.hom(b, E.ob(I.ob(b))) if I(g) == inv]
        if len(sols) != 1:
            return None
        comps[b] = sols[0]
    return NatTrans(B.identity_functor(), E.after(I), comps, name="sigma")


def check_semi_adjoint(I: Functor, E: Functor, pi: NatTrans, sigma: Optional[NatTrans]) -> SemiAdjointCheck:
    B, C = I.source, I.target
    if E.source != C or E.target != B:
        raise ShapeMismatch("E must go from the host back to the subcategory")
    if pi.target != C.identity_functor() or pi.source != I.after(E):
        raise ShapeMismatch("pi must go from IE to the identity")
    wit = {}
    triangular = False
    if sigma is None:
        wit["triangular"] = "no sigma"
    else:
        if sigma.source != B.identity_functor() or sigma.target != E.after(I):
            raise ShapeMismatch("sigma must go from the identity to EI")
        bad = next((b for b in B.objects if C.compose(pi[I.ob(b)], I(sigma[b])) != C.identity(I.ob(b))), None)
        triangular = bad is None
        if bad is not None:
            wit["triangular"] = bad
    full, faithful, w = is_full_and_faithful(I)
    pi_iso = next((b for b in B.objects if not C.is_iso(pi[I.ob(b)])), None)
    fully = full and faithful and pi_iso is None
    if not fully:
        wit["fully"] = w if w is not None else ("pi I not iso", pi_iso)
    # I E pi == pi I E componentwise
    bad = next((c for c in C.objects if I(E(pi[c])) != pi[I.ob(E.ob(c))]), None)
    if bad is not None:
        wit["left_adjoint"] = bad
    return SemiAdjointCheck(triangular, fully, bad is None, wit)


# ----------------------------------------------------------------- fixtures


@dataclass
class Fixture:
    category: FinCategory
    subcat_objects: tuple
    P: frozenset
    chosen: dict
    hat: Optional[dict]

    def covering_class(self) -> CoveringClass:
        return CoveringClass(self.category, self.subcat_objects, self.P, self.chosen or None, self.hat)


def parse_fixture(text: str, name: str = "fixture") -> Fixture:
    """Read the line format::

        object X
        morphism f: X -> Y
        identity X 1_X          (optional, default name 1_X)
        compose g.f=h
        subcategory X
        cover p
        chosen C p              (optional)
        hat p v p' = m          (optional; without hats they are searched)
    """
    objects, ids, morphisms, dom, cod = [], {}, [], {}, {}
    comps = {}
    sub, cover, chosen, hat = [], [], {}, {}
    seen_hat = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if word == "object":
                objects.append(rest)
            elif word == "morphism":
                label, _, arrow = rest.partition(":")
                src, _, tgt = arrow.partition("->")
                label, src, tgt = label.strip(), src.strip(), tgt.strip()
                if not (label and src and tgt):
                    raise ValueError("expected 'morphism f: X -> Y'")
                morphisms.append(label)
                dom[label], cod[label] = src, tgt
            elif word == "identity":
                x, label = rest.split()
                ids[x] = label
            elif word == "compose":
                lhs, _, h = rest.partition("=")
                g, _, f = lhs.partition(".")
                if not (g.strip() and f.strip() and h.strip()):
                    raise ValueError("expected 'compose g.f=h'")
                comps[(g.strip(), f.strip())] = h.strip()
            elif word == "subcategory":
                sub.extend(rest.split())
            elif word == "cover":
                cover.extend(rest.split())
            elif word == "chosen":
                c, p = rest.split()
                chosen[c] = p
            elif word == "hat":
                lhs, _, m = rest.partition("=")
                p, v, p2 = lhs.split()
                hat[(p, v, p2)] = m.strip()
                seen_hat = True
            else:
                raise ValueError(f"unknown keyword {word!r}")
        except ValueError as exc:
            raise FixtureSyntaxError(f"line {lineno}: {exc}") from None
    for x in reversed(objects):
        label = ids.setdefault(x, f"1_{x}")
        if label not in morphisms:
            morphisms.insert(0, label)
        dom[label] = cod[label] = x
    for x in ids:
        if x not in objects:
            raise FixtureSyntaxError(f"identity for unknown object {x}")
    for f in morphisms:
        for end in (dom[f], cod[f]):
            if end not in objects:
                raise FixtureSyntaxError(f"morphism {f} uses unknown object {end}")
    id_set = set(ids.values())
    table = {}
    for f in morphisms:
        for g in morphisms:
            if dom[g] != cod[f]:
                continue
            if g in id_set:
                table[(g, f)] = f
            elif f in id_set:
                table[(g, f)] = g
            elif (g, f) in comps:
                table[(g, f)] = comps[(g, f)]
            else:
                raise FixtureSyntaxError(f"composite {g}.{f} not given")
    for (g, f), h in comps.items():
        if h not in dom:
            raise FixtureSyntaxError(f"composite {g}.{f} names unknown morphism {h}")
    C = FinCategory(name, objects, morphisms, dom, cod, ids, table)
    for x in sub:
        if x not in objects:
            raise FixtureSyntaxError(f"subcategory object {x} unknown")
    for p in cover:
        if p not in dom:
            raise FixtureSyntaxError(f"cover {p} unknown")
    return Fixture(C, tuple(sub), frozenset(cover), chosen, hat if seen_hat else None)


def fixture_text(C: FinCategory, subcat_objects=(), P=(), chosen=None, hat=None) -> str:
    """Inverse of ``parse_fixture`` for categories with string labels."""
    lines = [f"object {x}" for x in C.objects]
    ids = set(C.identities.values())
    lines += [f"identity {x} {i}" for x, i in C.identities.items()]
    lines += [f"morphism {f}: {C.dom[f]} -> {C.cod[f]}" for f in C.morphisms if f not in ids]
    lines += [f"compose {g}.{f}={h}" for (g, f), h in C.table.items() if g not in ids and f not in ids]
    lines += [f"subcategory {x}" for x in subcat_objects]
    lines += [f"cover {p}" for p in sorted(P, key=C.morphisms.index)]
    lines += [f"chosen {c} {p}" for c, p in (chosen or {}).items()]
    lines += [f"hat {p} {v} {p2} = {m}" for (p, v, p2), m in (hat or {}).items()]
    return "\n".join(lines) + "\n"


SYNCAT1 = """\
# two objects; e is an idempotent absorbing the cover p0
object B1
object C0
identity B1 id_B1
identity C0 id_C0
morphism p0: B1 -> C0
morphism e: C0 -> C0
compose e.e=e
compose e.p0=p0
subcategory B1
cover id_B1
cover p0
hat id_B1 id_B1 id_B1 = id_B1
hat id_B1 p0 p0 = id_B1
hat p0 id_C0 p0 = id_B1
hat p0 e p0 = id_B1
"""

SYNCAT2 = """\
# as SYNCAT1 but e moves p0 to a second morphism p0'
object B1
object C0
identity B1 id_B1
identity C0 id_C0
morphism p0: B1 -> C0
morphism p0': B1 -> C0
morphism e: C0 -> C0
compose e.e=e
compose e.p0=p0'
compose e.p0'=p0'
subcategory B1
cover id_B1
cover p0
"""


def syncat1() -> Fixture:
    return parse_fixture(SYNCAT1, "SYNCAT-1")


def syncat2() -> Fixture:
    return parse_fixture(SYNCAT2, "SYNCAT-2")


def non_full_gate() -> tuple[Functor, Functor, NatTrans]:
    """One object with an idempotent ``z``; the subcategory keeps only the identity."""
    fx = parse_fixture("object X\nidentity X id\nmorphism z: X -> X\ncompose z.z=z\n", "IDEMP")
    C = fx.category
    B = subcategory(C, ["X"], ["id"], name="IDEMP|B")
    I = inclusion(B, C)
    E = Functor(C, B, {"X": "X"}, {"id": "id", "z": "id"}, name="E")
    pi = NatTrans(I.after(E), C.identity_functor(), {"X": "z"}, name="pi")
    return I, E, pi
