"""Contact relations on finite Boolean algebras, ultrafilters and clusters.

A contact relation is stored through its kernel: a reflexive symmetric
relation on atoms, one bit row per atom.  ``a C b`` holds exactly when some
atom below ``a`` is kernel-related to some atom below ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import (
    DegenerateAlgebra,
    InternalContradiction,
    NotContact,
    NotReflexive,
    NotSymmetric,
    ShapeMismatch,
)
from .finboole import FinBoolAlg, Ultrafilter, bits, ultrafilters


@dataclass(frozen=True)
class ContactRelation:
    algebra: FinBoolAlg
    kernel: tuple  # row i: bit set of atoms in contact with atom i

    def __post_init__(self):
        n = self.algebra.n_atoms
        kernel = tuple(self.kernel)
        object.__setattr__(self, "kernel", kernel)
        if len(kernel) != n or any(not 0 <= row < 1 << n for row in kernel):
            raise ShapeMismatch("kernel needs one row of atom bits per atom")
        for i in range(n):
            if not kernel[i] >> i & 1:
                raise NotReflexive(f"atom {i + 1} is not in contact with itself")
            for j in bits(kernel[i]):
                if not kernel[j] >> i & 1:
                    raise NotSymmetric(f"atoms {i + 1} and {j + 1}")

    @cached_property
    def nbhd(self) -> tuple:
        """``nbhd[a]``: atoms in contact with some atom below ``a``."""
        out = [0] * self.algebra.size
        for a in range(1, self.algebra.size):
            low = a & -a
            out[a] = out[a ^ low] | self.kernel[low.bit_length() - 1]
        return tuple(out)

    def contact(self, a: int, b: int) -> bool:
        return bool(self.nbhd[a] & b)

    def ll(self, a: int, b: int) -> bool:
        """Non-tangential inclusion: ``a`` is not in contact with ``b*``."""
        return not self.nbhd[a] & (b ^ self.algebra.one)

    def matrix(self) -> tuple:
        E = self.algebra.elements()
        return tuple(tuple(self.contact(a, b) for b in E) for a in E)

    def pairs(self) -> frozenset:
        return frozenset((a, b) for a in self.algebra.elements() for b in self.algebra.elements() if self.contact(a, b))

    def kernel_pairs(self) -> frozenset:
        return frozenset((i, j) for i in range(self.algebra.n_atoms) for j in bits(self.kernel[i]))

    @property
    def is_smallest(self) -> bool:
        return all(row == 1 << i for i, row in enumerate(self.kernel))

    def __repr__(self):
        edges = ",".join(f"{i + 1}-{j + 1}" for i, j in sorted(self.kernel_pairs()) if i < j)
        return f"Contact({self.algebra!r}, [{edges}])"


def kernel_to_contact(A: FinBoolAlg, K) -> ContactRelation:
    """Accepts kernel rows (ints) or an iterable of atom index pairs."""
    K = list(K)
    if K and isinstance(K[0], tuple):
        rows = [0] * A.n_atoms
        for i, j in K:
            if not (0 <= i < A.n_atoms and 0 <= j < A.n_atoms):
                raise ShapeMismatch(f"pair {(i, j)} outside the atoms")
            rows[i] |= 1 << j
        K = rows
    elif not K and A.n_atoms:
        K = [0] * A.n_atoms
    return ContactRelation(A, tuple(K))


def contact_to_kernel(C: ContactRelation) -> tuple:
    return tuple(sum(1 << j for j in range(C.algebra.n_atoms) if C.contact(1 << i, 1 << j)) for i in range(C.algebra.n_atoms))


def rho_s(A: FinBoolAlg) -> ContactRelation:
    if A.is_degenerate:
        raise DegenerateAlgebra("no contact relation with non-zero pairs on the one-element algebra")
    C = ContactRelation(A, tuple(1 << i for i in range(A.n_atoms)))
    for a in A.elements():
        for b in A.elements():
            if C.ll(a, b) != A.leq(a, b):
                raise InternalContradiction("a << b differs from a <= b for the smallest contact")
    return C


def rho_l(A: FinBoolAlg) -> ContactRelation:
    if A.is_degenerate:
        raise DegenerateAlgebra("no contact relation with non-zero pairs on the one-element algebra")
    return ContactRelation(A, tuple(A.one for _ in range(A.n_atoms)))


def all_kernels(A: FinBoolAlg) -> list[ContactRelation]:
    """Every reflexive symmetric kernel, ordered by the bit mask of its edges."""
    n = A.n_atoms
    edges = list(combinations(range(n), 2))
    out = []
    for mask in range(1 << len(edges)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(edges):
            if mask >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        out.append(ContactRelation(A, tuple(rows)))
    return out


# ------------------------------------------------------------------ axioms


@dataclass(frozen=True)
class AxiomReport:
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    c6: bool
    ll: dict  # "ll1" .. "ll7" -> bool
    round_trip: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    @property
    def is_ca(self) -> bool:
        return self.c1 and self.c2 and self.c3 and self.c4

    @property
    def is_nca(self) -> bool:
        return self.is_ca and self.c5 and self.c6

    def flags(self) -> dict:
        out = {f"C{i}": getattr(self, f"c{i}") for i in range(1, 7)}
        out.update({k.replace("ll", "<<"): v for k, v in self.ll.items()})
        out.update(is_CA=self.is_ca, is_NCA=self.is_nca, round_trip=self.round_trip)
        return out


def _as_matrix(A: FinBoolAlg, table) -> list[list[bool]]:
    if isinstance(table, ContactRelation):
        if table.algebra != A:
            raise ShapeMismatch("contact relation lives on a different algebra")
        return [list(r) for r in table.matrix()]
    if isinstance(table, (set, frozenset)):
        m = [[False] * A.size for _ in A.elements()]
        for a, b in table:
            if not (A.contains(a) and A.contains(b)):
                raise ShapeMismatch(f"pair {(a, b)} outside the algebra")
            m[a][b] = True
        return m
    rows = [list(r) for r in table]
    if len(rows) != A.size or any(len(r) != A.size for r in rows):
        raise ShapeMismatch(f"relation table must be {A.size} x {A.size}")
    return [[bool(x) for x in r] for r in rows]


def _first(it):
    for x in it:
        return x
    return None


def check_axioms(A: FinBoolAlg, table) -> AxiomReport:
    """Evaluate C1-C6 and the << axioms by direct quantification."""
    M = _as_matrix(A, table)
    E = list(A.elements())
    one = A.one
    w = {}

    def record(name, witness):
        if witness is not None:
            w[name] = witness
        return witness is None

    c1 = record("C1", _first(a for a in E if a and not M[a][a]))
    c2 = record("C2", _first((a, b) for a in E for b in E if M[a][b] and not (a and b)))
    c3 = record("C3", _first((a, b) for a in E for b in E if M[a][b] and not M[b][a]))
    c4 = record(
        "C4", _first((a, b, c) for a in E for b in E for c in E if M[a][b | c] != (M[a][b] or M[a][c]))
    )
    c5 = record(
        "C5",
        _first(
            (a, b)
            for a in E
            for b in E
            if not M[a][b] and not any(not M[a][c] and not M[b][c ^ one] for c in E)
        ),
    )
    c6 = record("C6", _first(a for a in E if a != one and not any(b and not M[b][a] for b in E)))

    L = [[not M[a][b ^ one] for b in E] for a in E]
    ll = {}
    ll["ll1"] = record("<<1", _first((a, b) for a in E for b in E if L[a][b] and a & ~b))
    ll["ll2"] = record("<<2", None if L[0][0] else (0, 0))
    # a <= b << c <= t: checked as downward closure in the first and upward in the second slot
    ll["ll3"] = record(
        "<<3",
        _first(
            (a, b, c)
            for b in E
            for c in E
            if L[b][c]
            for a in E
            if (a & ~b == 0 and not L[a][c]) or not L[b][a | c]
        ),
    )
    ll["ll4"] = record("<<4", _first((a, b, c) for a in E for b in E for c in E if L[a][c] and L[b][c] and not L[a | b][c]))
    ll["ll5"] = record("<<5", _first((a, c) for a in E for c in E if L[a][c] and not any(L[a][b] and L[b][c] for b in E)))
    ll["ll6"] = record("<<6", _first(a for a in E if a and not any(b and L[b][a] for b in E)))
    ll["ll7"] = record("<<7", _first((a, b) for a in E for b in E if L[a][b] and not L[b ^ one][a ^ one]))
    # C recovered from <<: a C b iff not a << b*
    round_trip = record("round_trip", _first((a, b) for a in E for b in E if M[a][b] != (not L[a][b ^ one])))
    return AxiomReport(c1, c2, c3, c4, c5, c6, ll, round_trip, w)


def as_contact(A: FinBoolAlg, C) -> ContactRelation:
    """Canonical form of a relation passing C1-C4; ``NotContact`` otherwise."""
    if isinstance(C, ContactRelation):
        if C.algebra != A:
            raise ShapeMismatch("contact relation lives on a different algebra")
        return C
    report = check_axioms(A, C)
    if not report.is_ca:
        raise NotContact(f"relation fails the contact axioms: {report.witnesses}")
    M = _as_matrix(A, C)
    rows = tuple(sum(1 << j for j in range(A.n_atoms) if M[1 << i][1 << j]) for i in range(A.n_atoms))
    out = ContactRelation(A, rows)
    if [list(r) for r in out.matrix()] != M:
        raise InternalContradiction("contact relation is not determined by its atom pairs")
    return out


def is_nca(C: ContactRelation) -> bool:
    return check_axioms(C.algebra, C).is_nca


# ----------------------------------------------------------- R relation


@dataclass(frozen=True)
class RRelation:
    matrix: tuple  # matrix[i][j]: u_i R u_j
    reflexive: bool
    symmetric: bool
    transitive: bool

    @property
    def is_equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    def pairs(self) -> frozenset:
        return frozenset((i, j) for i, row in enumerate(self.matrix) for j, x in enumerate(row) if x)


def _require_ca(A: FinBoolAlg, C) -> ContactRelation:
    try:
        return as_contact(A, C)
    except (NotReflexive, NotSymmetric, ShapeMismatch) as exc:
        raise NotContact(str(exc)) from exc


def r_relation(A: FinBoolAlg, C) -> RRelation:
    """``u R v`` iff every pair from ``u x v`` is in contact."""
    C = _require_ca(A, C)
    us = ultrafilters(A)
    carriers = [u.carrier for u in us]
    n = len(us)
    m = tuple(tuple(all(C.contact(a, b) for a in carriers[i] for b in carriers[j]) for j in range(n)) for i in range(n))
    for i in range(n):
        for j in range(n):
            if m[i][j] != bool(C.kernel[i] >> j & 1):
                raise InternalContradiction("R on ultrafilters differs from the kernel")
    refl = all(m[i][i] for i in range(n))
    sym = all(m[i][j] == m[j][i] for i in range(n) for j in range(n))
    trans = all(m[i][k] for i in range(n) for j in range(n) for k in range(n) if m[i][j] and m[j][k])
    return RRelation(m, refl, sym, trans)


def witness_contact(A: FinBoolAlg, C, a: int, b: int) -> Optional[tuple]:
    """Ultrafilters ``(u, v)`` with ``a in u``, ``b in v`` and ``u R v``, if any."""
    C = _require_ca(A, C)
    R = r_relation(A, C)
    for u in ultrafilters(A):
        if a not in u:
            continue
        for v in ultrafilters(A):
            if b in v and R.matrix[u.atom][v.atom]:
                return (u, v)
    return None


# ---------------------------------------------------------------- clusters


@dataclass(frozen=True)
class Cluster:
    carrier: frozenset
    note: Optional[str] = field(default=None, compare=False)

    def __contains__(self, a) -> bool:
        return a in self.carrier

    def key(self) -> tuple:
        return tuple(sorted(self.carrier))

    def __repr__(self):
        return f"Cluster({sorted(self.carrier)})"


def cluster_failure(C: ContactRelation, S: Iterable[int]) -> Optional[str]:
    """First violated cluster condition for ``S``, or ``None``."""
    S = frozenset(S)
    A = C.algebra
    if not S:
        return "empty"
    for x in S:
        for y in S:
            if not C.contact(x, y):
                return f"CL1 at ({x}, {y})"
    for x in A.elements():
        for y in A.elements():
            if x | y in S and x not in S and y not in S:
                return f"CL2 at ({x}, {y})"
    for x in A.elements():
        if x not in S and all(C.contact(x, y) for y in S):
            return f"CL3 at {x}"
    return None


def is_cluster(C: ContactRelation, S: Iterable[int]) -> bool:
    return cluster_failure(C, S) is None


def _maximal_cliques(vertices: list[int], adj: dict) -> list[int]:
    """Bron-Kerbosch with pivoting over bit sets of vertex positions."""
    out = []

    def expand(R, P, X):
        if not P and not X:
            out.append(R)
            return
        pivot = max(bits(P | X), key=lambda u: bin(P & adj[u]).count("1"))
        for v in bits(P & ~adj[pivot]):
            expand(R | 1 << v, P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if vertices:
        expand(0, (1 << len(vertices)) - 1, 0)
    return out


def clusters(A: FinBoolAlg, C) -> list[Cluster]:
    """All clusters, ordered by their sorted element lists.

    A set satisfies CL1 and CL3 exactly when it equals the set of elements in
    contact with all of its members, i.e. when it is a maximal clique of the
    contact graph on non-zero elements; CL2 is then checked directly.
    """
    C = _require_ca(A, C)
    verts = [a for a in A.elements() if a]
    pos = {a: i for i, a in enumerate(verts)}
    adj = {}
    for i, a in enumerate(verts):
        adj[i] = sum(1 << pos[b] for b in verts if b != a and C.contact(a, b))
    found = []
    for mask in _maximal_cliques(verts, adj):
        carrier = frozenset(verts[i] for i in bits(mask))
        if is_cluster(C, carrier):
            found.append(Cluster(carrier))
    return sorted(found, key=Cluster.key)


def clusters_bruteforce(A: FinBoolAlg, C) -> list[Cluster]:
    """Plain enumeration of element subsets; for cross-checking small cases."""
    C = _require_ca(A, C)
    found = []
    size = A.size
    for mask in range(1, 1 << size):
        S = frozenset(bits(mask))
        if is_cluster(C, S):
            found.append(Cluster(S))
    return sorted(found, key=Cluster.key)


OUTSIDE_SCOPE = "outside theorem scope: contact algebra is not normal"


def sigma_u(A: FinBoolAlg, C, u: Ultrafilter) -> Cluster:
    """``{a : a C b for every b in u}``; tagged when ``C`` is not normal."""
    C = _require_ca(A, C)
    carrier = frozenset(a for a in A.elements() if all(C.contact(a, b) for b in u.carrier))
    note = None if is_nca(C) else OUTSIDE_SCOPE
    return Cluster(carrier, note)


def point_cluster(X, x: int) -> frozenset:
    """Elements of ``rc_algebra(X)`` whose regular closed set contains ``x``."""
    from .fintop import rc_algebra

    R = rc_algebra(X)
    return frozenset(a for a, F in enumerate(R.rc_sets) if F >> x & 1)
