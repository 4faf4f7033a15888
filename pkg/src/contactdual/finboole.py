"""Finite Boolean algebras as power sets of their atoms.

An element of ``FinBoolAlg(n)`` is an ``int`` bit set over ``n`` atoms, so
``0`` is the bottom, ``(1 << n) - 1`` the top, and meet/join/complement are
``&``, ``|`` and ``^ top``.  With ``n == 0`` the algebra has one element and
``0 == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import BoundExceeded, ShapeMismatch

DEFAULT_ATOM_BOUND = 6


def cached_hash(obj, *parts) -> int:
    """Hash of ``parts`` stored on the (frozen) instance after the first call."""
    h = obj.__dict__.get("_hash")
    if h is None:
        h = hash(parts)
        object.__setattr__(obj, "_hash", h)
    return h


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FinBoolAlg:
    n_atoms: int
    labels: Optional[tuple] = None

    def __post_init__(self):
        if self.n_atoms < 0:
            raise ValueError("n_atoms must be non-negative")
        if self.labels is not None and len(self.labels) != 1 << self.n_atoms:
            raise ShapeMismatch("one label per element required")

    @property
    def size(self) -> int:
        return 1 << self.n_atoms

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return (1 << self.n_atoms) - 1

    @property
    def is_degenerate(self) -> bool:
        return self.n_atoms == 0

    def elements(self) -> range:
        return range(1 << self.n_atoms)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.n_atoms)]

    def atoms_below(self, a: int) -> list[int]:
        """Atom indices ``i`` with ``atom_i <= a``."""
        return bits(a)

    def contains(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < (1 << self.n_atoms)

    def meet(self, a: int, b: int) -> int:
        return a & b

    def join(self, a: int, b: int) -> int:
        return a | b

    def complement(self, a: int) -> int:
        return a ^ self.one

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def sup(self, family: Iterable[int]) -> int:
        out = 0
        for a in family:
            out |= a
        return out

    def inf(self, family: Iterable[int]) -> int:
        out = self.one
        for a in family:
            out &= a
        return out

    def label(self, a: int) -> str:
        if self.labels is not None:
            return str(self.labels[a])
        if a == 0:
            return "0"
        if a == self.one:
            return "1"
        return "{" + ",".join(str(i + 1) for i in bits(a)) + "}"

    def __repr__(self):
        return f"B{self.n_atoms}"


def new_algebra(n_atoms: int, bound: int = DEFAULT_ATOM_BOUND, labels=None) -> FinBoolAlg:
    if n_atoms < 0:
        raise ValueError("n_atoms must be non-negative")
    if n_atoms > bound:
        raise BoundExceeded(f"{n_atoms} atoms exceeds bound {bound}")
    return FinBoolAlg(n_atoms, labels)


def algebra_ops(A: FinBoolAlg, a: int, b: int) -> dict:
    """All binary/unary results for the pair ``(a, b)`` in one dictionary."""
    return {
        "meet": A.meet(a, b),
        "join": A.join(a, b),
        "complement": A.complement(a),
        "leq": A.leq(a, b),
    }


# ---------------------------------------------------------------- filters


@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter at atom ``atom`` of ``B<n_atoms>``."""

    n_atoms: int
    atom: int

    @property
    def carrier(self) -> frozenset:
        bit = 1 << self.atom
        return frozenset(a for a in range(1 << self.n_atoms) if a & bit)

    def __contains__(self, a) -> bool:
        return bool(a & (1 << self.atom))

    def __repr__(self):
        return f"u{self.atom + 1}"


IMPROPER = "improper"


def is_filter(A: FinBoolAlg, S: Iterable[int]) -> bool:
    """Upward closed, meet closed and proper (``0`` excluded)."""
    S = frozenset(S)
    if not S or 0 in S:
        # the empty set is not a filter: it misses 1
        return False
    for a in S:
        for b in A.elements():
            if A.leq(a, b) and b not in S:
                return False
        for b in S:
            if a & b not in S:
                return False
    return True


def is_ultrafilter(A: FinBoolAlg, S: Iterable[int]) -> bool:
    """Maximal proper filter, decided by comparing with every larger set."""
    S = frozenset(S)
    if not is_filter(A, S):
        return False
    for extra in A.elements():
        if extra not in S:
            bigger = generated_filter(A, S | {extra})
            if bigger is not IMPROPER:
                return False
    return True


def generated_filter(A: FinBoolAlg, S: Iterable[int]):
    """Least filter containing ``S``, or ``IMPROPER`` when it would hold ``0``."""
    m = A.inf(S)
    if m == 0 and not A.is_degenerate:
        return IMPROPER
    if A.is_degenerate:
        # the only candidate {0} = {1} contains 0
        return IMPROPER
    return frozenset(b for b in A.elements() if A.leq(m, b))


def filter_ops(A: FinBoolAlg, S: Iterable[int]) -> dict:
    S = frozenset(S)
    gen = generated_filter(A, S)
    return {
        "generated_filter": gen,
        "is_filter": is_filter(A, S),
        "is_ultrafilter": is_ultrafilter(A, S),
    }


def ultrafilters(A: FinBoolAlg) -> list[Ultrafilter]:
    return [Ultrafilter(A.n_atoms, i) for i in range(A.n_atoms)]


def ultrafilter_of(A: FinBoolAlg, carrier: Iterable[int]) -> Ultrafilter:
    """Identify a set of elements as one of ``ultrafilters(A)``."""
    carrier = frozenset(carrier)
    for u in ultrafilters(A):
        if u.carrier == carrier:
            return u
    raise ValueError("not an ultrafilter of the algebra")


# ---------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class BoolHom:
    source: FinBoolAlg
    target: FinBoolAlg
    table: tuple
    point_map: tuple = field(compare=False, default=())

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __hash__(self):
        return cached_hash(self, self.source, self.target, self.table)

    def __repr__(self):
        return f"BoolHom({self.source!r}->{self.target!r}, {list(self.table)})"


@dataclass(frozen=True)
class HomCheck:
    is_hom: bool
    preserves_all_suprema: bool
    point_map: Optional[tuple]
    witness: Optional[str] = None


def _check_table_shape(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]):
    if len(table) != A.size:
        raise ShapeMismatch(f"table has {len(table)} entries, expected {A.size}")
    for v in table:
        if not A2.contains(v):
            raise ShapeMismatch(f"table value {v!r} is not an element of {A2!r}")


def hom_failure(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]) -> Optional[str]:
    """First violated Boolean-homomorphism law, or ``None``."""
    if table[A.zero] != A2.zero:
        return "0 not preserved"
    if table[A.one] != A2.one:
        return "1 not preserved"
    for a in A.elements():
        if table[A.complement(a)] != A2.complement(table[a]):
            return f"complement fails at {A.label(a)}"
        for b in A.elements():
            if table[a & b] != table[a] & table[b]:
                return f"meet fails at ({A.label(a)}, {A.label(b)})"
            if table[a | b] != table[a] | table[b]:
                return f"join fails at ({A.label(a)}, {A.label(b)})"
    return None


def preserves_all_suprema(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]) -> bool:
    """Check ``h(sup F) == sup h(F)`` for every family ``F`` of elements.

    Families are enumerated as bit masks over the element list; both sups are
    built incrementally so each family costs O(1).
    """
    k = A.size
    if k > 16:
        # 2^(2^n) families is out of reach; binary joins plus the empty join
        # determine every finite sup
        if table[0] != 0:
            return False
        return all(table[a | b] == table[a] | table[b] for a in A.elements() for b in A.elements())
    src = [0] * (1 << k)
    img = [0] * (1 << k)
    for fam in range(1, 1 << k):
        low = fam & -fam
        i = low.bit_length() - 1
        rest = fam ^ low
        src[fam] = src[rest] | i
        img[fam] = img[rest] | table[i]
        if table[src[fam]] != img[fam]:
            return False
    return table[0] == 0


def point_map_of(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]) -> Optional[tuple]:
    """The function ``g: atoms(A2) -> atoms(A)`` with ``table[a] == g^-1(a)``."""
    g = []
    for j in range(A2.n_atoms):
        owners = [i for i in range(A.n_atoms) if table[1 << i] >> j & 1]
        if len(owners) != 1:
            return None
        g.append(owners[0])
    g = tuple(g)
    if any(table[a] != table_from_point_map(A, A2, g)[a] for a in A.elements()):
        return None
    return g


def table_from_point_map(A: FinBoolAlg, A2: FinBoolAlg, g: Sequence[int]) -> tuple:
    out = []
    for a in A.elements():
        img = 0
        for j, i in enumerate(g):
            if a >> i & 1:
                img |= 1 << j
        out.append(img)
    return tuple(out)


def check_hom(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]) -> HomCheck:
    table = tuple(table)
    _check_table_shape(A, A2, table)
    failure = hom_failure(A, A2, table)
    if failure is not None:
        return HomCheck(False, preserves_all_suprema(A, A2, table), None, failure)
    sup_ok = preserves_all_suprema(A, A2, table)
    g = point_map_of(A, A2, table)
    return HomCheck(True, sup_ok, g)


def make_hom(A: FinBoolAlg, A2: FinBoolAlg, table: Sequence[int]) -> BoolHom:
    res = check_hom(A, A2, table)
    if not res.is_hom:
        raise ValueError(f"not a Boolean homomorphism: {res.witness}")
    return BoolHom(A, A2, tuple(table), res.point_map)


def hom_from_point_map(A: FinBoolAlg, A2: FinBoolAlg, g: Sequence[int]) -> BoolHom:
    g = tuple(g)
    if len(g) != A2.n_atoms or any(not 0 <= i < A.n_atoms for i in g):
        raise ShapeMismatch("point map must send atoms of the target to atoms of the source")
    return BoolHom(A, A2, table_from_point_map(A, A2, g), g)


def all_homs(A: FinBoolAlg, A2: FinBoolAlg) -> list[BoolHom]:
    """Every homomorphism ``A -> A2``, one per point map."""
    return [hom_from_point_map(A, A2, g) for g in product(range(A.n_atoms), repeat=A2.n_atoms)]


def identity_hom(A: FinBoolAlg) -> BoolHom:
    return hom_from_point_map(A, A, tuple(range(A.n_atoms)))


def compose_homs(h2: BoolHom, h1: BoolHom) -> BoolHom:
    """``h2 . h1`` (apply ``h1`` first)."""
    if h1.target != h2.source:
        raise ShapeMismatch("homomorphisms are not composable")
    table = tuple(h2.table[v] for v in h1.table)
    g = tuple(h1.point_map[j] for j in h2.point_map) if h1.point_map is not None and h2.point_map is not None else None
    return BoolHom(h1.source, h2.target, table, g)
