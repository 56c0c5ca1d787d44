"""
Finite discrete groupoids: representation, axiom validation and test families
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import InvalidGroupoidError

MorphismId = Hashable
SubsetOfG = FrozenSet[MorphismId]

logger = logging.getLogger(__name__)


def _ordered(ids: Iterable[MorphismId]) -> Tuple[MorphismId, ...]:
    ids = list(ids)
    try:
        return tuple(sorted(ids))
    except TypeError:
        return tuple(sorted(ids, key=repr))


def morphism_label(x: Any) -> str:
    """Stable text form of a morphism id, used by the JSON documents"""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(morphism_label(part) for part in x) + ")"
    return str(x)


class Groupoid:
    """
    Finite groupoid with an explicit partial composition table.

    Units are the identity morphisms. Construction never checks the axioms,
    so that broken tables can still be handed to validate().
    """

    is_finite = True

    def __init__(self, units: Iterable[MorphismId], dom: Mapping, ran: Mapping,
                 inv: Mapping, comp: Mapping, name: str = ""):
        self.name = name
        self._dom = dict(dom)
        self._ran = dict(ran)
        self._inv = dict(inv)
        self._comp = dict(comp)
        self._units = _ordered(set(units))
        self._unit_set = frozenset(self._units)
        self._morphisms = _ordered(set(self._dom) | set(self._ran) | set(self._inv) | self._unit_set)
        self._index = {x: i for i, x in enumerate(self._morphisms)}
        self._labels = {morphism_label(x): x for x in self._morphisms}

        self._by_dom: Dict[MorphismId, List[MorphismId]] = defaultdict(list)
        self._by_ran: Dict[MorphismId, List[MorphismId]] = defaultdict(list)
        for x in self._morphisms:
            if x in self._dom:
                self._by_dom[self._dom[x]].append(x)
            if x in self._ran:
                self._by_ran[self._ran[x]].append(x)

    def __repr__(self) -> str:
        return f"Groupoid({self.name or 'anonymous'}, {len(self)} morphisms, {len(self._units)} units)"

    def __len__(self) -> int:
        return len(self._morphisms)

    def __iter__(self):
        return iter(self._morphisms)

    def __contains__(self, x) -> bool:
        return x in self._index

    @property
    def morphisms(self) -> Tuple[MorphismId, ...]:
        return self._morphisms

    @property
    def units(self) -> Tuple[MorphismId, ...]:
        return self._units

    @property
    def comp_table(self) -> Mapping[Tuple[MorphismId, MorphismId], MorphismId]:
        return dict(self._comp)

    def is_unit(self, x: MorphismId) -> bool:
        return x in self._unit_set

    def dom(self, x: MorphismId) -> MorphismId:
        return self._dom[x]

    def ran(self, x: MorphismId) -> MorphismId:
        return self._ran[x]

    def inv(self, x: MorphismId) -> MorphismId:
        return self._inv[x]

    def composable(self, x: MorphismId, y: MorphismId) -> bool:
        return self._dom[x] == self._ran[y]

    def comp(self, x: MorphismId, y: MorphismId) -> MorphismId:
        try:
            return self._comp[(x, y)]
        except KeyError:
            raise InvalidGroupoidError(f"{x!r} and {y!r} are not composable") from None

    def from_unit(self, u: MorphismId) -> Tuple[MorphismId, ...]:
        """All z with dom(z) = u"""
        return tuple(self._by_dom.get(u, ()))

    def into_unit(self, u: MorphismId) -> Tuple[MorphismId, ...]:
        """All z with ran(z) = u"""
        return tuple(self._by_ran.get(u, ()))

    def sort_key(self, x: MorphismId) -> int:
        return self._index[x]

    def ordered(self, xs: Iterable[MorphismId]) -> List[MorphismId]:
        return sorted(xs, key=self._index.__getitem__)

    def label(self, x: MorphismId) -> str:
        return morphism_label(x)

    def by_label(self, text: str) -> MorphismId:
        return self._labels[text]

    def to_document(self) -> Dict[str, Any]:
        """Groupoid interchange document"""
        return {
            "units": [self.label(u) for u in self._units],
            "morphisms": [
                {
                    "id": self.label(x),
                    "dom": self.label(self._dom[x]),
                    "ran": self.label(self._ran[x]),
                    "inv": self.label(self._inv[x]),
                }
                for x in self._morphisms
                if x in self._dom and x in self._ran and x in self._inv
            ],
            "comp": [
                [self.label(x), self.label(y), self.label(xy)]
                for (x, y), xy in sorted(self._comp.items(),
                                         key=lambda item: (self._index.get(item[0][0], -1),
                                                           self._index.get(item[0][1], -1)))
            ],
        }


class LazyPairGroupoid:
    """
    Pair groupoid on the positive integers, materialised on demand.

    Morphisms are pairs (i, j); the unit space is infinite, hence not compact.
    """

    is_finite = False
    name = "pair(N)"

    def __eq__(self, other) -> bool:
        return isinstance(other, LazyPairGroupoid)

    def __hash__(self) -> int:
        return hash(LazyPairGroupoid)

    def __repr__(self) -> str:
        return "LazyPairGroupoid()"

    def __contains__(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == 2
                and all(isinstance(i, int) and i >= 1 for i in x))

    def is_unit(self, x) -> bool:
        return x in self and x[0] == x[1]

    def dom(self, x):
        return (x[1], x[1])

    def ran(self, x):
        return (x[0], x[0])

    def inv(self, x):
        return (x[1], x[0])

    def composable(self, x, y) -> bool:
        return x[1] == y[0]

    def comp(self, x, y):
        if x[1] != y[0]:
            raise InvalidGroupoidError(f"{x!r} and {y!r} are not composable")
        return (x[0], y[1])

    def sort_key(self, x):
        return x

    def ordered(self, xs):
        return sorted(xs)

    def label(self, x) -> str:
        return morphism_label(x)

    def units_up_to(self, n: int) -> Tuple[Tuple[int, int], ...]:
        return tuple((i, i) for i in range(1, n + 1))


@dataclass(frozen=True)
class Violation:
    """One failed groupoid axiom"""
    code: str
    message: str
    morphisms: Tuple[Any, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "message": self.message,
            "morphisms": [morphism_label(x) for x in self.morphisms],
        }


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, *morphisms) -> None:
        self.violations.append(Violation(code, message, tuple(morphisms)))

    def codes(self) -> List[str]:
        return sorted({v.code for v in self.violations})

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def validate(G: Groupoid) -> ValidationReport:
    """Check every groupoid axiom; violations are collected, never raised"""
    report = ValidationReport()
    dom, ran, inv, comp = G._dom, G._ran, G._inv, G._comp
    units = set(G.units)

    if not units:
        report.add("no units", "unit space is empty")

    for u in G.units:
        if dom.get(u) != u or ran.get(u) != u:
            report.add("unit not an identity", "dom(u) and ran(u) must equal u", u)
        if inv.get(u) != u:
            report.add("unit not self-inverse", "inv(u) must equal u", u)

    structured = []
    for x in G.morphisms:
        if x not in dom or x not in ran or x not in inv:
            report.add("missing structure", "morphism lacks dom, ran or inv", x)
            continue
        structured.append(x)
        if dom[x] not in units or ran[x] not in units:
            report.add("endpoint not a unit", "dom(x) and ran(x) must be units", x)
        if inv[x] not in G:
            report.add("inverse not a morphism", "inv(x) is not a morphism", x)

    for x, y in product(structured, repeat=2):
        defined = (x, y) in comp
        composable = dom[x] == ran[y]
        if defined and not composable:
            report.add("illegal composability", "comp(x,y) defined but dom(x) != ran(y)", x, y)
        elif composable and not defined:
            report.add("missing composite", "dom(x) = ran(y) but comp(x,y) undefined", x, y)
        elif defined:
            xy = comp[(x, y)]
            if xy not in dom or xy not in ran:
                report.add("composite not a morphism", "comp(x,y) is not a morphism", x, y)
            elif dom[xy] != dom[y] or ran[xy] != ran[x]:
                report.add("composite endpoints", "dom(xy) != dom(y) or ran(xy) != ran(x)", x, y)

    for x in structured:
        d, r = dom[x], ran[x]
        if comp.get((x, d)) != x or comp.get((r, x)) != x:
            report.add("identity law", "x dom(x) = x = ran(x) x fails", x)
        i = inv[x]
        if comp.get((i, x)) != d or comp.get((x, i)) != r:
            report.add("inverse law", "inv(x) x = dom(x) or x inv(x) = ran(x) fails", x)

    for (x, y), xy in comp.items():
        if y not in dom:
            continue
        for z in G.into_unit(dom[y]):
            yz = comp.get((y, z))
            if yz is None:
                continue
            left = comp.get((xy, z))
            right = comp.get((x, yz))
            if left is None or left != right:
                report.add("associativity", "(xy)z != x(yz)", x, y, z)

    logger.debug("validated %r: %d violations", G, len(report.violations))
    return report


def pair_groupoid(n: int) -> Groupoid:
    """Pair groupoid on {1..n}; its algebra is the n x n matrix algebra"""
    if not isinstance(n, int) or n < 1:
        raise InvalidGroupoidError("pair_groupoid needs n >= 1")
    idx = range(1, n + 1)
    morphisms = [(i, j) for i in idx for j in idx]
    return Groupoid(
        units=[(i, i) for i in idx],
        dom={(i, j): (j, j) for i, j in morphisms},
        ran={(i, j): (i, i) for i, j in morphisms},
        inv={(i, j): (j, i) for i, j in morphisms},
        comp={((i, j), (j, k)): (i, k) for i in idx for j in idx for k in idx},
        name=f"pair({n})",
    )


def cyclic_group_table(n: int) -> List[List[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def group_groupoid(table: Sequence[Sequence[int]], labels: Optional[Sequence[Hashable]] = None,
                   name: str = "") -> Groupoid:
    """One-unit groupoid of a finite group given by its Cayley table (entries are row indices)"""
    n = len(table)
    if n == 0:
        raise InvalidGroupoidError("empty multiplication table")
    labels = list(labels) if labels is not None else list(range(n))
    if len(labels) != n or len(set(labels)) != n:
        raise InvalidGroupoidError("labels must be distinct and match the table size")
    for a, row in enumerate(table):
        if len(row) != n or any(not isinstance(c, int) or not 0 <= c < n for c in row):
            raise InvalidGroupoidError(f"row {a} is not a row of an {n}x{n} table")
        if len(set(row)) != n:
            raise InvalidGroupoidError(f"row {a} repeats an entry; table is not invertible")
    for b in range(n):
        if len({table[a][b] for a in range(n)}) != n:
            raise InvalidGroupoidError(f"column {b} repeats an entry; table is not invertible")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InvalidGroupoidError(f"table is not associative at ({a}, {b}, {c})")
    identities = [e for e in range(n) if all(table[e][a] == a and table[a][e] == a for a in range(n))]
    if not identities:
        raise InvalidGroupoidError("table has no identity element")
    e = identities[0]
    inverse = {a: next(b for b in range(n) if table[a][b] == e) for a in range(n)}

    unit = labels[e]
    return Groupoid(
        units=[unit],
        dom={labels[a]: unit for a in range(n)},
        ran={labels[a]: unit for a in range(n)},
        inv={labels[a]: labels[inverse[a]] for a in range(n)},
        comp={(labels[a], labels[b]): labels[table[a][b]] for a in range(n) for b in range(n)},
        name=name or f"group({n})",
    )


def disjoint_union(G1: Groupoid, G2: Groupoid) -> Groupoid:
    """Components tagged 0 and 1; no morphisms between them"""
    if not G1.units or not G2.units:
        raise InvalidGroupoidError("disjoint_union needs two groupoids with nonempty unit spaces")
    units, dom, ran, inv, comp = [], {}, {}, {}, {}
    for tag, G in enumerate((G1, G2)):
        units.extend((tag, u) for u in G.units)
        for x in G.morphisms:
            dom[(tag, x)] = (tag, G.dom(x))
            ran[(tag, x)] = (tag, G.ran(x))
            inv[(tag, x)] = (tag, G.inv(x))
        for (x, y), xy in G.comp_table.items():
            comp[((tag, x), (tag, y))] = (tag, xy)
    return Groupoid(units, dom, ran, inv, comp, name=f"{G1.name}+{G2.name}")


def is_topologically_transitive(G: Groupoid) -> bool:
    """Discrete case: every ordered pair of units is joined by a morphism"""
    if not G.units:
        return False
    u0 = G.units[0]
    reached = {G.ran(x) for x in G.from_unit(u0)}
    return reached == set(G.units)


def hom_set(G: Groupoid, u: MorphismId, v: MorphismId) -> SubsetOfG:
    """All x with dom(x) = u and ran(x) = v"""
    if not G.is_unit(u) or not G.is_unit(v):
        raise ValueError(f"hom_set needs units, got {u!r} and {v!r}")
    return frozenset(x for x in G.from_unit(u) if G.ran(x) == v)


def isotropy(G: Groupoid) -> Tuple[MorphismId, ...]:
    return tuple(x for x in G.morphisms if G.dom(x) == G.ran(x))


def has_trivial_isotropy(G: Groupoid) -> bool:
    return all(G.is_unit(x) for x in isotropy(G))


def conjugacy_classes(G: Groupoid) -> List[SubsetOfG]:
    """Classes of the isotropy part under x ~ z x z^-1, dom(z) = dom(x)"""
    seen = set()
    classes = []
    for x in isotropy(G):
        if x in seen:
            continue
        cls = frozenset(G.comp(G.comp(z, x), G.inv(z)) for z in G.from_unit(G.dom(x)))
        classes.append(cls)
        seen |= cls
    return classes


def subset_product(G, X: Iterable[MorphismId], Y: Iterable[MorphismId]) -> SubsetOfG:
    """XY = {xy | x in X, y in Y, dom(x) = ran(y)}"""
    by_ran = defaultdict(list)
    for y in Y:
        by_ran[G.ran(y)].append(y)
    return frozenset(G.comp(x, y) for x in X for y in by_ran.get(G.dom(x), ()))


def subset_inverse(G, X: Iterable[MorphismId]) -> SubsetOfG:
    return frozenset(G.inv(x) for x in X)
