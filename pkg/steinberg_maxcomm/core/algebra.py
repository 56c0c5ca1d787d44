"""
Steinberg algebra arithmetic over discrete groupoids

Elements are finitely supported functions on morphisms with exact rational
coefficients; convolution is (f*g)(z) = sum over z = xy of f(x)g(y).
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import CarrierMismatchError, InvalidSliceError
from .groupoid import MorphismId, subset_inverse, subset_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalarRing:
    """Coefficient ring; arithmetic always runs in Fraction, `integral` restricts inputs"""
    name: str
    is_domain: bool
    integral: bool

    def coerce(self, value: Any) -> Fraction:
        q = to_scalar(value)
        if self.integral and q.denominator != 1:
            raise ValueError(f"{value!r} is not an element of the integers")
        return q


INTEGERS = ScalarRing("int", is_domain=True, integral=True)
RATIONALS = ScalarRing("rat", is_domain=True, integral=False)


def ring_by_name(name: str) -> ScalarRing:
    rings = {INTEGERS.name: INTEGERS, RATIONALS.name: RATIONALS}
    try:
        return rings[name]
    except KeyError:
        raise ValueError(f"unknown scalar ring {name!r}; expected one of {sorted(rings)}") from None


def to_scalar(value: Any) -> Fraction:
    if isinstance(value, (bool, float)) or not isinstance(value, (Rational, str)):
        raise TypeError(f"exact scalar expected, got {type(value).__name__}")
    return Fraction(value)


def format_scalar(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class AlgebraElement:
    """Canonical sparse form: zero coefficients are never stored"""

    __slots__ = ("groupoid", "_coeffs")

    def __init__(self, groupoid, coeffs: Optional[Mapping[MorphismId, Any]] = None):
        cleaned = {}
        for x, c in (coeffs or {}).items():
            q = to_scalar(c)
            if not q:
                continue
            if x not in groupoid:
                raise ValueError(f"{x!r} is not a morphism of {groupoid!r}")
            cleaned[x] = q
        self.groupoid = groupoid
        self._coeffs: Dict[MorphismId, Fraction] = cleaned

    @classmethod
    def zero(cls, groupoid) -> "AlgebraElement":
        return cls(groupoid)

    @classmethod
    def delta(cls, groupoid, x: MorphismId) -> "AlgebraElement":
        """Indicator of the single morphism x"""
        return cls(groupoid, {x: 1})

    def __call__(self, x: MorphismId) -> Fraction:
        return self._coeffs.get(x, Fraction(0))

    @property
    def support(self) -> FrozenSet[MorphismId]:
        return frozenset(self._coeffs)

    def items(self) -> List[Tuple[MorphismId, Fraction]]:
        return [(x, self._coeffs[x]) for x in self.groupoid.ordered(self._coeffs)]

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "AlgebraElement") -> None:
        if self.groupoid != other.groupoid:
            raise CarrierMismatchError(f"{self.groupoid!r} and {other.groupoid!r} differ")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc = dict(self._coeffs)
        for x, c in other._coeffs.items():
            acc[x] = acc.get(x, 0) + c
        return AlgebraElement(self.groupoid, acc)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.groupoid, {x: -c for x, c in self._coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return convolve(self, other)
        q = to_scalar(other)
        return AlgebraElement(self.groupoid, {x: q * c for x, c in self._coeffs.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.groupoid == other.groupoid and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"{c}*[{self.groupoid.label(x)}]" for x, c in self.items())

    def to_dict(self) -> Dict[str, str]:
        """AlgebraElement interchange form {morphism: "numerator/denominator"}"""
        return {self.groupoid.label(x): format_scalar(c) for x, c in self.items()}


def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    f._check(g)
    G = f.groupoid
    by_ran = defaultdict(list)
    for y, gy in g._coeffs.items():
        by_ran[G.ran(y)].append((y, gy))
    acc: Dict[MorphismId, Fraction] = defaultdict(Fraction)
    for x, fx in f._coeffs.items():
        for y, gy in by_ran.get(G.dom(x), ()):
            acc[G.comp(x, y)] += fx * gy
    return AlgebraElement(G, acc)


def commutator(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    return f * g - g * f


@dataclass(frozen=True)
class Slice:
    """Subset on which dom and ran are injective; build with make_slice()"""
    groupoid: Any
    members: FrozenSet[MorphismId]

    def __iter__(self) -> Iterator[MorphismId]:
        return iter(self.groupoid.ordered(self.members))

    def __len__(self) -> int:
        return len(self.members)


def make_slice(G, members: Iterable[MorphismId]) -> Slice:
    members = frozenset(members)
    seen_dom: Dict[MorphismId, MorphismId] = {}
    seen_ran: Dict[MorphismId, MorphismId] = {}
    for x in G.ordered(members):
        if x not in G:
            raise InvalidSliceError(f"{x!r} is not a morphism")
        d, r = G.dom(x), G.ran(x)
        if d in seen_dom:
            raise InvalidSliceError("dom not injective", (seen_dom[d], x))
        if r in seen_ran:
            raise InvalidSliceError("ran not injective", (seen_ran[r], x))
        seen_dom[d] = x
        seen_ran[r] = x
    return Slice(G, members)


def all_slices(G) -> Iterator[Slice]:
    """Every slice of a finite groupoid (partial bijections between units)"""
    units = G.units

    def extend(i, used_dom, chosen):
        if i == len(units):
            yield Slice(G, frozenset(chosen))
            return
        yield from extend(i + 1, used_dom, chosen)
        for x in G.into_unit(units[i]):
            d = G.dom(x)
            if d not in used_dom:
                yield from extend(i + 1, used_dom | {d}, chosen + (x,))

    yield from extend(0, frozenset(), ())


def indicator(B: Slice) -> AlgebraElement:
    return AlgebraElement(B.groupoid, {x: 1 for x in B.members})


def unit_indicator(G, units: Iterable[MorphismId]) -> AlgebraElement:
    """1_U for a set U of units (always a slice)"""
    return AlgebraElement(G, {u: 1 for u in units})


def slice_product(B: Slice, D: Slice) -> Slice:
    return make_slice(B.groupoid, subset_product(B.groupoid, B.members, D.members))


def slice_inverse(B: Slice) -> Slice:
    return make_slice(B.groupoid, subset_inverse(B.groupoid, B.members))


def slice_product_identity_check(B: Slice, D: Slice) -> bool:
    """1_B * 1_D == 1_{BD}"""
    return convolve(indicator(B), indicator(D)) == indicator(slice_product(B, D))


def mul_indicator_right(f: AlgebraElement, B: Slice) -> AlgebraElement:
    """f 1_B(x) = f(x y^-1) for the unique y in B with dom(y) = dom(x), else 0"""
    G = f.groupoid
    if B.groupoid != G:
        raise CarrierMismatchError("slice and element live over different groupoids")
    by_dom = {G.dom(y): y for y in B.members}
    by_ran = {G.ran(y): y for y in B.members}
    values = {}
    for w in f.support:
        y = by_ran.get(G.dom(w))
        if y is None:
            continue
        x = G.comp(w, y)
        partner = by_dom.get(G.dom(x))
        values[x] = f(G.comp(x, G.inv(partner))) if partner is not None else 0
    return AlgebraElement(G, values)


def mul_indicator_left(B: Slice, f: AlgebraElement) -> AlgebraElement:
    """1_B f(x) = f(y^-1 x) for the unique y in B with ran(y) = ran(x), else 0"""
    G = f.groupoid
    if B.groupoid != G:
        raise CarrierMismatchError("slice and element live over different groupoids")
    by_dom = {G.dom(y): y for y in B.members}
    by_ran = {G.ran(y): y for y in B.members}
    values = {}
    for w in f.support:
        y = by_dom.get(G.ran(w))
        if y is None:
            continue
        x = G.comp(y, w)
        partner = by_ran.get(G.ran(x))
        values[x] = f(G.comp(G.inv(partner), x)) if partner is not None else 0
    return AlgebraElement(G, values)


@dataclass(frozen=True)
class ClassFunctionResult:
    ok: bool
    condition: Optional[int] = None
    x: Optional[MorphismId] = None
    z: Optional[MorphismId] = None

    def __bool__(self) -> bool:
        return self.ok


def is_class_function(f: AlgebraElement, X: Iterable[MorphismId]) -> ClassFunctionResult:
    """
    Class function on X: off-isotropy values vanish on X, and
    f(z x z^-1) = f(x) whenever dom(z) = dom(x) = ran(x) and z x z^-1 lies in X.
    """
    G = f.groupoid
    members = frozenset(X)
    for x in G.ordered(members):
        fx = f(x)
        if G.dom(x) != G.ran(x):
            if fx:
                return ClassFunctionResult(False, 1, x)
            continue
        for z in G.from_unit(G.dom(x)):
            conj = G.comp(G.comp(z, x), G.inv(z))
            if conj in members and f(conj) != fx:
                return ClassFunctionResult(False, 2, x, z)
    return ClassFunctionResult(True)


def find_noncentral_witness(f: AlgebraElement) -> AlgebraElement:
    """
    For f on the lazy pair groupoid, return g = 1_{(j,k)} with (i,j) the largest
    point of supp(f) and k beyond every index of supp(f); then (f*g)(i,k) = f(i,j)
    while g*f = 0.
    """
    if not f:
        raise ValueError("the zero element is central")
    i, j = max(f.support)
    k = max(max(x) for x in f.support) + 1
    return AlgebraElement.delta(f.groupoid, (j, k))
