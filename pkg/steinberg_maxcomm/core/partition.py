"""
Unit-space partitions and the maximal commutative subalgebra Z(A) + A21

Given G^(0) = U1 u U2 this module derives U11, U12, U21, U22, V and W,
decomposes elements into the four blocks A_ij, and machine-checks the
interior lemma, the block calculus, the class-function description of the
center, the six-part centralizer lemma and maximality of Z(A) + A21.
"""

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .algebra import (
    AlgebraElement,
    RATIONALS,
    ScalarRing,
    find_noncentral_witness,
    is_class_function,
    make_slice,
    mul_indicator_left,
    mul_indicator_right,
)
from .errors import HypothesisViolation, InvalidPartitionError
from .groupoid import (
    Groupoid,
    LazyPairGroupoid,
    MorphismId,
    has_trivial_isotropy,
    is_topologically_transitive,
    pair_groupoid,
)
from .subspace import (
    MaximalityResult,
    SubspaceBasis,
    center_basis,
    centralizer_basis,
    full_algebra_basis,
    is_maximal_commutative,
)

logger = logging.getLogger(__name__)

BLOCKS = ((1, 1), (1, 2), (2, 1), (2, 2))


@dataclass(frozen=True)
class UnitPartition:
    u1: FrozenSet[MorphismId]
    u2: FrozenSet[MorphismId]

    def side(self, i: int) -> FrozenSet[MorphismId]:
        return self.u1 if i == 1 else self.u2

    def swapped(self) -> "UnitPartition":
        return UnitPartition(self.u2, self.u1)


def make_partition(G: Groupoid, u1: Iterable[MorphismId], u2: Iterable[MorphismId]) -> UnitPartition:
    u1, u2 = frozenset(u1), frozenset(u2)
    units = frozenset(G.units)
    if not u1 or not u2:
        raise InvalidPartitionError("both sides of the partition must be nonempty")
    if u1 & u2:
        raise InvalidPartitionError(f"sides overlap in {sorted(map(G.label, u1 & u2))}")
    stray = (u1 | u2) - units
    if stray:
        raise InvalidPartitionError(f"not units: {sorted(map(G.label, stray))}")
    if u1 | u2 != units:
        raise InvalidPartitionError(f"units not covered: {sorted(map(G.label, units - u1 - u2))}")
    return UnitPartition(u1, u2)


def all_partitions(G: Groupoid) -> List[UnitPartition]:
    """Every ordered split of the unit space into two nonempty sides"""
    units = G.units
    result = []
    for mask in range(1, 2 ** len(units) - 1):
        u1 = frozenset(u for k, u in enumerate(units) if mask >> k & 1)
        result.append(UnitPartition(u1, frozenset(units) - u1))
    return result


@dataclass(frozen=True)
class DerivedPartition:
    u11: FrozenSet[MorphismId]
    u12: FrozenSet[MorphismId]
    u21: FrozenSet[MorphismId]
    u22: FrozenSet[MorphismId]

    @property
    def v(self) -> FrozenSet[MorphismId]:
        return self.u11 | self.u22

    @property
    def w(self) -> FrozenSet[MorphismId]:
        return self.u12 | self.u21

    def to_dict(self, G) -> Dict[str, List[str]]:
        def labels(s):
            return [G.label(u) for u in G.ordered(s)]
        return {
            "U11": labels(self.u11), "U12": labels(self.u12),
            "U21": labels(self.u21), "U22": labels(self.u22),
            "V": labels(self.v), "W": labels(self.w),
        }


def derive(G: Groupoid, p: UnitPartition) -> DerivedPartition:
    """U12 = U1 n ran(dom^-1(U2)), U21 = U2 n ran(dom^-1(U1)), U11 and U22 the rest"""
    make_partition(G, p.u1, p.u2)
    reach_from_2 = frozenset(G.ran(x) for u in p.u2 for x in G.from_unit(u))
    reach_from_1 = frozenset(G.ran(x) for u in p.u1 for x in G.from_unit(u))
    u12 = p.u1 & reach_from_2
    u21 = p.u2 & reach_from_1
    dp = DerivedPartition(u11=p.u1 - u12, u12=u12, u21=u21, u22=p.u2 - u21)
    pieces = (dp.u11, dp.u12, dp.u21, dp.u22)
    assert sum(map(len, pieces)) == len(G.units) and frozenset().union(*pieces) == frozenset(G.units)
    return dp


@dataclass(frozen=True)
class InteriorLemmaResult:
    v_empty: bool
    w_closed: bool
    counterexample: Optional[Tuple[MorphismId, MorphismId]] = None

    @property
    def ok(self) -> bool:
        return self.v_empty and self.w_closed


def check_interior_lemma(G: Groupoid, dp: DerivedPartition) -> InteriorLemmaResult:
    """
    Discrete case: the interior of V is V itself, so part (1) reads V = 0.
    Part (2): dom(x) in W and dom(x) = ran(y) imply dom(xy) in W.
    """
    w = dp.w
    for x in G.morphisms:
        if G.dom(x) not in w:
            continue
        for y in G.into_unit(G.dom(x)):
            if G.dom(G.comp(x, y)) not in w:
                return InteriorLemmaResult(not dp.v, False, (x, y))
    return InteriorLemmaResult(not dp.v, True)


def in_block(G, p: UnitPartition, x: MorphismId, i: int, j: int) -> bool:
    """x lies in U_i G U_j"""
    return G.ran(x) in p.side(i) and G.dom(x) in p.side(j)


def a_block_basis(G: Groupoid, p: UnitPartition, i: int, j: int) -> List[AlgebraElement]:
    """Spanning indicators of A_ij"""
    return [AlgebraElement.delta(G, x) for x in G.morphisms if in_block(G, p, x, i, j)]


@dataclass(frozen=True)
class BlockDecomposition:
    f11: AlgebraElement
    f12: AlgebraElement
    f21: AlgebraElement
    f22: AlgebraElement

    def block(self, i: int, j: int) -> AlgebraElement:
        return getattr(self, f"f{i}{j}")

    def total(self) -> AlgebraElement:
        return self.f11 + self.f12 + self.f21 + self.f22

    @property
    def diagonal(self) -> AlgebraElement:
        return self.f11 + self.f22

    def is_consistent(self, f: AlgebraElement, p: UnitPartition) -> bool:
        """Sum reconstructs f and every block sits in its double coset"""
        G = f.groupoid
        placed = all(in_block(G, p, x, i, j) for i, j in BLOCKS for x in self.block(i, j).support)
        return placed and self.total() == f


def block_decompose(f: AlgebraElement, p: UnitPartition) -> BlockDecomposition:
    """f_ij = 1_{U_i} f 1_{U_j}"""
    G = f.groupoid
    sides = {1: make_slice(G, p.u1), 2: make_slice(G, p.u2)}
    blocks = {
        (i, j): mul_indicator_right(mul_indicator_left(sides[i], f), sides[j])
        for i, j in BLOCKS
    }
    decomposition = BlockDecomposition(blocks[1, 1], blocks[1, 2], blocks[2, 1], blocks[2, 2])
    if not decomposition.is_consistent(f, p):
        raise AssertionError("block decomposition does not reconstruct its input")
    return decomposition


@dataclass
class BlockCalculusResult:
    ok: bool = True
    products_checked: int = 0
    nonzero_products: Dict[str, int] = field(default_factory=dict)
    failures: List[Tuple[str, str, str]] = field(default_factory=list)


def check_block_calculus(G: Groupoid, p: UnitPartition) -> BlockCalculusResult:
    """A_ij A_jk in A_ik, A_ij A_kl = 0 for j != k, on spanning indicators"""
    result = BlockCalculusResult()
    spans = {(i, j): a_block_basis(G, p, i, j) for i, j in BLOCKS}
    for (i, j), (k, l) in product(BLOCKS, repeat=2):
        key = f"A{i}{j}*A{k}{l}"
        for a, b in product(spans[i, j], spans[k, l]):
            ab = a * b
            result.products_checked += 1
            if ab:
                result.nonzero_products[key] = result.nonzero_products.get(key, 0) + 1
            if j != k:
                good = not ab
            else:
                good = all(in_block(G, p, x, i, l) for x in ab.support)
            if not good:
                result.ok = False
                result.failures.append((key, repr(a), repr(b)))
    return result


def check_prime_hypotheses(G: Groupoid, ring: ScalarRing = RATIONALS) -> List[str]:
    """
    Finite discrete case: A_R(G) is prime iff R is a domain, G is topologically
    transitive and every isotropy group is trivial.
    """
    problems = []
    if not ring.is_domain:
        problems.append(f"scalar ring {ring.name} is not an integral domain")
    if not is_topologically_transitive(G):
        problems.append("groupoid is not topologically transitive")
    if not has_trivial_isotropy(G):
        problems.append("groupoid has nontrivial isotropy")
    return problems


def require_prime(G: Groupoid, ring: ScalarRing = RATIONALS) -> None:
    problems = check_prime_hypotheses(G, ring)
    if problems:
        raise HypothesisViolation("A_R(G) is not prime", problems)


def dom_preimage(G: Groupoid, units: FrozenSet[MorphismId]) -> FrozenSet[MorphismId]:
    return frozenset(x for x in G.morphisms if G.dom(x) in units)


@dataclass(frozen=True)
class EquivalenceResult:
    ok: bool
    checked: int
    discrepancy: Optional[AlgebraElement] = None


def _random_element(G: Groupoid, rng: random.Random, center: SubspaceBasis) -> AlgebraElement:
    if rng.random() < 0.5:
        f = AlgebraElement.zero(G)
        for b in center.elements:
            f = f + rng.randint(-3, 3) * b
        return f
    picks = rng.sample(G.morphisms, rng.randint(1, min(4, len(G))))
    return AlgebraElement(G, {x: rng.choice([-2, -1, 1, 2]) for x in picks})


def center_iff_class_on_W(G: Groupoid, dp: DerivedPartition, ring: ScalarRing = RATIONALS,
                          samples: int = 100, seed: int = 0) -> EquivalenceResult:
    """f is central iff f is a class function on dom^-1(W), on indicators, class sums and random elements"""
    require_prime(G, ring)
    if not dp.u12 | dp.u11 or not dp.u21 | dp.u22:
        raise HypothesisViolation("both partition sides must be nonempty")
    center = center_basis(G)
    domain_w = dom_preimage(G, dp.w)
    rng = random.Random(seed)
    candidates = [AlgebraElement.delta(G, x) for x in G.morphisms]
    candidates += list(center.elements)
    candidates += [_random_element(G, rng, center) for _ in range(samples)]
    for f in candidates:
        if center.contains(f) != is_class_function(f, domain_w).ok:
            return EquivalenceResult(False, len(candidates), f)
    return EquivalenceResult(True, len(candidates))


@dataclass
class LemmaItem:
    item: int
    ok: bool = True
    checked: int = 0
    detail: str = ""

    def fail(self, detail: str) -> None:
        if self.ok:
            self.detail = detail
        self.ok = False


@dataclass
class LemmaReport:
    centralizer_dim: int
    items: Dict[int, LemmaItem]

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "centralizer_dim": self.centralizer_dim,
            "items": {str(k): {"ok": v.ok, "checked": v.checked, "detail": v.detail}
                      for k, v in sorted(self.items.items())},
        }


def _check_lemma_element(G: Groupoid, p: UnitPartition, dp: DerivedPartition,
                         f: AlgebraElement, items: Dict[int, LemmaItem]) -> None:
    blocks = block_decompose(f, p)
    h = blocks.diagonal

    items[1].checked += 1
    if blocks.f12:
        items[1].fail(f"f12 = {blocks.f12!r}")

    items[2].checked += 1
    over_w = dom_preimage(G, dp.w)
    for x in (blocks.f11.support | blocks.f22.support) & over_w:
        if G.dom(x) != G.ran(x):
            items[2].fail(f"diagonal block nonzero at non-isotropy {G.label(x)}")

    for i, j in ((1, 2), (2, 1)):
        fii, fjj = blocks.block(i, i), blocks.block(j, j)
        for x in G.morphisms:
            if not in_block(G, p, x, i, i) or G.dom(x) != G.ran(x):
                continue
            conjugators = G.from_unit(G.ran(x))
            items[3].checked += 1
            for z in conjugators:
                if G.ran(z) in p.side(j):
                    conj = G.comp(G.comp(z, x), G.inv(z))
                    if fii(x) != fjj(conj):
                        items[3].fail(f"f{i}{i}({G.label(x)}) != f{j}{j} at conjugate by {G.label(z)}")
            if any(G.ran(y) in p.side(j) for y in conjugators):
                items[4].checked += 1
                for z in conjugators:
                    if h(x) != h(G.comp(G.comp(z, x), G.inv(z))):
                        items[4].fail(f"f11+f22 not conjugation invariant at {G.label(x)}")

    if h:
        items[5].checked += 1
        covered = {G.dom(x) for x in h.support}
        if not dp.w <= covered:
            items[5].fail(f"W not covered by dom(supp(f11+f22)): missing "
                          f"{sorted(map(G.label, dp.w - covered))}")


def lemma_items(G: Groupoid, p: UnitPartition, f: AlgebraElement) -> Dict[int, LemmaItem]:
    """Items (1)-(5) for one element; f need not lie in C(A21)"""
    items = {k: LemmaItem(k) for k in range(1, 6)}
    _check_lemma_element(G, p, derive(G, p), f, items)
    return items


def technical_lemma_suite(G: Groupoid, p: UnitPartition, ring: ScalarRing = RATIONALS,
                          witness_samples: int = 200, window: int = 8, seed: int = 0) -> LemmaReport:
    """Items (1)-(5) on every basis element of C(A21); item (6) on the lazy pair groupoid"""
    require_prime(G, ring)
    dp = derive(G, p)
    full = full_algebra_basis(G)
    c_a21 = centralizer_basis(a_block_basis(G, p, 2, 1), full)
    items = {k: LemmaItem(k) for k in range(1, 7)}
    for f in c_a21.elements:
        _check_lemma_element(G, p, dp, f, items)

    lazy = check_lemma_item6_lazy(EVEN_ODD, witness_samples, window, seed)
    items[6].checked = lazy.checked
    if not lazy.ok:
        items[6].fail(lazy.detail)
    logger.debug("technical lemma on %r: C(A21) has dimension %d", G, c_a21.dim)
    return LemmaReport(c_a21.dim, items)


@dataclass(frozen=True)
class IndexPartition:
    """Partition of the lazy pair groupoid's units by a predicate on indices"""
    name: str
    in_first: Callable[[int], bool]

    def side_of(self, index: int) -> int:
        return 1 if self.in_first(index) else 2


EVEN_ODD = IndexPartition("even/odd", lambda i: i % 2 == 0)


def lazy_blocks(f: AlgebraElement, q: IndexPartition) -> Dict[Tuple[int, int], AlgebraElement]:
    """Block decomposition on the lazy pair groupoid: (i, j) lands in block (side(i), side(j))"""
    blocks = {key: {} for key in BLOCKS}
    for (i, j), c in f.items():
        blocks[q.side_of(i), q.side_of(j)][(i, j)] = c
    return {key: AlgebraElement(f.groupoid, values) for key, values in blocks.items()}


def lazy_a21_witness(f: AlgebraElement, q: IndexPartition) -> Optional[AlgebraElement]:
    """
    If f11 + f22 != 0, return g in A21 with f*g != g*f, so f is not in C(A21).
    g = 1_{(k,i)} or 1_{(j,k)} with k a fresh index on the opposite side.
    """
    blocks = lazy_blocks(f, q)
    diagonal = blocks[1, 1] + blocks[2, 2]
    if not diagonal:
        return None
    i, j = min(diagonal.support)
    side = q.side_of(i)
    top = max(max(x) for x in f.support)
    k = next(m for m in range(top + 1, top + 3) if q.side_of(m) != side)
    target = (k, i) if side == 1 else (j, k)
    return AlgebraElement.delta(f.groupoid, target)


@dataclass(frozen=True)
class LazyCheckResult:
    ok: bool
    checked: int
    detail: str = ""


def _random_lazy_element(rng: random.Random, window: int) -> AlgebraElement:
    G = LazyPairGroupoid()
    picks = {(rng.randint(1, window), rng.randint(1, window)) for _ in range(rng.randint(1, 5))}
    return AlgebraElement(G, {x: rng.choice([-3, -2, -1, 1, 2, 3]) for x in picks})


def check_lemma_item6_lazy(q: IndexPartition = EVEN_ODD, samples: int = 200, window: int = 8,
                           seed: int = 0) -> LazyCheckResult:
    """Every f with nonzero diagonal part fails to centralize A21 on the non-compact family"""
    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        f = _random_lazy_element(rng, window)
        g = lazy_a21_witness(f, q)
        if g is None:
            continue
        checked += 1
        blocks = lazy_blocks(g, q)
        if g != blocks[2, 1] or f * g == g * f:
            return LazyCheckResult(False, checked, f"no valid A21 witness for {f!r}")
    return LazyCheckResult(True, checked)


def check_trivial_center_lazy(samples: int = 200, window: int = 8, seed: int = 0) -> LazyCheckResult:
    """Every nonzero finitely supported f on the lazy pair groupoid has a non-commuting partner"""
    rng = random.Random(seed)
    for n in range(samples):
        f = _random_lazy_element(rng, window)
        g = find_noncentral_witness(f)
        if f * g == g * f:
            return LazyCheckResult(False, n + 1, f"{f!r} commutes with {g!r}")
    return LazyCheckResult(True, samples)


@dataclass(frozen=True)
class MaxCommCandidate:
    basis: SubspaceBasis
    center_dim: int
    block_dim: int
    block: Tuple[int, int] = (2, 1)

    @property
    def dim(self) -> int:
        return self.basis.dim


def build_T(G: Groupoid, p: UnitPartition, ring: ScalarRing = RATIONALS,
            block: Tuple[int, int] = (2, 1)) -> MaxCommCandidate:
    """T = Z(A_R(G)) + A21 (or + A12 with block=(1, 2))"""
    require_prime(G, ring)
    make_partition(G, p.u1, p.u2)
    if block not in ((2, 1), (1, 2)):
        raise ValueError("block must be (2, 1) or (1, 2)")
    center = center_basis(G)
    corner = a_block_basis(G, p, *block)
    basis = SubspaceBasis.span(G, list(center.elements) + corner)
    for a in basis.elements:
        for b in basis.elements:
            if a * b != b * a:
                raise AssertionError("Z(A) + A21 failed to commute")
    return MaxCommCandidate(basis, center.dim, len(corner), block)


@dataclass(frozen=True)
class TheoremReport:
    maximal: bool
    dim_t: int
    dim_ct: int
    center_dim: int
    block_dim: int
    witness: Optional[AlgebraElement] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "maximal": self.maximal,
            "dim_T": self.dim_t,
            "dim_C(T)": self.dim_ct,
            "dim_center": self.center_dim,
            "dim_block": self.block_dim,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        }


def verify_main_theorem(G: Groupoid, p: UnitPartition, ring: ScalarRing = RATIONALS,
                        block: Tuple[int, int] = (2, 1)) -> TheoremReport:
    candidate = build_T(G, p, ring, block)
    result = verify_candidate(G, candidate.basis)
    return TheoremReport(result.ok, result.dim, result.centralizer_dim,
                         candidate.center_dim, candidate.block_dim, result.witness)


def verify_candidate(G: Groupoid, T: SubspaceBasis) -> MaximalityResult:
    """Maximality of an arbitrary commutative candidate in the full algebra"""
    return is_maximal_commutative(T, full_algebra_basis(G))


def jacobson_bound(n: int) -> int:
    """floor(n^2 / 4) + 1"""
    return n * n // 4 + 1


def dimension_profile(n: int) -> Dict[int, int]:
    """dim T for every |U1| = 1..n-1 on pair_groupoid(n)"""
    G = pair_groupoid(n)
    profile = {}
    for size in range(1, n):
        p = make_partition(G, G.units[:size], G.units[size:])
        profile[size] = build_T(G, p).dim
    return profile
