"""Desk-scale Ramsey machinery.

Covers exhaustive search for monochromatic ``k``-sets, exact verification of
small Ramsey numbers, the layered ("iterated") Ramsey search over colorings
of all nonempty subsets, the recursive bound for the layered search, and the
two-class subset coloring ``|S| in S`` that defeats any infinite version of it.

``r``-subsets are ranked in colex order (the combinatorial number system):
``{c_1 < ... < c_r}`` has rank ``sum(comb(c_i - 1, i))``.  Nonempty subsets of
``{1..n}`` are ranked by bitmask: ``S`` sits at index ``sum(2**(x-1)) - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional, Sequence

from .core import FiniteSet
from .errors import BudgetExceeded, PreconditionError

DEFAULT_RAMSEY_BUDGET = 1 << 22

RamseyUpper = Callable[[int, int, int], int]


def subset_rank(subset: Sequence[int]) -> int:
    """Colex rank of a sorted subset of ``{1..n}``."""
    return sum(comb(c - 1, i) for i, c in enumerate(subset, start=1))


def subset_unrank(rank: int, r: int) -> tuple[int, ...]:
    out = []
    for i in range(r, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        out.append(c + 1)
        rank -= comb(c, i)
    return tuple(reversed(out))


def mask_of(subset: Iterable[int]) -> int:
    m = 0
    for x in subset:
        m |= 1 << (x - 1)
    return m


def subset_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


@dataclass(frozen=True)
class UniformColoring:
    """A ``t``-coloring of the ``r``-subsets of ``{1..n}``, indexed by colex rank."""

    n: int
    r: int
    t: int
    assign: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assign", tuple(int(c) for c in self.assign))
        if not 1 <= self.r <= self.n:
            raise PreconditionError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if self.t < 1:
            raise PreconditionError("class count must be >= 1")
        if len(self.assign) != comb(self.n, self.r):
            raise PreconditionError(
                f"expected {comb(self.n, self.r)} labels, got {len(self.assign)}"
            )
        if any(not 1 <= c <= self.t for c in self.assign):
            raise PreconditionError(f"class labels must lie in [1, {self.t}]")

    @classmethod
    def from_rule(cls, n: int, r: int, t: int, rule: Callable[[tuple[int, ...]], int]):
        labels = [0] * comb(n, r)
        for s in combinations(range(1, n + 1), r):
            labels[subset_rank(s)] = rule(s)
        return cls(n, r, t, tuple(labels))

    def color(self, subset: Sequence[int]) -> int:
        return self.assign[subset_rank(sorted(subset))]


class SubsetColoring:
    """A ``t``-coloring of every nonempty subset of ``{1..n}``.

    Stored as a rule on sorted tuples so that large ground sets never need to
    be materialised; ``labels()`` produces the bitmask-ordered table.
    """

    def __init__(self, n: int, t: int, rule: Callable[[tuple[int, ...]], int]):
        if n < 1 or t < 1:
            raise PreconditionError(f"need n >= 1 and t >= 1, got n={n}, t={t}")
        self.n = n
        self.t = t
        self._rule = rule

    @classmethod
    def from_labels(cls, n: int, t: int, labels: Sequence[int]) -> SubsetColoring:
        labels = tuple(int(c) for c in labels)
        if len(labels) != 2**n - 1:
            raise PreconditionError(f"expected {2**n - 1} labels, got {len(labels)}")
        if any(not 1 <= c <= t for c in labels):
            raise PreconditionError(f"class labels must lie in [1, {t}]")
        return cls(n, t, lambda s: labels[mask_of(s) - 1])

    def __call__(self, subset: Iterable[int]) -> int:
        return self._rule(tuple(sorted(subset)))

    def labels(self) -> tuple[int, ...]:
        return tuple(self._rule(subset_of_mask(m)) for m in range(1, 2**self.n))


@dataclass(frozen=True)
class IteratedWitness:
    """``K`` plus ``classes[j - 1]``, the common class of the ``j``-subsets of ``K``.

    Layers that were not constrained carry ``None``.
    """

    K: FiniteSet
    classes: tuple[Optional[int], ...]


def find_monochromatic(uc: UniformColoring, k: int) -> Optional[FiniteSet]:
    """Lexicographically least ``k``-subset whose ``r``-subsets share a class.

    ``None`` is a proof of absence: every ``k``-subset is examined.
    """
    if k < uc.r:
        raise PreconditionError(f"k = {k} is smaller than r = {uc.r}")
    for K in combinations(range(1, uc.n + 1), k):
        it = combinations(K, uc.r)
        first = uc.assign[subset_rank(next(it))]
        if all(uc.assign[subset_rank(s)] == first for s in it):
            return FiniteSet(K)
    return None


def ramsey_avoider(
    k: int, r: int, t: int, n: int, budget: int = DEFAULT_RAMSEY_BUDGET
) -> Optional[UniformColoring]:
    """A ``t``-coloring of the ``r``-subsets of ``[n]`` with no monochromatic ``k``-set.

    Returns ``None`` when none exists.  The search colors ``r``-subsets in colex
    order, labels classes by first appearance, and checks each ``k``-subset as
    soon as its last ``r``-subset is colored.
    """
    if r < 1 or k < r:
        raise PreconditionError(f"need 1 <= r <= k, got k={k}, r={r}")
    if t < 1:
        raise PreconditionError("class count must be >= 1")
    if n < r:
        raise PreconditionError(f"need n >= r, got n={n}, r={r}")
    size = comb(n, r)
    if t**size > budget:
        raise BudgetExceeded(f"{t}^{size} colorings exceed the budget of {budget}")

    # closing[j]: rank tuples of k-subsets whose colex-last r-subset has rank j
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(size)]
    for K in combinations(range(1, n + 1), k):
        ranks = tuple(subset_rank(s) for s in combinations(K, r))
        closing[max(ranks)].append(ranks)

    assign = [0] * size

    def extend(j: int, used: int) -> bool:
        if j == size:
            return True
        for c in range(1, min(used + 1, t) + 1):
            assign[j] = c
            if all(any(assign[q] != c for q in ranks) for ranks in closing[j]):
                if extend(j + 1, max(used, c)):
                    return True
        assign[j] = 0
        return False

    if extend(0, 0):
        return UniformColoring(n, r, t, tuple(assign))
    return None


def verify_ramsey(k: int, r: int, t: int, n: int, budget: int = DEFAULT_RAMSEY_BUDGET) -> bool:
    """True iff every ``t``-coloring of the ``r``-subsets of ``[n]`` has a monochromatic ``k``-set.

    Raises ``BudgetExceeded`` instead of answering when ``t**comb(n, r)`` is
    larger than ``budget``.
    """
    if n < k:
        if k < r or r < 1:
            raise PreconditionError(f"need 1 <= r <= k, got k={k}, r={r}")
        return False
    return ramsey_avoider(k, r, t, n, budget) is None


def _layered_search(
    n: int,
    size: int,
    layers: Sequence[int],
    classify: Callable[[tuple[int, ...]], int],
    candidates: Optional[Sequence[int]] = None,
    node_cap: Optional[int] = None,
) -> tuple[Optional[tuple[int, ...]], dict[int, int], int]:
    """Depth-first search for ``size`` elements whose chosen layers are monochromatic.

    Elements are tried in the order of ``candidates`` (default ``1..n``) and a
    chosen set is always extended by later candidates, so with the default
    order the first hit is the lexicographically least one.  Returns
    ``(elements, layer_classes, nodes)``; raises ``BudgetExceeded`` when
    ``node_cap`` nodes were expanded without a verdict.
    """
    cands = list(range(1, n + 1)) if candidates is None else list(candidates)
    layers = sorted(set(layers))
    chosen: list[int] = []
    layer_class: dict[int, int] = {}
    nodes = 0

    def consistent(x: int) -> list[int]:
        # returns layers newly fixed by x, or raises _Clash
        fixed = []
        m = len(chosen)
        for j in layers:
            if j > m + 1:
                break
            for rest in combinations(chosen, j - 1):
                c = classify(tuple(sorted(rest + (x,))))
                want = layer_class.get(j)
                if want is None:
                    layer_class[j] = c
                    fixed.append(j)
                elif c != want:
                    for jj in fixed:
                        del layer_class[jj]
                    return None
        return fixed

    def dfs(start: int) -> bool:
        nonlocal nodes
        if len(chosen) == size:
            return True
        need = size - len(chosen)
        for idx in range(start, len(cands) - need + 1):
            nodes += 1
            if node_cap is not None and nodes > node_cap:
                raise BudgetExceeded(f"layered search exceeded {node_cap} nodes", nodes)
            x = cands[idx]
            fixed = consistent(x)
            if fixed is None:
                continue
            chosen.append(x)
            if dfs(idx + 1):
                return True
            chosen.pop()
            for j in fixed:
                del layer_class[j]
        return False

    if size < 1 or size > len(cands):
        return None, {}, 0
    if dfs(0):
        return tuple(chosen), dict(layer_class), nodes
    return None, {}, nodes


def find_iterated_witness(
    sc: SubsetColoring, k: int, r: int, layers: Optional[Iterable[int]] = None
) -> Optional[IteratedWitness]:
    """Lexicographically least ``k``-subset whose constrained layers are monochromatic.

    Layers default to ``1..r``.  ``None`` means no ``k``-subset of ``{1..n}``
    qualifies (the search is exhaustive).
    """
    if r < 1 or k < r:
        raise PreconditionError(f"need 1 <= r <= k, got k={k}, r={r}")
    layers = list(range(1, r + 1)) if layers is None else sorted(set(layers))
    bad = [j for j in layers if not 1 <= j <= r]
    if bad:
        raise PreconditionError(f"layers {bad} outside [1, {r}]")
    K, classes, _ = _layered_search(sc.n, k, layers, sc)
    if K is None:
        return None
    return IteratedWitness(FiniteSet(K), tuple(classes.get(j) for j in range(1, r + 1)))


def known_ramsey_upper(k: int, r: int, t: int) -> int:
    """Exact ``R(k, r, t)`` for the cases this package can vouch for.

    Pigeonhole for ``r == 1``, trivial values for ``t == 1`` and ``k == r``, and
    the exhaustively verified ``R(3, 2, 2) == 6``.  Anything else raises
    ``LookupError``; wrap with :func:`table_ramsey_upper` to add more.
    """
    if r < 1 or k < r or t < 1:
        raise PreconditionError(f"need 1 <= r <= k and t >= 1, got k={k}, r={r}, t={t}")
    if r == 1:
        return (k - 1) * t + 1
    if t == 1 or k == r:
        return k
    if (k, r, t) == (3, 2, 2):
        return 6
    raise LookupError(f"no known upper bound for R({k}, {r}, {t})")


def table_ramsey_upper(
    table: dict[tuple[int, int, int], int], fallback: Optional[RamseyUpper] = None
) -> RamseyUpper:
    """Upper-bound function backed by a lookup table, then ``fallback``."""

    def upper(k: int, r: int, t: int) -> int:
        try:
            return known_ramsey_upper(k, r, t)
        except LookupError:
            pass
        if (k, r, t) in table:
            return table[(k, r, t)]
        if fallback is not None:
            return fallback(k, r, t)
        raise LookupError(f"no upper bound for R({k}, {r}, {t})")

    return upper


def lemma1_bound(k: int, r: int, t: int, ramsey_upper: RamseyUpper = known_ramsey_upper) -> int:
    """Ground-set size guaranteeing a ``k``-set with layers ``1..r`` monochromatic.

    ``N(k, 1, t) = k*t + 1`` and ``N(k, r, t) = N(ramsey_upper(k, r, t), r - 1, t)``.
    """
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    if k < r or t < 1:
        raise PreconditionError(f"need k >= r and t >= 1, got k={k}, r={r}, t={t}")
    while r > 1:
        k = int(ramsey_upper(k, r, t))
        r -= 1
    return k * t + 1


def size_membership_coloring(n: int) -> SubsetColoring:
    """Class 1 iff the subset's cardinality is one of its elements, else class 2."""
    return SubsetColoring(n, 2, lambda s: 1 if len(s) in s else 2)


def refute_levels(K: Iterable[int]) -> set[int]:
    """Layers of ``K`` that show both classes under :func:`size_membership_coloring`.

    Layer ``j`` is mixed exactly when ``j`` is in ``K`` (some ``j``-subset
    contains it) and ``K`` has ``j`` other elements (some ``j``-subset avoids it).
    """
    K = K if isinstance(K, FiniteSet) else FiniteSet.of(K)
    if not K:
        raise PreconditionError("K must be nonempty")
    return {j for j in K if j <= len(K) - 1}
