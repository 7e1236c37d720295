"""Exact generalized Schur numbers by canonical depth-first coloring search.

``J(t, n)`` is the least ``N`` such that every ``t``-coloring of ``[N]`` has a
monochromatic witness of length ``n`` (all nonempty subset sums in one class).
The search grows witness-free colorings one integer at a time.  Colorings are
kept in first-appearance label order, and when ``N`` is colored only the
witnesses whose full sum equals ``N`` are new, so only those are checked.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional

from .core import GroundColoring, SumsetWitness
from .errors import BudgetExceeded, PreconditionError
from .ramsey import RamseyUpper, known_ramsey_upper, lemma1_bound

DEFAULT_BUDGET = 50_000_000


def witness_with_total(
    total: int, class_mask: int, n: int, distinct: bool = False
) -> Optional[tuple[int, ...]]:
    """Least (lexicographic) nondecreasing ``n``-sequence with sum ``total`` and all subset sums in ``class_mask``.

    With ``distinct`` the sequence must be strictly increasing.
    """
    if n < 1 or total < 1:
        return None
    if not class_mask >> total & 1:
        return None
    step = 1 if distinct else 0
    seq: list[int] = []

    def extend(sums: int, low: int, left: int, slots: int) -> bool:
        if slots == 1:
            x = left
            if x < low:
                return False
            new = sums | (sums << x) | (1 << x)
            if new & ~class_mask:
                return False
            seq.append(x)
            return True
        x = low
        # remaining ``slots`` entries are at least x, x+step, ...
        while x * slots + step * slots * (slots - 1) // 2 <= left:
            if class_mask >> x & 1:
                new = sums | (sums << x) | (1 << x)
                if not new & ~class_mask:
                    seq.append(x)
                    if extend(new, x + step, left - x, slots - 1):
                        return True
                    seq.pop()
            x += 1
        return False

    if extend(0, 1, total, n):
        return tuple(seq)
    return None


def find_witness(
    gc: GroundColoring, n: int, distinct: bool = False, max_total: Optional[int] = None
) -> Optional[SumsetWitness]:
    """First witness in order of increasing total sum, then lexicographic."""
    limit = gc.n_max if max_total is None else min(max_total, gc.n_max)
    masks = gc.class_masks
    for total in range(1, limit + 1):
        c = gc.assign[total - 1]
        a = witness_with_total(total, masks[c], n, distinct)
        if a is not None:
            return SumsetWitness(a, c)
    return None


def is_witness_free(gc: GroundColoring, n: int, distinct: bool = False) -> bool:
    return find_witness(gc, n, distinct) is None


@dataclass(frozen=True)
class SearchProblem:
    t: int
    n: int
    distinct: bool = False
    cap: int = 200
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.t < 1 or self.n < 1 or self.cap < 1:
            raise PreconditionError(f"need t, n, cap >= 1: {self}")
        if self.budget < 1:
            raise PreconditionError("budget must be positive")


@dataclass
class SearchOutcome:
    """Result of :func:`compute_J`.

    ``value`` is ``None`` when a witness-free coloring of ``[cap]`` exists; in
    that case ``extremal`` is such a coloring.  Otherwise ``extremal`` colors
    ``[value - 1]`` (it is ``None`` when ``value == 1``, the empty coloring).
    """

    problem: SearchProblem
    value: Optional[int]
    extremal: Optional[GroundColoring]
    nodes: int
    seconds: float = 0.0

    @property
    def exceeds_cap(self) -> bool:
        return self.value is None

    def row(self) -> dict:
        p = self.problem
        return {
            "t": p.t,
            "n": p.n,
            "distinct": p.distinct,
            "value": self.value if self.value is not None else f">{p.cap}",
            "nodes": self.nodes,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class _DFSState:
    t: int
    n: int
    distinct: bool
    cap: int
    budget: int
    assign: list[int] = field(default_factory=list)
    masks: list[int] = field(default_factory=list)
    nodes: int = 0
    best: list[int] = field(default_factory=list)
    # when set, colorings of [leaf_depth] are collected instead of extended
    leaf_depth: Optional[int] = None
    leaves: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if not self.masks:
            self.masks = [0] * (self.t + 1)

    def run(self) -> bool:
        """Extend ``assign`` as deep as possible; True once ``cap`` is reached."""
        N = len(self.assign) + 1
        if len(self.assign) > len(self.best):
            self.best = list(self.assign)
        if N > self.cap:
            return True
        if self.leaf_depth is not None and N > self.leaf_depth:
            self.leaves.append(list(self.assign))
            return False
        used = max(self.assign, default=0)
        for c in range(1, min(used + 1, self.t) + 1):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"search exceeded {self.budget} nodes", self.nodes)
            mask = self.masks[c] | (1 << N)
            if witness_with_total(N, mask, self.n, self.distinct) is not None:
                continue
            old = self.masks[c]
            self.masks[c] = mask
            self.assign.append(c)
            done = self.run()
            self.assign.pop()
            self.masks[c] = old
            if done:
                return True
        return False


def _state_from_prefix(p: SearchProblem, prefix: list[int], budget: int) -> _DFSState:
    st = _DFSState(p.t, p.n, p.distinct, p.cap, budget)
    for x, c in enumerate(prefix, start=1):
        st.masks[c] |= 1 << x
    st.assign = list(prefix)
    return st


def _run_shard(args: tuple[SearchProblem, list[int], int]) -> tuple[list[int], int, bool]:
    p, prefix, budget = args
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * p.cap + 1000))
    st = _state_from_prefix(p, prefix, budget)
    done = st.run()
    return st.best, st.nodes, done


def _prefixes(p: SearchProblem, depth: int) -> tuple[list[list[int]], list[int], int]:
    """Witness-free canonical colorings of ``[depth]`` in DFS order, plus the deepest one seen."""
    st = _DFSState(p.t, p.n, p.distinct, p.cap, p.budget, leaf_depth=depth)
    st.run()
    return st.leaves, st.best, st.nodes


def _search(p: SearchProblem, jobs: int = 1) -> tuple[list[int], int]:
    """Deepest witness-free coloring (first in DFS order), capped at ``p.cap``."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * p.cap + 1000))
    if jobs <= 1:
        st = _DFSState(p.t, p.n, p.distinct, p.cap, p.budget)
        st.run()
        return st.best, st.nodes

    depth = min(p.cap - 1, 8)
    prefixes, best, nodes = _prefixes(p, depth)
    if not prefixes:
        return best, nodes
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_shard, [(p, pre, p.budget) for pre in prefixes]))
    for shard_best, shard_nodes, done in results:
        nodes += shard_nodes
        if len(shard_best) > len(best):
            best = shard_best
        if done:
            # shards after the first one to hit the cap do not change the answer
            break
    return best, nodes


def compute_J(p: SearchProblem, jobs: int = 1) -> SearchOutcome:
    """Least ``N <= cap`` such that every ``t``-coloring of ``[N]`` has a length-``n`` witness."""
    start = time.perf_counter()
    best, nodes = _search(p, jobs)
    elapsed = time.perf_counter() - start
    if len(best) >= p.cap:
        return SearchOutcome(p, None, GroundColoring(p.t, tuple(best[: p.cap])), nodes, elapsed)
    extremal = GroundColoring(p.t, tuple(best)) if best else None
    return SearchOutcome(p, len(best) + 1, extremal, nodes, elapsed)


def extremal_certificate(
    t: int, n: int, N: int, distinct: bool = False, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> Optional[GroundColoring]:
    """A witness-free ``t``-coloring of ``[N]``, or ``None`` if every coloring has a witness."""
    if N < 1:
        raise PreconditionError(f"N must be >= 1, got {N}")
    best, _ = _search(SearchProblem(t, n, distinct, cap=N, budget=budget), jobs)
    if len(best) >= N:
        return GroundColoring(t, tuple(best[:N]))
    return None


def canonical_colorings(N: int, t: int) -> Iterator[tuple[int, ...]]:
    """All ``t``-colorings of ``[N]`` with labels in first-appearance order."""

    def rec(prefix: list[int], used: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == N:
            yield tuple(prefix)
            return
        for c in range(1, min(used + 1, t) + 1):
            prefix.append(c)
            yield from rec(prefix, max(used, c))
            prefix.pop()

    yield from rec([], 0)


def canonical_form(assign: tuple[int, ...]) -> tuple[int, ...]:
    """Relabel classes in order of first appearance."""
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(c, len(seen) + 1) for c in assign)


def schur_number(t: int) -> int:
    """Largest ``N`` admitting a ``t``-partition of ``[N]`` into sum-free classes.

    Sum-free means no ``x + y = z`` inside a class, ``x == y`` allowed.  This
    is a deliberately plain backtracking over class lists, kept separate from
    the bitset engine in :func:`compute_J` so the two can check each other.
    """
    if t < 1:
        raise PreconditionError("t must be >= 1")
    classes: list[set[int]] = [set() for _ in range(t)]
    best = 0

    def fits(cls: set[int], z: int) -> bool:
        return all(z - x not in cls for x in cls)

    def rec(z: int) -> None:
        nonlocal best
        best = max(best, z - 1)
        for i, cls in enumerate(classes):
            if fits(cls, z):
                cls.add(z)
                rec(z + 1)
                cls.discard(z)
            if not cls:
                break  # empty classes are interchangeable
        return None

    rec(1)
    return best


class BoundStep(NamedTuple):
    n: int
    value: int
    lemma_args: Optional[tuple[int, int, int]]


def bound_chain(
    t: int,
    n: int,
    base_bound: Optional[Callable[[int], int]] = None,
    ramsey_upper: RamseyUpper = known_ramsey_upper,
) -> list[BoundStep]:
    """Every stage of :func:`bound_J` from length 2 up to ``n``."""
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    if base_bound is None:
        base_bound = _exact_base
    value = int(base_bound(t))
    steps = [BoundStep(2, value, None)]
    for m in range(3, n + 1):
        k = 4 * value
        value = lemma1_bound(k, k, t, ramsey_upper)
        steps.append(BoundStep(m, value, (k, k, t)))
    return steps


def bound_J(
    t: int,
    n: int,
    base_bound: Optional[Callable[[int], int]] = None,
    ramsey_upper: RamseyUpper = known_ramsey_upper,
) -> int:
    """Recursive upper bound for ``J(t, n)``: ``Jb(t, m) = N(4*Jb(t, m-1), 4*Jb(t, m-1), t)``.

    ``base_bound(t)`` must bound ``J(t, 2)``; by default the exact value is
    computed with :func:`compute_J`.  ``ramsey_upper`` feeds :func:`lemma1_bound`.
    """
    return bound_chain(t, n, base_bound, ramsey_upper)[-1].value


def _exact_base(t: int) -> int:
    out = compute_J(SearchProblem(t, 2))
    if out.value is None:
        raise BudgetExceeded(f"J({t}, 2) exceeds the default cap")
    return out.value
