"""Colorings of ``{1..N}``, monochromatic subset-sum witnesses and their transforms.

Subset-sum sets are handled as Python ints used as bitsets: bit ``x`` is set
when ``x`` is a sum.  Bit 0 is never set because the empty sum is excluded.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError


@dataclass(frozen=True)
class FiniteSet:
    """A strictly increasing tuple of positive integers."""

    elems: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(int(x) for x in self.elems)
        object.__setattr__(self, "elems", elems)
        if any(x < 1 for x in elems):
            raise PreconditionError(f"elements must be positive: {elems}")
        if any(a >= b for a, b in zip(elems, elems[1:])):
            raise PreconditionError(f"elements must be strictly increasing: {elems}")

    @classmethod
    def of(cls, items: Iterable[int]) -> FiniteSet:
        """Build from any iterable, sorting and dropping duplicates."""
        return cls(tuple(sorted(set(items))))

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x: object) -> bool:
        return x in self.elems

    def __or__(self, other: FiniteSet) -> FiniteSet:
        return FiniteSet.of(self.elems + other.elems)

    def __sub__(self, other: FiniteSet) -> FiniteSet:
        drop = set(other.elems)
        return FiniteSet(tuple(x for x in self.elems if x not in drop))

    def issubset(self, other: FiniteSet) -> bool:
        return set(self.elems) <= set(other.elems)

    @property
    def min(self) -> int:
        return self.elems[0]

    @property
    def max(self) -> int:
        return self.elems[-1]

    def to_list(self) -> list[int]:
        return list(self.elems)


@dataclass(frozen=True)
class GroundColoring:
    """A ``t``-class coloring of ``{1..n_max}``.

    ``assign[i - 1]`` is the class (1-based) of the integer ``i``.
    """

    t: int
    assign: tuple[int, ...]

    def __post_init__(self):
        assign = tuple(int(c) for c in self.assign)
        object.__setattr__(self, "assign", assign)
        if self.t < 1:
            raise PreconditionError(f"class count must be >= 1, got {self.t}")
        if not assign:
            raise PreconditionError("a coloring needs at least one element")
        bad = [c for c in assign if not 1 <= c <= self.t]
        if bad:
            raise PreconditionError(f"class labels outside [1, {self.t}]: {bad[:5]}")

    @property
    def n_max(self) -> int:
        return len(self.assign)

    def color(self, x: int) -> int:
        """Class of the integer ``x`` (1-indexed)."""
        if not 1 <= x <= self.n_max:
            raise PreconditionError(f"{x} is outside [1, {self.n_max}]")
        return self.assign[x - 1]

    @cached_property
    def class_masks(self) -> tuple[int, ...]:
        """Bitset of members per class; index 0 is an empty placeholder."""
        masks = [0] * (self.t + 1)
        for x, c in enumerate(self.assign, start=1):
            masks[c] |= 1 << x
        return tuple(masks)

    def classes(self) -> list[list[int]]:
        """The partition ``A_1..A_t`` as sorted lists."""
        out: list[list[int]] = [[] for _ in range(self.t)]
        for x, c in enumerate(self.assign, start=1):
            out[c - 1].append(x)
        return out

    def relabel(self, perm: Sequence[int]) -> GroundColoring:
        """Apply ``c -> perm[c - 1]`` to every class label."""
        return GroundColoring(self.t, tuple(perm[c - 1] for c in self.assign))

    def restrict(self, n: int) -> GroundColoring:
        return GroundColoring(self.t, self.assign[:n])


@dataclass(frozen=True)
class SumsetWitness:
    """Sequence ``a`` whose every nonempty subset sum should lie in class ``ell``."""

    a: tuple[int, ...]
    ell: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if not a:
            raise PreconditionError("a witness needs at least one entry")
        if any(x < 1 for x in a):
            raise PreconditionError(f"witness entries must be positive: {a}")

    def __len__(self) -> int:
        return len(self.a)


def subset_sum_mask(a: Iterable[int]) -> int:
    """Bitset of all nonempty subset sums of ``a``."""
    sums = 0
    for x in a:
        sums |= (sums << x) | (1 << x)
    return sums


def mask_members(mask: int) -> list[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def verify_witness(gc: GroundColoring, w: SumsetWitness) -> bool:
    """True iff every nonempty subset sum of ``w.a`` is ``<= n_max`` and in class ``w.ell``.

    A sum past the end of the coloring gives False, not an error.
    """
    if not 1 <= w.ell <= gc.t:
        return False
    if sum(w.a) > gc.n_max:
        return False
    sums = subset_sum_mask(w.a)
    return sums & ~gc.class_masks[w.ell] == 0


def distinctify(gc: GroundColoring, w: SumsetWitness, n: int) -> SumsetWitness:
    """Turn a verified witness of length ``n**4`` into one of ``n`` distinct entries.

    With at least ``n`` distinct values we keep the ``n`` smallest (any
    sub-multiset of a witness is a witness).  Otherwise some value ``k`` is
    repeated at least ``n(n+1)/2`` times and ``(k, 2k, ..., nk)`` works: each of
    its subset sums ``l*k`` is a sum of ``l`` copies of ``k`` taken from ``w``.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if len(w) != n**4:
        raise PreconditionError(f"witness has length {len(w)}, expected n**4 = {n**4}")
    if not verify_witness(gc, w):
        raise PreconditionError("input witness does not verify against the coloring")

    counts = Counter(w.a)
    if len(counts) >= n:
        return SumsetWitness(tuple(sorted(counts)[:n]), w.ell)

    # fewer than n distinct values among n**4 entries: pigeonhole gives a
    # value of multiplicity >= n**3 >= n(n+1)/2
    k, mult = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    needed = n * (n + 1) // 2
    assert mult >= needed, (k, mult, needed)
    out = SumsetWitness(tuple(i * k for i in range(1, n + 1)), w.ell)
    assert verify_witness(gc, out)
    return out


def quotient_coloring(gc: GroundColoring, k: int) -> GroundColoring:
    """Coloring of ``{1..n_max // k}`` where ``a`` gets the class of ``k*a``."""
    if k < 1:
        raise PreconditionError(f"scale factor must be >= 1, got {k}")
    if k > gc.n_max:
        raise PreconditionError(f"scale factor {k} exceeds n_max = {gc.n_max}")
    return GroundColoring(gc.t, gc.assign[k - 1 :: k])


def scale_witness(w: SumsetWitness, k: int) -> SumsetWitness:
    if k < 1:
        raise PreconditionError(f"scale factor must be >= 1, got {k}")
    return SumsetWitness(tuple(x * k for x in w.a), w.ell)
