"""Alternating sums of finite sets and the block layout that makes them additive.

``alt_sum(B)`` signs the elements of ``B`` alternately so that the largest one
is positive.  Two laws make it additive on well-placed pieces:

* merge: ``f(A | B) == f(A) + f(B)`` when ``|A|`` and ``|B|`` are even and
  ``max(A) < min(B)``;
* excise: ``f(A - P) == f(A) + f(P)`` when ``P`` is an even, consecutive run
  inside ``A`` with an odd number of elements of ``A`` above it.

``build_blocks`` lays out ``B_1..B_m`` plus an extra block ``B_{m+1} = P1 | P2``
over an increasing sequence ``b``, and ``combine`` turns any index set ``I`` into
one set ``M(I)`` with ``f(M(I)) == sum(f(B_i) for i in I)``.

The two half-blocks ``P1`` and ``P2`` each have ``a_1 / 2`` elements, sitting
at 1-based positions ``a_1/2 .. a_1-1`` and ``a_1+2 .. 3*a_1/2+1`` of ``b``.
When ``I`` holds the extra block and block 2 but not block 1, the merged set is
``P1 | (B_2 - P2)``.  The seemingly natural ``B_1 | (B_2 - P2)`` is *not*
additive: on ``b = 1..12``, ``a = (4, 4)`` it has alternating sum 5 while the
block values add up to 4 (see ``tests/test_altsum.py``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .core import FiniteSet
from .errors import (
    NotBelowError,
    NotConsecutiveError,
    NotSubsetError,
    OddOrderError,
    ParityError,
    PreconditionError,
)

SetLike = Union[FiniteSet, Iterable[int]]


def _as_set(B: SetLike) -> FiniteSet:
    return B if isinstance(B, FiniteSet) else FiniteSet.of(B)


def alt_sum(B: SetLike) -> int:
    """Alternating sum with the largest element counted positively.

    >>> alt_sum({1, 2, 3, 4}), alt_sum({1, 4, 6})
    (2, 3)
    """
    elems = _as_set(B).elems
    if not elems:
        raise PreconditionError("alternating sum of the empty set is undefined")
    total = 0
    sign = 1
    for x in reversed(elems):
        total += sign * x
        sign = -sign
    return total


f = alt_sum


def merge_below(A: SetLike, B: SetLike) -> FiniteSet:
    """Union of two even-order sets with ``A`` entirely below ``B``."""
    A, B = _as_set(A), _as_set(B)
    if not A or not B:
        raise PreconditionError("both sets must be nonempty")
    if len(A) % 2:
        raise OddOrderError(f"|A| = {len(A)} is odd")
    if len(B) % 2:
        raise OddOrderError(f"|B| = {len(B)} is odd")
    if A.max >= B.min:
        raise NotBelowError(f"max(A) = {A.max} is not below min(B) = {B.min}")
    return FiniteSet(A.elems + B.elems)


def excise(A: SetLike, P: SetLike) -> FiniteSet:
    """Remove the consecutive even run ``P`` from ``A``; raises on any unmet condition."""
    A, P = _as_set(A), _as_set(P)
    if not P:
        raise PreconditionError("P must be nonempty")
    if not P.issubset(A):
        raise NotSubsetError(f"{P.elems} is not a subset of {A.elems}")
    lo = A.elems.index(P.min)
    hi = A.elems.index(P.max)
    if hi - lo + 1 != len(P):
        raise NotConsecutiveError(f"{P.elems} skips elements of {A.elems}")
    if len(P) % 2:
        raise OddOrderError(f"|P| = {len(P)} is odd")
    above = len(A) - 1 - hi
    if above % 2 == 0:
        raise ParityError(f"{above} elements of A lie above P; need an odd count")
    return A - P


@dataclass(frozen=True)
class BlockSystem:
    """Blocks ``B_1..B_m`` over ``b`` plus the extra block ``P1 | P2``.

    ``blocks[i - 1]`` is ``B_i``; ``m = len(a)`` and the extra block has index
    ``n_o = m + 1``.
    """

    b: tuple[int, ...]
    a: tuple[int, ...]
    theta: tuple[int, ...]
    blocks: tuple[FiniteSet, ...]
    P1: FiniteSet
    P2: FiniteSet
    B_no: FiniteSet

    @property
    def n_o(self) -> int:
        return len(self.a) + 1

    def block(self, i: int) -> FiniteSet:
        """``B_i`` for ``1 <= i <= n_o``."""
        if i == self.n_o:
            return self.B_no
        if not 1 <= i < self.n_o:
            raise PreconditionError(f"block index {i} outside [1, {self.n_o}]")
        return self.blocks[i - 1]

    def block_values(self) -> tuple[int, ...]:
        return tuple(alt_sum(self.block(i)) for i in range(1, self.n_o + 1))


def build_blocks(b: Sequence[int], a: Sequence[int]) -> BlockSystem:
    b = tuple(int(x) for x in b)
    a = tuple(int(x) for x in a)
    FiniteSet(b)  # validates strictly increasing positive
    if len(a) < 2:
        raise PreconditionError(f"need at least 2 block sizes, got {len(a)}")
    if any(x <= 0 or x % 4 for x in a):
        raise PreconditionError(f"block sizes must be positive multiples of 4: {a}")
    if any(x > y for x, y in zip(a, a[1:])):
        raise PreconditionError(f"block sizes must be nondecreasing: {a}")
    if sum(a) > len(b):
        raise PreconditionError(f"blocks need {sum(a)} elements, b has {len(b)}")

    theta = []
    acc = 0
    for x in a:
        acc += x
        theta.append(acc)
    starts = [0] + theta[:-1]
    blocks = tuple(FiniteSet(b[s:e]) for s, e in zip(starts, theta))

    half = a[0] // 2
    P1 = FiniteSet(b[half - 1 : a[0] - 1])
    P2 = FiniteSet(b[a[0] + 1 : a[0] + half + 1])
    return BlockSystem(b, a, tuple(theta), blocks, P1, P2, P1 | P2)


def _check_index_set(I: Iterable[int], n_o: int) -> frozenset[int]:
    I = frozenset(int(i) for i in I)
    if not I:
        raise PreconditionError("index set must be nonempty")
    bad = sorted(i for i in I if not 1 <= i <= n_o)
    if bad:
        raise PreconditionError(f"indices {bad} outside [1, {n_o}]")
    return I


def combine_case(I: Iterable[int], n_o: int) -> str:
    """Which of the five layouts ``combine`` uses: ``'i'`` .. ``'v'``."""
    I = _check_index_set(I, n_o)
    if n_o not in I:
        return "i"
    has1, has2 = 1 in I, 2 in I
    if not has1 and not has2:
        return "ii"
    if has1 and not has2:
        return "iii"
    if has2 and not has1:
        return "iv"
    return "v"


def layer_indices(I: Iterable[int], n_o: int) -> frozenset[int]:
    """Nonempty ``I'`` within ``[1, n_o - 1]`` with ``|combine(bs, I)| == sum(a_i for i in I')``."""
    I = _check_index_set(I, n_o)
    case = combine_case(I, n_o)
    rest = I - {n_o}
    if case == "i":
        return I
    if case == "ii":
        return rest | {1}
    if case in ("iii", "iv"):
        return rest
    return rest - {1}


def combine(bs: BlockSystem, I: Iterable[int]) -> FiniteSet:
    """Single set ``M(I)`` whose alternating sum is the sum of the chosen block values."""
    n_o = bs.n_o
    I = _check_index_set(I, n_o)
    case = combine_case(I, n_o)
    B1, B2 = bs.blocks[0], bs.blocks[1]
    tail = [bs.block(i) for i in sorted(I) if 3 <= i < n_o]

    if case == "i":
        pieces = [bs.block(i) for i in sorted(I)]
    elif case == "ii":
        pieces = [bs.B_no] + tail
    elif case == "iii":
        pieces = [(B1 - bs.P1) | bs.P2] + tail
    elif case == "iv":
        pieces = [bs.P1 | (B2 - bs.P2)] + tail
    else:
        pieces = [(B1 | B2) - bs.B_no] + tail
    out: tuple[int, ...] = ()
    for p in pieces:
        out += p.elems
    return FiniteSet(out)
