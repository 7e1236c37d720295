"""Witness extraction from a concrete coloring, with checkable certificates.

Two strategies:

``direct``
    Backtracking over nondecreasing sequences in order of total sum.

``proof-trace``
    The constructive route for length ``n >= 3``.  Color every nonempty
    subset ``B`` of ``[N]`` by the class of ``alt_sum(B)``.  Find ``K`` of size
    ``4 * J(t, n-1)`` whose layers of sizes ``4, 8, ...`` are each monochromatic.
    Solve the length ``n-1`` problem on the coloring those layers induce on
    ``{4, 8, ...}`` (divided by 4).  Finally, lay out blocks over ``K`` and read
    off the witness as the blocks' alternating sums.

Every certificate lists, for each nonempty index set ``I``, the set ``M(I)``
whose alternating sum realises the subset sum, so that
:func:`check_certificate` can recheck everything from the coloring alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Optional

from .altsum import BlockSystem, alt_sum, build_blocks, combine
from .core import (
    FiniteSet,
    GroundColoring,
    SumsetWitness,
    quotient_coloring,
    scale_witness,
    verify_witness,
)
from .errors import BudgetExceeded, FormatError, PreconditionError, SchurgenError
from .exact import DEFAULT_BUDGET, SearchProblem, compute_J, find_witness
from .ramsey import _layered_search

DIRECT = "direct"
PROOF_TRACE = "proof-trace"
STRATEGIES = (DIRECT, PROOF_TRACE)


class ExtractionFailure(SchurgenError):
    """No witness was produced; ``stage`` names the pipeline step that gave up."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message


@dataclass(frozen=True)
class Caps:
    """Resource limits for extraction.

    ``max_total`` bounds the witness sum in the direct strategy; ``k_nodes``
    bounds the layered ``K`` search; ``j_budget`` is the node budget for the
    exact inner number; ``restarts`` randomized ``K`` searches run first when
    a seed is given.
    """

    max_total: Optional[int] = None
    k_nodes: int = 500_000
    j_budget: int = DEFAULT_BUDGET
    restarts: int = 4


@dataclass(frozen=True)
class LayerColoring:
    """Common induced class of the ``s``-subsets of ``K``, for each required size ``s``."""

    layer_class: dict[int, int]

    def __getitem__(self, s: int) -> int:
        return self.layer_class[s]

    def sizes(self) -> list[int]:
        return sorted(self.layer_class)


@dataclass(frozen=True)
class Audit:
    I: tuple[int, ...]
    M: Optional[tuple[int, ...]]
    f: int
    cls: int


@dataclass(frozen=True)
class Certificate:
    strategy: str
    witness: SumsetWitness
    audits: tuple[Audit, ...]
    k_set: Optional[FiniteSet] = None
    layer_classes: Optional[LayerColoring] = None
    inner_witness: Optional[SumsetWitness] = None
    blocks: Optional[BlockSystem] = None

    def to_dict(self) -> dict[str, Any]:
        bs = self.blocks
        return {
            "strategy": self.strategy,
            "witness": {"a": list(self.witness.a), "ell": self.witness.ell},
            "k_set": self.k_set.to_list() if self.k_set is not None else None,
            "layer_classes": (
                {str(s): c for s, c in sorted(self.layer_classes.layer_class.items())}
                if self.layer_classes is not None
                else None
            ),
            "inner_witness": (
                {"a": list(self.inner_witness.a), "ell": self.inner_witness.ell}
                if self.inner_witness is not None
                else None
            ),
            "blocks": (
                {"b": list(bs.b), "a": list(bs.a), "P1": bs.P1.to_list(), "P2": bs.P2.to_list()}
                if bs is not None
                else None
            ),
            "audits": [
                {"I": list(x.I), "M": list(x.M) if x.M is not None else None, "f": x.f, "class": x.cls}
                for x in self.audits
            ],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Certificate:
        """Parse the JSON layout; blocks are rebuilt from ``b`` and ``a``.

        The stored ``P1``/``P2`` are kept as given so a tampered document still
        loads and is rejected by :func:`check_certificate` instead.
        """
        try:
            w = SumsetWitness(tuple(d["witness"]["a"]), int(d["witness"]["ell"]))
            audits = tuple(
                Audit(
                    tuple(int(i) for i in x["I"]),
                    tuple(int(m) for m in x["M"]) if x["M"] is not None else None,
                    int(x["f"]),
                    int(x["class"]),
                )
                for x in d["audits"]
            )
            k_set = FiniteSet(tuple(d["k_set"])) if d.get("k_set") is not None else None
            lc = d.get("layer_classes")
            layers = LayerColoring({int(s): int(c) for s, c in lc.items()}) if lc is not None else None
            iw = d.get("inner_witness")
            inner = SumsetWitness(tuple(iw["a"]), int(iw["ell"])) if iw is not None else None
            bd = d.get("blocks")
            blocks = None
            if bd is not None:
                built = build_blocks(bd["b"], bd["a"])
                P1, P2 = FiniteSet(tuple(bd["P1"])), FiniteSet(tuple(bd["P2"]))
                blocks = BlockSystem(built.b, built.a, built.theta, built.blocks, P1, P2, P1 | P2)
            return cls(str(d["strategy"]), w, audits, k_set, layers, inner, blocks)
        except (KeyError, TypeError, AttributeError, PreconditionError) as exc:
            raise FormatError(f"malformed certificate: {exc}") from exc


def induced_subset_class(gc: GroundColoring, B) -> int:
    """Class of ``alt_sum(B)``; total because ``1 <= alt_sum(B) <= max(B)``."""
    B = B if isinstance(B, FiniteSet) else FiniteSet.of(B)
    if not B or B.max > gc.n_max:
        raise PreconditionError(f"{B.elems} is not a nonempty subset of [1, {gc.n_max}]")
    return gc.assign[alt_sum(B) - 1]


def find_layered_K(
    gc: GroundColoring,
    size: int,
    layers,
    search_cap: int = 500_000,
    seed: Optional[int] = None,
    restarts: int = 4,
) -> Optional[tuple[FiniteSet, LayerColoring]]:
    """``K`` of the given size whose listed layers each carry one induced class.

    With a seed, ``restarts`` shuffled searches run first on a share of the
    node cap; the final search walks candidates in increasing order and is
    exhaustive unless it runs out of nodes.  ``None`` means the whole space was
    enumerated; running out of nodes raises ``BudgetExceeded``.
    """
    layers = sorted(set(layers))
    if any(s < 1 or s > size for s in layers):
        raise PreconditionError(f"layers {layers} must lie in [1, {size}]")
    if size > gc.n_max:
        return None

    def classify(B: tuple[int, ...]) -> int:
        return gc.assign[alt_sum(B) - 1]

    if seed is not None and restarts > 0:
        rng = random.Random(seed)
        share = max(1, search_cap // (2 * restarts))
        for _ in range(restarts):
            order = list(range(1, gc.n_max + 1))
            rng.shuffle(order)
            try:
                K, classes, _ = _layered_search(gc.n_max, size, layers, classify, order, share)
            except BudgetExceeded:
                continue
            if K is not None:
                return FiniteSet.of(K), LayerColoring(classes)
    K, classes, _ = _layered_search(gc.n_max, size, layers, classify, None, search_cap)
    if K is None:
        return None
    return FiniteSet(K), LayerColoring(classes)


def _index_sets(n: int) -> list[tuple[int, ...]]:
    return [tuple(i + 1 for i in range(n) if m >> i & 1) for m in range(1, 2**n)]


def _direct(gc: GroundColoring, n: int, caps: Caps) -> Certificate:
    w = find_witness(gc, n, max_total=caps.max_total)
    if w is None:
        bound = gc.n_max if caps.max_total is None else min(gc.n_max, caps.max_total)
        raise ExtractionFailure(DIRECT, f"no witness of length {n} with total <= {bound}")
    audits = []
    for I in _index_sets(n):
        s = sum(w.a[i - 1] for i in I)
        audits.append(Audit(I, None, s, gc.assign[s - 1]))
    return Certificate(DIRECT, w, tuple(audits))


def _proof_trace(gc: GroundColoring, n: int, caps: Caps, seed: Optional[int]) -> Certificate:
    if n <= 2:
        return _direct(gc, n, caps)

    try:
        inner_J = compute_J(SearchProblem(gc.t, n - 1, cap=gc.n_max, budget=caps.j_budget))
    except BudgetExceeded as exc:
        raise ExtractionFailure("inner-bound", f"J({gc.t}, {n - 1}) not settled: {exc}") from exc
    if inner_J.value is None:
        raise ExtractionFailure("inner-bound", f"J({gc.t}, {n - 1}) exceeds {gc.n_max}")
    size = 4 * inner_J.value
    layers = list(range(4, size + 1, 4))

    try:
        found = find_layered_K(gc, size, layers, caps.k_nodes, seed, caps.restarts)
    except BudgetExceeded as exc:
        raise ExtractionFailure("k-search", f"no K of size {size} within the node cap") from exc
    if found is None:
        raise ExtractionFailure("k-search", f"no K of size {size} in [1, {gc.n_max}]")
    K, layer_coloring = found

    # color of s in {4, 8, ..., size} is the class shared by the s-subsets of K;
    # other positions are never read by the quotient
    on_multiples = GroundColoring(
        gc.t, tuple(layer_coloring.layer_class.get(x, 1) for x in range(1, size + 1))
    )
    inner_gc = quotient_coloring(on_multiples, 4)
    try:
        inner_cert = extract_witness(inner_gc, n - 1, PROOF_TRACE, caps, seed)
    except ExtractionFailure:
        try:
            inner_cert = extract_witness(inner_gc, n - 1, DIRECT, caps)
        except ExtractionFailure as exc:
            raise ExtractionFailure("inner-recursion", exc.message) from exc
    inner = scale_witness(inner_cert.witness, 4)
    inner = SumsetWitness(tuple(sorted(inner.a)), inner.ell)

    bs = build_blocks(K.elems, inner.a)
    witness = SumsetWitness(bs.block_values(), inner.ell)
    audits = []
    for I in _index_sets(n):
        M = combine(bs, I)
        v = alt_sum(M)
        audits.append(Audit(I, M.elems, v, gc.assign[v - 1]))
    cert = Certificate(PROOF_TRACE, witness, tuple(audits), K, layer_coloring, inner, bs)
    if not verify_witness(gc, witness):
        raise ExtractionFailure("verify", f"assembled witness {witness.a} does not verify")
    return cert


def extract_witness(
    gc: GroundColoring,
    n: int,
    strategy: str = DIRECT,
    caps: Optional[Caps] = None,
    seed: Optional[int] = None,
) -> Certificate:
    """Find a length-``n`` witness in ``gc``; raises ``ExtractionFailure`` if none is produced."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if strategy not in STRATEGIES:
        raise PreconditionError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    caps = caps or Caps()
    if strategy == DIRECT:
        return _direct(gc, n, caps)
    return _proof_trace(gc, n, caps, seed)


def certificate_problem(gc: GroundColoring, cert: Certificate) -> Optional[str]:
    """First failed check of ``cert`` against ``gc``, or ``None`` if everything holds."""
    w = cert.witness
    n = len(w)
    if not verify_witness(gc, w):
        return f"witness {w.a} (class {w.ell}) does not verify"
    expected = _index_sets(n)
    if [x.I for x in cert.audits] != expected:
        return f"audits must cover the {len(expected)} nonempty index sets in mask order"

    if cert.strategy == DIRECT:
        for x in cert.audits:
            s = sum(w.a[i - 1] for i in x.I)
            if x.M is not None or x.f != s:
                return f"audit {x.I}: recorded sum {x.f}, actual {s}"
            if x.cls != gc.assign[s - 1] or x.cls != w.ell:
                return f"audit {x.I}: class {x.cls} but {s} has class {gc.assign[s - 1]}"
        return None
    if cert.strategy != PROOF_TRACE:
        return f"unknown strategy {cert.strategy!r}"

    K, lc, inner, bs = cert.k_set, cert.layer_classes, cert.inner_witness, cert.blocks
    if K is None or lc is None or inner is None or bs is None:
        return "proof-trace certificate is missing K, layers, inner witness or blocks"
    if K.max > gc.n_max:
        return f"K reaches {K.max} beyond [1, {gc.n_max}]"
    size = len(K)
    if size % 4 or lc.sizes() != list(range(4, size + 1, 4)):
        return f"layer sizes {lc.sizes()} are not 4, 8, ..., |K| = {size}"
    for s in lc.sizes():
        for B in combinations(K.elems, s):
            c = gc.assign[alt_sum(B) - 1]
            if c != lc[s]:
                return f"layer {s}: subset {B} has induced class {c}, recorded {lc[s]}"

    if any(x % 4 for x in inner.a) or tuple(sorted(inner.a)) != bs.a:
        return f"inner witness {inner.a} does not match block sizes {bs.a}"
    inner_sums = [sum(inner.a[i - 1] for i in I) for I in _index_sets(len(inner))]
    for s in inner_sums:
        if s not in lc.layer_class or lc[s] != inner.ell:
            return f"inner subset sum {s} is not a layer of class {inner.ell}"
    if not set(bs.b) <= set(K.elems):
        return "block sequence b is not drawn from K"
    rebuilt = build_blocks(bs.b, bs.a)
    if (rebuilt.P1, rebuilt.P2) != (bs.P1, bs.P2):
        return f"P1/P2 {bs.P1.elems}/{bs.P2.elems} differ from the layout {rebuilt.P1.elems}/{rebuilt.P2.elems}"
    if w.a != rebuilt.block_values() or w.ell != inner.ell:
        return f"witness {w.a} is not the block values {rebuilt.block_values()}"

    for x in cert.audits:
        target = sum(w.a[i - 1] for i in x.I)
        if x.M is None:
            return f"audit {x.I}: missing set M"
        if not set(x.M) <= set(K.elems):
            return f"audit {x.I}: M is not inside K"
        if len(x.M) not in lc.layer_class or lc[len(x.M)] != w.ell:
            return f"audit {x.I}: |M| = {len(x.M)} is not a layer of class {w.ell}"
        if tuple(sorted(x.M)) != combine(rebuilt, x.I).elems:
            return f"audit {x.I}: M differs from the block combination"
        v = alt_sum(x.M)
        if x.f != v or v != target:
            return f"audit {x.I}: alt_sum(M) = {v}, recorded {x.f}, block sum {target}"
        if x.cls != gc.assign[v - 1] or x.cls != w.ell:
            return f"audit {x.I}: class {x.cls} but {v} has class {gc.assign[v - 1]}"
    return None


def check_certificate(gc: GroundColoring, cert: Certificate) -> bool:
    return certificate_problem(gc, cert) is None
