"""Text and JSON layouts for colorings and witnesses.

Ground coloring, text::

    t N
    c_1 c_2 ... c_N

Witness, text::

    ell n
    a_1 ... a_n

Subset colorings use the header ``t n`` followed by ``2**n - 1`` labels in
bitmask order; uniform colorings use ``t n r`` followed by ``comb(n, r)``
labels in colex order.  JSON forms are ``{"t", "n_max", "assign"}`` and
``{"ell", "a"}``.  Readers accept either form.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import GroundColoring, SumsetWitness
from .errors import FormatError, PreconditionError
from .ramsey import SubsetColoring, UniformColoring

PathLike = Union[str, Path]


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise FormatError(f"expected integers: {exc}") from exc


def _split_header(text: str, width: int) -> tuple[list[int], list[int]]:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty document")
    header = _ints(lines[0])
    if len(header) != width:
        raise FormatError(f"header must have {width} integers, got {lines[0]!r}")
    return header, _ints(" ".join(lines[1:]))


def coloring_to_text(gc: GroundColoring) -> str:
    return f"{gc.t} {gc.n_max}\n{' '.join(map(str, gc.assign))}\n"


def coloring_to_dict(gc: GroundColoring) -> dict:
    return {"t": gc.t, "n_max": gc.n_max, "assign": list(gc.assign)}


def coloring_from_dict(d: dict) -> GroundColoring:
    try:
        gc = GroundColoring(int(d["t"]), tuple(d["assign"]))
        if int(d.get("n_max", gc.n_max)) != gc.n_max:
            raise FormatError(f"n_max {d['n_max']} does not match {gc.n_max} labels")
        return gc
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed coloring: {exc}") from exc


def parse_coloring(text: str) -> GroundColoring:
    if text.lstrip().startswith("{"):
        return coloring_from_dict(load_json(text))
    (t, N), labels = _split_header(text, 2)
    if len(labels) != N:
        raise FormatError(f"header announces {N} labels, found {len(labels)}")
    try:
        return GroundColoring(t, tuple(labels))
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc


def witness_to_text(w: SumsetWitness) -> str:
    return f"{w.ell} {len(w)}\n{' '.join(map(str, w.a))}\n"


def witness_to_dict(w: SumsetWitness) -> dict:
    return {"ell": w.ell, "a": list(w.a)}


def witness_from_dict(d: dict) -> SumsetWitness:
    try:
        return SumsetWitness(tuple(d["a"]), int(d["ell"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed witness: {exc}") from exc


def parse_witness(text: str) -> SumsetWitness:
    if text.lstrip().startswith("{"):
        return witness_from_dict(load_json(text))
    (ell, n), a = _split_header(text, 2)
    if len(a) != n:
        raise FormatError(f"header announces {n} entries, found {len(a)}")
    try:
        return SumsetWitness(tuple(a), ell)
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc


def subset_coloring_to_text(sc: SubsetColoring) -> str:
    return f"{sc.t} {sc.n}\n{' '.join(map(str, sc.labels()))}\n"


def parse_subset_coloring(text: str) -> SubsetColoring:
    (t, n), labels = _split_header(text, 2)
    try:
        return SubsetColoring.from_labels(n, t, labels)
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc


def uniform_coloring_to_text(uc: UniformColoring) -> str:
    return f"{uc.t} {uc.n} {uc.r}\n{' '.join(map(str, uc.assign))}\n"


def parse_uniform_coloring(text: str) -> UniformColoring:
    (t, n, r), labels = _split_header(text, 3)
    try:
        return UniformColoring(n, r, t, tuple(labels))
    except PreconditionError as exc:
        raise FormatError(str(exc)) from exc


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def read_text(path: PathLike) -> str:
    return Path(path).read_text()


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no trailing whitespace."""
    return json.dumps(obj, sort_keys=True)
