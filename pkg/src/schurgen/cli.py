"""Command-line front end.

Exit codes: 0 success (or "true"), 1 a "false" verdict, 2 usage error,
3 budget exhausted, 4 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import core, exact, extract, formats, ramsey
from .errors import BudgetExceeded, FormatError, PreconditionError

EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_IO = 4


def _load(path: str, parser):
    try:
        return parser(formats.read_text(path))
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(args, obj, text: str) -> None:
    print(formats.dumps(obj) if args.json else text)


def cmd_verify(args) -> int:
    gc = _load(args.coloring, formats.parse_coloring)
    w = _load(args.witness, formats.parse_witness)
    ok = core.verify_witness(gc, w)
    _emit(args, {"valid": ok}, "true" if ok else "false")
    return 0 if ok else EXIT_FALSE


def cmd_free(args) -> int:
    gc = _load(args.coloring, formats.parse_coloring)
    w = exact.find_witness(gc, args.n, args.distinct)
    free = w is None
    obj = {"witness_free": free, "witness": None if free else formats.witness_to_dict(w)}
    _emit(args, obj, "true" if free else f"false (witness {' '.join(map(str, w.a))} in class {w.ell})")
    return 0 if free else EXIT_FALSE


def _label(t: int, n: int, distinct: bool) -> str:
    return f"J{chr(39) if distinct else ''}({t},{n})"


def cmd_number(args) -> int:
    p = exact.SearchProblem(args.t, args.n, args.distinct, args.cap, args.budget)
    out = exact.compute_J(p, jobs=args.jobs)
    row = out.row()
    if args.json:
        row["extremal"] = formats.coloring_to_dict(out.extremal) if out.extremal else None
        print(formats.dumps(row))
        return 0
    name = _label(args.t, args.n, args.distinct)
    print(f"{name} > {args.cap}" if out.exceeds_cap else f"{name} = {out.value}")
    print("\t".join(str(row[k]) for k in ("t", "n", "distinct", "value", "nodes", "seconds")))
    if out.extremal is not None:
        print(formats.coloring_to_text(out.extremal), end="")
    return 0


def cmd_bound(args) -> int:
    try:
        steps = exact.bound_chain(args.t, args.n)
    except LookupError as exc:
        print(f"cannot evaluate the bound: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(formats.dumps({"t": args.t, "n": args.n, "steps": [s._asdict() for s in steps]}))
        return 0
    for s in steps:
        if s.lemma_args is None:
            print(f"J({args.t},{s.n}) <= {s.value}")
        else:
            k, r, t = s.lemma_args
            print(f"J({args.t},{s.n}) <= N({k},{r},{t}) = {s.value}")
    return 0


def cmd_extract(args) -> int:
    gc = _load(args.coloring, formats.parse_coloring)
    caps = extract.Caps(
        max_total=args.cap,
        k_nodes=args.budget or extract.Caps.k_nodes,
        j_budget=args.budget or extract.Caps.j_budget,
    )
    try:
        cert = extract.extract_witness(gc, args.n, args.strategy, caps, args.seed)
    except extract.ExtractionFailure as exc:
        _emit(args, {"failure": {"stage": exc.stage, "message": exc.message}}, f"failure: {exc}")
        return EXIT_FALSE
    w = cert.witness
    _emit(args, cert.to_dict(), f"class {w.ell}: {' '.join(map(str, w.a))}")
    return 0


def cmd_check_cert(args) -> int:
    gc = _load(args.coloring, formats.parse_coloring)
    doc = _load(args.certificate, formats.load_json)
    cert = extract.Certificate.from_dict(doc)
    problem = extract.certificate_problem(gc, cert)
    _emit(args, {"valid": problem is None, "problem": problem},
          "true" if problem is None else f"false: {problem}")
    return 0 if problem is None else EXIT_FALSE


def cmd_refute(args) -> int:
    levels = ramsey.refute_levels(args.set)
    if args.layers is not None:
        levels &= set(args.layers)
    levels = sorted(levels)
    _emit(args, {"set": sorted(set(args.set)), "levels": levels},
          "levels: " + " ".join(map(str, levels)) if levels else "levels: none")
    return 0


def cmd_extremal(args) -> int:
    gc = exact.extremal_certificate(args.t, args.n, args.N, args.distinct, args.budget, args.jobs)
    if args.json:
        print(formats.dumps({"extremal": formats.coloring_to_dict(gc) if gc else None}))
    elif gc is None:
        print("none")
    else:
        print(formats.coloring_to_text(gc), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurgen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("verify", cmd_verify, "check a witness against a coloring")
    p.add_argument("coloring")
    p.add_argument("witness")

    p = add("free", cmd_free, "decide whether a coloring is witness-free")
    p.add_argument("coloring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--distinct", action="store_true")

    p = add("number", cmd_number, "compute J(t, n) exactly")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--cap", type=int, default=200)
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)

    p = add("bound", cmd_bound, "evaluate the recursive upper bound for J(t, n)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("extract", cmd_extract, "extract a witness with a certificate")
    p.add_argument("coloring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=extract.STRATEGIES, default=extract.DIRECT)
    p.add_argument("--cap", type=int, default=None, help="largest witness sum to try")
    p.add_argument("--budget", type=int, default=None, help="node budget for inner searches")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized K-search restarts")

    p = add("check-cert", cmd_check_cert, "recheck a certificate against a coloring")
    p.add_argument("coloring")
    p.add_argument("certificate")

    p = add("refute", cmd_refute, "levels of K mixed by the |S| in S coloring")
    p.add_argument("--set", type=_int_list, required=True)
    p.add_argument("--layers", type=_int_list, default=None, help="only report these levels")

    p = add("extremal", cmd_extremal, "print a witness-free coloring of [N] or 'none'")
    p.add_argument("N", type=int)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--budget", type=int, default=exact.DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PreconditionError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
