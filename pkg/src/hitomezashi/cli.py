"""Command-line front end.

Exit codes: 0 = success / invariant upheld, 1 = violation found (a failed
certificate or a loop with the wrong residue; the report carries a
reproduction bundle), 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .decompose import decompose_loop, serialize_certificate, verify_certificate
from .pattern import ContractViolation, PatternHandle
from .render import RenderStyle, render_ascii, render_svg
from .sequence import SpecParseError, bit_at, parse_spec
from .trace import (
    DEFAULT_BUDGET,
    DIR_NAMES,
    MINUS_Y,
    PLUS_Y,
    OrientedEdge,
    enumerate_loops,
    trace_from,
)
from .verify import exhaustive_verify, random_verify, report_to_dict, serialize_report

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class _InputError(Exception):
    pass


def _pattern(args) -> PatternHandle:
    try:
        eps = parse_spec(args.eps)
    except SpecParseError as exc:
        raise _InputError(f"--eps: {exc}")
    try:
        eta = parse_spec(args.eta)
    except SpecParseError as exc:
        raise _InputError(f"--eta: {exc}")
    return PatternHandle(eps, eta)


def _window(args):
    x0, y0, x1, y1 = args.window
    if x0 > x1 or y0 > y1:
        raise _InputError(f"--window: not well-ordered: {args.window}")
    return (x0, y0, x1, y1)


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed_edge(p: PatternHandle, x: int, y: int) -> OrientedEdge:
    d = PLUS_Y if (y - bit_at(p.eps, x)) % 2 == 0 else MINUS_Y
    return OrientedEdge((x, y), d)


def _cmd_enumerate(args) -> int:
    p = _pattern(args)
    comps = enumerate_loops(p, _window(args), args.budget)
    loops = [c for c in comps if c.is_loop]
    unresolved = [c for c in comps if not c.is_loop]
    if args.format == "structured":
        doc = {
            "loops": [
                {"anchor": list(c.edges[0].start), "length": c.length} for c in loops
            ],
            "unresolved": len(unresolved),
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [
            f"loop at {c.edges[0].start} length={c.length} (mod 8: {c.length % 8})"
            for c in loops
        ]
        lines.append(f"{len(loops)} loops, {len(unresolved)} unresolved")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_trace(args) -> int:
    p = _pattern(args)
    x, y = args.at
    comp = trace_from(p, _seed_edge(p, x, y), args.budget)
    if args.format == "structured":
        doc = {
            "kind": comp.kind,
            "length": comp.length,
            "edges": [[list(e.start), DIR_NAMES[e.dir]] for e in comp.edges],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    else:
        _emit(args, f"{comp.kind} length={comp.length} from {comp.edges[0].start}\n")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    p = _pattern(args)
    x, y = args.at
    comp = trace_from(p, _seed_edge(p, x, y), args.budget)
    if not comp.is_loop:
        raise _InputError(f"component through ({x}, {y}) did not close within budget")
    cert = decompose_loop(comp)
    result = verify_certificate(comp, cert)
    if not result.ok:
        sys.stderr.write(f"certificate failed verification at {result.path}: {result.message}\n")
        return EXIT_VIOLATION
    _emit(args, serialize_certificate(cert))
    return EXIT_OK


def _report_exit(args, report) -> int:
    if args.format == "text":
        d = report_to_dict(report)
        lines = [f"{k}: {v}" for k, v in d.items() if k != "lemma_violations"]
        lines.append(f"violations: {len(report.lemma_violations)}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, serialize_report(report))
    sys.stderr.write(f"duration: {report.duration:.2f}s\n")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _cmd_verify_exhaustive(args) -> int:
    report = exhaustive_verify(
        args.n_eps, args.n_eta, _window(args), args.budget, workers=args.workers
    )
    return _report_exit(args, report)


def _cmd_verify_random(args) -> int:
    report = random_verify(args.seed, args.trials, args.size, args.budget, workers=args.workers)
    return _report_exit(args, report)


def _cmd_render(args) -> int:
    p = _pattern(args)
    window = _window(args)
    if args.format == "ascii":
        _emit(args, render_ascii(p, window))
        return EXIT_OK
    highlights = ()
    if args.highlight_loops:
        highlights = tuple(
            c for c in enumerate_loops(p, window, args.budget) if c.is_loop
        )
    style = RenderStyle(cell_size=args.cell_size, show_labels=args.labels)
    _emit(args, render_svg(p, window, highlights, style))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hitomezashi",
        description="Trace, decompose, and verify stitch-pattern loops.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, pattern=True, window=True):
        if pattern:
            sp.add_argument("--eps", required=True, help="x-sequence spec, e.g. 0110@0:periodic or rand:42")
            sp.add_argument("--eta", required=True, help="y-sequence spec")
        if window:
            sp.add_argument("--window", nargs=4, type=int, required=True, metavar=("X0", "Y0", "X1", "Y1"))
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--output", "-o", default="-")

    sp = sub.add_parser("enumerate", help="list loops meeting a window")
    common(sp)
    sp.add_argument("--format", choices=("text", "structured"), default="text")
    sp.set_defaults(fn=_cmd_enumerate)

    sp = sub.add_parser("trace", help="trace the component through a vertex")
    common(sp, window=False)
    sp.add_argument("--at", nargs=2, type=int, required=True, metavar=("X", "Y"))
    sp.add_argument("--format", choices=("text", "structured"), default="text")
    sp.set_defaults(fn=_cmd_trace)

    sp = sub.add_parser("decompose", help="emit a verified loop certificate")
    common(sp, window=False)
    sp.add_argument("--at", nargs=2, type=int, required=True, metavar=("X", "Y"))
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("verify-exhaustive", help="sweep all periodic patterns of given window sizes")
    sp.add_argument("--n-eps", type=int, required=True)
    sp.add_argument("--n-eta", type=int, required=True)
    sp.add_argument("--window", nargs=4, type=int, default=[0, 0, 9, 9], metavar=("X0", "Y0", "X1", "Y1"))
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "structured"), default="structured")
    sp.add_argument("--output", "-o", default="-")
    sp.set_defaults(fn=_cmd_verify_exhaustive)

    sp = sub.add_parser("verify-random", help="randomized seeded-pattern campaign")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--size", type=int, default=32)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("text", "structured"), default="structured")
    sp.add_argument("--output", "-o", default="-")
    sp.set_defaults(fn=_cmd_verify_random)

    sp = sub.add_parser("render", help="draw a pattern window as SVG or ASCII")
    common(sp)
    sp.add_argument("--format", choices=("svg", "ascii"), default="svg")
    sp.add_argument("--cell-size", type=int, default=20)
    sp.add_argument("--labels", action="store_true")
    sp.add_argument("--highlight-loops", action="store_true")
    sp.set_defaults(fn=_cmd_render)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (_InputError, ContractViolation, SpecParseError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
