"""Command-line interface.

Every command writes JSON to standard output, one record per line.
Exit status: 0 on success, 1 when a document is malformed or not a
k-graph, 2 on usage errors (bad arguments, unreadable files, degrees or
paths that do not fit the graph).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Any

from . import constructions
from .align import mce
from .aperiodicity import (
    ExhaustedUnknown,
    RefutedUpToBound,
    Separation,
    StarWitness,
    Witnessed,
    check_aperiodicity,
)
from .core import InvalidKGraphError, KGraph
from .degree import Degree, DegreeError
from .io import DocumentError, export_dot, parse, report_errors, serialize
from .paths import Path, PathError, normalize, parse_path, render, segment


class UsageError(Exception):
    pass


def _degree(text: str) -> Degree:
    try:
        return Degree.parse(text)
    except DegreeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(record: dict[str, Any]) -> None:
    print(json.dumps(record, sort_keys=True, ensure_ascii=False))


def _path_record(path: Path) -> dict[str, Any]:
    return {"path": render(path), "degree": str(path.degree), "range": path.range, "source": path.source}


def _load(filename: str) -> tuple[KGraph, Any]:
    try:
        with open(filename, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {filename}: {exc.strerror}") from None
    return parse(text)


def _check_rank(graph: KGraph, *degrees: Degree) -> None:
    for d in degrees:
        if d.rank != graph.rank:
            raise UsageError(f"degree {d} has rank {d.rank}, graph has rank {graph.rank}")


def _verdict_fields(verdict) -> dict[str, Any]:
    if isinstance(verdict, Witnessed):
        cert = verdict.certificate
        if isinstance(cert, StarWitness):
            return {"status": "witnessed", "certificate": render(cert.path)}
        if isinstance(cert, Separation):
            return {"status": "witnessed", "certificate": render(cert.tau)}
        return {"status": "witnessed", "certificate": str(cert)}
    if isinstance(verdict, RefutedUpToBound):
        return {"status": "refuted", "searched": verdict.searched}
    if isinstance(verdict, ExhaustedUnknown):
        return {"status": "unknown", "reason": verdict.reason, "searched": verdict.searched}
    raise TypeError(verdict)


def cmd_validate(args) -> int:
    graph, twist = _load(args.file)
    _emit(
        {
            "valid": True,
            "rank": graph.rank,
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "squares": len(graph.rules),
            "twist": twist is not None,
        }
    )
    return 0


def cmd_normalize(args) -> int:
    graph, _ = _load(args.file)
    edges = [e.strip() for e in args.edges.split(",") if e.strip()]
    _emit(_path_record(normalize(graph, edges)))
    return 0


def cmd_segment(args) -> int:
    graph, _ = _load(args.file)
    _check_rank(graph, args.start, args.stop)
    lam = parse_path(graph, args.path)
    _emit(_path_record(segment(lam, args.start, args.stop)))
    return 0


def cmd_mce(args) -> int:
    graph, _ = _load(args.file)
    result = mce(parse_path(graph, args.mu), parse_path(graph, args.nu))
    _emit({"mu": render(result.mu), "nu": render(result.nu), "mce": [render(p) for p in result], "empty": result.is_empty()})
    return 0


def cmd_check(args) -> int:
    graph, _ = _load(args.file)
    _check_rank(graph, args.pair_bound, args.path_bound, args.tau_bound)
    report = check_aperiodicity(graph, args.pair_bound, args.path_bound, args.tau_bound, condition=args.condition)
    for rec in report.star:
        _emit({"condition": "star", "vertex": rec.vertex, "m": str(rec.m), "n": str(rec.n), **_verdict_fields(rec.verdict)})
    for rec in report.tau:
        _emit(
            {
                "condition": "tau",
                "vertex": rec.vertex,
                "alpha": render(rec.alpha),
                "beta": render(rec.beta),
                **_verdict_fields(rec.verdict),
            }
        )
    for vertex, statuses in sorted(report.vertex_status().items()):
        _emit({"condition": "vertex", "vertex": vertex, **statuses})
    _emit(
        {
            "condition": "summary",
            "pair_bound": str(args.pair_bound),
            "path_bound": str(args.path_bound),
            "tau_bound": str(args.tau_bound),
            "consistent": report.consistent,
            "conflicts": [{"kind": c.kind, "detail": c.detail} for c in report.conflicts],
            "separations_checked": report.separations_checked,
            "stars_constructed": report.stars_constructed,
        }
    )
    return 0


def _generate(args) -> KGraph:
    kind = args.kind
    if kind == "grid":
        if args.m is None:
            raise UsageError("gen grid needs --m")
        k = args.k if args.k is not None else args.m.rank
        if args.m.rank != k:
            raise UsageError(f"--m has rank {args.m.rank} but --k is {k}")
        return constructions.grid(k, args.m)
    if kind == "three-graph":
        return constructions.three_graph_example()
    if kind == "evans-sims":
        if args.levels is None or args.levels < 1:
            raise UsageError("gen evans-sims needs --levels >= 1")
        return constructions.evans_sims(args.levels)
    if kind == "two-loop":
        return constructions.two_loop()
    if kind == "flip":
        return constructions.flip()
    if kind == "twist":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if args.base is not None:
                base, twist = _load(args.base)
                if twist is None:
                    raise UsageError(f"{args.base} has no twist block")
                return constructions.twisted_product(base, twist)
            if args.levels is None or args.fiber is None or args.levels < 1 or args.fiber < 1:
                raise UsageError("gen twist needs --base FILE or positive --levels and --fiber")
            return constructions.twisted_evans_sims(args.levels, args.fiber)
    raise UsageError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    text = serialize(_generate(args))
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)
    return 0


def cmd_export_dot(args) -> int:
    graph, _ = _load(args.file)
    sys.stdout.write(export_dot(graph))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kgraph", description="Finite higher-rank graph toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a .kg document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("normalize", help="normal form of an edge sequence")
    p.add_argument("file")
    p.add_argument("--edges", required=True, help="comma-separated edge ids, range end first")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("segment", help="the factor lambda(m, n)")
    p.add_argument("file")
    p.add_argument("--path", required=True)
    p.add_argument("--from", dest="start", type=_degree, required=True)
    p.add_argument("--to", dest="stop", type=_degree, required=True)
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("mce", help="minimal common extensions of two paths")
    p.add_argument("file")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.set_defaults(func=cmd_mce)

    p = sub.add_parser("check", help="bounded aperiodicity checks")
    p.add_argument("file")
    p.add_argument("--pair-bound", type=_degree, required=True)
    p.add_argument("--path-bound", type=_degree, required=True)
    p.add_argument("--tau-bound", type=_degree, required=True)
    p.add_argument("--condition", choices=("star", "tau", "both"), default="both")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("kind", choices=("grid", "three-graph", "evans-sims", "two-loop", "flip", "twist"))
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=_degree)
    p.add_argument("--levels", type=int)
    p.add_argument("--fiber", type=int)
    p.add_argument("--base", help="document with a twist block (gen twist)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="Graphviz rendering of the 1-skeleton")
    p.add_argument("file")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvalidKGraphError as exc:
        _emit({"valid": False, "errors": report_errors(exc.report)})
        return 1
    except DocumentError as exc:
        _emit({"valid": False, "errors": [{"axiom": "document", "items": [exc.where], "message": str(exc)}]})
        return 1
    except (UsageError, PathError, DegreeError) as exc:
        print(f"kgraph: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
