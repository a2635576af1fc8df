"""Skeletons, square rules and validated k-graphs.

A finite k-graph is determined by its 1-skeleton (a k-colored directed
multigraph) together with one square rule for every bi-colored path of
length two.  A rule ``g.h = h'.g'`` says that the path running through ``g``
(nearer the range) and then ``h`` equals the path through ``h'`` and then
``g'``.  Colors are 1..k; in a stored rule ``color(g) < color(h)``.

:class:`KGraph` can only be built from data that passes every check in
:func:`validation_report`, so downstream code may rely on unique
factorization.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .degree import Degree


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Skeleton:
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))


@dataclass(frozen=True, order=True)
class SquareRule:
    """``lo_hi = (g, h)`` with ``color(g) < color(h)``; ``hi_lo = (h', g')``."""

    lo_hi: tuple[str, str]
    hi_lo: tuple[str, str]

    def __post_init__(self):
        object.__setattr__(self, "lo_hi", tuple(self.lo_hi))
        object.__setattr__(self, "hi_lo", tuple(self.hi_lo))

    @classmethod
    def from_equation(cls, colors: Mapping[str, int], left, right) -> SquareRule:
        """Orient an identity ``x.y = z.w`` given in either color order."""
        left, right = tuple(left), tuple(right)
        if colors[left[0]] < colors[left[1]]:
            return cls(left, right)
        return cls(right, left)


@dataclass(frozen=True)
class Violation:
    axiom: str
    items: tuple[str, ...]
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, items: Iterable[str], message: str) -> None:
        self.violations.append(Violation(axiom, tuple(items), message))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __iter__(self):
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"[{v.axiom}] {v.message}" for v in self.violations)


class InvalidKGraphError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(f"invalid k-graph:\n{report}")


def _check_skeleton(skeleton: Skeleton, report: ValidationReport) -> None:
    k = skeleton.rank
    if not isinstance(k, int) or k < 1:
        report.add("skeleton", (), f"rank must be a positive integer, got {k!r}")
        return
    if not skeleton.vertices:
        report.add("skeleton", (), "vertex set is empty")
    seen_vertices: set[str] = set()
    for v in skeleton.vertices:
        if v in seen_vertices:
            report.add("skeleton", (v,), f"duplicate vertex id {v!r}")
        seen_vertices.add(v)
    seen_edges: set[str] = set()
    for e in skeleton.edges:
        if e.id in seen_edges:
            report.add("skeleton", (e.id,), f"duplicate edge id {e.id!r}")
        seen_edges.add(e.id)
        if not isinstance(e.color, int) or not 1 <= e.color <= k:
            report.add("skeleton", (e.id,), f"edge {e.id!r} has color {e.color!r} outside 1..{k}")
        for end in ("range", "source"):
            if getattr(e, end) not in seen_vertices:
                report.add(
                    "skeleton", (e.id,), f"edge {e.id!r} has undeclared {end} {getattr(e, end)!r}"
                )
    for ident in itertools.chain(skeleton.vertices, (e.id for e in skeleton.edges)):
        if not ident or "," in ident or ident.startswith("@"):
            report.add(
                "skeleton", (ident,), f"id {ident!r} must be nonempty, comma-free, not start with '@'"
            )


def _check_rule(rule: SquareRule, edges: Mapping[str, Edge], report: ValidationReport) -> bool:
    names = (*rule.lo_hi, *rule.hi_lo)
    if len(rule.lo_hi) != 2 or len(rule.hi_lo) != 2:
        report.add("square-shape", names, f"square {rule} must pair two edges with two edges")
        return False
    unknown = [n for n in names if n not in edges]
    if unknown:
        report.add("unknown-edge", unknown, f"square {_fmt(rule)} uses unknown edges {unknown}")
        return False
    g, h = (edges[n] for n in rule.lo_hi)
    h2, g2 = (edges[n] for n in rule.hi_lo)
    ok = True
    if not g.color < h.color:
        report.add("color-order", names, f"square {_fmt(rule)}: lo_hi colors must increase")
        ok = False
    if h2.color != h.color or g2.color != g.color:
        report.add("color-order", names, f"square {_fmt(rule)}: hi_lo colors must mirror lo_hi")
        ok = False
    if g.source != h.range:
        report.add("composability", names, f"square {_fmt(rule)}: ({g.id},{h.id}) not composable")
        ok = False
    if h2.source != g2.range:
        report.add("composability", names, f"square {_fmt(rule)}: ({h2.id},{g2.id}) not composable")
        ok = False
    if g.range != h2.range or h.source != g2.source:
        report.add(
            "endpoint-coherence",
            names,
            f"square {_fmt(rule)}: sides have different range or source",
        )
        ok = False
    return ok


def _fmt(rule: SquareRule) -> str:
    return f"{'.'.join(rule.lo_hi)} = {'.'.join(rule.hi_lo)}"


def _composable_pairs(edges: Iterable[Edge], ascending: bool):
    """Yield composable (x, y) with color(x) < color(y) (or > when not ascending)."""
    by_range: dict[str, list[Edge]] = defaultdict(list)
    edges = sorted(edges, key=lambda e: (e.color, e.id))
    for e in edges:
        by_range[e.range].append(e)
    for x in edges:
        for y in by_range[x.source]:
            if (x.color < y.color) if ascending else (x.color > y.color):
                yield x.id, y.id


def validation_report(skeleton: Skeleton, rules: Iterable[SquareRule]) -> ValidationReport:
    """Check every k-graph axiom that a finite skeleton plus squares must satisfy.

    The report lists missing, duplicated and malformed squares, failures of
    bijectivity, and (for rank >= 3) failures of associativity on
    three-colored paths.  An empty report means :class:`KGraph` accepts the data.
    """
    report = ValidationReport()
    _check_skeleton(skeleton, report)
    if not report.ok:
        return report
    edges = {e.id: e for e in skeleton.edges}
    rules = list(rules)

    lohi: dict[tuple[str, str], tuple[str, str]] = {}
    hilo: dict[tuple[str, str], tuple[str, str]] = {}
    for rule in rules:
        if not _check_rule(rule, edges, report):
            continue
        if rule.lo_hi in lohi:
            report.add(
                "duplicate-square",
                rule.lo_hi,
                f"duplicate square for ({','.join(rule.lo_hi)})",
            )
            continue
        if rule.hi_lo in hilo:
            report.add(
                "non-bijective",
                rule.hi_lo,
                f"({','.join(rule.hi_lo)}) is the image of two different squares",
            )
            continue
        lohi[rule.lo_hi] = rule.hi_lo
        hilo[rule.hi_lo] = rule.lo_hi

    for pair in _composable_pairs(edges.values(), ascending=True):
        if pair not in lohi:
            report.add("missing-square", pair, f"missing square for ({pair[0]},{pair[1]})")
    for pair in _composable_pairs(edges.values(), ascending=False):
        if pair not in hilo:
            report.add("missing-square", pair, f"missing square for ({pair[0]},{pair[1]})")

    if report.ok and skeleton.rank >= 3:
        _check_associativity(edges, lohi, hilo, report)
    return report


def _check_associativity(edges, lohi, hilo, report: ValidationReport) -> None:
    def swap(x, y):
        return lohi[(x, y)] if edges[x].color < edges[y].color else hilo[(x, y)]

    by_range: dict[str, list[Edge]] = defaultdict(list)
    for e in sorted(edges.values(), key=lambda e: (e.color, e.id)):
        by_range[e.range].append(e)
    # Only a fully descending triple has two reduced rewriting routes to normal form.
    for x in sorted(edges.values(), key=lambda e: (e.color, e.id)):
        for y in by_range[x.source]:
            if y.color >= x.color:
                continue
            for z in by_range[y.source]:
                if z.color >= y.color:
                    continue
                y1, x1 = swap(x.id, y.id)
                z1, x2 = swap(x1, z.id)
                z2, y2 = swap(y1, z1)
                first = (z2, y2, x2)
                z1b, y1b = swap(y.id, z.id)
                z2b, x1b = swap(x.id, z1b)
                y2b, x2b = swap(x1b, y1b)
                second = (z2b, y2b, x2b)
                if first != second:
                    report.add(
                        "associativity",
                        (x.id, y.id, z.id),
                        f"path {x.id},{y.id},{z.id} normalizes to {','.join(first)} "
                        f"or {','.join(second)} depending on swap order",
                    )


def complete_squares(skeleton: Skeleton, rules: Iterable[SquareRule]) -> list[SquareRule]:
    """Add the squares forced by bijectivity.

    Within each (color pair, range, source) class, if exactly one lo-hi path
    and one hi-lo path are left unmatched they must form a square.  Classes
    with more than one unmatched path are ambiguous and raise
    :class:`InvalidKGraphError` rather than being guessed.
    """
    rules = list(rules)
    edges = {e.id: e for e in skeleton.edges}
    used_lo = {r.lo_hi for r in rules}
    used_hi = {r.hi_lo for r in rules}
    classes: dict[tuple, tuple[list, list]] = defaultdict(lambda: ([], []))

    def key(x, y):
        a, b = edges[x], edges[y]
        return (min(a.color, b.color), max(a.color, b.color), a.range, b.source)

    for pair in _composable_pairs(edges.values(), ascending=True):
        if pair not in used_lo:
            classes[key(*pair)][0].append(pair)
    for pair in _composable_pairs(edges.values(), ascending=False):
        if pair not in used_hi:
            classes[key(*pair)][1].append(pair)
    report = ValidationReport()
    for cls_key in sorted(classes):
        lo, hi = classes[cls_key]
        if len(lo) == 1 and len(hi) == 1:
            rules.append(SquareRule(lo[0], hi[0]))
        else:
            report.add(
                "ambiguous-completion",
                [*itertools.chain(*lo), *itertools.chain(*hi)],
                f"cannot force squares for colors {cls_key[:2]} from {cls_key[2]!r} to "
                f"{cls_key[3]!r}: unmatched {lo} and {hi}",
            )
    if not report.ok:
        raise InvalidKGraphError(report)
    return rules


class KGraph:
    """An immutable, validated finite k-graph.

    Construction runs :func:`validation_report` and raises
    :class:`InvalidKGraphError` on any violation.
    """

    def __init__(self, skeleton: Skeleton, rules: Iterable[SquareRule]):
        rules = tuple(sorted(rules))
        report = validation_report(skeleton, rules)
        if not report.ok:
            raise InvalidKGraphError(report)
        self._skeleton = skeleton
        self._rules = rules
        self._edges = MappingProxyType({e.id: e for e in skeleton.edges})
        self._lohi = {r.lo_hi: r.hi_lo for r in rules}
        self._hilo = {r.hi_lo: r.lo_hi for r in rules}
        into: dict[tuple[str, int], list[str]] = defaultdict(list)
        out_of: dict[tuple[str, int], list[str]] = defaultdict(list)
        for e in sorted(skeleton.edges, key=lambda e: e.id):
            into[(e.range, e.color)].append(e.id)
            out_of[(e.source, e.color)].append(e.id)
        self._into = {key: tuple(ids) for key, ids in into.items()}
        self._out_of = {key: tuple(ids) for key, ids in out_of.items()}
        self._vertices = tuple(sorted(skeleton.vertices))

    @property
    def rank(self) -> int:
        return self._skeleton.rank

    @property
    def skeleton(self) -> Skeleton:
        return self._skeleton

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[str, Edge]:
        return self._edges

    @property
    def rules(self) -> tuple[SquareRule, ...]:
        return self._rules

    def color(self, edge_id: str) -> int:
        return self._edges[edge_id].color

    def edge_degree(self, edge_id: str) -> Degree:
        return Degree.unit(self.rank, self._edges[edge_id].color)

    def edges_into(self, vertex: str, color: int) -> tuple[str, ...]:
        """Edges of the given color whose range is ``vertex``, sorted by id."""
        return self._into.get((vertex, color), ())

    def edges_out_of(self, vertex: str, color: int) -> tuple[str, ...]:
        """Edges of the given color whose source is ``vertex``, sorted by id."""
        return self._out_of.get((vertex, color), ())

    def swap(self, first: str, second: str) -> tuple[str, str]:
        """Rewrite a composable bi-colored pair into the opposite color order."""
        if self.color(first) < self.color(second):
            return self._lohi[(first, second)]
        return self._hilo[(first, second)]

    def __repr__(self) -> str:
        return (
            f"KGraph(rank={self.rank}, vertices={len(self._vertices)}, "
            f"edges={len(self._edges)}, squares={len(self._rules)})"
        )


def validate(skeleton: Skeleton, rules: Iterable[SquareRule]) -> KGraph:
    return KGraph(skeleton, rules)


def no_sources(graph: KGraph) -> list[tuple[str, int]]:
    """(vertex, color) pairs where the vertex receives no edge of that color."""
    return [
        (v, c)
        for v in graph.vertices
        for c in range(1, graph.rank + 1)
        if not graph.edges_into(v, c)
    ]
