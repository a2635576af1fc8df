"""Built-in graph families.

Naming conventions for generated ids:

* grid vertices are coordinates joined by ``_`` (``"1_0"``); the color-i edge
  with range p is ``"c{i}:{p}"``.
* Evans-Sims vertices are ``v0 .. vL``; ``a{n}_{i}`` is the color-1 edge
  alpha_i^n and ``b{n}_{j}`` the color-2 edge beta_j^n, both from v_n to v_{n-1}.
* twisted products append ``:{x}`` for the fiber point x to base ids.
"""

from __future__ import annotations

import itertools
import random
import warnings
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass

from .core import (
    Edge,
    InvalidKGraphError,
    KGraph,
    Skeleton,
    SquareRule,
    ValidationReport,
    complete_squares,
    no_sources,
)
from .degree import Degree, degrees_upto


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class TwistSpec:
    """Fiber {0..N-1} and one map per base edge (vertices act as the identity)."""

    fiber: int
    maps: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        if self.fiber < 1:
            raise TwistError("fiber size must be positive")
        maps = {e: tuple(int(x) for x in table) for e, table in self.maps.items()}
        for e, table in maps.items():
            if len(table) != self.fiber or any(not 0 <= x < self.fiber for x in table):
                raise TwistError(f"map for {e!r} is not a function on 0..{self.fiber - 1}")
        object.__setattr__(self, "maps", dict(sorted(maps.items())))

    def apply(self, edge_id: str, x: int) -> int:
        return self.maps[edge_id][x]

    def apply_path(self, edges: Sequence[str], x: int) -> int:
        """tau of a path at x; the edge nearest the source acts first."""
        for e in reversed(edges):
            x = self.maps[e][x]
        return x

    @classmethod
    def from_function(cls, graph: KGraph, fiber: int, fn: Callable[[str, int], int]) -> TwistSpec:
        return cls(fiber, {e: tuple(fn(e, x) % fiber for x in range(fiber)) for e in graph.edges})


def _build(rank, vertices, edges, rules) -> KGraph:
    return KGraph(Skeleton(rank, tuple(vertices), tuple(edges)), rules)


def _grid_name(p) -> str:
    return "_".join(str(c) for c in p)


def grid(k: int, m: Degree | Sequence[int]) -> KGraph:
    """The grid graph with morphisms (p, q), p <= q <= m, and r(p, q) = p."""
    m = Degree(m)
    if m.rank != k:
        raise ValueError(f"shape {m} does not have rank {k}")
    points = [p.coords for p in degrees_upto(m)]
    inside = set(points)
    edges = []
    for p in points:
        for i in range(k):
            q = tuple(c + (1 if j == i else 0) for j, c in enumerate(p))
            if q in inside:
                edges.append(Edge(f"c{i + 1}:{_grid_name(p)}", i + 1, _grid_name(p), _grid_name(q)))
    rules = []
    for p in points:
        for i, j in itertools.combinations(range(k), 2):
            pi = tuple(c + (j_ == i) for j_, c in enumerate(p))
            pj = tuple(c + (j_ == j) for j_, c in enumerate(p))
            pij = tuple(c + (j_ in (i, j)) for j_, c in enumerate(p))
            if pij in inside:
                rules.append(
                    SquareRule(
                        (f"c{i + 1}:{_grid_name(p)}", f"c{j + 1}:{_grid_name(pi)}"),
                        (f"c{j + 1}:{_grid_name(p)}", f"c{i + 1}:{_grid_name(pj)}"),
                    )
                )
    return _build(k, [_grid_name(p) for p in points], edges, rules)


# Colors for the two-vertex 3-graph: red edges are color 1, blue 2, green 3.
RED, BLUE, GREEN = 1, 2, 3

THREE_GRAPH_EQUATIONS = (
    (("d", "a"), ("a'", "c")),
    (("f", "a"), ("a'", "e")),
    (("b", "d"), ("c", "b'")),
    (("b", "f"), ("e", "b'")),
    (("f", "d"), ("d", "f")),
    (("c", "e"), ("e", "c")),
)


def three_graph_skeleton() -> Skeleton:
    # a, a' run from v to w (range w); b, b' from w to v.
    edges = [
        Edge("a", BLUE, "w", "v"),
        Edge("a'", BLUE, "w", "v"),
        Edge("b", BLUE, "v", "w"),
        Edge("b'", BLUE, "v", "w"),
        Edge("c", RED, "v", "v"),
        Edge("d", RED, "w", "w"),
        Edge("e", GREEN, "v", "v"),
        Edge("f", GREEN, "w", "w"),
    ]
    return Skeleton(3, ("v", "w"), tuple(edges))


def three_graph_example() -> KGraph:
    """The two-vertex 3-graph with six stated squares, completed by bijectivity."""
    skeleton = three_graph_skeleton()
    colors = {e.id: e.color for e in skeleton.edges}
    rules = [SquareRule.from_equation(colors, lhs, rhs) for lhs, rhs in THREE_GRAPH_EQUATIONS]
    return KGraph(skeleton, complete_squares(skeleton, rules))


def plus_one(n: int, i: int, j: int) -> tuple[int, int]:
    return (i + 1) % n, (j + 1) % (n + 1)


def evans_sims(levels: int, permutation: Callable[[int, int, int], tuple[int, int]] = plus_one) -> KGraph:
    """Truncated Evans-Sims ladder with squares a{n}_i.b{n+1}_j = b{n}_xi.a{n+1}_zeta.

    ``permutation(n, i, j)`` returns (xi, zeta) and must be a bijection of
    Z_n x Z_{n+1} for every n.
    """
    if levels < 1:
        raise ValueError("need at least one level")
    vertices = [f"v{n}" for n in range(levels + 1)]
    edges = []
    for n in range(1, levels + 1):
        for i in range(n):
            edges.append(Edge(f"a{n}_{i}", 1, f"v{n - 1}", f"v{n}"))
            edges.append(Edge(f"b{n}_{i}", 2, f"v{n - 1}", f"v{n}"))
    rules = []
    for n in range(1, levels):
        images = {}
        for i in range(n):
            for j in range(n + 1):
                xi, zeta = permutation(n, i, j)
                if not (0 <= xi < n and 0 <= zeta < n + 1):
                    raise ValueError(f"level {n}: ({xi}, {zeta}) outside Z_{n} x Z_{n + 1}")
                images[(i, j)] = (xi, zeta)
        if len(set(images.values())) != n * (n + 1):
            raise ValueError(f"level {n}: map is not a permutation of Z_{n} x Z_{n + 1}")
        for (i, j), (xi, zeta) in images.items():
            rules.append(SquareRule((f"a{n}_{i}", f"b{n + 1}_{j}"), (f"b{n}_{xi}", f"a{n + 1}_{zeta}")))
    return _build(2, vertices, edges, rules)


def level_of(vertex: str) -> int:
    """Level of an Evans-Sims vertex (plain or twisted), e.g. ``"v3:7"`` -> 3."""
    return int(vertex[1:].split(":")[0])


def twisted_product(base: KGraph, twist: TwistSpec) -> KGraph:
    """The k-graph with vertices (v, x), edges (e, x), r(e, x) = (r(e), tau_e(x)), s(e, x) = (s(e), x).

    Squares lift fiberwise; a base square whose two sides induce different
    maps on the fiber raises :class:`InvalidKGraphError` naming the square and point.
    """
    missing = sorted(set(base.edges) - set(twist.maps))
    if missing:
        raise TwistError(f"no fiber map for edges {missing}")
    if no_sources(base):
        warnings.warn("base graph has sources; the product is still a k-graph", stacklevel=2)
    report = ValidationReport()
    for rule in base.rules:
        (g, h), (h2, g2) = rule.lo_hi, rule.hi_lo
        for x in range(twist.fiber):
            left = twist.apply(g, twist.apply(h, x))
            right = twist.apply(h2, twist.apply(g2, x))
            if left != right:
                report.add(
                    "functoriality",
                    (g, h, h2, g2),
                    f"square {g}.{h} = {h2}.{g2} at fiber point {x}: {left} != {right}",
                )
    if not report.ok:
        raise InvalidKGraphError(report)

    def lift(name, x):
        return f"{name}:{x}"

    vertices = [lift(v, x) for v in base.vertices for x in range(twist.fiber)]
    edges = [
        Edge(lift(e.id, x), e.color, lift(e.range, twist.apply(e.id, x)), lift(e.source, x))
        for e in base.edges.values()
        for x in range(twist.fiber)
    ]
    rules = []
    for rule in base.rules:
        (g, h), (h2, g2) = rule.lo_hi, rule.hi_lo
        for x in range(twist.fiber):
            rules.append(
                SquareRule(
                    (lift(g, twist.apply(h, x)), lift(h, x)),
                    (lift(h2, twist.apply(g2, x)), lift(g2, x)),
                )
            )
    return _build(base.rank, vertices, edges, rules)


def multiply_by_level(base: KGraph, fiber: int) -> TwistSpec:
    """tau_{a{n}_i}(x) = tau_{b{n}_j}(x) = n x mod N for an Evans-Sims ladder."""
    return TwistSpec.from_function(base, fiber, lambda e, x: int(e[1:].split("_")[0]) * x)


def twisted_evans_sims(levels: int, fiber: int) -> KGraph:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        base = evans_sims(levels)
        return twisted_product(base, multiply_by_level(base, fiber))


def two_loop() -> KGraph:
    """Rank 1: one vertex ``v`` with loops ``e1`` and ``e2``."""
    return _build(1, ["v"], [Edge("e1", 1, "v", "v"), Edge("e2", 1, "v", "v")], [])


def single_loop() -> KGraph:
    return _build(1, ["v"], [Edge("c", 1, "v", "v")], [])


def flip() -> KGraph:
    """Rank 2: one vertex with a color-1 loop ``f`` and a color-2 loop ``g``."""
    return _build(
        2,
        ["v"],
        [Edge("f", 1, "v", "v"), Edge("g", 2, "v", "v")],
        [SquareRule(("f", "g"), ("g", "f"))],
    )


def single_vertex_2graph(
    n_first: int, n_second: int, rule: Mapping[tuple[int, int], tuple[int, int]]
) -> KGraph:
    """One vertex, loops a0.. (color 1) and b0.. (color 2), squares a_i.b_j = b_j'.a_i'.

    ``rule`` maps (i, j) to (j', i') and must be a bijection.
    """
    edges = [Edge(f"a{i}", 1, "v", "v") for i in range(n_first)]
    edges += [Edge(f"b{j}", 2, "v", "v") for j in range(n_second)]
    rules = [SquareRule((f"a{i}", f"b{j}"), (f"b{jj}", f"a{ii}")) for (i, j), (jj, ii) in rule.items()]
    return _build(2, ["v"], edges, rules)


def all_single_vertex_2graphs(max_edges: int = 2):
    """Every single-vertex 2-graph with 1..max_edges loops of each color.

    Yields ``(n_first, n_second, rule, graph)`` over all square bijections.
    """
    for n1 in range(1, max_edges + 1):
        for n2 in range(1, max_edges + 1):
            pairs = [(i, j) for i in range(n1) for j in range(n2)]
            images = [(j, i) for i in range(n1) for j in range(n2)]
            for perm in itertools.permutations(images):
                rule = dict(zip(pairs, perm))
                yield n1, n2, rule, single_vertex_2graph(n1, n2, rule)


def directed_graph(vertices: Sequence[str], arrows: Sequence[tuple[str, str]]) -> KGraph:
    """A rank-1 graph from (range, source) pairs; edges are named e0, e1, ..."""
    edges = [Edge(f"e{i}", 1, r, s) for i, (r, s) in enumerate(arrows)]
    return _build(1, vertices, edges, [])


def random_directed_graph(rng: random.Random, max_vertices: int = 6, max_edges: int = 10) -> KGraph:
    n = rng.randint(1, max_vertices)
    vertices = [f"u{i}" for i in range(n)]
    m = rng.randint(1, max_edges)
    arrows = [(rng.choice(vertices), rng.choice(vertices)) for _ in range(m)]
    return directed_graph(vertices, arrows)
