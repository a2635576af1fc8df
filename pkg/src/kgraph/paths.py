"""Finite paths in normal form.

A path is stored as its edge sequence read from the range end, with all
color-1 edges first, then color-2 edges, and so on.  Unique factorization
makes this representative canonical, so path equality is tuple equality.
Rewriting between color orders goes through the graph's square rules.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .core import KGraph
from .degree import Degree, degrees_upto


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    edges: tuple[str, ...]
    range: str
    source: str
    degree: Degree
    graph: KGraph = field(compare=False, repr=False, hash=False)

    def __len__(self) -> int:
        return len(self.edges)

    def is_vertex(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        return render(self)

    def sort_key(self) -> tuple:
        return (self.degree.sort_key(), self.range, self.edges)


def vertex_path(graph: KGraph, vertex: str) -> Path:
    if vertex not in graph.vertices:
        raise PathError(f"unknown vertex {vertex!r}")
    return Path((), vertex, vertex, Degree.zero(graph.rank), graph)


def _check_composable(graph: KGraph, edges: Sequence[str]) -> None:
    for e in edges:
        if e not in graph.edges:
            raise PathError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if graph.edges[a].source != graph.edges[b].range:
            raise PathError(f"edges {a!r} and {b!r} are not composable")


def _normal_colors(graph: KGraph, degree: Degree) -> list[int]:
    return [c for c in range(1, graph.rank + 1) for _ in range(degree[c - 1])]


def _rearrange(graph: KGraph, edges: Sequence[str], target: Sequence[int], rng=None) -> list[str]:
    """Rewrite ``edges`` by square swaps until its color sequence is ``target``.

    Each edge is ranked by where the same-colored occurrence sits in the
    target; swaps remove rank inversions, and since same-colored edges never
    swap past each other every inversion is between distinct colors.  With
    ``rng`` the inversion to resolve is picked at random (for confluence tests).
    """
    slots: dict[int, list[int]] = defaultdict(list)
    for index, color in enumerate(target):
        slots[color].append(index)
    seen: Counter = Counter()
    ranks = []
    for e in edges:
        color = graph.color(e)
        ranks.append(slots[color][seen[color]])
        seen[color] += 1
    edges = list(edges)
    if rng is None:
        changed = True
        while changed:
            changed = False
            for i in range(len(edges) - 1):
                if ranks[i] > ranks[i + 1]:
                    edges[i], edges[i + 1] = graph.swap(edges[i], edges[i + 1])
                    ranks[i], ranks[i + 1] = ranks[i + 1], ranks[i]
                    changed = True
    else:
        while True:
            inversions = [i for i in range(len(edges) - 1) if ranks[i] > ranks[i + 1]]
            if not inversions:
                break
            i = rng.choice(inversions)
            edges[i], edges[i + 1] = graph.swap(edges[i], edges[i + 1])
            ranks[i], ranks[i + 1] = ranks[i + 1], ranks[i]
    return edges


def _make(graph: KGraph, edges: Sequence[str], start: str | None = None, degree: Degree | None = None) -> Path:
    """Wrap an already-normal composable edge list; ``start`` is the vertex for an empty list."""
    if not edges:
        return Path((), start, start, Degree.zero(graph.rank), graph)
    if degree is None:
        counts = [0] * graph.rank
        for e in edges:
            counts[graph.color(e) - 1] += 1
        degree = Degree(counts)
    return Path(
        tuple(edges),
        graph.edges[edges[0]].range,
        graph.edges[edges[-1]].source,
        degree,
        graph,
    )


def normalize(graph: KGraph, edges: Sequence[str], *, rng: random.Random | None = None) -> Path:
    """The normal-form path equal to a composable edge sequence.

    ``rng`` randomizes the order of swaps; the result does not depend on it
    for a validated graph.
    """
    edges = list(edges)
    if not edges:
        raise PathError("an empty edge sequence names no vertex; use vertex_path")
    _check_composable(graph, edges)
    colors = sorted(graph.color(e) for e in edges)
    return _make(graph, _rearrange(graph, edges, colors, rng))


def compose(mu: Path, nu: Path) -> Path:
    """The path ``mu nu`` (``mu`` nearer the range)."""
    if mu.graph is not nu.graph:
        raise PathError("paths belong to different graphs")
    if mu.source != nu.range:
        raise PathError(f"cannot compose: source {mu.source!r} != range {nu.range!r}")
    if mu.is_vertex():
        return nu
    if nu.is_vertex():
        return mu
    graph = mu.graph
    colors = _normal_colors(graph, mu.degree + nu.degree)
    return _make(graph, _rearrange(graph, mu.edges + nu.edges, colors))


def compose_all(paths: Sequence[Path]) -> Path:
    result = paths[0]
    for p in paths[1:]:
        result = compose(result, p)
    return result


def power(cycle: Path, times: int) -> Path:
    if cycle.range != cycle.source:
        raise PathError("only a path with equal range and source can be iterated")
    result = vertex_path(cycle.graph, cycle.range)
    for _ in range(times):
        result = compose(result, cycle)
    return result


def factorize(lam: Path, degrees: Sequence[Degree]) -> list[Path]:
    """Split ``lam`` into consecutive factors of the given degrees (which must sum to d(lam))."""
    graph = lam.graph
    total = Degree.zero(graph.rank)
    for d in degrees:
        total = total + d
    if total != lam.degree:
        raise PathError(f"factor degrees sum to {total}, path has degree {lam.degree}")
    target: list[int] = []
    for d in degrees:
        target.extend(_normal_colors(graph, d))
    edges = _rearrange(graph, lam.edges, target)
    factors = []
    cursor = 0
    vertex = lam.range
    for d in degrees:
        chunk = edges[cursor : cursor + d.total]
        factors.append(_make(graph, chunk, vertex))
        if chunk:
            vertex = graph.edges[chunk[-1]].source
        cursor += d.total
    return factors


def segment(lam: Path, m: Degree, n: Degree) -> Path:
    """The unique middle factor lam(m, n) of degree n - m."""
    if not (Degree.zero(lam.graph.rank) <= m <= n <= lam.degree):
        raise PathError(f"need 0 <= {m} <= {n} <= {lam.degree}")
    return factorize(lam, [m, n - m, lam.degree - n])[1]


def render(path: Path) -> str:
    """Comma-separated edge ids in normal form; a vertex renders as ``@id``."""
    if path.is_vertex():
        return f"@{path.range}"
    return ",".join(path.edges)


def parse_path(graph: KGraph, text: str) -> Path:
    text = text.strip()
    if text.startswith("@"):
        return vertex_path(graph, text[1:])
    if not text:
        raise PathError("empty path string")
    return normalize(graph, [part.strip() for part in text.split(",")])


def _dfs(graph: KGraph, start: str, colors: Sequence[int], forward: bool) -> Iterator[list[str]]:
    if not colors:
        yield []
        return
    stack = [(start, 0, [])]
    # Explicit stack, children pushed in reverse so ids come out ascending.
    while stack:
        vertex, depth, acc = stack.pop()
        if depth == len(colors):
            yield acc if forward else acc[::-1]
            continue
        if forward:
            candidates = graph.edges_into(vertex, colors[depth])
        else:
            candidates = graph.edges_out_of(vertex, colors[depth])
        for e in reversed(candidates):
            edge = graph.edges[e]
            nxt = edge.source if forward else edge.range
            stack.append((nxt, depth + 1, acc + [e]))


def iter_paths(graph: KGraph, vertex: str, degree: Degree) -> Iterator[Path]:
    """Lazy version of :func:`enumerate_paths`."""
    if degree.is_zero():
        yield vertex_path(graph, vertex)
        return
    colors = _normal_colors(graph, degree)
    for edges in _dfs(graph, vertex, colors, forward=True):
        yield _make(graph, edges, degree=degree)


def enumerate_paths(graph: KGraph, vertex: str, degree: Degree) -> list[Path]:
    """vΛ^n: all paths with range ``vertex`` and the given degree, in DFS order."""
    return list(iter_paths(graph, vertex, degree))


def enumerate_paths_ending(graph: KGraph, vertex: str, degree: Degree) -> list[Path]:
    """Λ^n v: all paths with source ``vertex`` and the given degree."""
    if degree.is_zero():
        return [vertex_path(graph, vertex)]
    colors = _normal_colors(graph, degree)[::-1]
    found = [_make(graph, edges, degree=degree) for edges in _dfs(graph, vertex, colors, forward=False)]
    return sorted(found, key=lambda p: p.edges)


def enumerate_paths_upto(graph: KGraph, vertex: str, bound: Degree) -> list[Path]:
    """All paths with range ``vertex`` and degree <= ``bound``, ordered by degree then DFS."""
    result = []
    for d in degrees_upto(bound):
        result.extend(enumerate_paths(graph, vertex, d))
    return result


def paths_of_degree(graph: KGraph, degree: Degree) -> list[Path]:
    """Λ^n over all vertices."""
    result = []
    for v in graph.vertices:
        result.extend(enumerate_paths(graph, v, degree))
    return result


def extends_in_color(graph: KGraph, path: Path, color: int) -> bool:
    """Whether ``path`` can be followed by an edge of ``color``."""
    return bool(graph.edges_into(path.source, color))
