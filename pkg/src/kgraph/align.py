"""Minimal common extensions and exhaustive sets."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .degree import Degree
from .paths import Path, compose, enumerate_paths, enumerate_paths_upto, segment, vertex_path


@dataclass(frozen=True)
class MceSet:
    """MCE(mu, nu): common extensions of degree d(mu) v d(nu)."""

    mu: Path
    nu: Path
    paths: frozenset[Path]

    def __iter__(self):
        return iter(sorted(self.paths, key=Path.sort_key))

    def __len__(self) -> int:
        return len(self.paths)

    def __contains__(self, item) -> bool:
        return item in self.paths

    def is_empty(self) -> bool:
        return not self.paths


def mce(mu: Path, nu: Path) -> MceSet:
    """Extend ``mu`` by every path of the missing degree and keep those that also extend ``nu``."""
    if mu.graph is not nu.graph:
        raise ValueError("paths belong to different graphs")
    if mu.range != nu.range:
        return MceSet(mu, nu, frozenset())
    joint = mu.degree | nu.degree
    found = set()
    for tail in enumerate_paths(mu.graph, mu.source, joint - mu.degree):
        candidate = compose(mu, tail)
        if segment(candidate, Degree.zero(mu.graph.rank), nu.degree) == nu:
            found.add(candidate)
    return MceSet(mu, nu, frozenset(found))


def has_common_extension(mu: Path, nu: Path) -> bool:
    """Same as ``not mce(mu, nu).is_empty()`` but stops at the first extension."""
    if mu.range != nu.range:
        return False
    if nu.degree <= mu.degree:
        return segment(mu, Degree.zero(mu.graph.rank), nu.degree) == nu
    if mu.degree <= nu.degree:
        return segment(nu, Degree.zero(mu.graph.rank), mu.degree) == mu
    joint = mu.degree | nu.degree
    zero = Degree.zero(mu.graph.rank)
    for tail in enumerate_paths(mu.graph, mu.source, joint - mu.degree):
        if segment(compose(mu, tail), zero, nu.degree) == nu:
            return True
    return False


def mce_sets(xs: Iterable[Path], ys: Iterable[Path]) -> frozenset[Path]:
    """MCE(X, Y): the union of MCE(mu, nu) over mu in X, nu in Y."""
    ys = list(ys)
    result: set[Path] = set()
    for mu in xs:
        for nu in ys:
            result |= mce(mu, nu).paths
    return frozenset(result)


def is_exhaustive(paths: Iterable[Path], vertex: str, graph=None) -> tuple[bool, Path | None]:
    """Decide whether ``paths`` is exhaustive at ``vertex``, returning a counterexample if not.

    Let D be the join of the degrees in the set.  For d(lam) >= D the
    question only depends on lam(0, D), so every path in vΛ of degree <= D is
    tested (which covers paths that cannot be extended up to D).  Paths whose
    degree is incomparable with D are not visited.
    """
    paths = [p for p in paths if p.range == vertex]
    if graph is None:
        if not paths:
            raise ValueError("pass graph= when the set has no path at the vertex")
        graph = paths[0].graph
    if not paths:
        return False, vertex_path(graph, vertex)
    bound = Degree.zero(graph.rank)
    for p in paths:
        bound = bound | p.degree
    for lam in enumerate_paths_upto(graph, vertex, bound):
        if not any(has_common_extension(lam, mu) for mu in paths):
            return False, lam
    return True, None
