"""Shift maps, eventually periodic paths and bounded aperiodicity checks.

The finite-path aperiodicity conditions quantify over infinitely many
degree pairs and path lengths.  Everything here searches inside
caller-supplied degree bounds and reports one of three verdicts:

* :class:`Witnessed` with a certificate that can be re-checked on its own,
* :class:`RefutedUpToBound` when every path in the box was tried,
* :class:`ExhaustedUnknown` when no certificate was found but the box is not
  conclusive (it reached a source, or the bounds cannot hold the instance).

No verdict is extrapolated beyond its bounds.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

import networkx as nx

from .align import has_common_extension
from .core import KGraph
from .degree import Degree, degrees_between, degrees_upto
from .paths import (
    Path,
    PathError,
    compose,
    compose_all,
    enumerate_paths,
    enumerate_paths_upto,
    iter_paths,
    power,
    segment,
    vertex_path,
)


class TheoremViolation(AssertionError):
    """A constructive step produced an object that fails its own check."""


class NoWitnessError(LookupError):
    def __init__(self, index: int, m: Degree, n: Degree, bound: Degree):
        self.index, self.m, self.n, self.bound = index, m, n, bound
        super().__init__(f"no star witness for pair #{index} ({m}) vs ({n}) within degree {bound}")


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class Witnessed:
    certificate: object
    status = "witnessed"


@dataclass(frozen=True)
class RefutedUpToBound:
    bounds: dict
    failing_instance: object
    searched: int = 0
    status = "refuted"


@dataclass(frozen=True)
class ExhaustedUnknown:
    bounds: dict
    reason: str
    searched: int = 0
    status = "unknown"


Verdict = Witnessed | RefutedUpToBound | ExhaustedUnknown


# -- star witnesses and separations -------------------------------------------


def star_segments(lam: Path, m: Degree, n: Degree) -> tuple[Path, Path]:
    """lam(m, m + d - (m v n)) and lam(n, n + d - (m v n))."""
    rest = lam.degree - (m | n)
    return segment(lam, m, m + rest), segment(lam, n, n + rest)


def satisfies_star(lam: Path, m: Degree, n: Degree) -> bool:
    if not (m | n) <= lam.degree:
        return False
    left, right = star_segments(lam, m, n)
    return left != right


@dataclass(frozen=True)
class StarWitness:
    vertex: str
    m: Degree
    n: Degree
    path: Path

    def verify(self) -> bool:
        return self.path.range == self.vertex and satisfies_star(self.path, self.m, self.n)


@dataclass(frozen=True)
class Separation:
    """tau with MCE(alpha tau, beta tau) empty."""

    alpha: Path
    beta: Path
    tau: Path

    def extended(self) -> tuple[Path, Path]:
        return compose(self.alpha, self.tau), compose(self.beta, self.tau)

    def verify(self) -> bool:
        return not has_common_extension(*self.extended())


@dataclass(frozen=True)
class CycleEntries:
    """One (cycle, entry edge) pair per simple cycle."""

    entries: tuple[tuple[Path, str], ...]


@functools.lru_cache(maxsize=65536)
def _truncated(graph: KGraph, vertex: str, bound: Degree) -> bool:
    """Whether some path from ``vertex`` inside the box dies at a source before reaching ``bound``."""
    sources: dict[Degree, set[str]] = {}
    for d in degrees_upto(bound):
        if d.is_zero():
            here = {vertex}
        else:
            i = next(i for i, c in enumerate(d.coords) if c)
            prev = d - Degree.unit(graph.rank, i + 1)
            here = {
                graph.edges[e].source
                for u in sources[prev]
                for e in graph.edges_into(u, i + 1)
            }
        sources[d] = here
        for i in range(graph.rank):
            if d[i] < bound[i] and any(not graph.edges_into(u, i + 1) for u in here):
                return True
    return False


def _search(graph: KGraph, vertex: str, low: Degree, bound: Degree, predicate):
    """First path from ``vertex`` with low <= d <= bound satisfying an extension-stable predicate.

    Returns (path or None, number of paths examined, truncated flag).
    """
    truncated = _truncated(graph, vertex, bound)
    searched = 0
    if not truncated:
        # Every box path extends to degree `bound` and the predicate survives extension.
        for top in iter_paths(graph, vertex, bound):
            searched += 1
            if predicate(top):
                break
        else:
            return None, searched, truncated
    for d in degrees_between(low, bound):
        for p in iter_paths(graph, vertex, d):
            searched += 1
            if predicate(p):
                return p, searched, truncated
    return None, searched, truncated


def find_star_witness(graph: KGraph, vertex: str, m: Degree, n: Degree, degree_bound: Degree) -> Verdict:
    """Search vΛ for lam with m v n <= d(lam) <= degree_bound whose m- and n-shifted segments differ."""
    if m == n:
        raise ValueError("the star condition needs m != n")
    joint = m | n
    bounds = {"m": m, "n": n, "degree": degree_bound}
    if not joint <= degree_bound:
        raise ValueError(f"m v n = {joint} exceeds the degree bound {degree_bound}")
    found, searched, truncated = _search(
        graph, vertex, joint, degree_bound, lambda p: satisfies_star(p, m, n)
    )
    if found is not None:
        return Witnessed(StarWitness(vertex, m, n, found))
    if truncated:
        return ExhaustedUnknown(bounds, "search reached a source", searched)
    return RefutedUpToBound(bounds, (vertex, m, n), searched)


def find_separating_tau(graph: KGraph, alpha: Path, beta: Path, tau_bound: Degree) -> Verdict:
    """Search s(alpha)Λ for tau with d(tau) <= tau_bound and MCE(alpha tau, beta tau) empty."""
    if alpha.source != beta.source:
        raise ValueError("alpha and beta must share their source")
    if alpha == beta:
        raise ValueError("alpha and beta must be distinct")
    start = vertex_path(graph, alpha.source)
    if alpha.range != beta.range:
        return Witnessed(Separation(alpha, beta, start))
    bounds = {"tau": tau_bound}

    def separates(tau: Path) -> bool:
        return not has_common_extension(compose(alpha, tau), compose(beta, tau))

    zero = Degree.zero(graph.rank)
    found, searched, truncated = _search(graph, alpha.source, zero, tau_bound, separates)
    if found is not None:
        return Witnessed(Separation(alpha, beta, found))
    if truncated:
        return ExhaustedUnknown(bounds, "search reached a source", searched)
    return RefutedUpToBound(bounds, (alpha, beta), searched)


def separation_from_star(mu: Path, nu: Path, lam: Path) -> tuple[Path, Path]:
    """Turn a star witness for (d(mu), d(nu)) into the pair (mu lam, nu lam) with no common extension.

    Requires equal ranges and sources, d(mu) ^ d(nu) = 0 and lam starting at s(mu).
    """
    m, n = mu.degree, nu.degree
    if mu == nu:
        raise ValueError("mu and nu must be distinct")
    if mu.range != nu.range or mu.source != nu.source:
        raise ValueError("mu and nu must share range and source")
    if not (m & n).is_zero():
        raise ValueError(f"degrees {m} and {n} are not disjoint")
    if lam.range != mu.source:
        raise ValueError("lam must start at the common source")
    if not satisfies_star(lam, m, n):
        raise ValueError("lam does not satisfy the star condition for these degrees")
    left, right = compose(mu, lam), compose(nu, lam)
    if has_common_extension(left, right):
        raise TheoremViolation(f"{left} and {right} have a common extension")
    return left, right


def star_from_separation(lam0: Path, m: Degree, n: Degree, tau0: Path, tau1: Path | None = None) -> StarWitness:
    """Build a star witness lam0 tau0 tau1 from a separation of lam0(m, m v n) and lam0(n, m v n).

    ``tau1`` defaults to the first path of degree m v n at s(tau0).
    """
    joint = m | n
    if lam0.degree != joint:
        raise ValueError(f"lam0 must have degree m v n = {joint}")
    mu, nu = segment(lam0, m, joint), segment(lam0, n, joint)
    if tau0.range != lam0.source:
        raise ValueError("tau0 must start at s(lam0)")
    if has_common_extension(compose(mu, tau0), compose(nu, tau0)):
        raise ValueError("tau0 does not separate the two tails of lam0")
    if tau1 is None:
        options = enumerate_paths(lam0.graph, tau0.source, joint)
        if not options:
            raise PathError(f"no path of degree {joint} at {tau0.source!r}")
        tau1 = options[0]
    elif tau1.degree != joint or tau1.range != tau0.source:
        raise ValueError("tau1 must have degree m v n and start at s(tau0)")
    lam = compose_all([lam0, tau0, tau1])
    witness = StarWitness(lam0.range, m, n, lam)
    if not witness.verify():
        raise TheoremViolation(f"{lam} fails the star condition for {m}, {n}")
    return witness


# -- eventually periodic infinite paths ----------------------------------------


@dataclass(frozen=True)
class UPPath:
    """The infinite path prefix . cycle . cycle . ...

    Its degree is infinite on the coordinates where the cycle has positive
    degree and equals the prefix degree elsewhere.
    """

    prefix: Path
    cycle: Path

    def __post_init__(self):
        if self.cycle.degree.is_zero():
            raise ValueError("the cycle must have nonzero degree")
        if not (self.cycle.range == self.cycle.source == self.prefix.source):
            raise ValueError("the cycle must start and end at the source of the prefix")
        if self.prefix.graph is not self.cycle.graph:
            raise ValueError("prefix and cycle belong to different graphs")

    @property
    def graph(self) -> KGraph:
        return self.prefix.graph

    @property
    def range(self) -> str:
        return self.prefix.range

    @property
    def degree(self) -> tuple[float, ...]:
        return tuple(
            math.inf if c else p for p, c in zip(self.prefix.degree, self.cycle.degree)
        )

    def _repeats_to_cover(self, target: Degree) -> int:
        reps = 0
        for p, c, t in zip(self.prefix.degree, self.cycle.degree, target):
            if c == 0:
                if t > p:
                    raise PathError(f"degree {target} exceeds the path degree {self.degree}")
            elif t > p:
                reps = max(reps, -(-(t - p) // c))
        return reps

    def unroll(self, times: int) -> Path:
        return compose(self.prefix, power(self.cycle, times))

    def truncate(self, target: Degree) -> Path:
        """x(0, target)."""
        return segment(self.unroll(self._repeats_to_cover(target)), Degree.zero(self.graph.rank), target)

    def segment(self, m: Degree, n: Degree) -> Path:
        return segment(self.unroll(self._repeats_to_cover(n)), m, n)


def shift(x: Path | UPPath, m: Degree) -> Path | UPPath:
    """sigma^m x: drop the initial segment of degree m."""
    if isinstance(x, UPPath):
        unrolled = x.unroll(x._repeats_to_cover(m))
        return UPPath(segment(unrolled, m, unrolled.degree), x.cycle)
    if not m <= x.degree:
        raise PathError(f"cannot shift a path of degree {x.degree} by {m}")
    return segment(x, m, x.degree)


def up_equal(x: UPPath, y: UPPath) -> bool:
    """Equality of eventually periodic paths, decided on a finite horizon.

    Beyond both prefixes each path is a repetition of its first block of
    cycle degree, so agreement up to max prefix + 2 lcm(cycles) forces
    agreement everywhere.
    """
    if x.degree != y.degree:
        return False
    offset = x.prefix.degree | y.prefix.degree
    period = Degree(math.lcm(a, b) if a and b else 0 for a, b in zip(x.cycle.degree, y.cycle.degree))
    horizon = offset + period * 2
    return x.truncate(horizon) == y.truncate(horizon)


def star_from_aperiodic(x: Path | UPPath, m: Degree, n: Degree, bound: Degree) -> StarWitness | None:
    """A star witness x(0, p + m v n) from the first p <= bound where the m- and n-shifts differ."""
    joint = m | n
    for p in degrees_upto(bound):
        try:
            lam = x.truncate(p + joint) if isinstance(x, UPPath) else segment(
                x, Degree.zero(x.graph.rank), p + joint
            )
        except PathError:
            continue
        if satisfies_star(lam, m, n):
            return StarWitness(lam.range, m, n, lam)
    return None


# -- degree pairs and the prefix construction ----------------------------------


def _degrees_with_total(rank: int, total: int) -> list[Degree]:
    result = []
    for cuts in itertools.combinations(range(total + rank - 1), rank - 1):
        bounds = (-1, *cuts, total + rank - 1)
        result.append(Degree(bounds[i + 1] - bounds[i] - 1 for i in range(rank)))
    return result


def degree_pairs(rank: int) -> Iterator[tuple[Degree, Degree]]:
    """Unordered pairs m != n listed by (|m| + |n|, lexicographic), each once with m first."""
    for size in itertools.count(1):
        batch = []
        for t in range(size + 1):
            for m in _degrees_with_total(rank, t):
                for n in _degrees_with_total(rank, size - t):
                    if m.coords < n.coords:
                        batch.append((m, n))
        yield from sorted(batch, key=lambda mn: (mn[0].coords, mn[1].coords))


def pairs_upto(bound: Degree) -> list[tuple[Degree, Degree]]:
    box = degrees_upto(bound)
    pairs = [(m, n) for m in box for n in box if m.coords < n.coords]
    return sorted(pairs, key=lambda mn: (mn[0].total + mn[1].total, mn[0].coords, mn[1].coords))


@dataclass(frozen=True)
class PairCertificate:
    """x(offset + m, offset + m + length) != x(offset + n, offset + n + length)."""

    m: Degree
    n: Degree
    offset: Degree
    length: Degree
    left: Path
    right: Path

    def verify(self, path: Path) -> bool:
        left = segment(path, self.offset + self.m, self.offset + self.m + self.length)
        right = segment(path, self.offset + self.n, self.offset + self.n + self.length)
        return left == self.left and right == self.right and left != right


@dataclass(frozen=True)
class AperiodicPrefix:
    path: Path
    witnesses: tuple[StarWitness, ...]
    certificates: tuple[PairCertificate, ...]

    def verify(self) -> bool:
        return all(c.verify(self.path) for c in self.certificates)


def build_aperiodic_prefix(graph: KGraph, vertex: str, num_pairs: int, degree_bound: Degree) -> AperiodicPrefix:
    """Concatenate star witnesses for the first ``num_pairs`` degree pairs.

    Each witness starts where the previous one ends, so every infinite
    continuation of the result has distinct m- and n-shifts for each listed pair.
    """
    current = vertex_path(graph, vertex)
    witnesses, certificates = [], []
    for index, (m, n) in enumerate(itertools.islice(degree_pairs(graph.rank), num_pairs)):
        if not (m | n) <= degree_bound:
            raise NoWitnessError(index, m, n, degree_bound)
        verdict = find_star_witness(graph, current.source, m, n, degree_bound)
        if not isinstance(verdict, Witnessed):
            raise NoWitnessError(index, m, n, degree_bound)
        witness = verdict.certificate
        offset = current.degree
        length = witness.path.degree - (m | n)
        left, right = star_segments(witness.path, m, n)
        witnesses.append(witness)
        certificates.append(PairCertificate(m, n, offset, length, left, right))
        current = compose(current, witness.path)
    result = AperiodicPrefix(current, tuple(witnesses), tuple(certificates))
    if not result.verify():
        raise TheoremViolation("prefix certificate failed to re-verify")
    return result


# -- rank one -----------------------------------------------------------------


def simple_cycles(graph: KGraph) -> list[Path]:
    """One representative path per simple cycle of vertices (rank 1 only)."""
    if graph.rank != 1:
        raise ValueError("cycles are only enumerated for rank-1 graphs")
    walk = nx.DiGraph()
    walk.add_nodes_from(graph.vertices)
    for e in sorted(graph.edges.values(), key=lambda e: e.id):
        if not walk.has_edge(e.range, e.source):
            walk.add_edge(e.range, e.source, edge=e.id)
    cycles = []
    for nodes in nx.simple_cycles(walk):
        start = nodes.index(min(nodes))
        nodes = nodes[start:] + nodes[:start]
        ids = [walk.edges[u, w]["edge"] for u, w in zip(nodes, nodes[1:] + nodes[:1])]
        cycles.append(compose_all([_edge_path(graph, e) for e in ids]))
    return sorted(cycles, key=Path.sort_key)


def _edge_path(graph: KGraph, edge_id: str) -> Path:
    e = graph.edges[edge_id]
    return Path((edge_id,), e.range, e.source, Degree.unit(graph.rank, e.color), graph)


def cycle_has_entry(graph: KGraph) -> Verdict:
    """Every cycle has an entry: another edge with the same range as one of its edges."""
    if graph.rank != 1:
        raise ValueError("cycle entries are defined for rank-1 graphs")
    entries = []
    for cycle in simple_cycles(graph):
        entry = None
        for e in cycle.edges:
            others = [f for f in graph.edges_into(graph.edges[e].range, 1) if f != e]
            if others:
                entry = others[0]
                break
        if entry is None:
            return RefutedUpToBound({}, cycle)
        entries.append((cycle, entry))
    return Witnessed(CycleEntries(tuple(entries)))


def cycle_pair_verdicts(graph: KGraph, pair_bound: Degree, tau_bound: Degree) -> list[tuple[Path, Path, Verdict]]:
    """Separating-tau verdicts for (vertex, closed path at that vertex) pairs with |cycle| <= pair_bound."""
    results = []
    for v in graph.vertices:
        base = vertex_path(graph, v)
        for d in degrees_upto(pair_bound):
            if d.is_zero():
                continue
            for c in enumerate_paths(graph, v, d):
                if c.source == v:
                    results.append((base, c, find_separating_tau(graph, base, c, tau_bound)))
    return results


# -- the combined check --------------------------------------------------------


@dataclass(frozen=True)
class StarRecord:
    vertex: str
    m: Degree
    n: Degree
    verdict: Verdict


@dataclass(frozen=True)
class TauRecord:
    alpha: Path
    beta: Path
    verdict: Verdict

    @property
    def vertex(self) -> str:
        return self.alpha.source


@dataclass(frozen=True)
class Conflict:
    kind: str
    detail: str


@dataclass
class AperiodicityReport:
    pair_bound: Degree
    path_bound: Degree
    tau_bound: Degree
    vertices: tuple[str, ...] = ()
    conditions: tuple[str, ...] = ()
    star: list[StarRecord] = field(default_factory=list)
    tau: list[TauRecord] = field(default_factory=list)
    conflicts: list[Conflict] = field(default_factory=list)
    separations_checked: int = 0
    stars_constructed: int = 0

    @property
    def consistent(self) -> bool:
        return not self.conflicts

    def vertex_status(self) -> dict[str, dict[str, str]]:
        """Per vertex and condition: 'witnessed', 'periodic-suspect' or 'unknown'.

        A condition with no instances at a vertex is vacuously witnessed.
        """
        table: dict[str, dict[str, list[str]]] = {
            v: {c: [] for c in self.conditions} for v in self.vertices
        }
        for rec in self.star:
            table[rec.vertex]["star"].append(rec.verdict.status)
        for rec in self.tau:
            table[rec.vertex]["tau"].append(rec.verdict.status)
        out = {}
        for v, conds in table.items():
            out[v] = {}
            for cond, statuses in conds.items():
                if "refuted" in statuses:
                    out[v][cond] = "periodic-suspect"
                elif "unknown" in statuses:
                    out[v][cond] = "unknown"
                else:
                    out[v][cond] = "witnessed"
        return out

    def periodic_suspects(self, condition: str) -> list[str]:
        return sorted(
            v for v, conds in self.vertex_status().items() if conds.get(condition) == "periodic-suspect"
        )


def _pair_key(a: Path, b: Path) -> tuple:
    return tuple(sorted((a.sort_key(), b.sort_key())))


def check_aperiodicity(
    graph: KGraph,
    pair_bound: Degree,
    path_bound: Degree,
    tau_bound: Degree,
    condition: str = "both",
) -> AperiodicityReport:
    """Run the star search per (vertex, degree pair) and the tau search per path pair.

    With ``condition="both"`` each definite certificate on one side is
    carried to the other side by the constructive implications; a conflict
    is recorded when the carried certificate lies inside the other side's
    bounds but that side found nothing.  Theorem-backed transformations
    are re-verified as they run and raise :class:`TheoremViolation` on failure.
    """
    if condition not in ("star", "tau", "both"):
        raise ValueError(f"unknown condition {condition!r}")
    conditions = ("star", "tau") if condition == "both" else (condition,)
    report = AperiodicityReport(pair_bound, path_bound, tau_bound, tuple(graph.vertices), conditions)
    pairs = pairs_upto(pair_bound)

    if condition in ("star", "both"):
        for v in graph.vertices:
            for m, n in pairs:
                if not (m | n) <= path_bound:
                    verdict = ExhaustedUnknown(
                        {"m": m, "n": n, "degree": path_bound}, "pair exceeds path bound"
                    )
                else:
                    verdict = find_star_witness(graph, v, m, n, path_bound)
                report.star.append(StarRecord(v, m, n, verdict))

    if condition in ("tau", "both"):
        groups: dict[tuple[str, str], list[Path]] = {}
        for v in graph.vertices:
            for p in enumerate_paths_upto(graph, v, pair_bound):
                groups.setdefault((p.range, p.source), []).append(p)
        for key in sorted(groups):
            members = groups[key]
            for alpha, beta in itertools.combinations(members, 2):
                report.tau.append(TauRecord(alpha, beta, find_separating_tau(graph, alpha, beta, tau_bound)))

    if condition == "both":
        _cross_check(graph, report)
    return report


def _cross_check(graph: KGraph, report: AperiodicityReport) -> None:
    star_index = {(r.vertex, r.m, r.n): r for r in report.star}
    tau_index = {_pair_key(r.alpha, r.beta): r for r in report.tau}

    # Star witness at s(mu) for (d(mu), d(nu)) separates mu, nu.
    for rec in report.tau:
        mu, nu = rec.alpha, rec.beta
        if not (mu.degree & nu.degree).is_zero():
            continue
        m, n = sorted((mu.degree, nu.degree), key=lambda d: d.coords)
        star = star_index.get((mu.source, m, n))
        if star is None or not isinstance(star.verdict, Witnessed):
            continue
        lam = star.verdict.certificate.path
        separation_from_star(mu, nu, lam)
        report.separations_checked += 1
        if lam.degree <= report.tau_bound and not isinstance(rec.verdict, Witnessed):
            report.conflicts.append(
                Conflict(
                    "star->tau",
                    f"{lam} is a star witness for ({m}),({n}) but no tau separates {mu} and {nu}",
                )
            )

    # A separation of the tails of lam0 yields a star witness lam0 tau0 tau1.
    for rec in report.star:
        if isinstance(rec.verdict, Witnessed) or not (rec.m | rec.n) <= report.path_bound:
            continue
        joint = rec.m | rec.n
        for lam0 in enumerate_paths(graph, rec.vertex, joint):
            mu = segment(lam0, rec.m, joint)
            nu = segment(lam0, rec.n, joint)
            if mu.range != nu.range:
                tau0 = vertex_path(graph, lam0.source)
            else:
                tau_rec = tau_index.get(_pair_key(mu, nu))
                if tau_rec is None or not isinstance(tau_rec.verdict, Witnessed):
                    continue
                tau0 = tau_rec.verdict.certificate.tau
            if not enumerate_paths(graph, tau0.source, joint):
                continue
            witness = star_from_separation(lam0, rec.m, rec.n, tau0)
            report.stars_constructed += 1
            if witness.path.degree <= report.path_bound:
                report.conflicts.append(
                    Conflict(
                        "tau->star",
                        f"{witness.path} satisfies the star condition for ({rec.m}),({rec.n}) "
                        f"at {rec.vertex} but the search found none",
                    )
                )
                break
