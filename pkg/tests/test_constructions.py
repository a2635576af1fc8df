import itertools
import warnings

import pytest

from kgraph.aperiodicity import cycle_has_entry, simple_cycles
from kgraph.constructions import (
    TwistError,
    TwistSpec,
    all_single_vertex_2graphs,
    evans_sims,
    flip,
    grid,
    multiply_by_level,
    single_loop,
    single_vertex_2graph,
    twisted_evans_sims,
    twisted_product,
    two_loop,
)
from kgraph.core import InvalidKGraphError, SquareRule, no_sources
from kgraph.degree import Degree, degrees_upto
from kgraph.paths import enumerate_paths, normalize, paths_of_degree, segment


def test_grid_shapes():
    g = grid(2, (1, 1))
    assert (len(g.vertices), len(g.edges), len(g.rules)) == (4, 4, 1)
    line = grid(1, (3,))
    assert (len(line.vertices), len(line.edges), len(line.rules)) == (4, 3, 0)
    cube = grid(3, (1, 1, 1))
    assert (len(cube.vertices), len(cube.edges), len(cube.rules)) == (8, 12, 6)


def test_grid_morphisms_are_pairs():
    g = grid(2, (2, 1))
    for d in degrees_upto(Degree([2, 1])):
        for lam in paths_of_degree(g, d):
            p = Degree(int(c) for c in lam.range.split("_"))
            q = Degree(int(c) for c in lam.source.split("_"))
            assert q - p == lam.degree
    count = sum(len(paths_of_degree(g, d)) for d in degrees_upto(Degree([2, 1])))
    assert count == sum(1 for p in degrees_upto(Degree([2, 1])) for q in degrees_upto(Degree([2, 1])) if p <= q)


def test_grid_rank_mismatch():
    with pytest.raises(ValueError):
        grid(3, (1, 1))


def test_evans_sims_two_levels():
    g = evans_sims(2)
    assert sorted(g.edges) == ["a1_0", "a2_0", "a2_1", "b1_0", "b2_0", "b2_1"]
    assert set(g.rules) == {
        SquareRule(("a1_0", "b2_0"), ("b1_0", "a2_1")),
        SquareRule(("a1_0", "b2_1"), ("b1_0", "a2_0")),
    }


@pytest.mark.parametrize("levels", [1, 3, 5])
def test_evans_sims_counts(levels):
    g = evans_sims(levels)
    assert len(g.vertices) == levels + 1
    assert len(g.edges) == 2 * sum(range(1, levels + 1))
    assert len(g.rules) == sum(n * (n + 1) for n in range(1, levels))
    assert no_sources(g) == [(f"v{levels}", 1), (f"v{levels}", 2)]


def test_evans_sims_rejects_non_permutation():
    with pytest.raises(ValueError):
        evans_sims(3, permutation=lambda n, i, j: (0, 0))
    with pytest.raises(ValueError):
        evans_sims(0)


def test_evans_sims_other_permutation():
    g = evans_sims(3, permutation=lambda n, i, j: (i, j))
    assert len(g.rules) == 2 + 6


def test_single_vertex_corpus():
    graphs = list(all_single_vertex_2graphs())
    # 1x1: 1 rule, 1x2 and 2x1: 2 each, 2x2: 24
    assert len(graphs) == 29
    assert all(len(g.rules) == n1 * n2 for n1, n2, _, g in graphs)


def test_single_vertex_rejects_non_bijection():
    with pytest.raises(InvalidKGraphError):
        single_vertex_2graph(2, 1, {(0, 0): (0, 0), (1, 0): (0, 0)})


def test_flip_and_two_loop_shapes():
    assert (len(flip().edges), len(flip().rules)) == (2, 1)
    assert two_loop().rank == 1 and len(two_loop().edges) == 2


def test_twist_spec_validation():
    with pytest.raises(TwistError):
        TwistSpec(0, {})
    with pytest.raises(TwistError):
        TwistSpec(2, {"e": (0, 2)})
    with pytest.raises(TwistError):
        TwistSpec(2, {"e": (0,)})
    with pytest.raises(TwistError):
        twisted_product(two_loop(), TwistSpec(2, {"e1": (0, 1)}))


def test_twisted_single_loop():
    g = twisted_product(single_loop(), TwistSpec(3, {"c": (0, 2, 1)}))
    assert (len(g.vertices), len(g.edges)) == (3, 3)
    cycles = sorted((c.range, len(c)) for c in simple_cycles(g))
    assert cycles == [("v:0", 1), ("v:1", 2)]
    verdict = cycle_has_entry(g)
    assert verdict.status == "refuted"


def test_twisted_ladder_sizes():
    base = evans_sims(5)
    g = twisted_evans_sims(5, 12)
    assert len(g.vertices) == len(base.vertices) * 12
    assert len(g.edges) == len(base.edges) * 12
    assert len(g.rules) == len(base.rules) * 12


def test_functoriality_violation_is_named():
    base = evans_sims(2)
    maps = {e: tuple(range(3)) for e in base.edges}
    maps["a1_0"] = (1, 2, 0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        with pytest.raises(InvalidKGraphError) as info:
            twisted_product(base, TwistSpec(3, maps))
    report = info.value.report
    assert report.axioms() == {"functoriality"}
    assert "fiber point 0" in str(report)


def test_sources_warn():
    base = evans_sims(2)
    with pytest.warns(UserWarning):
        twisted_product(base, multiply_by_level(base, 4))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        twisted_product(two_loop(), TwistSpec(2, {"e1": (1, 0), "e2": (0, 1)}))


def _project(base, lam):
    return normalize(base, [e.split(":")[0] for e in lam.edges])


def test_product_projects_to_base():
    base = evans_sims(3)
    twist = multiply_by_level(base, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = twisted_product(base, twist)
    for d in degrees_upto(Degree([2, 2]))[1:]:
        for lam in paths_of_degree(g, d):
            down = _project(base, lam)
            assert down.degree == lam.degree
            assert down.edges == tuple(e.split(":")[0] for e in lam.edges)
            for m in degrees_upto(d):
                if m.is_zero():
                    continue
                assert _project(base, segment(lam, Degree.zero(2), m)).edges == segment(down, Degree.zero(2), m).edges


def test_lifted_composition_law():
    base = evans_sims(3)
    twist = multiply_by_level(base, 6)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = twisted_product(base, twist)
    for lam, mu in itertools.product(base.edges.values(), repeat=2):
        if lam.source != mu.range:
            continue
        for x in range(6):
            first, second = f"{lam.id}:{twist.apply(mu.id, x)}", f"{mu.id}:{x}"
            path = normalize(g, [first, second])
            assert path.source == f"{mu.source}:{x}"
            assert path.range == f"{lam.range}:{twist.apply_path([lam.id, mu.id], x)}"
            assert _project(base, path) == normalize(base, [lam.id, mu.id])


def test_multiply_by_level_not_bijective_adds_sources():
    g = twisted_evans_sims(2, 12)
    # 1*x is a bijection on the first level, 2*x is not, so odd points at level 1 get no edges.
    assert enumerate_paths(g, "v1:1", Degree([1, 0])) == []
    assert ("v1:1", 1) in no_sources(g)
