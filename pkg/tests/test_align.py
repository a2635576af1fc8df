import pytest

from kgraph.align import has_common_extension, is_exhaustive, mce, mce_sets
from kgraph.constructions import evans_sims, flip, grid, three_graph_example, two_loop
from kgraph.degree import Degree
from kgraph.paths import enumerate_paths, enumerate_paths_upto, parse_path, segment, vertex_path

from oracles import BruteForce, brute_mce

GRID = grid(2, (1, 1))


def test_grid_mce_is_the_square():
    mu, nu = parse_path(GRID, "c1:0_0"), parse_path(GRID, "c2:0_0")
    result = mce(mu, nu)
    assert [(p.range, p.source) for p in result] == [("0_0", "1_1")]


def test_two_loop_distinct_edges_do_not_meet():
    g = two_loop()
    assert mce(parse_path(g, "e1"), parse_path(g, "e2")).is_empty()


def test_flip_mce_is_unique_path():
    g = flip()
    result = mce(parse_path(g, "f"), parse_path(g, "g"))
    assert list(result) == enumerate_paths(g, "v", Degree([1, 1]))


def test_different_ranges_give_empty_mce():
    g = three_graph_example()
    assert mce(parse_path(g, "c"), parse_path(g, "d")).is_empty()


def test_mce_sets_examples():
    lam = parse_path(GRID, "c1:0_0,c2:1_0")
    assert mce_sets([vertex_path(GRID, "0_0")], [lam]) == {lam}
    assert mce_sets([], [lam]) == frozenset()
    assert mce_sets([lam], []) == frozenset()
    edges = [parse_path(GRID, "c1:0_0"), parse_path(GRID, "c2:0_0")]
    assert mce_sets(edges, edges) == {*edges, lam}


@pytest.mark.parametrize("make, bound", [
    (three_graph_example, Degree([1, 1, 0])),
    (lambda: evans_sims(3), Degree([1, 1])),
    (flip, Degree([1, 1])),
])
def test_mce_symmetry_membership_and_oracle(make, bound):
    g = make()
    oracle = BruteForce(g)
    paths = [p for v in g.vertices for p in enumerate_paths_upto(g, v, bound)]
    for mu in paths:
        for nu in paths:
            result = mce(mu, nu)
            assert result.paths == mce(nu, mu).paths
            assert has_common_extension(mu, nu) == (not result.is_empty())
            zero = Degree.zero(g.rank)
            for lam in result:
                assert lam.degree == mu.degree | nu.degree
                assert segment(lam, zero, mu.degree) == mu and segment(lam, zero, nu.degree) == nu
            assert set(result.paths) == brute_mce(oracle, mu, nu)


def test_exhaustive_examples():
    g = two_loop()
    ok, counter = is_exhaustive([parse_path(g, "e1")], "v")
    assert not ok and counter == parse_path(g, "e2")
    assert is_exhaustive([vertex_path(g, "v")], "v") == (True, None)
    assert is_exhaustive([parse_path(g, "e1"), parse_path(g, "e2")], "v") == (True, None)


def test_exhaustive_needs_graph_for_empty_set():
    with pytest.raises(ValueError):
        is_exhaustive([], "v")
    ok, counter = is_exhaustive([], "v", graph=two_loop())
    assert not ok and counter.is_vertex()


def test_exhaustive_in_grid_with_boundary():
    g = grid(2, (1, 1))
    # From 1_0 only the color-2 edge exists, so the color-1 requirement cannot be met.
    assert is_exhaustive([parse_path(g, "c2:1_0")], "1_0") == (True, None)
    ok, _ = is_exhaustive([parse_path(g, "c1:0_0")], "0_0")
    assert ok
    ok, counter = is_exhaustive([parse_path(g, "c1:0_0,c2:1_0")], "0_0")
    assert ok
