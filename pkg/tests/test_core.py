import itertools

import pytest

from kgraph.constructions import (
    evans_sims,
    flip,
    grid,
    single_vertex_2graph,
    three_graph_example,
    three_graph_skeleton,
    two_loop,
)
from kgraph.core import (
    Edge,
    InvalidKGraphError,
    KGraph,
    Skeleton,
    SquareRule,
    complete_squares,
    no_sources,
    validate,
    validation_report,
)
from kgraph.degree import Degree

from oracles import BruteForce


def _flip_skeleton():
    return Skeleton(2, ("v",), (Edge("f", 1, "v", "v"), Edge("g", 2, "v", "v")))


def test_flip_rule_is_valid():
    g = validate(_flip_skeleton(), [SquareRule(("f", "g"), ("g", "f"))])
    assert g.rank == 2 and len(g.rules) == 1


def test_missing_square_is_named():
    report = validation_report(_flip_skeleton(), [])
    assert not report.ok
    messages = [v.message for v in report]
    assert "missing square for (f,g)" in messages
    assert "missing square for (g,f)" in messages
    with pytest.raises(InvalidKGraphError) as info:
        validate(_flip_skeleton(), [])
    assert info.value.report.axioms() == {"missing-square"}


def test_endpoint_coherence_violation():
    two = Skeleton(
        2,
        ("v", "w"),
        (
            Edge("f", 1, "v", "v"),
            Edge("g", 2, "v", "v"),
            Edge("g2", 2, "v", "w"),
            Edge("f2", 1, "w", "w"),
        ),
    )
    report = validation_report(two, [SquareRule(("f", "g"), ("g2", "f2"))])
    assert "endpoint-coherence" in report.axioms()


def test_duplicate_and_non_bijective():
    skel = Skeleton(
        2,
        ("v",),
        (Edge("a0", 1, "v", "v"), Edge("a1", 1, "v", "v"), Edge("b", 2, "v", "v")),
    )
    dup = [SquareRule(("a0", "b"), ("b", "a0")), SquareRule(("a0", "b"), ("b", "a1"))]
    assert "duplicate-square" in validation_report(skel, dup).axioms()
    clash = [SquareRule(("a0", "b"), ("b", "a0")), SquareRule(("a1", "b"), ("b", "a0"))]
    assert "non-bijective" in validation_report(skel, clash).axioms()


def test_color_order_and_unknown_edge():
    report = validation_report(_flip_skeleton(), [SquareRule(("g", "f"), ("f", "g"))])
    assert "color-order" in report.axioms()
    report = validation_report(_flip_skeleton(), [SquareRule(("f", "x"), ("g", "f"))])
    assert "unknown-edge" in report.axioms()


@pytest.mark.parametrize(
    "skeleton",
    [
        Skeleton(0, ("v",), ()),
        Skeleton(1, (), ()),
        Skeleton(1, ("v", "v"), ()),
        Skeleton(1, ("v",), (Edge("e", 2, "v", "v"),)),
        Skeleton(1, ("v",), (Edge("e", 1, "v", "w"),)),
        Skeleton(1, ("v",), (Edge("e", 1, "v", "v"), Edge("e", 1, "v", "v"))),
        Skeleton(1, ("v",), (Edge("a,b", 1, "v", "v"),)),
        Skeleton(1, ("@v",), ()),
    ],
)
def test_bad_skeletons(skeleton):
    assert validation_report(skeleton, []).axioms() == {"skeleton"}


def _hexagon_graph(sigma, rho):
    """One vertex, three color-1 loops, one color-2 loop b and one color-3 loop c."""
    edges = [Edge(f"a{i}", 1, "v", "v") for i in range(3)] + [Edge("b", 2, "v", "v"), Edge("c", 3, "v", "v")]
    rules = [SquareRule((f"a{i}", "b"), ("b", f"a{sigma[i]}")) for i in range(3)]
    rules += [SquareRule((f"a{i}", "c"), ("c", f"a{rho[i]}")) for i in range(3)]
    rules.append(SquareRule(("b", "c"), ("c", "b")))
    return Skeleton(3, ("v",), tuple(edges)), rules


def test_associativity_failure_detected():
    skel, rules = _hexagon_graph((1, 0, 2), (0, 2, 1))
    report = validation_report(skel, rules)
    assert report.axioms() == {"associativity"}


def test_commuting_twists_are_associative():
    skel, rules = _hexagon_graph((1, 2, 0), (2, 0, 1))
    assert validation_report(skel, rules).ok


def test_three_graph_completion_and_validation():
    g = three_graph_example()
    assert len(g.rules) == 10
    counts = {c: sum(1 for e in g.edges.values() if e.color == c) for c in (1, 2, 3)}
    assert counts == {1: 2, 2: 4, 3: 2}


def test_three_graph_unique_factorization_by_brute_force():
    # Each morphism of degree (1,1,1) contains exactly one word in each of the six color orders.
    g = three_graph_example()
    oracle = BruteForce(g)
    for v in g.vertices:
        for cls in oracle.classes(v, Degree([1, 1, 1])):
            orders = [tuple(g.color(e) for e in w) for w in cls]
            assert sorted(orders) == sorted(itertools.permutations((1, 2, 3)))


def test_ambiguous_completion_reported():
    skel = Skeleton(
        2,
        ("v",),
        (Edge("a0", 1, "v", "v"), Edge("a1", 1, "v", "v"), Edge("b", 2, "v", "v")),
    )
    with pytest.raises(InvalidKGraphError) as info:
        complete_squares(skel, [])
    assert info.value.report.axioms() == {"ambiguous-completion"}
    # Without the six stated squares the 3-graph's completion is not forced.
    with pytest.raises(InvalidKGraphError):
        complete_squares(three_graph_skeleton(), [])


def test_completion_keeps_given_rules():
    rules = complete_squares(_flip_skeleton(), [])
    assert rules == [SquareRule(("f", "g"), ("g", "f"))]


CORPUS = [flip, two_loop, three_graph_example, lambda: grid(3, (1, 1, 1)), lambda: evans_sims(3)]


@pytest.mark.parametrize("make", CORPUS)
def test_swap_is_an_involution(make):
    g = make()
    for x in g.edges.values():
        for y in g.edges.values():
            if x.source == y.range and x.color != y.color:
                assert g.swap(*g.swap(x.id, y.id)) == (x.id, y.id)


def test_no_sources_examples():
    assert no_sources(flip()) == []
    assert set(no_sources(grid(2, (1, 1)))) >= {("1_1", 1), ("1_1", 2)}
    assert ("0_0", 1) not in no_sources(grid(2, (1, 1)))
    ladder = no_sources(evans_sims(3))
    assert ladder == [("v3", 1), ("v3", 2)]


def test_single_vertex_graph_either_bijection():
    for rule in ({(0, 0): (0, 0), (1, 0): (0, 1)}, {(0, 0): (0, 1), (1, 0): (0, 0)}):
        g = single_vertex_2graph(2, 1, rule)
        assert len(g.rules) == 2


def test_kgraph_is_read_only():
    g = flip()
    with pytest.raises(TypeError):
        g.edges["x"] = Edge("x", 1, "v", "v")
    assert isinstance(g, KGraph)
