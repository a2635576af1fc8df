import json
import warnings

import pytest

from kgraph.constructions import (
    TwistSpec,
    evans_sims,
    flip,
    grid,
    multiply_by_level,
    three_graph_example,
    twisted_evans_sims,
    two_loop,
)
from kgraph.core import InvalidKGraphError
from kgraph.io import DocumentError, canonicalize, export_dot, parse, serialize, to_document

GENERATED = {
    "flip": flip,
    "two-loop": two_loop,
    "grid": lambda: grid(3, (1, 2, 1)),
    "three": three_graph_example,
    "ladder": lambda: evans_sims(4),
    "twisted": lambda: twisted_evans_sims(3, 6),
}

FLIP_DOC = """{
  "rank": 2,
  "vertices": ["v"],
  "edges": [
    {"id": "g", "color": 2, "range": "v", "source": "v"},
    {"id": "f", "color": 1, "range": "v", "source": "v"}
  ],
  "squares": [{"lo_hi": ["f", "g"], "hi_lo": ["g", "f"]}]
}"""


def test_parse_flip_document():
    graph, twist = parse(FLIP_DOC)
    assert (len(graph.vertices), len(graph.edges), len(graph.rules)) == (1, 2, 1)
    assert twist is None


def test_missing_square_document():
    doc = json.loads(FLIP_DOC)
    doc["squares"] = []
    with pytest.raises(InvalidKGraphError) as info:
        parse(json.dumps(doc))
    assert "missing square for (f,g)" in str(info.value)


def test_canonical_round_trip_of_hand_written_doc():
    text = canonicalize(FLIP_DOC)
    assert text != FLIP_DOC
    assert serialize(*parse(text)) == text
    assert json.loads(text)["edges"][0]["id"] == "f"


@pytest.mark.parametrize("name", sorted(GENERATED))
def test_generator_round_trip_is_byte_identical(name):
    graph = GENERATED[name]()
    text = serialize(graph)
    again, _ = parse(text)
    assert serialize(again) == text
    assert to_document(again) == json.loads(text)


def test_twist_block_round_trip():
    base = evans_sims(3)
    twist = multiply_by_level(base, 5)
    text = serialize(base, twist)
    graph, parsed = parse(text)
    assert parsed == twist
    assert serialize(graph, parsed) == text


@pytest.mark.parametrize(
    "text, where",
    [
        ("{", "line 1"),
        ("[]", "$"),
        ('{"rank": 1, "vertices": ["v"], "edges": []}', "$"),
        ('{"rank": "1", "vertices": ["v"], "edges": [], "squares": []}', "$.rank"),
        ('{"rank": 1, "vertices": ["v"], "edges": [{"id": "e"}], "squares": []}', "$.edges[0]"),
        ('{"rank": 1, "vertices": ["v"], "edges": [{"id": "e", "color": true, "range": "v", "source": "v"}], "squares": []}', "$.edges[0].color"),
        ('{"rank": 2, "vertices": ["v"], "edges": [], "squares": [{"lo_hi": ["f"], "hi_lo": ["g", "f"]}]}', "$.squares[0].lo_hi"),
        ('{"rank": 1, "vertices": ["v"], "edges": [], "squares": [], "extra": 1}', "$"),
    ],
)
def test_document_errors_carry_location(text, where):
    with pytest.raises(DocumentError) as info:
        parse(text)
    assert info.value.where.startswith(where)


def test_twist_block_errors():
    doc = json.loads(serialize(two_loop(), TwistSpec(2, {"e1": (1, 0), "e2": (0, 1)})))
    doc["twist"]["maps"].pop("e2")
    with pytest.raises(DocumentError):
        parse(json.dumps(doc))
    doc["twist"]["maps"]["e2"] = [0, 5]
    with pytest.raises(DocumentError):
        parse(json.dumps(doc))


def test_dot_flip():
    dot = export_dot(flip())
    assert dot.count("->") == 2
    assert '"v" -> "v" [label="f", color=blue];' in dot
    assert '"v" -> "v" [label="g", color=red];' in dot


def test_dot_counts():
    dot = export_dot(grid(2, (1, 1)))
    assert dot.count("->") == 4
    assert sum(1 for line in dot.splitlines() if line.strip().endswith(";") and "->" not in line) == 4
    ladder = export_dot(evans_sims(3))
    assert ladder.count("->") == 12
    assert ladder.count("color=blue") == 6 and ladder.count("color=red") == 6


def test_dot_is_deterministic():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert export_dot(twisted_evans_sims(3, 4)) == export_dot(twisted_evans_sims(3, 4))
    assert export_dot(three_graph_example()).count("color=green") == 2
