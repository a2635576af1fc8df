"""The ``.kg`` document format and DOT export.

A document is UTF-8 JSON::

    {
      "edges": [{"color": 1, "id": "f", "range": "v", "source": "v"}, ...],
      "rank": 2,
      "squares": [{"hi_lo": ["g", "f"], "lo_hi": ["f", "g"]}, ...],
      "vertices": ["v"],
      "twist": {"fiber": 3, "maps": {"f": [0, 2, 1], ...}}      (optional)
    }

The canonical form sorts keys, vertices, edges (by id) and squares, and is
indented by two spaces with a trailing newline.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Edge, InvalidKGraphError, KGraph, Skeleton, SquareRule, ValidationReport
from .constructions import TwistError, TwistSpec

PALETTE = ("blue", "red", "green", "orange", "purple", "brown", "magenta", "cyan", "gold", "gray")


class DocumentError(ValueError):
    """A malformed document; ``where`` is a line/column or a JSON path like ``$.edges[2].color``."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def to_document(graph: KGraph, twist: TwistSpec | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "rank": graph.rank,
        "vertices": sorted(graph.vertices),
        "edges": [
            {"id": e.id, "color": e.color, "range": e.range, "source": e.source}
            for e in sorted(graph.edges.values(), key=lambda e: e.id)
        ],
        "squares": [{"lo_hi": list(r.lo_hi), "hi_lo": list(r.hi_lo)} for r in sorted(graph.rules)],
    }
    if twist is not None:
        doc["twist"] = {"fiber": twist.fiber, "maps": {e: list(t) for e, t in sorted(twist.maps.items())}}
    return doc


def serialize(graph: KGraph, twist: TwistSpec | None = None) -> str:
    return json.dumps(to_document(graph, twist), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _expect(value, kind, where: str):
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise DocumentError(where, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _pair(value, where: str) -> tuple[str, str]:
    _expect(value, list, where)
    if len(value) != 2:
        raise DocumentError(where, "expected two edge ids")
    return _expect(value[0], str, f"{where}[0]"), _expect(value[1], str, f"{where}[1]")


def _read(doc: Any) -> tuple[Skeleton, list[SquareRule], dict | None]:
    _expect(doc, dict, "$")
    unknown = sorted(set(doc) - {"rank", "vertices", "edges", "squares", "twist"})
    if unknown:
        raise DocumentError("$", f"unknown keys {unknown}")
    for key in ("rank", "vertices", "edges", "squares"):
        if key not in doc:
            raise DocumentError("$", f"missing key {key!r}")
    rank = _expect(doc["rank"], int, "$.rank")
    vertices = [_expect(v, str, f"$.vertices[{i}]") for i, v in enumerate(_expect(doc["vertices"], list, "$.vertices"))]
    edges = []
    for i, record in enumerate(_expect(doc["edges"], list, "$.edges")):
        where = f"$.edges[{i}]"
        _expect(record, dict, where)
        if set(record) != {"id", "color", "range", "source"}:
            raise DocumentError(where, "edge records have exactly id, color, range, source")
        edges.append(
            Edge(
                _expect(record["id"], str, f"{where}.id"),
                _expect(record["color"], int, f"{where}.color"),
                _expect(record["range"], str, f"{where}.range"),
                _expect(record["source"], str, f"{where}.source"),
            )
        )
    rules = []
    for i, record in enumerate(_expect(doc["squares"], list, "$.squares")):
        where = f"$.squares[{i}]"
        _expect(record, dict, where)
        if set(record) != {"lo_hi", "hi_lo"}:
            raise DocumentError(where, "square records have exactly lo_hi and hi_lo")
        rules.append(SquareRule(_pair(record["lo_hi"], f"{where}.lo_hi"), _pair(record["hi_lo"], f"{where}.hi_lo")))
    twist = doc.get("twist")
    if twist is not None:
        _expect(twist, dict, "$.twist")
        if set(twist) != {"fiber", "maps"}:
            raise DocumentError("$.twist", "twist block has exactly fiber and maps")
        _expect(twist["fiber"], int, "$.twist.fiber")
        for e, table in _expect(twist["maps"], dict, "$.twist.maps").items():
            for j, x in enumerate(_expect(table, list, f"$.twist.maps.{e}")):
                _expect(x, int, f"$.twist.maps.{e}[{j}]")
    return Skeleton(rank, tuple(vertices), tuple(edges)), rules, twist


def parse(text: str) -> tuple[KGraph, TwistSpec | None]:
    """Parse and validate a document.

    Raises :class:`DocumentError` for malformed JSON or schema problems and
    :class:`~kgraph.core.InvalidKGraphError` (carrying the full report) when
    the data is not a k-graph.
    """
    skeleton, rules, twist_doc = _read(_load(text))
    graph = KGraph(skeleton, rules)
    twist = None
    if twist_doc is not None:
        try:
            twist = TwistSpec(twist_doc["fiber"], twist_doc["maps"])
        except TwistError as exc:
            raise DocumentError("$.twist", str(exc)) from None
        extra = sorted(set(twist.maps) - set(graph.edges))
        missing = sorted(set(graph.edges) - set(twist.maps))
        if extra or missing:
            raise DocumentError("$.twist.maps", f"maps must cover exactly the edges (extra {extra}, missing {missing})")
    return graph, twist


def canonicalize(text: str) -> str:
    """Canonical text of a valid document."""
    return serialize(*parse(text))


def report_errors(report: ValidationReport) -> list[dict[str, Any]]:
    return [{"axiom": v.axiom, "items": list(v.items), "message": v.message} for v in report]


def _quote(name: str) -> str:
    return json.dumps(name, ensure_ascii=False)


def export_dot(graph: KGraph) -> str:
    """A Graphviz digraph of the 1-skeleton, arrows drawn from source to range."""
    lines = ["digraph kgraph {"]
    for v in sorted(graph.vertices):
        lines.append(f"  {_quote(v)};")
    for e in sorted(graph.edges.values(), key=lambda e: (e.color, e.id)):
        color = PALETTE[(e.color - 1) % len(PALETTE)]
        lines.append(f"  {_quote(e.source)} -> {_quote(e.range)} [label={_quote(e.id)}, color={color}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "DocumentError",
    "InvalidKGraphError",
    "PALETTE",
    "canonicalize",
    "export_dot",
    "parse",
    "report_errors",
    "serialize",
    "to_document",
]
