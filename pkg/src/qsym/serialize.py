"""JSON forms of graphs, triples and presentations.

Graph::

    {"vertices": ["1", "2"], "edges": [{"id": "e1", "source": "1", "target": "2"}]}

Triple::

    {"graph1": <graph>, "graph2": <graph>,
     "theta": [{"from": ["e1", "f1"], "to": ["f3", "e3"]}]}

``to`` lists the second-graph edge first.  Output is canonical: two-space
indent, edges sorted by id, theta sorted by input pair, trailing newline.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .composition import Theta, Triple
from .graph import Edge, OneGraph
from .presentation import Presentation


class SchemaError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _expect(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise SchemaError(where, message)


def graph_from_json(data: Any, where: str = "$") -> OneGraph:
    _expect(isinstance(data, dict), where, "expected an object with 'vertices' and 'edges'")
    for key in ("vertices", "edges"):
        _expect(key in data, where, f"missing field '{key}'")
    extra = set(data) - {"vertices", "edges"}
    _expect(not extra, where, f"unknown field(s) {sorted(extra)}")
    verts = data["vertices"]
    _expect(isinstance(verts, list) and verts, f"{where}.vertices", "expected a nonempty list of labels")
    index: dict[str, int] = {}
    for k, v in enumerate(verts):
        _expect(isinstance(v, str) and v, f"{where}.vertices[{k}]", "vertex label must be a nonempty string")
        _expect(v not in index, f"{where}.vertices[{k}]", f"duplicate vertex label {v!r}")
        index[v] = k
    edges_in = data["edges"]
    _expect(isinstance(edges_in, list), f"{where}.edges", "expected a list")
    edges = []
    for k, e in enumerate(edges_in):
        at = f"{where}.edges[{k}]"
        _expect(isinstance(e, dict), at, "expected an object with id, source, target")
        for key in ("id", "source", "target"):
            _expect(key in e, at, f"missing field '{key}'")
        _expect(isinstance(e["id"], str) and e["id"], f"{at}.id", "edge id must be a nonempty string")
        for key in ("source", "target"):
            _expect(e[key] in index, f"{at}.{key}", f"unknown vertex {e[key]!r}")
        edges.append(Edge(e["id"], index[e["source"]], index[e["target"]]))
    return OneGraph(tuple(verts), tuple(edges))


def graph_to_json(g: OneGraph) -> dict:
    lab = g.vertex_labels
    return {"vertices": list(lab),
            "edges": [{"id": e.id, "source": lab[e.source], "target": lab[e.target]} for e in g.edges]}


def triple_from_json(data: Any, where: str = "$") -> Triple:
    _expect(isinstance(data, dict), where, "expected an object with graph1, graph2, theta")
    for key in ("graph1", "graph2", "theta"):
        _expect(key in data, where, f"missing field '{key}'")
    g1 = graph_from_json(data["graph1"], f"{where}.graph1")
    g2 = graph_from_json(data["graph2"], f"{where}.graph2")
    _expect(g1.vertex_labels == g2.vertex_labels, f"{where}.graph2.vertices",
            "vertex list differs from graph1")
    theta = data["theta"]
    _expect(isinstance(theta, list), f"{where}.theta", "expected a list")
    ids1 = {e.id for e in g1.edges}
    ids2 = {e.id for e in g2.edges}
    mapping = []
    for k, row in enumerate(theta):
        at = f"{where}.theta[{k}]"
        _expect(isinstance(row, dict) and "from" in row and "to" in row, at, "expected {'from': [..], 'to': [..]}")
        src, dst = row["from"], row["to"]
        _expect(isinstance(src, list) and len(src) == 2, f"{at}.from", "expected [graph1 edge, graph2 edge]")
        _expect(isinstance(dst, list) and len(dst) == 2, f"{at}.to", "expected [graph2 edge, graph1 edge]")
        _expect(src[0] in ids1, f"{at}.from[0]", f"unknown graph1 edge {src[0]!r}")
        _expect(src[1] in ids2, f"{at}.from[1]", f"unknown graph2 edge {src[1]!r}")
        _expect(dst[0] in ids2, f"{at}.to[0]", f"unknown graph2 edge {dst[0]!r}")
        _expect(dst[1] in ids1, f"{at}.to[1]", f"unknown graph1 edge {dst[1]!r}")
        mapping.append(((src[0], src[1]), (dst[0], dst[1])))
    return Triple(g1, g2, Theta(tuple(mapping)))


def theta_to_json(theta: Theta) -> list[dict]:
    return [{"from": list(a), "to": list(b)} for a, b in theta.mapping]


def triple_to_json(t: Triple) -> dict:
    return {"graph1": graph_to_json(t.g1), "graph2": graph_to_json(t.g2), "theta": theta_to_json(t.theta)}


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None


def load_json(path: str | Path) -> Any:
    return loads(Path(path).read_text(), str(path))


def load_graph(path: str | Path) -> OneGraph:
    return graph_from_json(load_json(path), str(path))


def load_triple(path: str | Path) -> Triple:
    return triple_from_json(load_json(path), str(path))


def load_presentation(path: str | Path) -> Presentation:
    return Presentation.from_json(load_json(path))
