"""Finite 1-graphs (no multiple edges, no sources, no sinks) and vertex matrices.

Vertex matrices use the row = target, column = source convention, so that
``A[w][v]`` counts edges ``v -> w`` and matrix powers count paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    source: int
    target: int


@dataclass
class ValidationResult:
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class GraphError(ValueError):
    """Raised when an operation needs a valid graph and does not get one."""


@dataclass(frozen=True)
class OneGraph:
    """A finite directed graph on vertices ``0..n-1``.

    Edges are kept sorted by id.  Construction does not validate; call
    :func:`validate_graph` (or :meth:`checked`) for that.
    """

    vertex_labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertex_labels", tuple(self.vertex_labels))
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @classmethod
    def from_arcs(cls, n: int, arcs: Sequence[tuple[int, int]], prefix: str = "e",
                  labels: Sequence[str] | None = None) -> "OneGraph":
        """Build a graph from ``(source, target)`` pairs, naming edges ``prefix1, prefix2, ...``."""
        labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        edges = [Edge(f"{prefix}{k + 1}", s, t) for k, (s, t) in enumerate(arcs)]
        return cls(labels, tuple(edges))

    @property
    def n(self) -> int:
        return len(self.vertex_labels)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._by_id[edge_id]
        except KeyError:
            raise KeyError(f"no edge with id {edge_id!r}") from None

    @property
    def _by_id(self) -> dict[str, Edge]:
        cache = self.__dict__.get("_id_cache")
        if cache is None:
            cache = {e.id: e for e in self.edges}
            object.__setattr__(self, "_id_cache", cache)
        return cache

    def arcs(self) -> set[tuple[int, int]]:
        return {(e.source, e.target) for e in self.edges}

    def edge_between(self, source: int, target: int) -> Edge | None:
        cache = self.__dict__.get("_arc_cache")
        if cache is None:
            cache = {(e.source, e.target): e for e in self.edges}
            object.__setattr__(self, "_arc_cache", cache)
        return cache.get((source, target))

    def relabel(self, perm: Sequence[int]) -> "OneGraph":
        """Move vertex ``v`` to ``perm[v]``; edge ids are kept."""
        labels = [""] * self.n
        for v, lab in enumerate(self.vertex_labels):
            labels[perm[v]] = lab
        edges = tuple(Edge(e.id, perm[e.source], perm[e.target]) for e in self.edges)
        return OneGraph(tuple(labels), edges)

    def checked(self) -> "OneGraph":
        res = validate_graph(self)
        if not res.ok:
            raise GraphError("invalid graph: " + "; ".join(res.violations))
        return self

    def __eq__(self, other):
        if not isinstance(other, OneGraph):
            return NotImplemented
        return self.vertex_labels == other.vertex_labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_labels, self.edges))


def validate_graph(g: OneGraph) -> ValidationResult:
    res = ValidationResult()
    n = g.n
    if n == 0:
        res.violations.append("graph has no vertices")
        return res
    if len(set(g.vertex_labels)) != n:
        res.violations.append("vertex labels are not unique")
    seen_ids: set[str] = set()
    seen_arcs: dict[tuple[int, int], str] = {}
    for e in g.edges:
        if not e.id:
            res.violations.append("edge with empty id")
        elif e.id in seen_ids:
            res.violations.append(f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        if not (0 <= e.source < n and 0 <= e.target < n):
            res.violations.append(f"edge {e.id!r} has an endpoint outside 0..{n - 1}")
            continue
        arc = (e.source, e.target)
        if arc in seen_arcs:
            res.violations.append(
                f"edges {seen_arcs[arc]!r} and {e.id!r} both run "
                f"{g.vertex_labels[e.source]} -> {g.vertex_labels[e.target]} (multiple edge)")
        else:
            seen_arcs[arc] = e.id
        if e.source == e.target:
            res.notes.append(f"edge {e.id!r} is a loop at vertex {g.vertex_labels[e.source]}")
    has_in = {t for (_, t) in seen_arcs}
    has_out = {s for (s, _) in seen_arcs}
    for v in range(n):
        if v not in has_in:
            res.violations.append(f"vertex {g.vertex_labels[v]} has no incoming edge (source)")
        if v not in has_out:
            res.violations.append(f"vertex {g.vertex_labels[v]} has no outgoing edge (sink)")
    return res


def vertex_matrix(g: OneGraph) -> Matrix:
    g.checked()
    rows = [[0] * g.n for _ in range(g.n)]
    for e in g.edges:
        rows[e.target][e.source] = 1
    return tuple(tuple(r) for r in rows)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != k:
        raise ValueError(f"dimension mismatch: {len(a)}x{len(a[0])} times {k}x{m}")
    return tuple(tuple(sum(a[i][l] * b[l][j] for l in range(k)) for j in range(m)) for i in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def check_commuting(a: Matrix, b: Matrix) -> bool:
    if len(a) != len(b) or any(len(r) != len(a) for r in a) or any(len(r) != len(b) for r in b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return matmul(a, b) == matmul(b, a)
