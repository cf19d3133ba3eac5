"""Defining relations of the quantum automorphism group of a triple.

Generators ``q_ij`` follow the coaction ``delta_i -> sum_j delta_j (x) q_ji``:
the column index is the pre-image vertex.  Every relation is stored as a
polynomial ``poly`` standing for ``poly = 0``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .composition import Triple, composable_pairs
from .graph import OneGraph, vertex_matrix
from .ncpoly import NCPoly, q

TAGS = (
    "idempotent", "row-orthogonal", "col-orthogonal", "row-sum", "col-sum",
    "edge-vanishing-G1", "edge-vanishing-G2", "commutant-G1", "commutant-G2", "theta",
)
_TAG_RANK = {t: k for k, t in enumerate(TAGS)}


@dataclass(frozen=True)
class Relation:
    poly: NCPoly
    tag: str
    provenance: tuple[dict, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.tag not in _TAG_RANK:
            raise ValueError(f"unknown relation tag {self.tag!r}")

    def to_json(self) -> dict:
        return {"tag": self.tag, "provenance": [dict(p) for p in self.provenance],
                "poly": self.poly.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        return cls(NCPoly.from_json(data["poly"]), data["tag"],
                   tuple(dict(p) for p in data.get("provenance", ())))


@dataclass(frozen=True)
class Presentation:
    n: int
    relations: tuple[Relation, ...]

    def by_tag(self, tag: str) -> list[Relation]:
        return [r for r in self.relations if r.tag == tag]

    def polys(self) -> list[NCPoly]:
        return [r.poly for r in self.relations]

    def without(self, *tags: str) -> "Presentation":
        return Presentation(self.n, tuple(r for r in self.relations if r.tag not in tags))

    def to_json(self) -> dict:
        return {"n": self.n, "relations": [r.to_json() for r in self.relations]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        return cls(int(data["n"]), tuple(Relation.from_json(r) for r in data["relations"]))


def _prov(tag: str, **kw) -> tuple[dict, ...]:
    return ({"tag": tag, **kw},)


def magic_relations(n: int) -> list[Relation]:
    rels = []
    for i in range(n):
        for j in range(n):
            rels.append(Relation(q(i, j) * q(i, j) - q(i, j), "idempotent", _prov("idempotent", entry=[i, j])))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if j != k:
                    rels.append(Relation(q(i, j) * q(i, k), "row-orthogonal",
                                         _prov("row-orthogonal", row=i, cols=[j, k])))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if j != k:
                    rels.append(Relation(q(j, i) * q(k, i), "col-orthogonal",
                                         _prov("col-orthogonal", col=i, rows=[j, k])))
    for i in range(n):
        rels.append(Relation(sum((q(i, l) for l in range(n)), NCPoly()) - 1, "row-sum", _prov("row-sum", row=i)))
    for i in range(n):
        rels.append(Relation(sum((q(l, i) for l in range(n)), NCPoly()) - 1, "col-sum", _prov("col-sum", col=i)))
    return rels


def edge_relations(g: OneGraph, which: int) -> list[Relation]:
    """The four vanishing products for every edge ``e`` and every non-edge ``(i, k)``."""
    tag = f"edge-vanishing-G{which}"
    arcs = g.arcs()
    rels = []
    for e in g.edges:
        s, t = e.source, e.target
        for i in range(g.n):
            for k in range(g.n):
                if (i, k) in arcs:
                    continue
                forms = (q(s, i) * q(t, k), q(t, k) * q(s, i), q(i, s) * q(k, t), q(k, t) * q(i, s))
                for f, poly in enumerate(forms):
                    rels.append(Relation(poly, tag, _prov(tag, edge=e.id, non_edge=[i, k], form=f)))
    return rels


def commutant_relations(g: OneGraph, which: int) -> list[Relation]:
    """Entries of ``QA - AQ`` for the vertex matrix ``A``."""
    tag = f"commutant-G{which}"
    a = vertex_matrix(g)
    n = g.n
    rels = []
    for i in range(n):
        for j in range(n):
            poly = NCPoly()
            for k in range(n):
                if a[k][j]:
                    poly = poly + q(i, k)
                if a[i][k]:
                    poly = poly - q(k, j)
            rels.append(Relation(poly, tag, _prov(tag, entry=[i, j])))
    return rels


def theta_relations(t: Triple) -> list[Relation]:
    """One cubic relation for every ordered pair of composable pairs.

    With ``theta(a, b) = (m, v)`` and ``theta(a', b') = (m', v')`` this is
    ``q[t m', t m] q[s m', s m] q[s v', s v] - q[t a', t a] q[s a', s a] q[s b', s b]``.
    Identical sides give the zero polynomial, which is kept here and dropped
    by :func:`canonicalize`.
    """
    g1, g2 = t.g1, t.g2
    th = t.theta.as_dict()
    pairs = composable_pairs(g1, g2)
    data = []
    for p in pairs:
        a, b = g1.edge(p[0]), g2.edge(p[1])
        m, v = g2.edge(th[p][0]), g1.edge(th[p][1])
        data.append((p, a, b, m, v))
    rels = []
    for p, a, b, m, v in data:
        for p2, a2, b2, m2, v2 in data:
            lhs = q(m2.target, m.target) * q(m2.source, m.source) * q(v2.source, v.source)
            rhs = q(a2.target, a.target) * q(a2.source, a.source) * q(b2.source, b.source)
            rels.append(Relation(lhs - rhs, "theta", _prov("theta", pair=list(p), other=list(p2))))
    return rels


def generate(t: Triple) -> Presentation:
    t.checked()
    rels = magic_relations(t.n)
    rels += edge_relations(t.g1, 1) + edge_relations(t.g2, 2)
    rels += commutant_relations(t.g1, 1) + commutant_relations(t.g2, 2)
    rels += theta_relations(t)
    return Presentation(t.n, tuple(rels))


def graph_presentation(g: OneGraph) -> Presentation:
    """Relations of the quantum automorphism group of a single 1-graph."""
    g.checked()
    rels = magic_relations(g.n) + edge_relations(g, 1) + commutant_relations(g, 1)
    return Presentation(g.n, tuple(rels))


def canonicalize(p: Presentation) -> Presentation:
    """Monic polys, zeros dropped, duplicates merged, deterministic order.

    A merged relation keeps the earliest tag (in ``TAGS`` order) and the
    provenance of every copy.
    """
    merged: dict[NCPoly, tuple[str, list[dict]]] = {}
    for r in p.relations:
        poly = r.poly.monic()
        if not poly:
            continue
        if poly in merged:
            tag, prov = merged[poly]
            if _TAG_RANK[r.tag] < _TAG_RANK[tag]:
                tag = r.tag
            merged[poly] = (tag, prov + [x for x in r.provenance if x not in prov])
        else:
            merged[poly] = (r.tag, list(r.provenance))
    rels = [Relation(poly, tag, tuple(sorted(prov, key=_prov_key))) for poly, (tag, prov) in merged.items()]
    rels.sort(key=lambda r: (_TAG_RANK[r.tag], r.poly.sort_key()))
    return Presentation(p.n, tuple(rels))


def _prov_key(d: dict) -> str:
    return json.dumps(d, sort_keys=True)


def conjugate_presentation(p: Presentation, perm: Sequence[int]) -> Presentation:
    """Substitute ``q_ij -> q_{perm[i], perm[j]}`` in every relation.

    Provenance still describes the source presentation.
    """
    if sorted(perm) != list(range(p.n)):
        raise ValueError(f"{tuple(perm)} is not a permutation of 0..{p.n - 1}")
    return Presentation(p.n, tuple(Relation(r.poly.relabel(perm), r.tag, r.provenance) for r in p.relations))


def relation_counts(p: Presentation) -> dict[str, int]:
    counts = {t: 0 for t in TAGS}
    for r in p.relations:
        counts[r.tag] += 1
    return counts


def evaluate_all(polys: Iterable[NCPoly], values) -> bool:
    """True when every polynomial vanishes at the commutative point ``values``."""
    return all(poly.evaluate(values) == 0 for poly in polys)
