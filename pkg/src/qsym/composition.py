"""Composable pairs, boundary-preserving bijections and defining triples.

A triple ``(G1, G2, theta)`` encodes a 2-graph: ``theta`` sends each
composable pair ``(e, f)`` with ``e`` in G1, ``f`` in G2 and
``source(e) == target(f)`` to a composable pair ``(f', e')`` with ``f'`` in
G2, ``e'`` in G1, fixing the outer boundary of the length-two path.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator, Mapping

from .graph import (GraphError, Matrix, OneGraph, ValidationResult, check_commuting,
                    identity, matmul, validate_graph, vertex_matrix)

Pair = tuple[str, str]

DEFAULT_SKELETON_BOUND = 12


class CompositionError(ValueError):
    pass


def composable_pairs(x: OneGraph, y: OneGraph) -> list[Pair]:
    """All ``(e, f)`` with ``e`` in ``x``, ``f`` in ``y`` and ``source(e) == target(f)``."""
    if x.vertex_labels != y.vertex_labels:
        raise CompositionError("graphs do not share a vertex set")
    into: dict[int, list[str]] = defaultdict(list)
    for f in y.edges:
        into[f.target].append(f.id)
    pairs = [(e.id, fid) for e in x.edges for fid in into.get(e.source, ())]
    return sorted(pairs)


def _boundary(x: OneGraph, y: OneGraph, pair: Pair) -> tuple[int, int]:
    # (target of the path, source of the path)
    return x.edge(pair[0]).target, y.edge(pair[1]).source


@dataclass(frozen=True)
class Theta:
    """A bijection E1*E2 -> E2*E1, stored extensionally in canonical order."""

    mapping: tuple[tuple[Pair, Pair], ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(sorted(
            ((tuple(a), tuple(b)) for a, b in self.mapping))))

    @classmethod
    def from_dict(cls, d: Mapping[Pair, Pair]) -> "Theta":
        return cls(tuple(d.items()))

    def as_dict(self) -> dict[Pair, Pair]:
        return dict(self.mapping)

    def __getitem__(self, pair: Pair) -> Pair:
        return self.as_dict()[pair]

    def __len__(self):
        return len(self.mapping)


@dataclass(frozen=True)
class Triple:
    g1: OneGraph
    g2: OneGraph
    theta: Theta

    @property
    def n(self) -> int:
        return self.g1.n

    def matrices(self) -> tuple[Matrix, Matrix]:
        return vertex_matrix(self.g1), vertex_matrix(self.g2)

    def checked(self) -> "Triple":
        res = validate_theta(self)
        if not res.ok:
            raise CompositionError("invalid triple: " + "; ".join(res.violations))
        return self


def validate_theta(t: Triple) -> ValidationResult:
    """Check the whole triple: both graphs, commuting matrices, and theta."""
    res = ValidationResult()
    for name, g in (("graph1", t.g1), ("graph2", t.g2)):
        r = validate_graph(g)
        res.violations += [f"{name}: {v}" for v in r.violations]
        res.notes += [f"{name}: {v}" for v in r.notes]
    if t.g1.vertex_labels != t.g2.vertex_labels:
        res.violations.append("graph1 and graph2 have different vertex lists")
    if not res.ok:
        return res
    a1, a2 = t.matrices()
    if not check_commuting(a1, a2):
        res.violations.append("vertex matrices do not commute")

    dom = set(composable_pairs(t.g1, t.g2))
    cod = set(composable_pairs(t.g2, t.g1))
    images: dict[Pair, Pair] = {}
    for src, dst in t.theta.mapping:
        if src in images:
            res.violations.append(f"theta lists {src} more than once")
            continue
        images[src] = dst
        if src not in dom:
            res.violations.append(f"theta input {src} is not a composable pair of E1*E2")
            continue
        if dst not in cod:
            res.violations.append(f"theta image {dst} of {src} is not a composable pair of E2*E1")
            continue
        e, f = t.g1.edge(src[0]), t.g2.edge(src[1])
        f2, e2 = t.g2.edge(dst[0]), t.g1.edge(dst[1])
        if e.target != f2.target:
            res.violations.append(
                f"theta{src} = {dst}: t({e.id})={t.g1.vertex_labels[e.target]} "
                f"!= t({f2.id})={t.g1.vertex_labels[f2.target]}")
        if f.source != e2.source:
            res.violations.append(
                f"theta{src} = {dst}: s({f.id})={t.g1.vertex_labels[f.source]} "
                f"!= s({e2.id})={t.g1.vertex_labels[e2.source]}")
    for p in sorted(dom - images.keys()):
        res.violations.append(f"theta is undefined on {p}")
    hit = defaultdict(list)
    for src, dst in images.items():
        hit[dst].append(src)
    for dst, srcs in sorted(hit.items()):
        if len(srcs) > 1:
            res.violations.append(f"theta is not injective: {sorted(srcs)} all map to {dst}")
    return res


def theta_blocks(x: OneGraph, y: OneGraph) -> list[tuple[tuple[int, int], list[Pair], list[Pair]]]:
    if x.vertex_labels != y.vertex_labels:
        raise CompositionError("graphs do not share a vertex set")
    if not check_commuting(vertex_matrix(x), vertex_matrix(y)):
        raise CompositionError("vertex matrices do not commute; no theta exists")
    dom: dict[tuple[int, int], list[Pair]] = defaultdict(list)
    cod: dict[tuple[int, int], list[Pair]] = defaultdict(list)
    for p in composable_pairs(x, y):
        dom[_boundary(x, y, p)].append(p)
    for p in composable_pairs(y, x):
        cod[_boundary(y, x, p)].append(p)
    keys = sorted(set(dom) | set(cod))
    return [(k, dom[k], cod[k]) for k in keys]


def enumerate_thetas(x: OneGraph, y: OneGraph, limit: int | None = None) -> Iterator[Theta]:
    """Yield every boundary-preserving bijection E1*E2 -> E2*E1 once, in a fixed order."""
    blocks = theta_blocks(x, y)
    if any(len(dom) != len(cod) for _, dom, cod in blocks):
        return
    per_block = []
    for _, dom, cod in blocks:
        # candidate images are checked pair by pair before permuting
        ok = {(s, d) for s in dom for d in cod if _pair_ok(x, y, s, d)}
        per_block.append([imgs for imgs in itertools.permutations(cod)
                          if all((s, d) in ok for s, d in zip(dom, imgs))])
    produced = 0
    for choice in itertools.product(*per_block):
        if limit is not None and produced >= limit:
            return
        mapping = {}
        for (_, dom, _), images in zip(blocks, choice):
            mapping.update(zip(dom, images))
        produced += 1
        yield Theta.from_dict(mapping)


def _pair_ok(x: OneGraph, y: OneGraph, src: Pair, dst: Pair) -> bool:
    e, f = x.edge(src[0]), y.edge(src[1])
    f2, e2 = y.edge(dst[0]), x.edge(dst[1])
    return (e.source == f.target and f2.source == e2.target
            and e.target == f2.target and f.source == e2.source)


def count_thetas(x: OneGraph, y: OneGraph) -> int:
    total = 1
    for _, dom, cod in theta_blocks(x, y):
        if len(dom) != len(cod):
            return 0
        total *= math.factorial(len(dom))
    return total


def skeleton_count(t: Triple, m: int, n: int, bound: int = DEFAULT_SKELETON_BOUND) -> Matrix:
    """Entry ``[w][v]`` is the number of degree-(m, n) morphisms from ``v`` to ``w``."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    if m + n > bound:
        raise CompositionError(f"degree ({m}, {n}) exceeds the bound m + n <= {bound}")
    a1, a2 = t.matrices()
    out = identity(t.n)
    for _ in range(m):
        out = matmul(out, a1)
    for _ in range(n):
        out = matmul(out, a2)
    return out


def identity_theta(g: OneGraph) -> Theta:
    return Theta.from_dict({(e, f): (e, f) for e, f in composable_pairs(g, g)})


def pullback(g: OneGraph) -> Triple:
    """The defining triple ``(G, G, id)`` of the pullback along ``(m, n) -> m + n``."""
    try:
        g.checked()
    except GraphError as exc:
        raise CompositionError(str(exc)) from exc
    return Triple(g, g, identity_theta(g))
