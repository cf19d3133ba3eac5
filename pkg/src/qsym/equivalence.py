"""Equivalence of defining triples and their classical automorphism groups.

A witness of ``is_equivalent(t1, t2)`` is a vertex permutation ``p`` with
``p[v]`` the vertex of ``t2`` that ``v`` of ``t1`` is sent to.  It must carry
the edges of each graph of ``t1`` onto the edges of the matching graph of
``t2`` and intertwine the two thetas.  Because the graphs have no multiple
edges, ``p`` determines the edge map.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .composition import Pair, Triple

Permutation = tuple[int, ...]


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``(p o q)[v] = p[q[v]]``."""
    return tuple(p[v] for v in q)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for v, w in enumerate(p):
        inv[w] = v
    return tuple(inv)


def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def perm_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for v in range(len(p)):
        if seen[v]:
            continue
        length, w = 0, v
        while not seen[w]:
            seen[w] = True
            w = p[w]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def conjugate_triple(t: Triple, p: Sequence[int]) -> Triple:
    """Relabel the vertices of ``t`` by ``p``; edge ids and theta are carried along."""
    if not is_permutation(p) or len(p) != t.n:
        raise ValueError(f"{tuple(p)} is not a permutation of 0..{t.n - 1}")
    return Triple(t.g1.relabel(p), t.g2.relabel(p), t.theta)


def _signature(t: Triple, v: int) -> tuple:
    sig = []
    for g in (t.g1, t.g2):
        arcs = g.arcs()
        sig += [sum(1 for s, _ in arcs if s == v), sum(1 for _, w in arcs if w == v),
                (v, v) in arcs]
    return tuple(sig)


def _edge_map(src, dst, p) -> dict[str, str] | None:
    out = {}
    for e in src.edges:
        img = dst.edge_between(p[e.source], p[e.target])
        if img is None:
            return None
        out[e.id] = img.id
    return out


def _theta_compatible(t1: Triple, t2: Triple, p: Sequence[int]) -> bool:
    m1 = _edge_map(t1.g1, t2.g1, p)
    m2 = _edge_map(t1.g2, t2.g2, p)
    if m1 is None or m2 is None:
        return False
    th1, th2 = t1.theta.as_dict(), t2.theta.as_dict()
    for (e, f), (f_img, e_img) in th1.items():
        if th2.get((m1[e], m2[f])) != (m2[f_img], m1[e_img]):
            return False
    return True


def _search(t1: Triple, t2: Triple, first: bool, prefix: tuple[int, ...] = ()) -> list[Permutation]:
    n = t1.n
    arcs1 = (t1.g1.arcs(), t1.g2.arcs())
    arcs2 = (t2.g1.arcs(), t2.g2.arcs())
    sig1 = [_signature(t1, v) for v in range(n)]
    sig2 = [_signature(t2, v) for v in range(n)]
    found: list[Permutation] = []
    assign: list[int] = []
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        if sig1[v] != sig2[w]:
            return False
        for u, pu in enumerate(assign):
            for a1, a2 in zip(arcs1, arcs2):
                if ((u, v) in a1) != ((pu, w) in a2) or ((v, u) in a1) != ((w, pu) in a2):
                    return False
        return True

    for v, w in enumerate(prefix):
        if w in used or not consistent(v, w):
            return found
        assign.append(w)
        used.add(w)

    def extend() -> bool:
        v = len(assign)
        if v == n:
            p = tuple(assign)
            if _theta_compatible(t1, t2, p):
                found.append(p)
                return first
            return False
        for w in range(n):
            if w in used or not consistent(v, w):
                continue
            assign.append(w)
            used.add(w)
            stop = extend()
            assign.pop()
            used.discard(w)
            if stop:
                return True
        return False

    extend()
    return found


def _shard(args):
    t1, t2, first, head = args
    return _search(t1, t2, first, (head,))


def is_equivalent(t1: Triple, t2: Triple, all_witnesses: bool = False, jobs: int = 1) -> list[Permutation]:
    """Witnesses ``p: V(t1) -> V(t2)`` of equivalence; empty when the triples are inequivalent."""
    if t1.n != t2.n:
        raise ValueError(f"vertex counts differ: {t1.n} vs {t2.n}")
    first = not all_witnesses
    if jobs > 1 and t1.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            shards = list(pool.map(_shard, [(t1, t2, first, w) for w in range(t1.n)]))
        found = sorted(p for shard in shards for p in shard)
        return found[:1] if first else found
    return sorted(_search(t1, t2, first))


@dataclass
class GroupReport:
    elements: list[Permutation]
    order: int = 0
    abelian: bool = True
    element_orders: dict[int, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.elements = sorted(tuple(p) for p in self.elements)
        self.order = len(self.elements)
        self.abelian = all(compose(a, b) == compose(b, a)
                           for i, a in enumerate(self.elements) for b in self.elements[i + 1:])
        self.element_orders = dict(sorted(Counter(perm_order(p) for p in self.elements).items()))
        if not self.name:
            self.name = identify_group(self)

    def check_axioms(self) -> None:
        elems = set(self.elements)
        if not elems:
            raise ValueError("empty group")
        n = len(self.elements[0])
        if identity_perm(n) not in elems:
            raise ValueError("identity missing")
        for a in elems:
            if inverse(a) not in elems:
                raise ValueError(f"inverse of {a} missing")
            for b in elems:
                if compose(a, b) not in elems:
                    raise ValueError(f"{a} o {b} not in group")

    def as_dict(self) -> dict:
        return {"name": self.name, "order": self.order, "abelian": self.abelian,
                "element_orders": {str(k): v for k, v in self.element_orders.items()},
                "elements": [list(p) for p in self.elements]}


# (order, abelian, element-order census) -> name; the census separates all groups up to order 15
_KNOWN: dict[tuple, str] = {}


def _register(name: str, order: int, abelian: bool, census: dict[int, int]) -> None:
    _KNOWN[(order, abelian, tuple(sorted(census.items())))] = name


for _name, _n, _ab, _c in [
    ("trivial", 1, True, {1: 1}),
    ("Z2 x Z2", 4, True, {1: 1, 2: 3}),
    ("Z4 x Z2", 8, True, {1: 1, 2: 3, 4: 4}),
    ("Z2 x Z2 x Z2", 8, True, {1: 1, 2: 7}),
    ("Z3 x Z3", 9, True, {1: 1, 3: 8}),
    ("Z6 x Z2", 12, True, {1: 1, 2: 3, 3: 2, 6: 6}),
    ("S3", 6, False, {1: 1, 2: 3, 3: 2}),
    ("D4", 8, False, {1: 1, 2: 5, 4: 2}),
    ("Q8", 8, False, {1: 1, 2: 1, 4: 6}),
    ("D5", 10, False, {1: 1, 2: 5, 5: 4}),
    ("A4", 12, False, {1: 1, 2: 3, 3: 8}),
    ("D6", 12, False, {1: 1, 2: 7, 3: 2, 6: 2}),
    ("Dic3", 12, False, {1: 1, 2: 1, 3: 2, 4: 6, 6: 2}),
    ("D7", 14, False, {1: 1, 2: 7, 7: 6}),
    # beyond order 15 only these two are named (they occur for K4 and the Petersen graph)
    ("S4", 24, False, {1: 1, 2: 9, 3: 8, 4: 6}),
    ("S5", 120, False, {1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}),
]:
    _register(_name, _n, _ab, _c)


def identify_group(g: GroupReport) -> str:
    key = (g.order, g.abelian, tuple(sorted(g.element_orders.items())))
    if key in _KNOWN:
        return _KNOWN[key]
    if g.abelian and g.order in g.element_orders:
        return f"Z{g.order}"
    return f"order-{g.order} group"


def automorphisms(t: Triple, jobs: int = 1) -> GroupReport:
    report = GroupReport(is_equivalent(t, t, all_witnesses=True, jobs=jobs))
    report.check_axioms()
    return report


def permutation_matrix(p: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """``P[i][j] = 1`` iff ``p`` sends ``j`` to ``i``."""
    n = len(p)
    return tuple(tuple(int(p[j] == i) for j in range(n)) for i in range(n))


def edge_image(t1: Triple, t2: Triple, p: Sequence[int], pair: Pair, first_graph: bool = True) -> Pair:
    """Image of a composable pair of ``t1`` (E1*E2 when ``first_graph``) under ``p``."""
    ga, gb = (t1.g1, t1.g2) if first_graph else (t1.g2, t1.g1)
    ha, hb = (t2.g1, t2.g2) if first_graph else (t2.g2, t2.g1)
    a, b = ga.edge(pair[0]), gb.edge(pair[1])
    return (ha.edge_between(p[a.source], p[a.target]).id,
            hb.edge_between(p[b.source], p[b.target]).id)
