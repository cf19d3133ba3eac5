"""Shipped example triples and graphs, plus a seeded random triple generator."""
from __future__ import annotations

import itertools
import random
from importlib import resources

from .composition import (Theta, Triple, count_thetas, enumerate_thetas, identity_theta, pullback,
                          theta_blocks)
from .graph import Edge, OneGraph, check_commuting, validate_graph, vertex_matrix
from .serialize import dumps, graph_from_json, graph_to_json, loads, triple_from_json, triple_to_json

LABELS4 = ("1", "2", "3", "4")


def _graph(labels, arcs: dict[str, tuple[str, str]]) -> OneGraph:
    idx = {v: k for k, v in enumerate(labels)}
    return OneGraph(tuple(labels), tuple(Edge(i, idx[s], idx[t]) for i, (s, t) in arcs.items()))


def example_b() -> Triple:
    """Two perfect matchings on four vertices with their unique theta."""
    g1 = _graph(LABELS4, {"e1": ("1", "2"), "e2": ("2", "1"), "e3": ("4", "3"), "e4": ("3", "4")})
    g2 = _graph(LABELS4, {"f1": ("4", "1"), "f2": ("1", "4"), "f3": ("3", "2"), "f4": ("2", "3")})
    theta = Theta.from_dict({
        ("e1", "f1"): ("f3", "e3"),
        ("e2", "f3"): ("f1", "e4"),
        ("e3", "f2"): ("f4", "e1"),
        ("e4", "f4"): ("f2", "e2"),
    })
    return Triple(g1, g2, theta)


K4_ARCS = {1: ("3", "1"), 2: ("1", "3"), 3: ("1", "2"), 4: ("2", "1"), 5: ("4", "2"), 6: ("2", "4"),
           7: ("4", "3"), 8: ("3", "4"), 9: ("3", "2"), 10: ("2", "3"), 11: ("1", "4"), 12: ("4", "1")}


def k4(prefix: str = "e") -> OneGraph:
    return _graph(LABELS4, {f"{prefix}{k}": arc for k, arc in K4_ARCS.items()})


def example_c() -> Triple:
    """Two copies of K4 with theta swapping two pairs of pairs and fixing the rest."""
    g1, g2 = k4("e"), k4("f")
    mapping = {}
    for (e, f) in itertools.product(g1.edges, g2.edges):
        if e.source == f.target:
            mapping[(e.id, f.id)] = ("f" + e.id[1:], "e" + f.id[1:])
    mapping.update({
        ("e1", "f2"): ("f4", "e3"),
        ("e4", "f3"): ("f1", "e2"),
        ("e8", "f7"): ("f6", "e5"),
        ("e6", "f5"): ("f8", "e7"),
    })
    return Triple(g1, g2, Theta.from_dict(mapping))


def single_loop() -> OneGraph:
    return OneGraph.from_arcs(1, [(0, 0)], labels=["1"])


def bidirected_edge() -> OneGraph:
    return OneGraph.from_arcs(2, [(0, 1), (1, 0)], labels=["1", "2"])


def four_cycle() -> OneGraph:
    arcs = [(i, (i + 1) % 4) for i in range(4)] + [((i + 1) % 4, i) for i in range(4)]
    return OneGraph.from_arcs(4, arcs, labels=LABELS4)


def petersen() -> OneGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    und = outer + spokes + inner
    arcs = und + [(b, a) for a, b in und]
    return OneGraph.from_arcs(10, arcs, labels=[str(i + 1) for i in range(10)])


GRAPHS = {
    "loop": single_loop,
    "edge": bidirected_edge,
    "cycle4": four_cycle,
    "k4": k4,
    "petersen": petersen,
}

TRIPLES = {
    "ex-b": example_b,
    "ex-c": example_c,
}


def fixture_names() -> list[str]:
    return sorted(TRIPLES) + sorted(GRAPHS)


def shipped_text(name: str) -> str:
    return resources.files("qsym").joinpath("fixtures", f"{name}.json").read_text()


def load_fixture(name: str):
    """Load a shipped fixture: a :class:`Triple` for ``ex-*``, otherwise a :class:`OneGraph`."""
    if name not in TRIPLES and name not in GRAPHS:
        raise KeyError(f"unknown fixture {name!r}; choose from {fixture_names()}")
    data = loads(shipped_text(name), f"fixtures/{name}.json")
    if name in TRIPLES:
        return triple_from_json(data).checked()
    return graph_from_json(data).checked()


def serialize_fixture(obj) -> str:
    return dumps(triple_to_json(obj) if isinstance(obj, Triple) else graph_to_json(obj))


def pullback_fixture(graph_name: str) -> Triple:
    return pullback(load_fixture(graph_name))


# random triples

def _random_graph(rng: random.Random, n: int, density: float) -> OneGraph | None:
    arcs = [(s, t) for s in range(n) for t in range(n) if rng.random() < density]
    g = OneGraph.from_arcs(n, arcs)
    return g if validate_graph(g).ok else None


def random_triple(rng: random.Random, n_max: int = 5, n_min: int = 1) -> Triple:
    """A random valid triple on at most ``n_max`` vertices.

    The second graph is drawn from matrices known to commute with the first
    (itself, the identity, an automorphism, the complement-like ``J``) or
    found by rejection sampling; theta is a uniformly random valid bijection.
    """
    while True:
        n = rng.randint(n_min, n_max)
        g1 = _random_graph(rng, n, rng.choice([0.3, 0.45, 0.6]))
        if g1 is None:
            continue
        a1 = vertex_matrix(g1)
        candidates = [g1.arcs(), {(v, v) for v in range(n)},
                      {(s, t) for s in range(n) for t in range(n)}]
        for perm in itertools.islice(itertools.permutations(range(n)), 720):
            if {(perm[s], perm[t]) for s, t in g1.arcs()} == g1.arcs():
                candidates.append({(v, perm[v]) for v in range(n)})
        for _ in range(30):
            g = _random_graph(rng, n, rng.choice([0.3, 0.5]))
            if g is not None and check_commuting(a1, vertex_matrix(g)):
                candidates.append(g.arcs())
        arcs2 = sorted(rng.choice(candidates))
        g2 = OneGraph.from_arcs(n, arcs2, prefix="f")
        if not validate_graph(g2).ok or not check_commuting(a1, vertex_matrix(g2)):
            continue
        total = count_thetas(g1, g2)
        if total == 0:
            continue
        theta = _random_theta(rng, g1, g2)
        return Triple(g1, g2, theta).checked()


def _random_theta(rng: random.Random, g1: OneGraph, g2: OneGraph) -> Theta:
    mapping = {}
    for _, dom, cod in theta_blocks(g1, g2):
        imgs = list(cod)
        rng.shuffle(imgs)
        mapping.update(zip(dom, imgs))
    return Theta.from_dict(mapping)


def first_theta_triple(g1: OneGraph, g2: OneGraph) -> Triple:
    return Triple(g1, g2, next(enumerate_thetas(g1, g2)))


__all__ = [
    "example_b", "example_c", "k4", "single_loop", "bidirected_edge", "four_cycle", "petersen",
    "load_fixture", "serialize_fixture", "fixture_names", "random_triple", "pullback_fixture",
    "identity_theta", "first_theta_triple",
]
