import itertools
from collections import Counter

import pytest

from qsym.composition import (CompositionError, Theta, Triple, composable_pairs, count_thetas,
                              enumerate_thetas, identity_theta, pullback, skeleton_count, theta_blocks,
                              validate_theta)
from qsym.fixtures import (bidirected_edge, four_cycle, k4, random_triple, single_loop)
from qsym.graph import OneGraph, identity

EX_C_PAIRS = """e1 f2, e1 f10, e1 f7, e2 f4, e2 f12, e2 f1, e3 f4, e3 f12, e3 f1, e4 f3, e4 f9, e4 f5,
e5 f6, e5 f11, e5 f8, e6 f5, e6 f3, e6 f9, e7 f6, e7 f11, e7 f8, e8 f2, e8 f10, e8 f7,
e9 f2, e9 f10, e9 f7, e10 f3, e10 f9, e10 f5, e11 f1, e11 f4, e11 f12, e12 f6, e12 f11, e12 f8"""


def brute_pairs(x, y):
    return sorted((e.id, f.id) for e in x.edges for f in y.edges if e.source == f.target)


def brute_candidates(x, y):
    dom, cod = brute_pairs(x, y), brute_pairs(y, x)
    cands = []
    for a, b in dom:
        e, f = x.edge(a), y.edge(b)
        cands.append([(c, d) for c, d in cod
                      if y.edge(c).target == e.target and x.edge(d).source == f.source])
    return dom, cod, cands


def brute_thetas(x, y):
    dom, cod, cands = brute_candidates(x, y)
    if len(dom) != len(cod):
        return []
    return [Theta(tuple(zip(dom, imgs))) for imgs in itertools.product(*cands) if len(set(imgs)) == len(imgs)]


def brute_size(x, y):
    total = 1
    for c in brute_candidates(x, y)[2]:
        total *= len(c)
    return total


def test_ex_b_pairs(ex_b):
    assert composable_pairs(ex_b.g1, ex_b.g2) == [("e1", "f1"), ("e2", "f3"), ("e3", "f2"), ("e4", "f4")]


def test_ex_c_pairs_match_table(ex_c):
    expected = sorted(tuple(p.split()) for p in EX_C_PAIRS.replace("\n", " ").split(","))
    assert composable_pairs(ex_c.g1, ex_c.g2) == expected
    assert len(expected) == 36


def test_loop_pairs():
    g = single_loop()
    assert composable_pairs(g, g) == [("e1", "e1")]


def test_different_vertex_sets_rejected():
    with pytest.raises(CompositionError):
        composable_pairs(single_loop(), bidirected_edge())


def test_fixture_thetas_valid(ex_b, ex_c):
    assert validate_theta(ex_b).ok
    assert validate_theta(ex_c).ok


def test_ex_b_theta_unique(ex_b):
    thetas = list(enumerate_thetas(ex_b.g1, ex_b.g2))
    assert thetas == [ex_b.theta]
    assert count_thetas(ex_b.g1, ex_b.g2) == 1


def test_k4_block_census():
    g1, g2 = k4("e"), k4("f")
    sizes = Counter(len(dom) for _, dom, _ in theta_blocks(g1, g2))
    assert sizes == {2: 12, 3: 4}
    assert count_thetas(g1, g2) == 2 ** 12 * 6 ** 4 == 5_308_416


def test_k4_enumeration_prefix_is_valid_and_distinct():
    g1, g2 = k4("e"), k4("f")
    thetas = list(enumerate_thetas(g1, g2, limit=500))
    assert len(set(thetas)) == 500
    assert all(validate_theta(Triple(g1, g2, th)).ok for th in thetas)


@pytest.mark.parametrize("make", [single_loop, bidirected_edge, four_cycle])
def test_enumeration_matches_brute_force(make):
    g = make()
    got = list(enumerate_thetas(g, g))
    assert sorted(got, key=lambda t: t.mapping) == sorted(brute_thetas(g, g), key=lambda t: t.mapping)
    assert len(got) == len(set(got)) == count_thetas(g, g)


def test_enumeration_matches_brute_force_random(rng):
    for _ in range(15):
        t = random_triple(rng, n_max=3)
        if brute_size(t.g1, t.g2) > 50_000:
            continue
        got = list(enumerate_thetas(t.g1, t.g2))
        assert set(got) == set(brute_thetas(t.g1, t.g2))
        assert len(got) == count_thetas(t.g1, t.g2)


def test_validate_theta_reports_problems(ex_b):
    d = ex_b.theta.as_dict()
    d[("e1", "f1")] = ("f1", "e4")
    res = validate_theta(Triple(ex_b.g1, ex_b.g2, Theta.from_dict(d)))
    assert any("not injective" in v for v in res.violations)
    assert any("t(e1)" in v for v in res.violations)
    del d[("e1", "f1")]
    res = validate_theta(Triple(ex_b.g1, ex_b.g2, Theta.from_dict(d)))
    assert any("undefined" in v for v in res.violations)


def test_non_commuting_graphs():
    g1 = OneGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    g2 = OneGraph.from_arcs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 0)])
    res = validate_theta(Triple(g1, g2, Theta(())))
    assert "vertex matrices do not commute" in res.violations
    with pytest.raises(CompositionError):
        count_thetas(g1, g2)


def brute_skeleton(t, m, n):
    # paths that run n graph-2 edges, then m graph-1 edges
    out = [[0] * t.n for _ in range(t.n)]
    seq = [t.g2] * n + [t.g1] * m
    for path in itertools.product(*[g.edges for g in seq]):
        if all(path[k].target == path[k + 1].source for k in range(len(path) - 1)):
            if path:
                out[path[-1].target][path[0].source] += 1
    if not seq:
        return identity(t.n)
    return tuple(tuple(r) for r in out)


def test_skeleton_small_cases(ex_b):
    assert skeleton_count(ex_b, 0, 0) == identity(4)
    assert skeleton_count(pullback(single_loop()), 3, 2) == ((1,),)
    with pytest.raises(CompositionError):
        skeleton_count(ex_b, 7, 6)


def test_skeleton_matches_path_enumeration(rng):
    for _ in range(10):
        t = random_triple(rng, n_max=4)
        for m in range(3):
            for n in range(3 - m):
                assert skeleton_count(t, m, n) == brute_skeleton(t, m, n)


def test_pullback_structure():
    g = four_cycle()
    t = pullback(g)
    assert t.g1 == t.g2 == g
    assert t.theta == identity_theta(g)
    assert validate_theta(t).ok
    with pytest.raises(CompositionError):
        pullback(OneGraph.from_arcs(2, [(0, 1)]))
