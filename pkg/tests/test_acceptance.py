"""Acceptance criteria 1-10, each printed as one PASS/FAIL line.

Every test records its sub-checks, reports the line, then asserts, so a
failing check still shows exactly which part did not hold.
"""
import itertools
import time

import pytest

from qsym.analyzer import analyze, check_theta_redundant, classical_point_census
from qsym.composition import Theta, composable_pairs, enumerate_thetas, pullback, skeleton_count
from qsym.equivalence import automorphisms, conjugate_triple, permutation_matrix
from qsym.fixtures import load_fixture, random_triple
from qsym.graph import identity
from qsym.ncalgebra import derived_entry_map, membership, Membership, prove_commutativity, saturate
from qsym.ncpoly import q
from qsym.presentation import canonicalize, conjugate_presentation, generate, graph_presentation


class Checks:
    def __init__(self, log, number, title):
        self.log, self.number, self.title = log, number, title
        self.failed = []
        self.start = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failed.append(what)

    def within(self, seconds):
        elapsed = time.perf_counter() - self.start
        self.check(elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s")

    def finish(self):
        elapsed = time.perf_counter() - self.start
        detail = self.title if not self.failed else f"{self.title}; failed: {'; '.join(self.failed)}"
        self.log.record(self.number, not self.failed, detail, elapsed)
        assert not self.failed, detail


def one_based(entries):
    return sorted((i + 1, j + 1) for i, j in entries)


def test_criterion_1_ex_b_theta_unique(acceptance_log, ex_b):
    c = Checks(acceptance_log, 1, "ex-b has exactly one theta, equal to the listed mapping")
    listed = Theta.from_dict({
        ("e1", "f1"): ("f3", "e3"),
        ("e2", "f3"): ("f1", "e4"),
        ("e3", "f2"): ("f4", "e1"),
        ("e4", "f4"): ("f2", "e2"),
    })
    thetas = list(enumerate_thetas(ex_b.g1, ex_b.g2))
    c.check(thetas == [listed], f"got {len(thetas)} thetas")
    c.within(1)
    c.finish()


def test_criterion_2_ex_b_entry_classes(acceptance_log, ex_b):
    c = Checks(acceptance_log, 2, "ex-b entry classes at L=2")
    em = derived_entry_map(saturate(generate(ex_b), 2))
    expected = [
        [(1, 1), (2, 2), (3, 3), (4, 4)],
        [(1, 2), (2, 1), (3, 4), (4, 3)],
        [(1, 3), (2, 4), (3, 1), (4, 2)],
        [(1, 4), (2, 3), (3, 2), (4, 1)],
    ]
    got = sorted(one_based(cls) for cls in em.classes)
    c.check(got == expected, f"classes {got}")
    c.check(em.zeros == [], f"unexpected zeros {em.zeros}")
    c.within(10)
    c.finish()


def test_criterion_3_ex_b_conclusion(acceptance_log, ex_b):
    c = Checks(acceptance_log, 3, "ex-b at L=3: commutative, theta redundant, Z2 x Z2")
    r = analyze(ex_b, 3)
    g = r.classical_group
    c.check(r.commutativity == "proved", "commutativity not proved")
    c.check(len(r.theta_redundancy) == 16 and all(r.theta_redundancy),
            f"{sum(r.theta_redundancy)}/{len(r.theta_redundancy)} theta relations redundant")
    c.check(g.order == 4, f"order {g.order}")
    c.check(sorted(itertools.chain.from_iterable([k] * v for k, v in g.element_orders.items())) == [1, 2, 2, 2],
            f"element orders {g.element_orders}")
    c.check(g.name == "Z2 x Z2", f"name {g.name!r}")
    c.within(60)
    c.finish()


EX_C_TABLE = """e1 f2, e1 f10, e1 f7, e2 f4, e2 f12, e2 f1, e3 f4, e3 f12, e3 f1, e4 f3, e4 f9, e4 f5,
e5 f6, e5 f11, e5 f8, e6 f5, e6 f3, e6 f9, e7 f6, e7 f11, e7 f8, e8 f2, e8 f10, e8 f7,
e9 f2, e9 f10, e9 f7, e10 f3, e10 f9, e10 f5, e11 f1, e11 f4, e11 f12, e12 f6, e12 f11, e12 f8"""


def test_criterion_4_ex_c_pair_census(acceptance_log, ex_c):
    c = Checks(acceptance_log, 4, "ex-c has exactly the 36 tabulated composable pairs")
    table = sorted(tuple(p.split()) for p in EX_C_TABLE.replace("\n", " ").split(","))
    got = composable_pairs(ex_c.g1, ex_c.g2)
    c.check(len(table) == 36 and got == table, f"{len(got)} pairs")
    c.within(1)
    c.finish()


def test_criterion_5_ex_c_conclusion(acceptance_log, ex_c):
    c = Checks(acceptance_log, 5, "ex-c at L=4: four zeros, commutative, trivial group")
    r = analyze(ex_c, 4)
    sat = saturate(generate(ex_c), 4)
    for i, j in [(1, 2), (1, 3), (4, 2), (4, 3)]:
        c.check(membership(sat, q(i - 1, j - 1)) is Membership.PROVED, f"q{i}{j} = 0 not proved")
        c.check((i - 1, j - 1) in r.zero_entries and (j - 1, i - 1) in r.zero_entries,
                f"q{i}{j} or its transpose missing from the report")
    c.check(r.commutativity == "proved", "commutativity not proved")
    c.check(r.classical_group.name == "trivial",
            f"classical group is {r.classical_group.name} of order {r.classical_group.order}, "
            f"elements {r.classical_group.elements}")
    c.within(600)
    c.finish()


@pytest.mark.parametrize("name", ["loop", "edge", "cycle4", "k4", "petersen"])
def test_criterion_6_pullback_redundancy(acceptance_log, name):
    g = load_fixture(name)
    c = Checks(acceptance_log, 6, f"pullback({name}) presentation equals the graph-only one")
    c.check(canonicalize(generate(pullback(g))) == canonicalize(graph_presentation(g)), "presentations differ")
    c.within(5)
    c.finish()


def test_criterion_7_conjugation(acceptance_log, rng):
    c = Checks(acceptance_log, 7, "presentation conjugation matches triple conjugation (20 random)")
    for k in range(20):
        t = random_triple(rng, n_max=5)
        perm = list(range(t.n))
        rng.shuffle(perm)
        lhs = canonicalize(conjugate_presentation(generate(t), perm))
        rhs = canonicalize(generate(conjugate_triple(t, perm)))
        c.check(lhs == rhs, f"case {k} with permutation {perm}")
    c.within(60)
    c.finish()


def brute_skeleton(t, m, n):
    if m + n == 0:
        return identity(t.n)
    out = [[0] * t.n for _ in range(t.n)]
    for path in itertools.product(*([t.g2.edges] * n + [t.g1.edges] * m)):
        if all(path[k].target == path[k + 1].source for k in range(len(path) - 1)):
            out[path[-1].target][path[0].source] += 1
    return tuple(tuple(r) for r in out)


def test_criterion_8_skeleton_oracle(acceptance_log, rng):
    c = Checks(acceptance_log, 8, "skeleton counts match path enumeration (20 random, m+n<=4)")
    for k in range(20):
        t = random_triple(rng, n_max=5)
        for m in range(5):
            for n in range(5 - m):
                c.check(skeleton_count(t, m, n) == brute_skeleton(t, m, n), f"case {k} degree ({m}, {n})")
    c.finish()


SOUNDNESS_BOUNDS = {"ex-b": 3, "ex-c": 4, "loop": 4, "edge": 4, "cycle4": 3, "k4": 3, "petersen": 2}


def test_criterion_9_soundness(acceptance_log):
    c = Checks(acceptance_log, 9, "proved elements vanish at classical points; census 4 and 1")
    for name, bound in SOUNDNESS_BOUNDS.items():
        t = load_fixture(name) if name.startswith("ex-") else pullback(load_fixture(name))
        sat = saturate(generate(t), bound)
        basis = sat.basis()
        for perm in automorphisms(t).elements:
            m = permutation_matrix(perm)
            bad = sum(1 for poly in basis if poly.evaluate(m) != 0)
            c.check(bad == 0, f"{name}: {bad} proved elements nonzero at {perm}")
    for name, expected in (("ex-b", 4), ("ex-c", 1)):
        points = classical_point_census(generate(load_fixture(name)))
        c.check(len(points) == expected, f"{name} census {len(points)} (solutions {points}), expected {expected}")
    c.finish()


def test_criterion_10_negative_control(acceptance_log, k4_pullback):
    c = Checks(acceptance_log, 10, "pullback(K4): S4 classically, commutativity inconclusive at L<=4")
    r = analyze(k4_pullback, 4)
    c.check(r.classical_group.order == 24, f"order {r.classical_group.order}")
    c.check(r.commutativity == "inconclusive", "commutativity reported proved")
    for bound in (2, 3):
        c.check(not prove_commutativity(saturate(generate(k4_pullback), bound)).proved,
                f"commutativity proved at L={bound}")
    c.check(all(check_theta_redundant(k4_pullback, 2)), "theta relations not all redundant")
    c.finish()
