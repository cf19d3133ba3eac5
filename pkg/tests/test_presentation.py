import random

import pytest

from qsym.composition import pullback
from qsym.equivalence import conjugate_triple, inverse
from qsym.fixtures import four_cycle, k4, random_triple, single_loop
from qsym.ncpoly import NCPoly, q
from qsym.presentation import (TAGS, Presentation, Relation, canonicalize, conjugate_presentation, generate,
                               graph_presentation, magic_relations, relation_counts, theta_relations)


def test_magic_counts():
    c = relation_counts(Presentation(3, tuple(magic_relations(3))))
    assert c["idempotent"] == 9
    assert c["row-orthogonal"] == c["col-orthogonal"] == 3 * 3 * 2
    assert c["row-sum"] == c["col-sum"] == 3


def test_raw_counts_ex_b(ex_b):
    c = relation_counts(generate(ex_b))
    # every edge meets 16 - 4 non-edges, four forms each
    assert c["edge-vanishing-G1"] == c["edge-vanishing-G2"] == 4 * 12 * 4
    assert c["commutant-G1"] == c["commutant-G2"] == 16
    assert c["theta"] == 16


def test_theta_relation_shape(ex_b):
    # theta(e1, f1) = (f3, e3); pairing it with itself gives
    # q[t f3, t f3] q[s f3, s f3] q[s e3, s e3] - q[t e1, t e1] q[s e1, s e1] q[s f1, s f1]
    rel = next(r for r in theta_relations(ex_b)
               if r.provenance[0]["pair"] == ["e1", "f1"] and r.provenance[0]["other"] == ["e1", "f1"])
    assert rel.poly == q(1, 1) * q(2, 2) * q(3, 3) - q(1, 1) * q(0, 0) * q(3, 3)


def test_loop_presentation():
    p = canonicalize(generate(pullback(single_loop())))
    assert [r.poly for r in p.relations if r.poly.degree == 1] == [q(0, 0) - 1]
    assert all(r.tag != "theta" for r in p.relations)


def test_canonicalize_merges_and_drops():
    r1 = Relation(2 * q(0, 1), "row-sum", ({"tag": "a"},))
    r2 = Relation(q(0, 1), "idempotent", ({"tag": "b"},))
    r3 = Relation(q(0, 0) - q(0, 0), "theta")
    p = canonicalize(Presentation(2, (r1, r2, r3)))
    assert len(p.relations) == 1
    (r,) = p.relations
    assert r.poly == q(0, 1) and r.tag == "idempotent"
    assert [d["tag"] for d in r.provenance] == ["a", "b"]


def test_canonicalize_idempotent(rng):
    for _ in range(5):
        p = canonicalize(generate(random_triple(rng, n_max=4)))
        assert canonicalize(p) == p
        for r in p.relations:
            assert r.poly.leading()[1] == 1


def test_canonical_order_independent_of_input_order(ex_b):
    p = generate(ex_b)
    rels = list(p.relations)
    random.Random(3).shuffle(rels)
    assert canonicalize(Presentation(p.n, tuple(rels))) == canonicalize(p)


def test_json_round_trip(ex_b):
    p = canonicalize(generate(ex_b))
    back = Presentation.from_json(p.to_json())
    assert back == p
    assert [r.provenance for r in back.relations] == [r.provenance for r in p.relations]


@pytest.mark.parametrize("graph", [single_loop(), four_cycle(), k4()])
def test_pullback_theta_relations_trivial(graph):
    assert all(not r.poly for r in theta_relations(pullback(graph)))
    assert canonicalize(generate(pullback(graph))) == canonicalize(graph_presentation(graph))


def test_conjugation_identity_and_inverse(ex_c):
    p = canonicalize(generate(ex_c))
    assert conjugate_presentation(p, (0, 1, 2, 3)) == p
    t = (2, 0, 3, 1)
    assert canonicalize(conjugate_presentation(conjugate_presentation(p, t), inverse(t))) == p


def test_conjugation_commutes_with_generation(rng):
    for _ in range(10):
        t = random_triple(rng, n_max=5)
        p = list(range(t.n))
        rng.shuffle(p)
        lhs = canonicalize(conjugate_presentation(generate(t), p))
        assert lhs == canonicalize(generate(conjugate_triple(t, p)))


def test_relation_tags_known():
    with pytest.raises(ValueError):
        Relation(NCPoly.const(1), "made-up")
    assert TAGS[0] == "idempotent" and TAGS[-1] == "theta"
