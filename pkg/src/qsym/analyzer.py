"""End-to-end classification of a triple.

``analyze`` runs generation, bounded saturation, the derived entry map, the
commutativity check and the classical automorphism search, then cross-checks
the algebraic and classical halves against each other.

When commutativity is proved the quantum automorphism group is the function
algebra on the classical group.  That identification is confirmed by a
census: the 0/1 magic matrices satisfying every relation are exactly the
permutation matrices of classical automorphisms.  An ``inconclusive``
outcome only means the bound was not enough; it is not evidence of genuine
quantum symmetry.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .composition import Triple, composable_pairs, count_thetas
from .equivalence import GroupReport, automorphisms, permutation_matrix
from .ncalgebra import (DEFAULT_BUDGET, DEFAULT_DEGREE_BOUND, Saturation, derived_entry_map,
                        prove_commutativity, saturate)
from .ncpoly import Gen
from .presentation import Presentation, canonicalize, generate, relation_counts

log = logging.getLogger(__name__)

CLASSICAL = "classical-and-identified"
INCONCLUSIVE = "inconclusive-possibly-quantum"
CENSUS_MAX_N = 6


class InternalInconsistency(RuntimeError):
    """The algebraic and classical computations disagree; this is an engine bug."""


@dataclass
class AnalysisReport:
    triple_summary: dict
    theta_unique: bool
    zero_entries: list[Gen]
    entry_classes: list[list[Gen]]
    theta_relations_redundant: bool
    commutativity: str
    classical_group: GroupReport
    verdict: str
    degree_bound_used: int
    theta_redundancy: list[bool] = field(default_factory=list)
    one_entries: list[Gen] = field(default_factory=list)
    census: int | None = None

    @property
    def headline(self) -> str:
        if self.verdict == CLASSICAL:
            return f"{CLASSICAL}: {self.classical_group.name}"
        return INCONCLUSIVE

    def as_dict(self) -> dict:
        return {
            "triple_summary": self.triple_summary,
            "theta_unique": self.theta_unique,
            "zero_entries": [list(g) for g in self.zero_entries],
            "one_entries": [list(g) for g in self.one_entries],
            "entry_classes": [[list(g) for g in c] for c in self.entry_classes],
            "theta_relations_redundant": self.theta_relations_redundant,
            "theta_redundancy": self.theta_redundancy,
            "commutativity": self.commutativity,
            "classical_group": self.classical_group.as_dict(),
            "classical_point_census": self.census,
            "verdict": self.verdict,
            "degree_bound_used": self.degree_bound_used,
        }

    def text(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0

        def name(g):
            return f"q{g[0] + off}{g[1] + off}" if self.triple_summary["vertices"] < 10 - off \
                else f"q{g[0] + off}_{g[1] + off}"

        s = self.triple_summary
        lines = [
            f"vertices: {s['vertices']}  edges: {s['edges_graph1']} + {s['edges_graph2']}  "
            f"composable pairs: {s['composable_pairs']}",
            f"theta unique for these graphs: {'yes' if self.theta_unique else 'no'}",
            f"degree bound: {self.degree_bound_used}",
            "entry classes:",
        ]
        lines += ["  " + " = ".join(name(g) for g in c) for c in self.entry_classes]
        lines.append("zero entries: " + (", ".join(name(g) for g in self.zero_entries) or "none"))
        if self.one_entries:
            lines.append("entries equal to 1: " + ", ".join(name(g) for g in self.one_entries))
        n_red = sum(self.theta_redundancy)
        lines.append(f"theta relations redundant: {'yes' if self.theta_relations_redundant else 'no'}"
                     f" ({n_red}/{len(self.theta_redundancy)})")
        lines.append(f"commutativity: {self.commutativity}")
        g = self.classical_group
        orders = ", ".join(f"{k}^{v}" for k, v in g.element_orders.items())
        lines.append(f"classical group: {g.name} (order {g.order}, "
                     f"{'abelian' if g.abelian else 'non-abelian'}, element orders {orders})")
        if self.census is not None:
            lines.append(f"0/1 solutions of the presentation: {self.census}")
        if self.verdict == CLASSICAL:
            lines.append("the quantum automorphism group is the function algebra on this group")
        else:
            lines.append("commutativity not derived at this bound; this is not evidence of quantum symmetry")
        lines.append(f"verdict: {self.headline}")
        return "\n".join(lines) + "\n"


def summarize(t: Triple) -> dict:
    p = canonicalize(generate(t))
    return {"vertices": t.n, "edges_graph1": len(t.g1.edges), "edges_graph2": len(t.g2.edges),
            "composable_pairs": len(composable_pairs(t.g1, t.g2)),
            "relations": relation_counts(p)}


def classical_point_census(p: Presentation) -> list[tuple[int, ...]]:
    """All 0/1 magic matrices at which every relation of ``p`` vanishes.

    A 0/1 matrix with unit row and column sums is a permutation matrix, so
    the search runs over permutations; ``P[i][j] = 1`` iff ``perm[j] == i``.
    """
    n = p.n
    if n > CENSUS_MAX_N:
        raise ValueError(f"census is limited to n <= {CENSUS_MAX_N}")
    polys = canonicalize(p).polys()
    hits = []
    for perm in itertools.permutations(range(n)):
        m = permutation_matrix(perm)
        if all(x.evaluate(m) == 0 for x in polys):
            hits.append(perm)
    return hits


def check_theta_redundant(t: Triple, degree_bound: int = DEFAULT_DEGREE_BOUND,
                          budget: int = DEFAULT_BUDGET, base: Saturation | None = None) -> list[bool]:
    """Per theta relation (in generation order): is it in the ideal of the other relations?"""
    p = generate(t)
    if base is None:
        base = saturate(p.without("theta"), degree_bound, budget)
    return [base.contains(r.poly) for r in p.by_tag("theta")]


def analyze(t: Triple, degree_bound: int = DEFAULT_DEGREE_BOUND, budget: int = DEFAULT_BUDGET,
            jobs: int = 1, dump_ideal=None) -> AnalysisReport:
    t.checked()
    p = generate(t)
    sat = saturate(p, degree_bound, budget)
    if dump_ideal is not None:
        sat.dump(dump_ideal)
    entries = derived_entry_map(sat)
    comm = prove_commutativity(sat)
    group = automorphisms(t, jobs=jobs)
    redundancy = check_theta_redundant(t, degree_bound, budget)

    for perm in group.elements:
        m = permutation_matrix(perm)
        bad = [g for g in entries.zeros if m[g[0]][g[1]]]
        if bad:
            raise InternalInconsistency(f"entries {bad} proved zero but automorphism {perm} uses them")
        bad = [g for g in entries.ones if not m[g[0]][g[1]]]
        if bad:
            raise InternalInconsistency(f"entries {bad} proved one but automorphism {perm} moves them")
        for c in entries.classes:
            if len({m[i][j] for i, j in c}) > 1:
                raise InternalInconsistency(f"class {c} proved equal but automorphism {perm} separates it")

    census = None
    if comm.proved and t.n <= CENSUS_MAX_N:
        points = classical_point_census(p)
        census = len(points)
        if sorted(points) != list(group.elements):
            raise InternalInconsistency(
                f"0/1 solutions {points} differ from classical automorphisms {group.elements}")

    verdict = CLASSICAL if comm.proved else INCONCLUSIVE
    report = AnalysisReport(
        triple_summary=summarize(t),
        theta_unique=count_thetas(t.g1, t.g2) == 1,
        zero_entries=entries.zeros,
        entry_classes=entries.classes,
        theta_relations_redundant=all(redundancy),
        commutativity=comm.verdict,
        classical_group=group,
        verdict=verdict,
        degree_bound_used=degree_bound,
        theta_redundancy=redundancy,
        one_entries=entries.ones,
        census=census,
    )
    log.info("analysis done: %s", report.headline)
    return report
