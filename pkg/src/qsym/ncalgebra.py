"""Bounded-degree ideal membership in the free *-algebra on the ``q_ij``.

The engine works in two phases.  Monomial relations (idempotents,
orthogonality, edge-vanishing products) become a confluent, length
non-increasing rewriting system on words.  Every other relation, together
with its reversal, seeds a linear closure: the span is closed under left and
right multiplication by single generators as long as the product stays
within the degree bound, and kept in exact fraction-free integer echelon form.

Membership answers are one-sided.  ``PROVED`` is always correct; a true
member of the ideal may still come back ``NOT_PROVABLE`` at a given bound,
and that is not evidence of genuine quantum symmetry.
"""
from __future__ import annotations

import enum
import heapq
import itertools
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ncpoly import Gen, NCPoly, Word
from .presentation import Presentation

log = logging.getLogger(__name__)

DEFAULT_DEGREE_BOUND = 4
DEFAULT_BUDGET = 2_000_000

IntWord = tuple[int, ...]
Vector = dict[IntWord, int]


class BudgetExceeded(RuntimeError):
    """The number of tracked normal words went over the configured cap."""


class DegreeTooHigh(ValueError):
    pass


class Membership(str, enum.Enum):
    PROVED = "proved"
    NOT_PROVABLE = "not-provable-at-bound"


class MonomialRules:
    """Rewriting rules read off the monomial relations of a presentation.

    * ``x x -> x`` for idempotent letters,
    * ``x y -> 0`` for killed pairs,
    * ``x -> 0`` for dead letters (a killed square of an idempotent, or a
      relation that is a single letter).
    """

    def __init__(self, n: int, idempotent: Iterable[int] = (), killed: Iterable[tuple[int, int]] = (),
                 dead: Iterable[int] = ()):
        self.n = n
        self.idempotent = frozenset(idempotent)
        self.killed = frozenset(killed)
        self.dead = frozenset(set(dead) | {x for (x, y) in self.killed if x == y and x in self.idempotent})

    @classmethod
    def from_presentation(cls, p: Presentation) -> tuple["MonomialRules", list[NCPoly]]:
        """Split ``p`` into rewriting rules and the remaining (linear-phase) relations."""
        n = p.n
        idem, killed, dead = set(), set(), set()
        rest = []
        for r in p.relations:
            terms = r.poly.terms
            if not terms:
                continue
            if len(terms) == 1:
                (w, _), = terms.items()
                if len(w) == 1:
                    dead.add(_gi(w[0], n))
                    continue
                if len(w) == 2:
                    killed.add((_gi(w[0], n), _gi(w[1], n)))
                    continue
            elif len(terms) == 2:
                words = sorted(terms, key=len)
                short, long_ = words
                if (len(short) == 1 and long_ == short + short
                        and terms[short] == -terms[long_]):
                    idem.add(_gi(short[0], n))
                    continue
            rest.append(r.poly)
        return cls(n, idem, killed, dead), rest

    def normal(self, word: Sequence[int]) -> IntWord | None:
        """Normal form of a word: the reduced word, or ``None`` for zero."""
        out: list[int] = []
        dead, killed, idem = self.dead, self.killed, self.idempotent
        for x in word:
            if x in dead:
                return None
            if out:
                prev = out[-1]
                if prev == x and x in idem:
                    continue
                if (prev, x) in killed:
                    return None
            out.append(x)
        return tuple(out)

    def normal_vector(self, vec: Vector) -> Vector:
        out: Vector = {}
        for w, c in vec.items():
            nw = self.normal(w)
            if nw is None:
                continue
            v = out.get(nw, 0) + c
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
        return out

    def apply_rule_once(self, word: Sequence[int], position: int) -> list[int] | None | bool:
        """Apply whichever rule matches at ``position``; ``False`` when none does.

        Used to check confluence by applying rules in arbitrary order.
        """
        word = list(word)
        x = word[position]
        if x in self.dead:
            return None
        if position + 1 < len(word):
            y = word[position + 1]
            if (x, y) in self.killed:
                return None
            if x == y and x in self.idempotent:
                return word[:position] + word[position + 1:]
        return False

    def to_json(self) -> dict:
        n = self.n
        return {"idempotent": [list(divmod(x, n)) for x in sorted(self.idempotent)],
                "killed": [[list(divmod(x, n)), list(divmod(y, n))] for x, y in sorted(self.killed)],
                "dead": [list(divmod(x, n)) for x in sorted(self.dead)]}


def _gi(g: Gen, n: int) -> int:
    return g[0] * n + g[1]


def to_vector(poly: NCPoly, n: int) -> Vector:
    return {tuple(a * n + b for a, b in w): c for w, c in poly.terms.items()}


def from_vector(vec: Vector, n: int) -> NCPoly:
    return NCPoly({tuple(divmod(x, n) for x in w): c for w, c in vec.items()})


def normal_form(word: Word, rules: MonomialRules) -> NCPoly:
    """Normal form of a single word under the monomial rules (zero or one word)."""
    n = rules.n
    nw = rules.normal([_gi(g, n) for g in word])
    if nw is None:
        return NCPoly()
    return NCPoly.word(tuple(divmod(x, n) for x in nw))


def _heap_key(w: IntWord) -> tuple:
    # min-heap order == descending graded order
    return (-len(w), tuple(-x for x in w))


def _lead(vec: Vector) -> IntWord:
    return max(vec, key=lambda w: (len(w), w))


@dataclass
class Saturation:
    n: int
    degree_bound: int
    rules: MonomialRules
    budget: int = DEFAULT_BUDGET
    pivots: dict[IntWord, Vector] = field(default_factory=dict)
    words: set[IntWord] = field(default_factory=set)
    seeds: int = 0
    skipped: int = 0
    products: int = 0

    @property
    def normal_word_index(self) -> dict[Word, int]:
        """Every normal word seen in the basis, numbered in graded order."""
        ordered = sorted(self.words, key=lambda w: (len(w), w))
        return {tuple(divmod(x, self.n) for x in w): k for k, w in enumerate(ordered)}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Vector) -> Vector:
        """Reduce ``vec`` (modified in place) against the echelon basis.

        The result is a nonzero multiple of the true remainder, so zero-ness
        and the leading word are exact.
        """
        self._reduce(vec)
        return vec

    def _reduce(self, vec: Vector, primitive: bool = True) -> int:
        # fraction-free; without ``primitive`` the result is exactly
        # scale * input minus a combination of pivot rows
        pivots = self.pivots
        scale = 1
        heap = [(_heap_key(w), w) for w in vec if w in pivots]
        heapq.heapify(heap)
        while heap:
            _, w = heapq.heappop(heap)
            b = vec.get(w)
            if not b:
                continue
            row = pivots[w]
            a = row[w]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            if a != 1:
                scale *= a
                for k in vec:
                    vec[k] *= a
            for w2, c2 in row.items():
                v = vec.get(w2, 0) - b * c2
                if v:
                    if w2 not in vec and w2 in pivots:
                        heapq.heappush(heap, (_heap_key(w2), w2))
                    vec[w2] = v
                else:
                    vec.pop(w2, None)
        if vec and primitive:
            g = _content(vec)
            if g != 1:
                for k in vec:
                    vec[k] //= g
        return scale

    def _insert(self, vec: Vector) -> IntWord | None:
        vec = self.reduce(vec)
        if not vec:
            return None
        lead = _lead(vec)
        if vec[lead] < 0:
            vec = {w: -v for w, v in vec.items()}
        self.pivots[lead] = vec
        self.words.update(vec)
        if len(self.words) > self.budget:
            raise BudgetExceeded(f"tracked {len(self.words)} normal words, budget is {self.budget}")
        return lead

    def _multiples(self, vec: Vector) -> Iterable[Vector]:
        rules = self.rules
        letters = [x for x in range(self.n * self.n) if x not in rules.dead]
        for x in letters:
            for side in (0, 1):
                out: Vector = {}
                for w, c in vec.items():
                    nw = rules.normal((x,) + w if side == 0 else w + (x,))
                    if nw is None:
                        continue
                    v = out.get(nw, 0) + c
                    if v:
                        out[nw] = v
                    else:
                        out.pop(nw, None)
                if out:
                    yield out

    def _close(self, seeds: Iterable[Vector]) -> None:
        queue: deque[Vector] = deque(seeds)
        L = self.degree_bound
        while queue:
            lead = self._insert(queue.popleft())
            if lead is None or len(lead) >= L:
                continue
            row = self.pivots[lead]
            for prod in self._multiples(row):
                self.products += 1
                queue.append(prod)

    def add(self, polys: Iterable[NCPoly]) -> None:
        """Enlarge the ideal by further relations and re-close."""
        self._close(self._seed_vectors(polys))

    def _seed_vectors(self, polys: Iterable[NCPoly]) -> list[Vector]:
        seeds = []
        for poly in polys:
            for variant in (poly, poly.reverse()):
                vec = _integral(self.rules.normal_vector(to_vector(variant, self.n)))
                if not vec:
                    continue
                if max(len(w) for w in vec) > self.degree_bound:
                    self.skipped += 1
                    continue
                seeds.append(vec)
        self.seeds += len(seeds)
        return seeds

    def contains(self, poly: NCPoly) -> bool:
        vec = _integral(self.rules.normal_vector(to_vector(poly, self.n)))
        return not self.reduce(vec)

    def basis(self) -> list[NCPoly]:
        return [from_vector(self.pivots[w], self.n) for w in sorted(self.pivots, key=lambda w: (len(w), w))]

    def reduced_basis(self) -> list[NCPoly]:
        """The unique reduced row echelon basis, monic and ordered by leading word."""
        rref: dict[IntWord, Vector] = {}
        saved = self.pivots
        try:
            self.pivots = rref
            for lead in sorted(saved, key=lambda w: (len(w), w)):
                row = dict(saved[lead])
                c = row.pop(lead)
                scale = self._reduce(row, primitive=False)
                row[lead] = c * scale
                g = _content(row)
                rref[lead] = {w: v // g for w, v in row.items()}
        finally:
            self.pivots = saved
        return [from_vector(rref[w], self.n).monic() for w in sorted(rref, key=lambda w: (len(w), w))]

    def to_json(self) -> dict:
        return {"n": self.n, "degree_bound": self.degree_bound, "rank": self.rank,
                "rules": self.rules.to_json(),
                "basis": [p.to_json() for p in self.reduced_basis()]}

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")


def _content(vec: Vector) -> int:
    g = 0
    for v in vec.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


def _integral(vec: dict) -> Vector:
    """Clear denominators: a primitive integer multiple of ``vec``."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    out = {w: int(v * den) for w, v in vec.items()}
    g = _content(out) if out else 1
    return {w: v // g for w, v in out.items()}


def saturate(p: Presentation, degree_bound: int = DEFAULT_DEGREE_BOUND,
             budget: int = DEFAULT_BUDGET) -> Saturation:
    """Close the relations of ``p`` into a truncated ideal of degree at most ``degree_bound``.

    Relations whose normal form is longer than the bound cannot be used and
    are counted in ``skipped``.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    rules, rest = MonomialRules.from_presentation(p)
    sat = Saturation(p.n, degree_bound, rules, budget)
    sat._close(sat._seed_vectors(rest))
    log.info("saturation L=%d: rank %d, %d words, %d seeds, %d products, %d skipped",
             degree_bound, sat.rank, len(sat.words), sat.seeds, sat.products, sat.skipped)
    return sat


def membership(s: Saturation, x: NCPoly) -> Membership:
    if x.degree > s.degree_bound:
        raise DegreeTooHigh(f"degree {x.degree} exceeds the bound {s.degree_bound}")
    return Membership.PROVED if s.contains(x) else Membership.NOT_PROVABLE


@dataclass
class CommutativityResult:
    proved: bool
    inconclusive: list[tuple[Gen, Gen]]

    @property
    def verdict(self) -> str:
        return "proved" if self.proved else "inconclusive"


def prove_commutativity(s: Saturation) -> CommutativityResult:
    n = s.n
    gens = [(i, j) for i in range(n) for j in range(n)]
    bad = []
    for a, b in itertools.combinations(gens, 2):
        x, y = NCPoly.gen(*a), NCPoly.gen(*b)
        if membership(s, x * y - y * x) is not Membership.PROVED:
            bad.append((a, b))
    return CommutativityResult(not bad, bad)


@dataclass
class EntryMap:
    zeros: list[Gen]
    classes: list[list[Gen]]
    ones: list[Gen] = field(default_factory=list)

    def class_of(self, g: Gen) -> list[Gen] | None:
        for c in self.classes:
            if g in c:
                return c
        return None

    def to_json(self) -> dict:
        return {"zeros": [list(g) for g in self.zeros], "ones": [list(g) for g in self.ones],
                "classes": [[list(g) for g in c] for c in self.classes]}


def derived_entry_map(s: Saturation) -> EntryMap:
    """Entries proved zero or one, and the partition of the rest by proved equality."""
    n = s.n
    gens = [(i, j) for i in range(n) for j in range(n)]
    zeros = [g for g in gens if s.contains(NCPoly.gen(*g))]
    alive = [g for g in gens if g not in set(zeros)]
    parent = {g: g for g in alive}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for a, b in itertools.combinations(alive, 2):
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        if s.contains(NCPoly.gen(*a) - NCPoly.gen(*b)):
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[Gen, list[Gen]] = {}
    for g in alive:
        groups.setdefault(find(g), []).append(g)
    classes = sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])
    ones = [g for g in alive if s.contains(NCPoly.gen(*g) - 1)]
    return EntryMap(zeros, classes, ones)


def vanishes_at(s: Saturation, values: Sequence[Sequence[int]]) -> bool:
    """True when every basis element of ``s`` is zero at the commutative point ``values``."""
    n = s.n
    flat = [values[x // n][x % n] for x in range(n * n)]
    for row in s.pivots.values():
        total = 0
        for w, c in row.items():
            prod = c
            for x in w:
                if not flat[x]:
                    prod = 0
                    break
                prod *= flat[x]
            total += prod
        if total != 0:
            return False
    return True
