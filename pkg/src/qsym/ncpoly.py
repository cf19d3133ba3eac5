"""Exact-rational polynomials in the noncommuting generators ``q_ij``.

A word is a tuple of ``(row, col)`` generator pairs; the empty word is the
unit.  Words are ordered by degree first, then lexicographically, and the
leading term of a polynomial is its largest word.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Gen = tuple[int, int]
Word = tuple[Gen, ...]


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def _coerce(c) -> Fraction | int:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else c
    if isinstance(c, (Rational, str)):
        c = Fraction(c)
        return int(c) if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class NCPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction | int] = {}
        for w, c in items:
            w = tuple((int(a), int(b)) for a, b in w)
            c = _coerce(c)
            acc[w] = acc.get(w, 0) + c
        self.terms = {w: _coerce(c) for w, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def gen(cls, i: int, j: int) -> "NCPoly":
        return cls({((i, j),): 1})

    @classmethod
    def const(cls, c=1) -> "NCPoly":
        return cls({(): c})

    @classmethod
    def word(cls, w: Sequence[Gen], c=1) -> "NCPoly":
        return cls({tuple(w): c})

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    # arithmetic
    def __add__(self, other):
        other = _as_poly(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            v = acc.get(w, 0) + c
            if v:
                acc[w] = _coerce(v)
            else:
                acc.pop(w, None)
        return NCPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return NCPoly()
            return NCPoly._raw({w: _coerce(c * other) for w, c in self.terms.items()})
        other = _as_poly(other)
        acc: dict[Word, Fraction | int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return NCPoly(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return _as_poly(other) * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.const(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure
    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Word, Fraction | int]]:
        """Terms from the leading (largest) word down."""
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def leading(self) -> tuple[Word, Fraction | int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def monic(self) -> "NCPoly":
        """Scale so the leading coefficient is +1 (zero stays zero)."""
        if not self.terms:
            return self
        _, c = self.leading()
        return self if c == 1 else self / c

    def __truediv__(self, c):
        c = Fraction(c)
        return NCPoly._raw({w: _coerce(v / c) for w, v in self.terms.items()})

    def sort_key(self) -> tuple:
        return tuple((word_key(w), Fraction(c)) for w, c in self.sorted_terms())

    def reverse(self) -> "NCPoly":
        """The involution: generators are self-adjoint, so words are reversed."""
        return NCPoly._raw({w[::-1]: c for w, c in self.terms.items()})

    def relabel(self, perm: Sequence[int]) -> "NCPoly":
        """Substitute ``q_ij -> q_{perm[i], perm[j]}``."""
        return NCPoly(((tuple((perm[a], perm[b]) for a, b in w), c) for w, c in self.terms.items()))

    def generators(self) -> set[Gen]:
        return {g for w in self.terms for g in w}

    def evaluate(self, values: Sequence[Sequence[object]]):
        """Evaluate with ``q_ij -> values[i][j]`` in a commutative ring."""
        total = 0
        for w, c in self.terms.items():
            prod = c
            for a, b in w:
                prod = prod * values[a][b]
                if not prod:
                    break
            total += prod
        return total

    # text and json
    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.sorted_terms()):
            mono = "*".join(f"q{a}_{b}" for a, b in w)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(("-" if sign == "-" else "") + body if k == 0 else f" {sign} {body}")
        return "".join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "word": [list(g) for g in w]} for w, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list[dict]) -> "NCPoly":
        return cls((tuple(tuple(g) for g in t["word"]), Fraction(t["coeff"])) for t in data)


def _as_poly(x) -> NCPoly:
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return NCPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial")


def q(i: int, j: int) -> NCPoly:
    return NCPoly.gen(i, j)
