"""Sparse linear combinations of ordered forests over exact rationals.

A Series carries a truncation degree: trunc=None marks an exact finite
element, trunc=n means coefficients of degree > n have been dropped and
must not be asked for.  Every binary operation takes the min of the
operand truncations, so mixing a truncated operand in can never silently
produce coefficients that were not actually computed.

All arithmetic is over Fraction; floats are rejected to keep identity
checks exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .trees import (
    EMPTY_FOREST,
    Forest,
    Tree,
    forest_sort_key,
    parse_forest,
    render_forest,
)

__all__ = [
    "Series",
    "TruncationError",
    "concat",
    "deshuffle",
    "deshuffle_forest",
    "min_trunc",
    "pairing",
    "shuffle",
    "truncate",
]


class TruncationError(ValueError):
    """A coefficient beyond the truncation degree was requested."""


def min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_forest(f) -> Forest:
    if isinstance(f, Forest):
        return f
    if isinstance(f, Tree):
        return Forest((f,))
    if isinstance(f, str):
        return parse_forest(f)
    raise TypeError(f"cannot interpret {f!r} as a forest")


def _as_coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("coefficients must be exact rationals, not floats")
    return Fraction(c)


class Series:
    """Finite linear combination of ordered forests with Fraction coefficients."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: dict[Forest, Fraction] | None = None, trunc: int | None = None):
        clean: dict[Forest, Fraction] = {}
        if terms:
            for forest, coeff in terms.items():
                c = _as_coeff(coeff)
                if c == 0:
                    continue
                if trunc is not None and forest.degree > trunc:
                    continue
                clean[forest] = c
        self.terms = clean
        self.trunc = trunc

    @classmethod
    def zero(cls, trunc: int | None = None) -> "Series":
        return cls({}, trunc)

    @classmethod
    def unit(cls, trunc: int | None = None) -> "Series":
        """The empty forest with coefficient 1."""
        return cls({EMPTY_FOREST: Fraction(1)}, trunc)

    @classmethod
    def of(cls, forest, coeff=1, trunc: int | None = None) -> "Series":
        """Single-term series; forest may be a Forest, a Tree or a string."""
        return cls({_as_forest(forest): _as_coeff(coeff)}, trunc)

    def coeff(self, forest) -> Fraction:
        """Stored coefficient (0 when absent); no truncation guard."""
        return self.terms.get(_as_forest(forest), Fraction(0))

    def pairing(self, forest) -> Fraction:
        """Coefficient of the given forest; errors beyond the truncation."""
        f = _as_forest(forest)
        if self.trunc is not None and f.degree > self.trunc:
            raise TruncationError(
                f"coefficient of degree {f.degree} is not represented (trunc={self.trunc})"
            )
        return self.terms.get(f, Fraction(0))

    def truncated(self, n: int) -> "Series":
        return Series(self.terms, min_trunc(self.trunc, n))

    def component(self, k: int) -> "Series":
        """The degree-k homogeneous part."""
        return Series({f: c for f, c in self.terms.items() if f.degree == k}, self.trunc)

    def max_degree(self) -> int:
        return max((f.degree for f in self.terms), default=0)

    def support(self) -> list[Forest]:
        return sorted(self.terms, key=forest_sort_key)

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, Fraction(0)) + c
        return Series(out, min_trunc(self.trunc, other.trunc))

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, Fraction(0)) - c
        return Series(out, min_trunc(self.trunc, other.trunc))

    def __neg__(self):
        return Series({f: -c for f, c in self.terms.items()}, self.trunc)

    def __mul__(self, scalar):
        if isinstance(scalar, Series):
            raise TypeError("use concat/shuffle/gl_product for series products")
        c = _as_coeff(scalar)
        return Series({f: v * c for f, v in self.terms.items()}, self.trunc)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / _as_coeff(scalar))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{self.terms[f]}*{render_forest(f)}" for f in self.support())
        suffix = "" if self.trunc is None else f" (trunc {self.trunc})"
        return f"<Series {body}{suffix}>"

    def to_json(self) -> dict:
        """JSON form: terms in canonical forest order, reduced coefficients."""
        return {
            "trunc": self.trunc,
            "terms": [
                {"forest": render_forest(f), "coeff": str(self.terms[f])}
                for f in self.support()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        terms: dict[Forest, Fraction] = {}
        for item in data.get("terms", []):
            f = parse_forest(item["forest"])
            terms[f] = terms.get(f, Fraction(0)) + Fraction(item["coeff"])
        return cls(terms, data.get("trunc"))


def pairing(a: Series, forest) -> Fraction:
    return a.pairing(forest)


def truncate(a: Series, n: int) -> Series:
    return a.truncated(n)


def concat(a: Series, b: Series) -> Series:
    """Bilinear extension of forest juxtaposition."""
    trunc = min_trunc(a.trunc, b.trunc)
    out: dict[Forest, Fraction] = {}
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            if trunc is not None and fa.degree + fb.degree > trunc:
                continue
            f = Forest(fa.trees + fb.trees)
            out[f] = out.get(f, Fraction(0)) + ca * cb
    return Series(out, trunc)


@lru_cache(maxsize=None)
def _shuffle_words(u: tuple[Tree, ...], v: tuple[Tree, ...]) -> tuple[tuple[tuple[Tree, ...], int], ...]:
    # ab sh cd = a(b sh cd) + c(ab sh d), unit the empty word
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[tuple[Tree, ...], int] = {}
    for w, m in _shuffle_words(u[1:], v):
        key = (u[0],) + w
        acc[key] = acc.get(key, 0) + m
    for w, m in _shuffle_words(u, v[1:]):
        key = (v[0],) + w
        acc[key] = acc.get(key, 0) + m
    return tuple(acc.items())


def shuffle(a: Series, b: Series) -> Series:
    """Word shuffle of forests, each tree treated as one letter."""
    trunc = min_trunc(a.trunc, b.trunc)
    out: dict[Forest, Fraction] = {}
    for fa, ca in a.terms.items():
        for fb, cb in b.terms.items():
            if trunc is not None and fa.degree + fb.degree > trunc:
                continue
            scale = ca * cb
            for word, m in _shuffle_words(fa.trees, fb.trees):
                f = Forest(word)
                out[f] = out.get(f, Fraction(0)) + m * scale
    return Series(out, trunc)


@lru_cache(maxsize=None)
def deshuffle_forest(f: Forest) -> tuple[tuple[tuple[Forest, Forest], int], ...]:
    """All order-preserving two-block splits of the letters of f, with multiplicity.

    This is the coproduct dual to the shuffle product.
    """
    k = len(f.trees)
    acc: dict[tuple[Forest, Forest], int] = {}
    for r in range(k + 1):
        for idx in itertools.combinations(range(k), r):
            chosen = set(idx)
            left = Forest(tuple(f.trees[i] for i in idx))
            right = Forest(tuple(f.trees[i] for i in range(k) if i not in chosen))
            key = (left, right)
            acc[key] = acc.get(key, 0) + 1
    return tuple(acc.items())


def deshuffle(a: Series) -> dict[tuple[Forest, Forest], Fraction]:
    """Linear extension of deshuffle_forest; weights collected per split pair."""
    out: dict[tuple[Forest, Forest], Fraction] = {}
    for f, c in a.terms.items():
        for pair, m in deshuffle_forest(f):
            out[pair] = out.get(pair, Fraction(0)) + m * c
    return {pair: w for pair, w in out.items() if w != 0}
