"""Finite formal linear combinations with exact coefficients.

Coefficients are Python ints or ``fractions.Fraction``; zero terms are never
stored.  :class:`WordPoly` is the free associative algebra on positive integer
letters, :class:`ForestSum` a combination of forests.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from .forest import format_forest


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def format_coeff(c) -> str:
    c = _norm(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class LinComb:
    """Sparse dict from hashable keys to nonzero exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                self.add_term(k, c)

    @classmethod
    def single(cls, key, coeff=1):
        return cls({key: coeff})

    def add_term(self, key, coeff) -> None:
        if not coeff:
            return
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = _norm(c)
        else:
            self.terms.pop(key, None)

    def copy(self):
        out = type(self)()
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        out = self.copy()
        for k, c in other.terms.items():
            out.add_term(k, c)
        return out

    def __sub__(self, other):
        out = self.copy()
        for k, c in other.terms.items():
            out.add_term(k, -c)
        return out

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        out = type(self)()
        if c:
            out.terms = {k: _norm(v * c) for k, v in self.terms.items()}
        return out

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return type(self) is type(other) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def map_keys(self, fn: Callable, cls=None):
        out = (cls or type(self))()
        for k, c in self.terms.items():
            out.add_term(fn(k), c)
        return out

    def sort_key(self, key):
        return key

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def format_key(self, key) -> str:
        return str(key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.sorted_items()):
            c = _norm(c)
            sign = "-" if c < 0 else "+"
            body = f"{format_coeff(abs(c))}*{self.format_key(k)}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    __hash__ = None


class WordPoly(LinComb):
    """Combination of words (tuples of positive ints), printed ``c*[a,b]``."""

    __slots__ = ()

    @classmethod
    def word(cls, *letters):
        return cls({tuple(letters): 1})

    def sort_key(self, key):
        return (len(key), key)

    def format_key(self, key):
        return "[" + ",".join(map(str, key)) + "]"

    def __mul__(self, other):
        if not isinstance(other, WordPoly):
            return self.scale(other)
        return wp_mul(self, other)


def wp_add(a: WordPoly, b: WordPoly) -> WordPoly:
    return a + b


def wp_scale(a: WordPoly, c) -> WordPoly:
    return a.scale(c)


def wp_mul(a: WordPoly, b: WordPoly) -> WordPoly:
    out: dict = {}
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            w = u + v
            c = out.get(w, 0) + x * y
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    res = WordPoly()
    res.terms = {k: _norm(c) for k, c in out.items()}
    return res


def wp_sum(polys: Iterable[WordPoly]) -> WordPoly:
    out = WordPoly()
    for p in polys:
        for k, c in p.terms.items():
            out.add_term(k, c)
    return out


def forest_sort_key(f) -> tuple:
    from .orbits import encode_forest
    return encode_forest(f)


class ForestSum(LinComb):
    """Combination of forests (tuples of trees)."""

    __slots__ = ()

    def sort_key(self, key):
        return forest_sort_key(key)

    def format_key(self, key):
        return format_forest(key)
