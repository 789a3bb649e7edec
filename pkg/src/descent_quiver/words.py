"""Bracket expansion of trees into the free associative algebra."""
from __future__ import annotations

from functools import lru_cache

from .forest import Node, Tree, erase, erase_tree, labeling
from .linear import ForestSum, WordPoly, wp_mul


@lru_cache(maxsize=None)
def _pi_tree(t: Tree) -> WordPoly:
    # t is unlabeled; the cache is shared across calls, so never mutate results
    if isinstance(t, int):
        return WordPoly.word(t)
    a, b = _pi_tree(t.left), _pi_tree(t.right)
    return wp_mul(a, b) - wp_mul(b, a)


def pi_tree(t: Tree) -> WordPoly:
    return _pi_tree(erase_tree(t))


def pi(f) -> WordPoly:
    """Product over the trees of ``f`` of their commutator expansions."""
    if isinstance(f, (int, Node)):
        return pi_tree(f)
    if labeling(f) == "labeled":
        raise ValueError("pi expects an unlabeled forest; use pi_labeled")
    out = WordPoly.word()
    for t in f:
        out = wp_mul(out, _pi_tree(t))
        if not out:
            break
    return out


def pi_labeled(f) -> WordPoly:
    return pi(erase(f)) if labeling(f) == "labeled" else pi(f)


def pi_sum(s: ForestSum) -> WordPoly:
    out = WordPoly()
    for f, c in s.terms.items():
        for w, d in pi_labeled(f).terms.items():
            out.add_term(w, c * d)
    return out


def jacobi(x: Tree, y: Tree, z: Tree) -> ForestSum:
    """((x y) z) + ((z x) y) + ((y z) x) as a sum of single-tree forests."""
    out = ForestSum()
    for a, b, c in ((x, y, z), (z, x, y), (y, z, x)):
        out.add_term((Node(Node(a, b), c),), 1)
    return out
