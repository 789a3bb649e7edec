"""Exhaustive and seeded random generators for trees and forests."""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Iterator

from .alignment import AlignmentClass, F, classify
from .forest import Forest, Node, Tree, length


@lru_cache(maxsize=None)
def trees_of_value(v: int) -> tuple:
    """Every unlabeled tree whose leaves sum to ``v``."""
    out: list = [v]
    for a in range(1, v):
        for l, r in product(trees_of_value(a), trees_of_value(v - a)):
            out.append(Node(l, r))
    return tuple(out)


def trees_up_to(v: int) -> Iterator[Tree]:
    for k in range(1, v + 1):
        yield from trees_of_value(k)


def _compositions(v: int) -> Iterator[tuple]:
    if v == 0:
        yield ()
        return
    for a in range(1, v + 1):
        for rest in _compositions(v - a):
            yield (a,) + rest


def forests_of_value(v: int) -> Iterator[Forest]:
    for comp in _compositions(v):
        yield from product(*(trees_of_value(a) for a in comp))


# ---------------------------------------------------------------- labelings

def random_labeling(f: Forest, rng: random.Random) -> Forest:
    """Labels ``1..length`` along a random linear extension of the parent order."""
    ready: list = []  # (tree index, position word)

    def node_at(i: int, w: str):
        t = f[i]
        for ch in w:
            t = t.left if ch == "1" else t.right
        return t

    for i, t in enumerate(f):
        if not isinstance(t, int):
            ready.append((i, ""))
    assign: dict = {}
    while ready:
        i, w = ready.pop(rng.randrange(len(ready)))
        assign[(i, w)] = len(assign) + 1
        t = node_at(i, w)
        for ch, child in (("1", t.left), ("2", t.right)):
            if not isinstance(child, int):
                ready.append((i, w + ch))

    def build(i: int, t: Tree, w: str) -> Tree:
        if isinstance(t, int):
            return t
        return Node(build(i, t.left, w + "1"), build(i, t.right, w + "2"), assign[(i, w)])

    return tuple(build(i, t, "") for i, t in enumerate(f))


# ---------------------------------------------------------------- random shapes

def random_tree(v: int, rng: random.Random, leaf_bias: float = 0.3) -> Tree:
    """Random tree of value ``v``; splits at a uniform point below the root."""
    if v == 1 or rng.random() < leaf_bias:
        return v
    a = rng.randint(1, v - 1)
    return Node(random_tree(a, rng, leaf_bias), random_tree(v - a, rng, leaf_bias))


def random_forest(max_value: int, rng: random.Random, min_value: int = 1,
                  leaf_bias: float = 0.3) -> Forest:
    v = rng.randint(min_value, max_value)
    parts = []
    while v:
        a = rng.randint(1, v) if rng.random() < 0.5 else v
        parts.append(a)
        v -= a
    return tuple(random_tree(a, rng, leaf_bias) for a in parts)


def random_labeled_forest(max_value: int, rng: random.Random, min_length: int = 1) -> Forest:
    while True:
        f = random_forest(max_value, rng, min_value=min_length + 1, leaf_bias=0.2)
        if length(f) >= min_length:
            return random_labeling(f, rng)


@lru_cache(maxsize=None)
def strongly_aligned_shapes(max_value: int, min_length: int = 2) -> tuple:
    """Unlabeled strongly right aligned forests of value at most ``max_value``."""
    return tuple(
        f for v in range(1, max_value + 1) for f in forests_of_value(v)
        if length(f) >= min_length and classify(f) == AlignmentClass.StronglyRightAligned
    )


def random_strongly_aligned(max_value: int, rng: random.Random, min_length: int = 2,
                            tries: int = 20) -> Forest:
    """Random strongly right aligned labeled forest.

    The shape is drawn uniformly from :func:`strongly_aligned_shapes`; random
    labelings are tried and ``F`` of the shape is the fallback when none
    satisfies the label condition.
    """
    pool = strongly_aligned_shapes(max_value, min_length)
    if not pool:
        raise ValueError("no strongly right aligned forest in range")
    f = rng.choice(pool)
    for _ in range(tries):
        g = random_labeling(f, rng)
        if classify(g) == AlignmentClass.StronglyRightAligned:
            return g
    return F(f)
