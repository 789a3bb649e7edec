"""Orbits of forests, the delta step and the map Delta.

The group acting on a forest ``U V1 ... Vj`` mirrors and permutes the trees
``V1 ... Vj`` while the first tree ``U`` stays put.  Orbits are stored through a
canonical representative and expanded as sums of their distinct members.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .forest import (
    Forest, ForestError, Node, Tree, check_forest, erase_tree, labeling, length,
    mirror, replace_at, tree_length, tree_value,
)
from .linear import ForestSum, WordPoly, wp_mul
from .words import _pi_tree


class LengthZero(ForestError):
    pass


class NotAdmissible(ForestError):
    pass


# ---------------------------------------------------------------- encodings

@lru_cache(maxsize=None)
def encode_tree(t: Tree) -> tuple:
    """Preorder tag/value serialization; a total, prefix-free encoding."""
    if isinstance(t, int):
        return (0, t)
    return (1, t.label or 0) + encode_tree(t.left) + encode_tree(t.right)


def encode_forest(f: Forest) -> tuple:
    return tuple(encode_tree(t) for t in f)


@lru_cache(maxsize=None)
def canonical_tree(t: Tree) -> Tree:
    m = mirror(t)
    return m if encode_tree(m) < encode_tree(t) else t


def borbit_canonical(f: Forest) -> Forest:
    rest = sorted((canonical_tree(t) for t in f[1:]), key=encode_tree)
    return (f[0],) + tuple(rest)


class BOrbit:
    """An orbit stored by its canonical representative."""

    __slots__ = ("rep",)

    def __init__(self, f: Forest):
        self.rep = borbit_canonical(check_forest(f))

    def __eq__(self, other):
        return isinstance(other, BOrbit) and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        from .forest import format_forest
        return f"[ {format_forest(self.rep)} ]B"


# ---------------------------------------------------------------- expansions

def distinct_permutations(items: list, key=None) -> list:
    """All distinct orderings of a multiset."""
    key = key or (lambda x: x)
    groups: dict = {}
    for it in items:
        groups.setdefault(key(it), []).append(it)
    keys = list(groups)
    counts = [len(groups[k]) for k in keys]
    reps = [groups[k][0] for k in keys]
    out: list = []
    cur: list = []

    def rec(left: int) -> None:
        if not left:
            out.append(tuple(cur))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                cur.append(reps[i])
                rec(left - 1)
                cur.pop()
                counts[i] += 1

    rec(len(items))
    return out


def aorbit_expand(trees) -> list:
    """Distinct rearrangements of a sequence of trees."""
    return distinct_permutations(list(trees), key=encode_tree)


def _variants(t: Tree) -> tuple:
    m = mirror(t)
    return (t,) if m == t else (t, m)


def borbit_members(f: Forest) -> list:
    """Distinct forests in the orbit of ``f``."""
    out = []
    for arr in aorbit_expand([canonical_tree(t) for t in f[1:]]):
        for choice in product(*(_variants(t) for t in arr)):
            out.append((f[0],) + choice)
    return out


def borbit_expand(o) -> ForestSum:
    rep = o.rep if isinstance(o, BOrbit) else o
    return ForestSum({g: 1 for g in borbit_members(rep)})


def matching_members(f: Forest, target: tuple) -> list:
    """Members of the orbit of ``f`` whose squash equals ``target``."""
    if tree_value(f[0]) != target[0] or len(f) != len(target):
        return []
    pool: dict = {}
    for t in f[1:]:
        c = canonical_tree(t)
        pool.setdefault(encode_tree(c), [c, 0])[1] += 1
    keys = list(pool)
    out: list = []
    cur: list = [f[0]]

    def rec(i: int) -> None:
        if i == len(target):
            out.append(tuple(cur))
            return
        for k in keys:
            entry = pool[k]
            if entry[1] and tree_value(entry[0]) == target[i]:
                entry[1] -= 1
                for v in _variants(entry[0]):
                    cur.append(v)
                    rec(i + 1)
                    cur.pop()
                entry[1] += 1

    rec(1)
    return out


# ---------------------------------------------------------------- delta

def _decrement(t: Tree) -> Tree:
    if isinstance(t, int):
        return t
    return Node(_decrement(t.left), _decrement(t.right), t.label - 1)


def delta_step(f: Forest) -> ForestSum:
    """One step of the iterated Delta on a labeled forest."""
    if length(f) == 0:
        raise LengthZero("delta_step needs a forest of positive length")
    if labeling(f) != "labeled":
        raise ForestError("delta_step expects a labeled forest")
    i = next(k for k, t in enumerate(f) if not isinstance(t, int) and t.label == 1)
    t = f[i]
    out = ForestSum()
    if i == 0:
        rest = f[1:]
        out.add_term((t.left, t.right) + rest, 1)
        out.add_term((t.left, mirror(t.right)) + rest, -1)
    else:
        out.add_term(f[:i] + (t.left, t.right) + f[i + 1:], 1)
        out.add_term(f[:i] + (t.right, t.left) + f[i + 1:], -1)
    res = ForestSum()
    for g, c in out.terms.items():
        res.add_term(tuple(_decrement(x) for x in g), c)
    return res


def delta_iterated(f: Forest) -> WordPoly:
    """Delta by repeating the delta step; the brute-force reference."""
    cur = ForestSum({tuple(f): 1})
    for _ in range(length(f)):
        nxt = ForestSum()
        for g, c in cur.terms.items():
            for h, d in delta_step(g).terms.items():
                nxt.add_term(h, c * d)
        cur = nxt
    out = WordPoly()
    for g, c in cur.terms.items():
        out.add_term(tuple(g), c)
    return out


def spine(f: Forest) -> tuple[Tree, list]:
    """(U_{1^m}, [U_{1^{m-1}2}, ..., U_2]) for the first tree U."""
    right = []
    t = f[0]
    while not isinstance(t, int):
        right.append(t.right)
        t = t.left
    right.reverse()
    return t, right


@lru_cache(maxsize=None)
def _delta_shape(f: Forest) -> WordPoly:
    bottom, rights = spine(f)
    if any(tree_length(r) % 2 == 0 for r in rights):
        return WordPoly()
    out = _pi_tree(bottom)
    for r in rights:
        out = wp_mul(out, _pi_tree(r))
    for v in f[1:]:
        out = wp_mul(out, _pi_tree(v))
        if not out:
            return out
    return out.scale(2 ** len(rights))


def delta_forest(f: Forest) -> WordPoly:
    """Closed form of Delta; depends only on the unlabeled shape."""
    return _delta_shape(tuple(erase_tree(t) for t in f))


def delta_sum(s: ForestSum) -> WordPoly:
    out = WordPoly()
    for f, c in s.terms.items():
        for w, d in delta_forest(f).terms.items():
            out.add_term(w, c * d)
    return out


@lru_cache(maxsize=None)
def _arrangement_sum(items: tuple, distinct_nodes: bool) -> WordPoly:
    """Sum over distinct arrangements of ``items`` of the product of pi.

    ``items`` is a sorted tuple of unlabeled trees.  Equal leaves are never
    told apart; equal internal nodes are when they came from labeled trees.
    """
    if not items:
        return WordPoly.word()
    out = WordPoly()
    done = set()
    for i, v in enumerate(items):
        if v in done:
            continue
        done.add(v)
        k = items.count(v) if distinct_nodes and not isinstance(v, int) else 1
        rest = items[:i] + items[i + 1:]
        out = out + wp_mul(_pi_tree(v), _arrangement_sum(rest, distinct_nodes)).scale(k)
    return out


def delta_borbit(o) -> WordPoly:
    """Delta of an orbit sum through its closed form."""
    rep = o.rep if isinstance(o, BOrbit) else borbit_canonical(o)
    labeled = labeling(rep) == "labeled"
    shape = tuple(erase_tree(t) for t in rep)
    return _delta_borbit_shape(shape, labeled)


@lru_cache(maxsize=None)
def _delta_borbit_shape(f: Forest, labeled: bool) -> WordPoly:
    bottom, rights = spine(f)
    vs = f[1:]
    if any(tree_length(r) % 2 == 0 for r in rights):
        return WordPoly()
    if any(tree_length(v) % 2 for v in vs):
        return WordPoly()
    head = _pi_tree(bottom)
    for r in rights:
        head = wp_mul(head, _pi_tree(r))
    if not head:
        return head
    r = sum(1 for v in vs if not isinstance(v, int))
    tail = _arrangement_sum(tuple(sorted(vs, key=encode_tree)), labeled)
    return wp_mul(head, tail).scale(2 ** (r + len(rights)))


# ---------------------------------------------------------------- the ~ relation

def leftmost_positions(f: Forest) -> set:
    """Positions ``1^i`` (i >= 0) of the first tree, as (tree index, word)."""
    out, t, w = set(), f[0], ""
    while True:
        out.add((0, w))
        if isinstance(t, int):
            return out
        t, w = t.left, w + "1"


def _all_nodes(f: Forest):
    """(tree index, position, subtree, parent label or None) for every node and leaf."""
    def walk(i, t, w, parent):
        yield i, w, t, parent
        if not isinstance(t, int):
            yield from walk(i, t.left, w + "1", t.label)
            yield from walk(i, t.right, w + "2", t.label)

    for i, t in enumerate(f):
        yield from walk(i, t, "", None)


def movable_nodes(f: Forest) -> list:
    """Non-leftmost nodes of even length (leaves included)."""
    left = leftmost_positions(f)
    return [n for n in _all_nodes(f) if (n[0], n[1]) not in left and tree_length(n[2]) % 2 == 0]


def _replace(f: Forest, i: int, w: str, new: Tree) -> Forest:
    return f[:i] + (replace_at(f[i], w, new),) + f[i + 1:]


def _moves(f: Forest):
    nodes = movable_nodes(f)
    for i, w, t, _ in nodes:
        if not isinstance(t, int):
            yield _replace(f, i, w, mirror(t))
    for a in range(len(nodes)):
        ia, wa, ta, pa = nodes[a]
        for b in range(a + 1, len(nodes)):
            ib, wb, tb, pb = nodes[b]
            if tree_value(ta) != tree_value(tb) or ta == tb:
                continue
            if ia == ib and (wa.startswith(wb) or wb.startswith(wa)):
                continue
            own = [x.label for x in (ta, tb) if not isinstance(x, int)]
            parents = [p for p in (pa, pb) if p is not None]
            if any(p >= x for p in parents for x in own):
                continue
            g = _replace(f, ia, wa, tb)
            g = _replace(g, ib, wb, ta)
            yield g
    for a in range(1, len(f)):
        for b in range(a + 1, len(f)):
            g = list(f)
            g[a], g[b] = g[b], g[a]
            yield tuple(g)


def sim_closure(f: Forest) -> set:
    """Canonical representatives of all orbits related to ``f`` by the moves."""
    from .alignment import is_admissible
    f = check_forest(f)
    if not is_admissible(f):
        raise NotAdmissible("sim_closure needs an admissible forest")
    start = borbit_canonical(f)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for h in _moves(g):
                if not is_admissible(h):
                    continue
                c = borbit_canonical(h)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen
