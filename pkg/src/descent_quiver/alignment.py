"""Alignment classes, rewriting into right aligned renderings, and tree orders.

The rewrites work on unlabeled trees modulo the kernel of ``pi``.  Results are
tuples of ``(tree, coefficient)`` pairs internally and :class:`ForestSum` at
the public boundary.
"""
from __future__ import annotations

import enum
from functools import cmp_to_key, lru_cache
from itertools import product

from .forest import (
    Forest, ForestError, Node, Tree, erase, erase_tree, graft_unchecked, labeling,
    length, tree_length, tree_value,
)
from .linear import ForestSum
from .orbits import leftmost_positions


class NotOddLength(ForestError):
    pass


class NotEvenLength(ForestError):
    pass


class NotComparable(ForestError):
    pass


class NotRightAligned(ForestError):
    pass


class ShapeMismatch(ForestError):
    pass


class UncoveredCase(ForestError):
    pass


class AlignmentClass(enum.IntEnum):
    NotEven = 0
    Even = 1
    Admissible = 2
    RightAligned = 3
    StronglyRightAligned = 4


# ---------------------------------------------------------------- predicates

def _par(t: Node) -> tuple[int, int]:
    return tree_length(t.left) % 2, tree_length(t.right) % 2


def _nodes(f: Forest):
    """(tree index, position word, node, parent node or None) for internal nodes."""
    def walk(i, t, w, parent):
        if isinstance(t, int):
            return
        yield i, w, t, parent
        yield from walk(i, t.left, w + "1", t)
        yield from walk(i, t.right, w + "2", t)

    for i, t in enumerate(f):
        yield from walk(i, t, "", None)


def is_even(f: Forest) -> bool:
    if any(tree_length(v) % 2 for v in f[1:]):
        return False
    t = f[0]
    while True:
        if tree_length(t) % 2:
            return False
        if isinstance(t, int):
            return True
        t = t.left


def is_admissible(f: Forest) -> bool:
    if not is_even(f):
        return False
    return all(_par(z) != (1, 1) for _, _, z, _ in _nodes(f))


def _strong_ok(z: Node) -> bool:
    z1, z21, z22 = z.left, z.right.left, z.right.right
    v1 = tree_value(z1)
    if v1 == tree_value(z21) and not (isinstance(z1, int) and isinstance(z21, int)):
        return False
    if v1 == tree_value(z22) and not (isinstance(z1, int) and isinstance(z22, int)):
        return False
    return True


def _aligned_flags(f: Forest, left: set) -> tuple[bool, bool]:
    """(right aligned, strongly right aligned) ignoring evenness."""
    ra = strong = True
    for i, w, z, _ in _nodes(f):
        p = _par(z)
        if p in ((1, 1), (1, 0)):
            return False, False
        if p == (0, 0):
            if not tree_value(z.left) < tree_value(z.right):
                return False, False
        elif (i, w) not in left:
            if not tree_value(z.left) <= tree_value(z.right.right):
                return False, False
            if strong and not _strong_ok(z):
                strong = False
    return ra, strong


def _label_condition(f: Forest) -> bool:
    for _, _, z, parent in _nodes(f):
        if _par(z) == (0, 0):
            if parent is None or z.label != parent.label + 1:
                return False
    return True


def classify(f: Forest) -> AlignmentClass:
    if isinstance(f, (int, Node)):
        f = (f,)
    if not is_even(f):
        return AlignmentClass.NotEven
    if not is_admissible(f):
        return AlignmentClass.Even
    ra, strong = _aligned_flags(f, leftmost_positions(f))
    if ra and labeling(f) == "labeled" and not _label_condition(f):
        return AlignmentClass.Admissible
    if strong:
        return AlignmentClass.StronglyRightAligned
    if ra:
        return AlignmentClass.RightAligned
    return AlignmentClass.Admissible


def tree_class(t: Tree) -> AlignmentClass:
    """Class of a single tree with every node treated as non-leftmost."""
    if tree_length(t) % 2:
        return AlignmentClass.NotEven
    f = (t,)
    if not all(_par(z) != (1, 1) for _, _, z, _ in _nodes(f)):
        return AlignmentClass.Even
    ra, strong = _aligned_flags(f, set())
    if strong:
        return AlignmentClass.StronglyRightAligned
    if ra:
        return AlignmentClass.RightAligned
    return AlignmentClass.Admissible


# ---------------------------------------------------------------- helpers

def _acc(out: dict, t: Tree, c) -> None:
    c = out.get(t, 0) + c
    if c:
        out[t] = c
    else:
        out.pop(t, None)


def _items(d: dict) -> tuple:
    return tuple(d.items())


def _has_equal_leaf_pair(t: Tree) -> bool:
    if isinstance(t, int):
        return False
    if isinstance(t.left, int) and t.left == t.right:
        return True
    return _has_equal_leaf_pair(t.left) or _has_equal_leaf_pair(t.right)


def _to_sum(items) -> ForestSum:
    out = ForestSum()
    for t, c in items:
        out.add_term((t,), c)
    return out


def _N(a: Tree, b: Tree) -> Node:
    return Node(a, b)


# ---------------------------------------------------------------- odd trees

@lru_cache(maxsize=None)
def _odd(v: Tree) -> tuple:
    if _has_equal_leaf_pair(v):
        return ()
    sign = 1
    if tree_value(v.left) > tree_value(v.right):
        v, sign = _N(v.right, v.left), -1
    if tree_length(v) == 1:
        return ((v, sign),)
    v1, v2 = v.left, v.right
    out: dict = {}
    if tree_length(v1) % 2:
        for xy, a in _odd(v1):
            x, y = xy.left, xy.right
            _acc(out, _N(y, _N(x, v2)), -a * sign)
            _acc(out, _N(x, _N(y, v2)), a * sign)
        return _items(out)
    if tree_value(v1) < tree_value(v2):
        return ((v, sign),)
    # equal squash, both children even
    if tree_length(v2) == 0:
        v1, v2, sign = v2, v1, -sign
    if tree_length(v2.right) % 2 == 0:
        v2, sign = _N(v2.right, v2.left), -sign
    a_, b_ = v1, v2.left
    for cd, beta in _odd(v2.right):
        c_, d_ = cd.left, cd.right
        k = beta * sign
        _acc(out, _N(d_, _N(c_, _N(b_, a_))), -k)
        _acc(out, _N(c_, _N(d_, _N(b_, a_))), k)
        _acc(out, _N(b_, _N(_N(c_, d_), a_)), -k)
    return _items(out)


def odd_align(t: Tree) -> ForestSum:
    """Rewrite an odd tree as trees with even children of increasing squash."""
    t = erase_tree(t)
    if tree_length(t) % 2 == 0:
        raise NotOddLength("odd_align expects a tree of odd length")
    return _to_sum(_odd(t))


# ---------------------------------------------------------------- even trees

def _expand3(p: Tree, q: Tree, r: Tree, coef, fn, out: dict) -> None:
    for (x, a), (y, b), (z, c) in product(fn(p), fn(q), fn(r)):
        _acc(out, _N(x, _N(y, z)), coef * a * b * c)


@lru_cache(maxsize=None)
def _even(v: Tree) -> tuple:
    if isinstance(v, int):
        return ((v, 1),)
    sign = 1
    if tree_length(v.left) % 2:
        v, sign = _N(v.right, v.left), -1
    v1 = v.left
    out: dict = {}
    for ab, alpha in _odd(v.right):
        a_, b_ = ab.left, ab.right
        k = alpha * sign
        if tree_value(v1) > tree_value(b_):
            _expand3(b_, a_, v1, k, _even, out)
            _expand3(a_, b_, v1, -k, _even, out)
        else:
            _expand3(v1, a_, b_, k, _even, out)
    return _items(out)


def even_align(t: Tree) -> ForestSum:
    """Rewrite an even tree as a combination of right aligned trees."""
    t = erase_tree(t)
    if tree_length(t) % 2:
        raise NotEvenLength("even_align expects a tree of even length")
    return _to_sum(_even(t))


# ---------------------------------------------------------------- strong alignment

# ad of (A (B C)) expands to these ordered triples with signs
_AD = (((0, 1, 2), 1), ((0, 2, 1), -1), ((1, 2, 0), -1), ((2, 1, 0), 1))


def _chain(xs, tail: Tree) -> Tree:
    for x in reversed(xs):
        tail = _N(x, tail)
    return tail


def _tie(a: Tree, b: Tree) -> bool:
    return tree_value(a) == tree_value(b) and not (isinstance(a, int) and isinstance(b, int))


def _strong_node(r: Tree, s: Tree, t: Tree, out: dict, coef, budget: int) -> None:
    """Add coef * (r (s t)) rewritten strongly right aligned; r, s, t already are."""
    if budget <= 0:
        raise UncoveredCase("strong alignment did not settle")
    tie_rs, tie_rt = _tie(r, s), _tie(r, t)
    if not tie_rs and not tie_rt:
        _acc(out, _N(r, _N(s, t)), coef)
        return
    if not isinstance(r, int):
        parts = (r.left, r.right.left, r.right.right)
        q = _N(s, t)
        for (i, j, k), sg in _AD:
            for w, c in _strong(_N(parts[k], q)):
                _acc(out, _N(parts[i], _N(parts[j], w)), coef * sg * c)
        return
    if tie_rs:
        parts = (s.left, s.right.left, s.right.right)
        for (i, j, k), sg in _AD:
            for w, c in _strong(_N(parts[j], _N(parts[k], t))):
                _acc(out, _N(r, _N(parts[i], w)), coef * sg * c)
        return
    # r is a leaf with the same squash as t: Jacobi at the root
    for w, c in _strong_full(_N(s, _N(r, t)), budget - 1):
        _acc(out, w, coef * c)
    _strong_node(t, s, r, out, coef, budget - 1)


def _strong_full(v: Tree, budget: int) -> tuple:
    if isinstance(v, int):
        return ((v, 1),)
    out: dict = {}
    for w, a in _even(v):
        p, q, r = w.left, w.right.left, w.right.right
        for (x, b), (y, c), (z, d) in product(_strong(p), _strong(q), _strong(r)):
            _strong_node(x, y, z, out, a * b * c * d, budget)
    return _items(out)


@lru_cache(maxsize=None)
def _strong(v: Tree) -> tuple:
    return _strong_full(v, 8)


def strong_align(t: Tree) -> ForestSum:
    """Rewrite an even tree as a combination of strongly right aligned trees."""
    t = erase_tree(t)
    if tree_length(t) % 2:
        raise NotEvenLength("strong_align expects a tree of even length")
    return _to_sum(_strong(t))


# ---------------------------------------------------------------- forests

def _first_tree(bottom: Tree, rights: list) -> Tree:
    t = bottom
    for r in rights:
        t = _N(t, r)
    return t


def render_unlabeled(f: Forest) -> ForestSum:
    """Strongly right aligned rendering of an unlabeled forest modulo ker pi."""
    f = tuple(erase_tree(t) for t in f)
    out = ForestSum()
    if not is_even(f):
        return out
    rights = []
    t = f[0]
    while not isinstance(t, int):
        rights.append(t.right)
        t = t.left
    bottom = t
    rights.reverse()
    if any(tree_length(r) % 2 == 0 for r in rights):
        return out
    right_opts = []
    for r in rights:
        opts: dict = {}
        for pq, a in _odd(r):
            for (x, b), (y, c) in product(_strong(pq.left), _strong(pq.right)):
                _acc(opts, _N(x, y), a * b * c)
        right_opts.append(tuple(opts.items()))
    v_opts = [_strong(v) for v in f[1:]]
    for combo in product(*right_opts, *v_opts):
        coef = 1
        for _, c in combo:
            coef *= c
        rs = [x for x, _ in combo[: len(rights)]]
        vs = tuple(x for x, _ in combo[len(rights):])
        out.add_term((_first_tree(bottom, rs),) + vs, coef)
    return out


def render_forest(f: Forest) -> ForestSum:
    """Labeled strongly right aligned forests congruent to ``f`` modulo ker Delta."""
    src = erase(f) if labeling(f) == "labeled" else f
    out = ForestSum()
    for g, c in render_unlabeled(src).terms.items():
        out.add_term(F(g), c)
    return out


# ---------------------------------------------------------------- the order on trees

def _split(u: Node) -> tuple:
    """(U_E, U_O) for a tree of positive even length."""
    return (u.left, u.right) if tree_length(u.left) % 2 == 0 else (u.right, u.left)


@lru_cache(maxsize=None)
def tree_cmp(u: Tree, v: Tree) -> int:
    if u == v:
        return 0
    su, sv = tree_value(u), tree_value(v)
    if su != sv:
        return -1 if su < sv else 1
    lu, lv = tree_length(u), tree_length(v)
    if lu != lv:
        return -1 if lu > lv else 1
    if lu == 0:
        return 0
    pu, pv = _par(u), _par(v)
    if pu != pv:
        return -1 if pu == (0, 1) else 1
    ue, uo = _split(u)
    ve, vo = _split(v)
    for a, b in ((ue, ve), (uo.left, vo.left), (uo.right, vo.right)):
        c = tree_cmp(a, b)
        if c:
            return c
    return 0


def _check_comparable(t: Tree) -> None:
    if tree_length(t) % 2 or not all(_par(z) != (1, 1) for _, _, z, _ in _nodes((t,))):
        raise NotComparable("the tree order needs admissible trees of even length")


def tree_less(u: Tree, v: Tree) -> bool:
    u, v = erase_tree(u), erase_tree(v)
    _check_comparable(u)
    _check_comparable(v)
    return tree_cmp(u, v) < 0


tree_key = cmp_to_key(tree_cmp)


# ---------------------------------------------------------------- the labeling map

def _peel(f: Forest, i: int) -> tuple[Forest, Forest]:
    """(head, residual) of the primary factorization around tree i, unlabeled."""
    t = f[i]
    if isinstance(t, int) or isinstance(t.right, int):
        raise NotRightAligned("tree has no node in position 2")
    rest = f[:i] + (t.left, t.right.left, t.right.right) + f[i + 1:]
    sq = [tree_value(x) for x in rest]
    top = Node(sq[i], Node(sq[i + 1], sq[i + 2], 2), 1)
    head = tuple(sq[:i]) + (top,) + tuple(sq[i + 3:])
    return head, rest


@lru_cache(maxsize=None)
def _F(f: Forest) -> Forest:
    if length(f) == 0:
        return f
    cands = [k for k, t in enumerate(f) if not isinstance(t, int)]
    i = min(cands, key=lambda k: (tree_key(f[k]), k))
    head, rest = _peel(f, i)
    return graft_unchecked(head, _F(rest))


def F(f: Forest) -> Forest:
    """Preferred labeled preimage of a right aligned unlabeled forest."""
    f = tuple(f)
    if labeling(f) == "labeled":
        raise NotRightAligned("F expects an unlabeled forest")
    if classify(f) < AlignmentClass.RightAligned:
        raise NotRightAligned("F expects a right aligned forest")
    return _F(f)


# ---------------------------------------------------------------- the order on forests

def order_positions(base: Forest) -> list:
    """Positions compared by the lexicographic order, sorted along ``base``."""
    base = tuple(erase_tree(t) for t in base)
    pos = [(k, "") for k in range(1, len(base))]
    t, w = base[0], ""
    while not isinstance(t, int):
        pos.append((0, w + "21"))
        pos.append((0, w + "22"))
        t, w = t.left, w + "1"
    from .forest import subtree_at

    def key(p):
        return (tree_key(subtree_at(base[p[0]], p[1])), p)

    return sorted(pos, key=key)


def forest_prec(x: Forest, y: Forest, base: Forest) -> bool:
    """Lexicographic comparison of ``x`` and ``y`` along the positions of ``base``."""
    from .forest import MissingPosition, depth, subtree_at
    x = tuple(erase_tree(t) for t in x)
    y = tuple(erase_tree(t) for t in y)
    if not (len(x) == len(y) == len(base) and depth(x) == depth(y) == depth(base)):
        raise ShapeMismatch("forests must share tree count and depth with the base")
    for i, w in order_positions(base):
        try:
            a, b = subtree_at(x[i], w), subtree_at(y[i], w)
        except MissingPosition as e:
            raise ShapeMismatch(str(e)) from None
        c = tree_cmp(a, b)
        if c:
            return c < 0
    return False
