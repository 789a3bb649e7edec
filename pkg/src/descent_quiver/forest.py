"""Binary trees and forests with positive integer leaves.

A tree is either a positive ``int`` (a leaf) or a :class:`Node`.  A forest is a
nonempty tuple of trees.  Labeled forests carry a node label on every internal
node; the labels of a forest are exactly ``1..length`` and increase from a
node to its children.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterator, NamedTuple, Union


class ForestError(ValueError):
    pass


class ForestSyntaxError(ForestError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class LabelError(ForestError):
    pass


class MixedLabeling(ForestError):
    pass


class MissingPosition(ForestError):
    pass


class NotLabeled(ForestError):
    pass


class LeafHasNoParity(ForestError):
    pass


class Node(NamedTuple):
    left: "Tree"
    right: "Tree"
    label: int | None = None


Tree = Union[int, Node]
Forest = tuple  # tuple[Tree, ...]


class _Zero:
    """The zero of the forest algebra, returned by :func:`bullet`."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Zero"

    def __bool__(self) -> bool:
        return False


Zero = _Zero()


def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


# ---------------------------------------------------------------- invariants

@lru_cache(maxsize=None)
def tree_length(t: Tree) -> int:
    if isinstance(t, int):
        return 0
    return 1 + tree_length(t.left) + tree_length(t.right)


@lru_cache(maxsize=None)
def tree_value(t: Tree) -> int:
    if isinstance(t, int):
        return t
    return tree_value(t.left) + tree_value(t.right)


def tree_leaves(t: Tree) -> Iterator[int]:
    if isinstance(t, int):
        yield t
    else:
        yield from tree_leaves(t.left)
        yield from tree_leaves(t.right)


def length(f) -> int:
    """Number of internal nodes of a tree or forest."""
    if isinstance(f, tuple) and not isinstance(f, Node):
        return sum(tree_length(t) for t in f)
    return tree_length(f)


def foliage(f: Forest) -> tuple[int, ...]:
    return tuple(v for t in f for v in tree_leaves(t))


def squash(f: Forest) -> tuple[int, ...]:
    return tuple(tree_value(t) for t in f)


def value(f) -> int:
    if isinstance(f, tuple) and not isinstance(f, Node):
        return sum(tree_value(t) for t in f)
    return tree_value(f)


def depth(f: Forest) -> int:
    """Number of steps down the left spine of the first tree."""
    m, t = 0, f[0]
    while not isinstance(t, int):
        t = t.left
        m += 1
    return m


def subtree_at(t: Tree, pos: str) -> Tree:
    for ch in pos:
        if isinstance(t, int):
            raise MissingPosition(f"position {pos!r} falls off a leaf")
        if ch == "1":
            t = t.left
        elif ch == "2":
            t = t.right
        else:
            raise MissingPosition(f"bad position letter {ch!r}")
    return t


def replace_at(t: Tree, pos: str, new: Tree) -> Tree:
    if not pos:
        return new
    if isinstance(t, int):
        raise MissingPosition(f"position {pos!r} falls off a leaf")
    if pos[0] == "1":
        return Node(replace_at(t.left, pos[1:], new), t.right, t.label)
    return Node(t.left, replace_at(t.right, pos[1:], new), t.label)


def positions(t: Tree, prefix: str = "") -> Iterator[str]:
    """Positions of all internal nodes, preorder."""
    if isinstance(t, int):
        return
    yield prefix
    yield from positions(t.left, prefix + "1")
    yield from positions(t.right, prefix + "2")


def parity(t: Tree) -> tuple[int, int]:
    if isinstance(t, int):
        raise LeafHasNoParity("a leaf has no parity")
    return tree_length(t.left) % 2, tree_length(t.right) % 2


# ---------------------------------------------------------------- labels

def _labels(t: Tree, out: list) -> None:
    if not isinstance(t, int):
        out.append(t.label)
        _labels(t.left, out)
        _labels(t.right, out)


def labels(f: Forest) -> list:
    out: list = []
    for t in f:
        _labels(t, out)
    return out


def labeling(f: Forest) -> str:
    """'labeled', 'unlabeled' or 'empty' (no nodes at all); raises on a mix."""
    ls = labels(f)
    if not ls:
        return "empty"
    has = [x is not None for x in ls]
    if all(has):
        return "labeled"
    if not any(has):
        return "unlabeled"
    raise MixedLabeling("forest mixes labeled and unlabeled nodes")


def is_labeled(f: Forest) -> bool:
    return labeling(f) != "unlabeled"


def _check_increasing(t: Tree, parent: int) -> bool:
    if isinstance(t, int):
        return True
    if t.label <= parent:
        return False
    return _check_increasing(t.left, t.label) and _check_increasing(t.right, t.label)


def check_forest(f) -> Forest:
    """Validate and return ``f`` as a forest tuple."""
    if isinstance(f, Node) or isinstance(f, int):
        f = (f,)
    f = tuple(f)
    if not f:
        raise ForestError("a forest needs at least one tree")
    for t in f:
        for v in tree_leaves(t):
            if not isinstance(v, int) or v < 1:
                raise ForestError(f"leaf values must be positive integers, got {v!r}")
    if labeling(f) == "labeled":
        ls = labels(f)
        if sorted(ls) != list(range(1, len(ls) + 1)):
            raise LabelError(f"labels must be exactly 1..{len(ls)}, got {sorted(ls)}")
        if not all(_check_increasing(t, 0) for t in f):
            raise LabelError("every node label must exceed its parent's label")
    return f


def shift_labels(t: Tree, k: int) -> Tree:
    if isinstance(t, int) or k == 0:
        return t
    return Node(shift_labels(t.left, k), shift_labels(t.right, k), t.label + k)


def shift_forest(f: Forest, k: int) -> Forest:
    return tuple(shift_labels(t, k) for t in f)


@lru_cache(maxsize=None)
def erase_tree(t: Tree) -> Tree:
    if isinstance(t, int):
        return t
    return Node(erase_tree(t.left), erase_tree(t.right))


def erase(f: Forest) -> Forest:
    if labeling(f) == "unlabeled":
        raise NotLabeled("erase expects a labeled forest")
    return tuple(erase_tree(t) for t in f)


def relabel_tree(t: Tree, mapping: dict) -> Tree:
    if isinstance(t, int):
        return t
    return Node(relabel_tree(t.left, mapping), relabel_tree(t.right, mapping), mapping[t.label])


# ---------------------------------------------------------------- operations

@lru_cache(maxsize=None)
def mirror(t: Tree) -> Tree:
    if isinstance(t, int):
        return t
    return Node(mirror(t.right), mirror(t.left), t.label)


def _graft(t: Tree, it: Iterator[Tree]) -> Tree:
    if isinstance(t, int):
        return next(it)
    return Node(_graft(t.left, it), _graft(t.right, it), t.label)


def bullet(x: Forest, y: Forest):
    """Graft the trees of ``y`` onto the leaves of ``x``; ``Zero`` on mismatch."""
    lx, ly = labeling(x), labeling(y)
    if {lx, ly} == {"labeled", "unlabeled"}:
        raise MixedLabeling("bullet of a labeled and an unlabeled forest")
    if foliage(x) != squash(y):
        return Zero
    if ly == "labeled":
        y = shift_forest(y, length(x))
    it = iter(y)
    return tuple(_graft(t, it) for t in x)


def graft_unchecked(x: Forest, y: Forest) -> Forest:
    """Labeled graft without validation; caller guarantees foliage(x) == squash(y)."""
    y = shift_forest(y, length(x))
    it = iter(y)
    return tuple(_graft(t, it) for t in x)


# ---------------------------------------------------------------- text format

def format_tree(t: Tree) -> str:
    if isinstance(t, int):
        return str(t)
    s = f"({format_tree(t.left)} {format_tree(t.right)})"
    return s if t.label is None else f"{s}@{t.label}"


def format_forest(f: Forest) -> str:
    return " ".join(format_tree(t) for t in f)


_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self) -> int:
        self.skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise ForestSyntaxError("expected an integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def tree(self) -> Tree:
        c = self.peek()
        if c.isdigit():
            v = self.integer()
            if v < 1:
                raise ForestSyntaxError("leaf values must be positive", self.pos)
            return v
        if c != "(":
            raise ForestSyntaxError("expected '(' or an integer", self.pos)
        self.pos += 1
        left = self.tree()
        if self.pos < len(self.text) and not self.text[self.pos].isspace() and self.text[self.pos] != "(":
            raise ForestSyntaxError("expected whitespace between children", self.pos)
        right = self.tree()
        if self.peek() != ")":
            raise ForestSyntaxError("expected ')'", self.pos)
        self.pos += 1
        label = None
        if self.pos < len(self.text) and self.text[self.pos] == "@":
            self.pos += 1
            label = self.integer()
        return Node(left, right, label)


def parse_forest(text: str) -> Forest:
    """Parse ``tree (WS tree)*`` where ``tree := INT | '(' tree WS tree ')' ['@' INT]``."""
    p = _Parser(text)
    trees = []
    while p.peek():
        trees.append(p.tree())
    if not trees:
        raise ForestSyntaxError("empty forest", 0)
    return check_forest(tuple(trees))


def parse_tree(text: str) -> Tree:
    f = parse_forest(text)
    if len(f) != 1:
        raise ForestSyntaxError("expected a single tree", 0)
    return f[0]
