"""Property tests over generated trees and forests."""
from hypothesis import given, strategies as st

import oracles
from descent_quiver.alignment import (
    AlignmentClass, F, classify, even_align, odd_align, render_unlabeled, strong_align,
    tree_class,
)
from descent_quiver.forest import (
    Node, bullet, check_forest, erase, foliage, length, mirror, squash, tree_length, value,
)
from descent_quiver.generate import random_labeling
from descent_quiver.orbits import (
    borbit_canonical, borbit_expand, delta_borbit, delta_forest, delta_sum,
)
from descent_quiver.quiver import primary_factorization
from descent_quiver.words import jacobi, pi, pi_sum, pi_tree

leaf = st.integers(min_value=1, max_value=4)
trees = st.recursive(leaf, lambda ch: st.tuples(ch, ch).map(lambda p: Node(*p)), max_leaves=7)
small_trees = st.recursive(leaf, lambda ch: st.tuples(ch, ch).map(lambda p: Node(*p)), max_leaves=5)
forests = st.lists(trees, min_size=1, max_size=3).map(tuple)
small_forests = st.lists(small_trees, min_size=1, max_size=3).map(tuple).filter(
    lambda f: length(f) <= 7)


@st.composite
def labeled(draw, base=small_forests):
    f = draw(base)
    if length(f) == 0:
        return f
    return random_labeling(f, draw(st.randoms(use_true_random=False)))


@given(trees)
def test_mirror_involution(t):
    assert mirror(mirror(t)) == t
    assert tree_length(mirror(t)) == tree_length(t)
    assert value((mirror(t),)) == value((t,))


@given(labeled())
def test_erase_keeps_shape(f):
    if length(f):
        g = erase(f)
        assert foliage(g) == foliage(f) and squash(g) == squash(f) and length(g) == length(f)


@given(labeled(), st.randoms(use_true_random=False))
def test_bullet_invariants(y, r):
    # build x with foliage equal to the squash of y by grouping neighbours
    parts = list(squash(y))
    x_trees, i = [], 0
    while i < len(parts):
        if i + 1 < len(parts) and r.random() < 0.5:
            x_trees.append(Node(parts[i], parts[i + 1]))
            i += 2
        else:
            x_trees.append(parts[i])
            i += 1
    x = tuple(x_trees)
    if length(x) and length(y):
        x = random_labeling(x, r)
    elif length(x):
        y = erase(y) if length(y) else y
    xy = bullet(x, y)
    assert length(xy) == length(x) + length(y)
    assert squash(xy) == squash(x) and foliage(xy) == foliage(y)
    assert value(xy) == value(y)
    check_forest(xy)


@given(trees)
def test_pi_mirror_sign(t):
    assert pi(mirror(t)) == pi(t).scale((-1) ** tree_length(t))


@given(trees)
def test_pi_symmetrized(t):
    s = pi_tree(t) - pi_tree(mirror(t))
    assert s == (pi_tree(t).scale(2) if tree_length(t) % 2 else pi_tree(t).scale(0))


@given(trees)
def test_symmetric_trees_vanish(t):
    if tree_length(t) and mirror(t) == t:
        assert not pi_tree(t)


@given(small_trees, small_trees, small_trees)
def test_jacobi_vanishes(x, y, z):
    assert not pi_sum(jacobi(x, y, z))


@given(labeled())
def test_canonical_form(f):
    c = borbit_canonical(f)
    assert borbit_canonical(c) == c
    assert set(borbit_expand(f).terms) == oracles.orbit(f)


@given(labeled())
def test_delta_closed_form(f):
    if length(f):
        assert dict(delta_forest(f).terms) == oracles.delta(f)
        assert delta_borbit(f) == delta_sum(borbit_expand(f))


@given(small_trees)
def test_alignment_keeps_pi(t):
    p = pi(t)
    if tree_length(t) % 2:
        assert pi_sum(odd_align(t)) == p
    else:
        assert pi_sum(even_align(t)) == p
        out = strong_align(t)
        assert pi_sum(out) == p
        assert all(tree_class(u) == AlignmentClass.StronglyRightAligned for (u,) in out.terms)


@given(small_forests)
def test_F_and_factorization(f):
    for g in render_unlabeled(f).terms:
        h = F(g)
        assert erase(h) == g if length(g) else h == g
        assert classify(h) == AlignmentClass.StronglyRightAligned
        if length(h) >= 2:
            head, rest = primary_factorization(h)
            assert length(head) == 2 and bullet(head, rest) == h
