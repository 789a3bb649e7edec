from functools import cmp_to_key

import pytest

from descent_quiver.alignment import (
    AlignmentClass, F, NotComparable, NotEvenLength, NotOddLength, NotRightAligned, classify,
    even_align, forest_prec, odd_align, render_forest, strong_align, tree_class, tree_cmp,
    tree_less,
)
from descent_quiver.forest import Node, erase, length, parse_forest, parse_tree
from descent_quiver.generate import (
    random_labeled_forest, random_tree, strongly_aligned_shapes, trees_up_to,
)
from descent_quiver.linear import ForestSum
from descent_quiver.orbits import (
    borbit_canonical, borbit_expand, borbit_members, delta_borbit, delta_forest, delta_sum,
    sim_closure,
)
from descent_quiver.words import pi, pi_sum
from test_orbits import ORDER_EXAMPLE

A = AlignmentClass
P = parse_forest
T = parse_tree


def test_classify_examples():
    assert classify(P("3 4")) == A.StronglyRightAligned
    assert classify(P("(1 (2 3))")) == A.StronglyRightAligned
    assert classify(P("((1 2) (3 4))")) == A.NotEven
    assert classify(P("4 ((1 2) (3 4))")) == A.NotEven
    assert classify(P("1 (((1 2) (3 4)) 5)")) == A.Even  # a node of parity (1,1)
    assert classify(P("1 (((1 2) 3) (1 2))")) == A.Admissible  # a node of parity (1,0)


def test_classify_label_condition():
    assert classify(P("(1 (1 5)@2)@1")) == A.StronglyRightAligned
    good = P("1 (1 (2 (1 (1 2)@4)@3)@2)@1 (1 (1 2)@6)@5")
    bad = P("1 (1 (2 (1 (1 2)@6)@5)@3)@1 (1 (1 2)@4)@2")  # the (0,0) node is not labeled parent + 1
    assert erase(good) == erase(bad)
    assert classify(good) == A.StronglyRightAligned
    assert classify(bad) == A.Admissible


def test_odd_align_examples():
    assert odd_align(Node(1, 2)) == ForestSum({(Node(1, 2),): 1})
    assert odd_align(Node(2, 1)) == ForestSum({(Node(1, 2),): -1})
    for s in ["((1 2) (3 4))", "(((1 2) 3) 4)", "((1 1) (1 1))", "(3 (1 (1 2)))"]:
        t = T(s)
        assert pi_sum(odd_align(t)) == pi(t)
    with pytest.raises(NotOddLength):
        odd_align(T("(1 (2 3))"))


def test_even_align_examples():
    assert even_align(5) == ForestSum({(5,): 1})
    for s in ["(1 (2 3))", "((1 2) 3)"]:
        out = even_align(T(s))
        assert pi_sum(out) == pi(T(s))
        assert all(tree_class(u) >= A.RightAligned for (u,) in out.terms)
    with pytest.raises(NotEvenLength):
        even_align(T("(1 2)"))


def test_strong_align_fixpoints():
    assert strong_align(3) == ForestSum({(3,): 1})
    for t in trees_up_to(6):
        if tree_class(t) == A.StronglyRightAligned:
            assert strong_align(t) == ForestSum({(t,): 1})
    for t in trees_up_to(6):
        if length((t,)) % 2 == 0:
            for (u,), _ in strong_align(t).terms.items():
                assert strong_align(u) == ForestSum({(u,): 1})


def test_alignment_random_large(rng):
    for _ in range(200):
        t = random_tree(rng.randint(6, 10), rng, 0.15)
        p = pi(t)
        if length((t,)) % 2:
            assert pi_sum(odd_align(t)) == p
        else:
            out = strong_align(t)
            assert pi_sum(out) == p
            assert all(tree_class(u) == A.StronglyRightAligned for (u,) in out.terms)


def test_render_examples():
    f = P("(1 (1 5)@2)@1")
    assert render_forest(f) == ForestSum({f: 1})
    assert not render_forest(P("1 (2 1)@1"))


def test_render_preserves_delta_on_orbits(rng):
    for _ in range(300):
        f = random_labeled_forest(8, rng)
        expanded = borbit_expand(f)
        rendered = ForestSum()
        for g, c in expanded.terms.items():
            for h, d in render_forest(g).terms.items():
                rendered.add_term(h, c * d)
        assert delta_borbit(f) == delta_sum(rendered)
        if classify(erase(f)) >= A.Even:
            assert delta_forest(f) == delta_sum(render_forest(f))
        for h in render_forest(f).terms:
            assert classify(h) == A.StronglyRightAligned


def test_tree_less_examples():
    assert tree_less(3, 4)
    assert tree_less(T("(1 (1 2))"), 4)
    assert not tree_less(4, T("(1 (1 2))"))
    with pytest.raises(NotComparable):
        tree_less(T("(1 2)"), 3)


def test_tree_order_is_total():
    ts = [t for t in trees_up_to(8) if tree_class(t) >= A.Admissible]
    s = sorted(ts, key=cmp_to_key(tree_cmp))
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            assert tree_cmp(s[i], s[j]) < 0 < tree_cmp(s[j], s[i])


def test_F_examples():
    assert F((3, 4)) == (3, 4)
    x = erase(P(ORDER_EXAMPLE[0]))
    g = F(x)
    assert g == P("(1 ((1 (1 2)@8)@7 (2 (1 2)@10)@9)@6)@5 (1 (1 4)@2)@1 (1 (1 5)@4)@3")
    assert erase(g) == x
    with pytest.raises(NotRightAligned):
        F(P("((1 2) 3)"))


def test_F_inverts_erase():
    for f in strongly_aligned_shapes(8):
        g = F(f)
        assert erase(g) == f and classify(g) == A.StronglyRightAligned


def test_order_example_increasing():
    fs = [erase(P(s)) for s in ORDER_EXAMPLE]
    base = fs[0]
    for a, b in zip(fs, fs[1:]):
        assert forest_prec(a, b, base)
        assert not forest_prec(b, a, base)
    assert not forest_prec(base, base, base)


def test_preferred_labeling_is_least_in_its_class():
    # every other orbit related to F(X) erases to a forest above X
    for x in strongly_aligned_shapes(8):
        g = F(x)
        own = borbit_canonical(g)
        for z in sim_closure(g):
            if z == own:
                continue
            for m in borbit_members(z):
                assert forest_prec(x, erase(m), x)
