import pytest

from descent_quiver.forest import (
    ForestSyntaxError, LabelError, LeafHasNoParity, MissingPosition, MixedLabeling, Node,
    NotLabeled, Zero, bullet, check_forest, depth, erase, foliage, format_forest, length,
    mirror, parity, parse_forest, parse_tree, squash, subtree_at, value,
)


def T(s):
    return parse_tree(s)


def test_foliage_and_squash():
    f = parse_forest("(1 2) 3")
    assert foliage(f) == (1, 2, 3)
    assert squash(f) == (3, 3)
    assert squash(parse_forest("5")) == (5,)
    assert length(f) == 1 and value(f) == 6


def test_depth():
    assert depth(parse_forest("4 (1 2)")) == 0
    assert depth(parse_forest("((1 2) 3)")) == 2
    assert depth(parse_forest("(((1 2) 3) 4)")) == 3
    assert depth(parse_forest("(1 (2 3))")) == 1


def test_subtree_at():
    t = T("((1 2) 3)")
    assert subtree_at(t, "1") == Node(1, 2)
    assert subtree_at(t, "") == t
    with pytest.raises(MissingPosition):
        subtree_at(t, "21")


def test_bullet():
    x = parse_forest("(3 3)@1")
    y = parse_forest("(1 2)@1 (1 2)@2")
    assert bullet(x, y) == parse_forest("((1 2)@2 (1 2)@3)@1")
    assert bullet(parse_forest("(1 2)"), parse_forest("3")) is Zero
    x = parse_forest("(1 (2 3))")
    assert bullet(x, parse_forest("1 2 3")) == x
    with pytest.raises(MixedLabeling):
        bullet(parse_forest("(1 2)@1"), parse_forest("(1 2) 3"))


def test_mirror():
    assert mirror(7) == 7
    assert mirror(T("(1 (2 3))")) == T("((3 2) 1)")
    t = T("((1 2)@2 (3 (4 5)@4)@3)@1")
    assert mirror(mirror(t)) == t


def test_erase():
    assert erase(parse_forest("(1 2)@1")) == parse_forest("(1 2)")
    with pytest.raises(NotLabeled):
        erase(parse_forest("(1 2)"))


def test_parity():
    assert parity(T("(1 2)")) == (0, 0)
    assert parity(T("((1 2) 3)")) == (1, 0)
    assert parity(T("(1 (2 (3 4)))")) == (0, 0)
    with pytest.raises(LeafHasNoParity):
        parity(3)


def test_parse_round_trip():
    for s in ["(1 (1 5)@2)@1", "(1 (2 3)@2)@1 4", "1 2 3", "((1 2) (3 4))"]:
        assert format_forest(parse_forest(s)) == s


@pytest.mark.parametrize("bad", ["((1 2", "((1 (2 3)@2)@1 4", "", "(1 2))", "(0 1)", "(1 2)@"])
def test_parse_errors(bad):
    with pytest.raises(ForestSyntaxError):
        parse_forest(bad)


def test_label_errors():
    with pytest.raises(LabelError):
        parse_forest("(1 2)@2 3")
    with pytest.raises(LabelError):
        parse_forest("((1 2)@1 3)@2")
    with pytest.raises(MixedLabeling):
        check_forest(parse_forest("(1 2)") + parse_forest("(1 2)@1"))
