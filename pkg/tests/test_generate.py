import random

from descent_quiver.alignment import AlignmentClass, classify
from descent_quiver.forest import check_forest, length, tree_value, value
from descent_quiver.generate import (
    forests_of_value, random_labeled_forest, random_labeling, random_strongly_aligned,
    strongly_aligned_shapes, trees_of_value,
)


def test_tree_counts():
    # t(v) = 1 + sum t(a) t(v - a)
    counts = [len(trees_of_value(v)) for v in range(1, 8)]
    assert counts == [1, 2, 5, 15, 51, 188, 731]
    assert all(tree_value(t) == 5 for t in trees_of_value(5))
    assert len(set(trees_of_value(6))) == 188


def test_forest_enumeration():
    fs = list(forests_of_value(4))
    assert len(fs) == len(set(fs))
    assert all(value(f) == 4 for f in fs)


def test_random_labeling_is_valid(rng):
    for f in forests_of_value(5):
        g = random_labeling(f, rng)
        check_forest(g)


def test_random_generators_are_seeded():
    a = [random_labeled_forest(9, random.Random(3)) for _ in range(3)]
    b = [random_labeled_forest(9, random.Random(3)) for _ in range(3)]
    assert a == b
    f = random_labeled_forest(9, random.Random(4), min_length=2)
    assert length(f) >= 2 and value(f) <= 9


def test_random_strongly_aligned(rng):
    pool = strongly_aligned_shapes(8)
    assert pool and all(length(f) >= 2 for f in pool)
    for _ in range(50):
        f = random_strongly_aligned(8, rng)
        assert classify(f) == AlignmentClass.StronglyRightAligned
        assert value(f) <= 8
