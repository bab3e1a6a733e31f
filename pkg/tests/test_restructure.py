import operator
from collections import Counter
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_dataset
from entrotree.dataset import ClassDistribution
from entrotree.errors import RestructureError
from entrotree.induction import BASELINE, PRIORITY, InductionConfig, build_tree
from entrotree.restructure import (
    PriorityAssignment,
    allocate_gain_ranks,
    balance_factor,
    equivalent,
    height_balance,
    height_balance_priority,
    node_merge,
)
from entrotree.rules import extract_rules
from entrotree.tree import Branch, Leaf, Split, height, predict


def leaf(**counts):
    return Leaf(ClassDistribution(counts))


def split(attr, **children):
    dist = reduce(operator.add, (c.distribution for c in children.values()))
    return Split(attr, tuple(Branch(c, values=(v,)) for v, c in children.items()), dist)


def test_merge_equivalent_leaves():
    tree = split("edu", a=leaf(High=2), b=leaf(High=1, Low=0), c=leaf(Low=3))
    log = []
    out = node_merge(tree, PriorityAssignment(), log)
    assert [b.values for b in out.branches] == [("a", "b"), ("c",)]
    assert out.branches[0].child.distribution == ClassDistribution({"High": 3})
    assert log == ["merged edu/{a,b}"]


def test_merge_refused_for_protected_parent():
    tree = split("country", Cuba=leaf(Low=3), Mexico=leaf(Low=1))
    log = []
    out = node_merge(tree, PriorityAssignment.from_priorities(["country"]), log)
    assert len(out.branches) == 2
    assert log == ["refused country/{Cuba,Mexico}: priority"]


def test_merge_refused_for_protected_subtree():
    sub = lambda: split("region", n=leaf(Low=1), s=leaf(High=1))
    tree = split("edu", a=sub(), b=sub())
    out = node_merge(tree, PriorityAssignment.from_priorities(["region"]))
    assert len(out.branches) == 2
    out = node_merge(tree, PriorityAssignment.from_priorities(["region"], checkpoint=0))
    assert len(out.branches) == 1


def test_merge_nested_subtrees():
    sub = lambda: split("region", n=leaf(Low=1), s=leaf(High=1))
    tree = split("edu", a=sub(), b=sub())
    out = node_merge(tree, PriorityAssignment())
    (b,) = out.branches
    assert b.values == ("a", "b")
    assert b.child.branches[0].child.distribution == ClassDistribution({"Low": 2})


def test_equivalent():
    assert equivalent(leaf(A=1), leaf(A=5, B=1))
    assert not equivalent(leaf(A=1), leaf(B=1))
    assert not equivalent(leaf(A=1), split("x", a=leaf(A=1)))


def test_balance_factor():
    deep = split("x", a=split("y", p=split("z", q=leaf(A=1))), b=leaf(B=1))
    assert balance_factor(deep) == 2
    with pytest.raises(RestructureError):
        balance_factor(leaf(A=1))


def test_height_balance_reorders_tallest_first():
    tall = split("y", p=split("z", q=leaf(A=1), r=leaf(B=1)), s=leaf(B=1))
    tree = split("x", a=leaf(A=1), b=tall)
    out = height_balance(tree)
    assert [b.values for b in out.branches] == [("b",), ("a",)]
    assert Counter(r.key() for r in extract_rules(out)) == Counter(r.key() for r in extract_rules(tree))
    balanced = split("x", a=leaf(A=1), b=split("y", p=leaf(A=1)))
    assert height_balance(balanced) == balanced


def test_priority_assignment():
    pa = PriorityAssignment.from_priorities(["country", "region"], checkpoint=1)
    assert pa.rank("Country") == 1 and pa.rank("edu") == float("inf")
    assert pa.protects("country") and not pa.protects("region")
    with pytest.raises(RestructureError):
        PriorityAssignment({"a": 1, "b": 1})
    with pytest.raises(RestructureError):
        PriorityAssignment({"a": 0})


def test_height_balance_priority_table3(table3):
    base = build_tree(table3, InductionConfig())
    out = height_balance_priority(base, None, PriorityAssignment.from_priorities(["country"]))
    assert out.attribute == "country" and len(out.branches) == 4
    assert balance_factor(out) == 0


def test_height_balance_priority_errors(table3):
    base = build_tree(table3, InductionConfig())
    with pytest.raises(RestructureError):
        height_balance_priority(base, table3, PriorityAssignment())
    with pytest.raises(RestructureError):
        height_balance_priority(base, table3, PriorityAssignment.from_priorities(["colour"]))


def test_allocate_gain_ranks(table3):
    pairs = allocate_gain_ranks(table3, PriorityAssignment.from_priorities(["country"]))
    assert [a for a, _ in pairs] == ["country", "avg_edu_level"]
    assert pairs[0][1] > pairs[1][1]


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(0, 2))
def test_restructure_preserves_predictions(rng, n_prio):
    d = random_dataset(rng)
    pa = PriorityAssignment.from_priorities(d.regular_attributes()[:n_prio])
    tree = build_tree(d, InductionConfig(min_objects=1))
    before = [predict(tree, r) for r in d.rows()]
    merged = node_merge(tree, pa)
    balanced = height_balance(merged)
    assert [predict(merged, r) for r in d.rows()] == before
    assert [predict(balanced, r) for r in d.rows()] == before
    assert height(balanced) == height(merged)
    assert sum(r.support for r in extract_rules(merged)) == d.total_count
