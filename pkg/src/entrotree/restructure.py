"""
Post-construction tree surgery.

* :func:`node_merge` folds equivalent sibling subtrees into one branch with a
  value-set label, unless a protected (high-priority) attribute is involved.
* :func:`height_balance` reorders the children of lopsided nodes by subtree
  height. Decision trees here are n-ary, so an AVL rotation would change what
  the tree predicts; reordering is the rotation analogue that keeps every
  root-to-leaf path, and hence every rule, intact.
* :func:`height_balance_priority` regrows a tree so that priority attributes
  are tested first, in rank order, then balances it.

None of these mutate their input.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace

from .dataset import ClassDistribution, Dataset, concat, format_value, name_key
from .entropy import info_gain
from .errors import RestructureError
from .induction import PRIORITY, InductionConfig, build_tree
from .tree import Branch, Leaf, Node, Split, height, tested_attributes

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PriorityAssignment:
    """Attribute ranks (1 = most important) and the merge checkpoint.

    Subtrees touching an attribute with ``rank <= checkpoint`` are never
    merged. Unranked attributes count as infinitely unimportant.
    """

    ranks: Mapping = field(default_factory=dict)
    checkpoint: float = 0

    def __post_init__(self):
        seen = set()
        for a, r in self.ranks.items():
            if r < 1:
                raise RestructureError(f"rank of {a!r} must be positive")
            if r in seen:
                raise RestructureError(f"rank {r} assigned twice")
            seen.add(r)

    @classmethod
    def from_priorities(cls, attrs: Iterable[str], checkpoint: float | None = None) -> "PriorityAssignment":
        """Ranks 1..k in list order; the checkpoint defaults to k (all of them protected)."""
        ranks = {a: i for i, a in enumerate(attrs, 1)}
        return cls(ranks, len(ranks) if checkpoint is None else checkpoint)

    def rank(self, attr: str) -> float:
        k = name_key(attr)
        for a, r in self.ranks.items():
            if name_key(a) == k:
                return r
        return math.inf

    def protects(self, attr: str) -> bool:
        return self.rank(attr) <= self.checkpoint

    def ordered(self) -> list[str]:
        return [a for a, _ in sorted(self.ranks.items(), key=lambda kv: kv[1])]


# -- NodeMerge ---------------------------------------------------------

def equivalent(a: Node, b: Node) -> bool:
    """Same test structure all the way down, and leaves agreeing on the majority class."""
    if a.is_leaf or b.is_leaf:
        return a.is_leaf and b.is_leaf and a.distribution.majority() == b.distribution.majority()
    if name_key(a.attribute) != name_key(b.attribute) or len(a.branches) != len(b.branches):
        return False
    for ba in a.branches:
        bb = _matching(ba, b.branches)
        if bb is None or not equivalent(ba.child, bb.child):
            return False
    return True


def _matching(branch: Branch, branches) -> Branch | None:
    keys = branch.label_keys()
    return next((b for b in branches if b.label_keys() == keys), None)


def _join_data(a: Dataset | None, b: Dataset | None) -> Dataset | None:
    if a is None or b is None:
        return None
    return concat(a, b)


def combine(a: Node, b: Node) -> Node:
    """Union of two equivalent subtrees; counts add up."""
    dist = a.distribution + b.distribution
    data = _join_data(a.data, b.data)
    if a.is_leaf:
        return Leaf(dist, data=data)
    branches = [replace(ba, child=combine(ba.child, _matching(ba, b.branches).child)) for ba in a.branches]
    return Split(a.attribute, tuple(branches), dist, data=data)


def _values_text(values) -> str:
    return "{" + ",".join(format_value(v) for v in values) + "}"


def node_merge(tree: Node, pa: PriorityAssignment, log_lines: list | None = None) -> Node:
    """Merge equivalent low-priority sibling subtrees, bottom-up, to a fixpoint.

    Every merge and every refusal is appended to ``log_lines`` (when given)
    as ``merged <parent>/<values>`` or ``refused <parent>/<values>: priority``,
    where ``<parent>`` is the path to the parent test.
    """
    out = log_lines if log_lines is not None else []

    def emit(line):
        out.append(line)
        log.info(line)

    def blocked(parent_attr: str, a: Node, b: Node) -> bool:
        attrs = [parent_attr] + tested_attributes(a) + tested_attributes(b)
        return any(pa.protects(x) for x in attrs)

    def visit(node: Node, where: str) -> Node:
        if node.is_leaf:
            return node
        here = f"{where}/{node.attribute}" if where else node.attribute
        branches = [
            replace(b, child=visit(b.child, f"{here}{b.label()}")) for b in node.branches
        ]
        refused = set()
        changed = True
        while changed:
            changed = False
            for i in range(len(branches)):
                for j in range(i + 1, len(branches)):
                    bi, bj = branches[i], branches[j]
                    if bi.is_numeric or bj.is_numeric or not equivalent(bi.child, bj.child):
                        continue
                    values = bi.values + bj.values
                    if blocked(node.attribute, bi.child, bj.child):
                        key = (bi.label_keys(), bj.label_keys())
                        if key not in refused:
                            refused.add(key)
                            emit(f"refused {here}/{_values_text(values)}: priority")
                        continue
                    branches[i] = Branch(combine(bi.child, bj.child), values=values)
                    del branches[j]
                    emit(f"merged {here}/{_values_text(values)}")
                    changed = True
                    break
                if changed:
                    break
        return node.with_branches(branches)

    return visit(tree, "")


# -- HeightBalance -----------------------------------------------------

def balance_factor(node: Node) -> int:
    """Tallest minus shortest child subtree height (leaves have height 0)."""
    if node.is_leaf:
        raise RestructureError("balance factor is undefined for a leaf")
    hs = [height(c) for c in node.children]
    return max(hs) - min(hs)


def height_balance(tree: Node) -> Node:
    """Put the tallest subtrees first wherever a node's balance factor exceeds 1.

    The sort is stable, so equal-height children keep their branch order.
    Paths, and therefore rules and predictions, are unchanged.
    """

    def visit(node: Node) -> Node:
        if node.is_leaf:
            return node
        branches = [replace(b, child=visit(b.child)) for b in node.branches]
        node = node.with_branches(branches)
        if balance_factor(node) > 1:
            branches = sorted(branches, key=lambda b: -height(b.child))
            node = node.with_branches(branches)
        return node

    out = visit(tree)
    log.info("Tree is balanced")
    return out


# -- HeightBalancePriority ---------------------------------------------

def allocate_gain_ranks(d: Dataset, pa: PriorityAssignment) -> list[tuple[str, float]]:
    """Hand the i-th highest information gain to the rank-i priority attribute.

    Non-priority attributes receive the remaining gains in their own
    descending-gain order. Returns ``(attribute, allocated gain)`` pairs in
    split order.
    """
    gains = {a: info_gain(d, a) for a in d.regular_attributes()}
    pool = sorted(gains.values(), reverse=True)
    prio = [d.attribute(a).name for a in pa.ordered()]
    rest = sorted((a for a in gains if a not in prio), key=lambda a: -gains[a])
    return list(zip(prio + rest, pool))


def height_balance_priority(
    tree: Node,
    d: Dataset | None,
    pa: PriorityAssignment,
    cfg: InductionConfig | None = None,
) -> Node:
    """Regrow ``tree`` with priority attributes first (by rank), then balance it.

    ``cfg`` supplies the thresholds the original tree was grown with; the
    split mode and priority list are replaced. ``d`` defaults to the rows
    stored at the root of ``tree``.
    """
    if not pa.ranks:
        raise RestructureError("priority assignment is empty")
    d = d if d is not None else tree.data
    if d is None:
        raise RestructureError("tree keeps no training data; pass it explicitly")
    for a in pa.ranks:
        if not d.has_attribute(a):
            raise RestructureError(f"priority attribute {a!r} is not in the dataset")
    cfg = cfg or InductionConfig()
    prio_cfg = replace(cfg, mode=PRIORITY, priorities=tuple(pa.ordered()))
    return height_balance(build_tree(d, prio_cfg))
