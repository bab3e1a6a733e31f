"""
IF...THEN rules from decision trees, plus tree metrics and comparison reports.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .dataset import ClassDistribution, format_value, name_key, value_key
from .tree import (
    Branch,
    Node,
    classify,
    height,
    internal_nodes,
    leaves,
    tested_attributes,
)


@dataclass(frozen=True)
class Condition:
    attribute: str
    values: tuple = ()
    op: str | None = None
    threshold: float | None = None

    @classmethod
    def from_branch(cls, attribute: str, b: Branch) -> "Condition":
        if b.is_numeric:
            return cls(attribute, op=b.op, threshold=b.threshold)
        return cls(attribute, values=b.values)

    def key(self):
        if self.op is not None:
            return (name_key(self.attribute), self.op, self.threshold)
        return (name_key(self.attribute), frozenset(value_key(v) for v in self.values))

    def __str__(self) -> str:
        if self.op is not None:
            return f"{self.attribute} {self.op} {format_value(self.threshold)}"
        if len(self.values) == 1:
            return f"{self.attribute}={format_value(self.values[0])}"
        return f"{self.attribute} in {{{','.join(format_value(v) for v in self.values)}}}"


@dataclass(frozen=True)
class ClassificationRule:
    conditions: tuple[Condition, ...]
    conclusion: object
    support: int
    confidence: float
    distribution: ClassDistribution | None = None

    def key(self):
        """Order-insensitive identity: condition set plus conclusion."""
        return (frozenset(c.key() for c in self.conditions), value_key(self.conclusion))

    def __str__(self) -> str:
        lhs = " AND ".join(str(c) for c in self.conditions) or "TRUE"
        return f"IF {lhs} THEN {format_value(self.conclusion)} [{self.support}, {self.confidence:.4f}]"


def extract_rules(tree: Node) -> list[ClassificationRule]:
    """One rule per leaf, conditions in root-to-leaf order."""
    out: list[ClassificationRule] = []

    def walk(node: Node, conds: tuple):
        if node.is_leaf:
            dist = node.distribution
            out.append(
                ClassificationRule(
                    conds,
                    dist.majority(),
                    dist.total,
                    dist.majority_count / dist.total,
                    dist,
                )
            )
            return
        for b in node.branches:
            walk(b.child, conds + (Condition.from_branch(node.attribute, b),))

    walk(tree, ())
    return out


def format_rules(rules: Iterable[ClassificationRule]) -> list[str]:
    return [str(r) for r in rules]


def classify_tuple(tree: Node, row: Mapping) -> ClassDistribution:
    """Distribution of the leaf ``row`` lands on (see :func:`entrotree.tree.classify`)."""
    return classify(tree, row)


@dataclass(frozen=True)
class TreeMetrics:
    height: int
    internal_nodes: int
    leaves: int
    rule_count: int
    attributes_used: tuple[str, ...]


@dataclass(frozen=True)
class ComparisonReport:
    metrics_a: TreeMetrics
    metrics_b: TreeMetrics
    only_in_a: tuple[ClassificationRule, ...]
    only_in_b: tuple[ClassificationRule, ...]
    coverage_a: dict
    coverage_b: dict

    def lines(self, name_a: str = "A", name_b: str = "B") -> list[str]:
        ma, mb = self.metrics_a, self.metrics_b
        w = max(len(name_a), len(name_b), 6)
        rows = [
            f"{'metric':<16} {name_a:>{w}} {name_b:>{w}}",
            f"{'height':<16} {ma.height:>{w}} {mb.height:>{w}}",
            f"{'internal nodes':<16} {ma.internal_nodes:>{w}} {mb.internal_nodes:>{w}}",
            f"{'leaves':<16} {ma.leaves:>{w}} {mb.leaves:>{w}}",
            f"{'rules':<16} {ma.rule_count:>{w}} {mb.rule_count:>{w}}",
            f"attributes used in {name_a}: {', '.join(ma.attributes_used) or '-'}",
            f"attributes used in {name_b}: {', '.join(mb.attributes_used) or '-'}",
        ]
        for attr in self.coverage_a:
            rows.append(f"requested {attr}: {name_a} {self.coverage_a[attr]}, {name_b} {self.coverage_b[attr]}")
        rows.append(f"rules only in {name_a}: {len(self.only_in_a)}")
        rows.extend(f"  {r}" for r in self.only_in_a)
        rows.append(f"rules only in {name_b}: {len(self.only_in_b)}")
        rows.extend(f"  {r}" for r in self.only_in_b)
        return rows


def tree_metrics(tree: Node) -> TreeMetrics:
    return TreeMetrics(
        height=height(tree),
        internal_nodes=len(internal_nodes(tree)),
        leaves=len(leaves(tree)),
        rule_count=len(extract_rules(tree)),
        attributes_used=tuple(tested_attributes(tree)),
    )


def _rule_diff(ra, rb):
    left = Counter(r.key() for r in rb)
    only = []
    for r in ra:
        k = r.key()
        if left[k]:
            left[k] -= 1
        else:
            only.append(r)
    return tuple(only)


def _coverage(tree: Node, attrs) -> dict:
    used = {name_key(a) for a in tested_attributes(tree)}
    return {a: ("covered" if name_key(a) in used else "pruned") for a in attrs}


def compare_trees(a: Node, b: Node, requested_attrs: Iterable[str] = ()) -> ComparisonReport:
    """Side-by-side metrics, rule-set difference, and per-attribute coverage.

    An attribute is pruned from a tree when no internal node tests it.
    """
    requested = list(requested_attrs)
    ra, rb = extract_rules(a), extract_rules(b)
    return ComparisonReport(
        tree_metrics(a),
        tree_metrics(b),
        _rule_diff(ra, rb),
        _rule_diff(rb, ra),
        _coverage(a, requested),
        _coverage(b, requested),
    )
