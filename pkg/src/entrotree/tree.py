"""
Decision tree node types.

Trees are immutable. Every node keeps the count-weighted class distribution
of the training rows that reached it, and optionally the rows themselves
(``data``), which roll-up/drill-down and rebuilding need.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field, replace
from typing import Union

from .dataset import ClassDistribution, Dataset, format_value, value_key
from .errors import EntrotreeError

LE = "<="
GT = ">"


@dataclass(frozen=True)
class Branch:
    """Outgoing edge of a split.

    A nominal branch matches any value in ``values``; ``concept`` is the
    display label when the values were rolled up to a higher-level concept.
    A numeric branch has ``op`` in (``"<="``, ``">"``) and a ``threshold``.
    """

    child: "Node"
    values: tuple = ()
    op: str | None = None
    threshold: float | None = None
    concept: str | None = None

    @property
    def is_numeric(self) -> bool:
        return self.op is not None

    def matches(self, value) -> bool:
        if self.op is not None:
            try:
                x = float(value)
            except (TypeError, ValueError):
                return False
            return x <= self.threshold if self.op == LE else x > self.threshold
        k = value_key(value)
        return any(value_key(v) == k for v in self.values)

    def label_keys(self) -> frozenset:
        if self.op is not None:
            return frozenset([(self.op, self.threshold)])
        return frozenset(value_key(v) for v in self.values)

    def label(self) -> str:
        """Text of the branch test's right-hand side, e.g. ``=USA`` or ``in {a,b}``."""
        if self.op is not None:
            return f" {self.op} {format_value(self.threshold)}"
        if self.concept is not None:
            return f"={self.concept}"
        if len(self.values) == 1:
            return f"={format_value(self.values[0])}"
        return " in {" + ",".join(format_value(v) for v in self.values) + "}"


@dataclass(frozen=True)
class Leaf:
    distribution: ClassDistribution
    data: Dataset | None = field(default=None, compare=False, repr=False)

    is_leaf = True


@dataclass(frozen=True)
class Split:
    attribute: str
    branches: tuple[Branch, ...]
    distribution: ClassDistribution
    data: Dataset | None = field(default=None, compare=False, repr=False)

    is_leaf = False

    @property
    def children(self) -> list["Node"]:
        return [b.child for b in self.branches]

    def with_branches(self, branches) -> "Split":
        return replace(self, branches=tuple(branches))


Node = Union[Leaf, Split]


def height(node: Node) -> int:
    if node.is_leaf:
        return 0
    return 1 + max(height(c) for c in node.children)


def iter_nodes(node: Node) -> Iterator[Node]:
    yield node
    if not node.is_leaf:
        for c in node.children:
            yield from iter_nodes(c)


def leaves(node: Node) -> list[Leaf]:
    return [n for n in iter_nodes(node) if n.is_leaf]


def internal_nodes(node: Node) -> list[Split]:
    return [n for n in iter_nodes(node) if not n.is_leaf]


def tested_attributes(node: Node) -> list[str]:
    """Attributes tested anywhere in the tree, first-seen preorder."""
    return list(dict.fromkeys(n.attribute for n in internal_nodes(node)))


def node_at(tree: Node, path) -> Node:
    """Follow a sequence of branch indices from the root."""
    node = tree
    for i in path:
        if node.is_leaf:
            raise IndexError("path runs past a leaf")
        node = node.branches[i].child
    return node


def replace_at(tree: Node, path, new: Node) -> Node:
    path = list(path)
    if not path:
        return new
    i = path[0]
    b = tree.branches[i]
    nb = replace(b, child=replace_at(b.child, path[1:], new))
    return tree.with_branches(tree.branches[:i] + (nb,) + tree.branches[i + 1:])


def classify(tree: Node, row: Mapping) -> ClassDistribution:
    """Distribution at the leaf ``row`` reaches.

    A value with no matching branch (or a missing value) stops at the current
    node and returns its aggregate distribution.
    """
    lookup = {k.strip().casefold(): v for k, v in row.items()}
    node = tree
    while not node.is_leaf:
        key = node.attribute.strip().casefold()
        if key not in lookup:
            return node.distribution
        value = lookup[key]
        nxt = next((b.child for b in node.branches if b.matches(value)), None)
        if nxt is None:
            return node.distribution
        node = nxt
    return node.distribution


def predict(tree: Node, row: Mapping):
    return classify(tree, row).majority()


def render(tree: Node, style: str = "ascii", count_attr: str | None = None) -> list[str]:
    """Text rendering: ``[attr]`` for tests, ``attr=value ->`` for branches, ``{c:n}`` for leaves.

    With ``count_attr`` set, leaves show the distribution of that attribute's
    values in the leaf rows instead of the class distribution.
    """
    if style not in ("ascii", "indented"):
        raise EntrotreeError(f"unknown style {style!r}")
    lines: list[str] = []

    def leaf_text(leaf: Leaf) -> str:
        if count_attr is not None and leaf.data is not None and leaf.data.has_attribute(count_attr):
            j = leaf.data.index(count_attr)
            tally: dict = {}
            for t, c in zip(leaf.data.tuples, leaf.data.counts):
                tally[t[j]] = tally.get(t[j], 0) + c
            return ClassDistribution(tally).format()
        return leaf.distribution.format()

    def walk(node: Node, prefix: str, depth: int):
        for i, b in enumerate(node.branches):
            last = i == len(node.branches) - 1
            if style == "ascii":
                head = prefix + ("`-- " if last else "|-- ")
                ext = prefix + ("    " if last else "|   ")
            else:
                head = ext = "    " * (depth + 1)
            text = f"{node.attribute}{b.label()} ->"
            if b.child.is_leaf:
                lines.append(f"{head}{text} {leaf_text(b.child)}")
            else:
                lines.append(f"{head}{text} [{b.child.attribute}]")
                walk(b.child, ext, depth + 1)

    if tree.is_leaf:
        lines.append(leaf_text(tree))
    else:
        lines.append(f"[{tree.attribute}]")
        walk(tree, "", 0)
    return lines
