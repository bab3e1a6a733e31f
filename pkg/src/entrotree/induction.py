"""
Decision tree construction with gain-based or priority-based split selection.

A node becomes a leaf when its rows are class-pure, when they hold less than
``epsilon`` of the whole training count (exception threshold), when the
majority class reaches ``kappa`` of the node's count (classification
threshold), or when no attribute is worth splitting on.

Gain-selected splits follow the usual C4.5 guards: the gain must be positive
and at least two branches must carry ``min_objects`` rows. Priority
attributes skip both guards so that a user-requested attribute is never
pruned away.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, class_distribution, name_key, partition, value_key
from .entropy import expected_info, info_gain
from .errors import InductionError
from .hierarchy import ConceptHierarchy
from .tree import GT, LE, Branch, Leaf, Node, Split, node_at, replace_at

BASELINE = "baseline_gain"
PRIORITY = "priority"

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class InductionConfig:
    mode: str = BASELINE
    priorities: tuple = ()
    value_order: Mapping = field(default_factory=dict)
    epsilon: float = 0.0
    kappa: float = 1.0
    min_objects: int = 2
    attributes: tuple | None = None

    def __post_init__(self):
        if self.mode not in (BASELINE, PRIORITY):
            raise InductionError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "priorities", tuple(self.priorities))
        if self.mode == PRIORITY and not self.priorities:
            raise InductionError("priority mode needs at least one priority attribute")
        keys = [name_key(p) for p in self.priorities]
        if len(set(keys)) != len(keys):
            raise InductionError("priority list names an attribute twice")
        if not 0.0 <= self.epsilon <= 1.0:
            raise InductionError("epsilon must lie in [0, 1]")
        if not 0.0 < self.kappa <= 1.0:
            raise InductionError("kappa must lie in (0, 1]")
        if self.min_objects < 1:
            raise InductionError("min_objects must be >= 1")
        if self.attributes is not None:
            object.__setattr__(self, "attributes", tuple(self.attributes))

    def priority_rank(self, attr: str) -> int | None:
        k = name_key(attr)
        for i, p in enumerate(self.priorities):
            if name_key(p) == k:
                return i + 1
        return None

    def order_for(self, attr: str) -> tuple:
        for a, order in self.value_order.items():
            if name_key(a) == name_key(attr):
                return tuple(order)
        return ()


def _n_distinct(d: Dataset, attr: str) -> int:
    j = d.index(attr)
    return len({value_key(t[j]) for t in d.tuples})


def split_numeric(d: Dataset, attr: str) -> tuple[float, float]:
    """Best binary split ``attr <= t`` / ``attr > t`` over midpoints of sorted distinct values.

    Returns ``(t, gain)``; ties go to the smallest threshold.
    """
    j = d.index(attr)
    if not d.schema[j].is_numeric:
        raise InductionError(f"{attr!r} is not numeric")
    x = np.array([t[j] for t in d.tuples], dtype=float)
    distinct = np.unique(x)
    if distinct.size < 2:
        raise InductionError(f"{attr!r} has fewer than 2 distinct values")
    ci = d.class_index
    labels = {v: k for k, v in enumerate(d.class_order)}
    y = np.array([labels[t[ci]] for t in d.tuples])
    w = np.array(d.counts, dtype=float)
    total = w.sum()
    base = expected_info(np.bincount(y, weights=w, minlength=len(labels)))
    best_t, best_gain = None, -np.inf
    for t in (distinct[:-1] + distinct[1:]) / 2.0:
        left = x <= t
        e = 0.0
        for side in (left, ~left):
            h = np.bincount(y[side], weights=w[side], minlength=len(labels))
            e += h.sum() / total * expected_info(h)
        g = base - e
        if g > best_gain + _GAIN_EPS:
            best_t, best_gain = float(t), g
    return best_t, float(best_gain)


def _enough_objects(weights: Sequence[int], min_objects: int) -> bool:
    return sum(1 for w in weights if w >= min_objects) >= 2


def _evaluate(d: Dataset, attr: str, cfg: InductionConfig, guarded: bool):
    """(gain, threshold) for splitting on ``attr``, or None when the split is not allowed."""
    numeric = d.attribute(attr).is_numeric
    if numeric:
        t, g = split_numeric(d, attr)
        j = d.index(attr)
        le = sum(c for r, c in zip(d.tuples, d.counts) if r[j] <= t)
        weights = [le, d.total_count - le]
    else:
        t, g = None, info_gain(d, attr)
        j = d.index(attr)
        tally: dict = {}
        for r, c in zip(d.tuples, d.counts):
            tally[value_key(r[j])] = tally.get(value_key(r[j]), 0) + c
        weights = list(tally.values())
    if guarded and (g <= _GAIN_EPS or not _enough_objects(weights, cfg.min_objects)):
        return None
    return g, t


def _choose(d: Dataset, remaining: Sequence[str], cfg: InductionConfig):
    """Pick ``(attribute, threshold)`` for a node, or None."""
    candidates = [a for a in remaining if _n_distinct(d, a) >= 2]
    if not candidates:
        return None
    if cfg.mode == PRIORITY:
        by_key = {name_key(a): a for a in candidates}
        for p in cfg.priorities:
            a = by_key.get(name_key(p))
            if a is not None:
                _, t = _evaluate(d, a, cfg, guarded=False)
                return a, t
    best = None
    for a in candidates:
        r = _evaluate(d, a, cfg, guarded=True)
        if r is not None and (best is None or r[0] > best[1] + _GAIN_EPS):
            best = (a, r[0], r[1])
    return None if best is None else (best[0], best[2])


def select_split(d: Dataset, remaining: Sequence[str], cfg: InductionConfig, depth: int = 0) -> str | None:
    """Attribute to test at a node holding ``d``, or None to make a leaf.

    Baseline mode takes the highest-gain attribute (schema order on ties).
    Priority mode takes the first priority attribute still in ``remaining``
    that has two or more values here, then falls back to highest gain.
    """
    choice = _choose(d, remaining, cfg)
    return None if choice is None else choice[0]


class _Grower:
    def __init__(self, cfg: InductionConfig, total: int):
        self.cfg = cfg
        self.total = total

    def is_terminal(self, d: Dataset, dist) -> bool:
        n = d.total_count
        if len(dist) == 1:
            return True
        if n / self.total < self.cfg.epsilon:
            return True
        return dist.majority_count / n >= self.cfg.kappa

    def grow(self, d: Dataset, remaining: tuple, depth: int = 0) -> Node:
        dist = class_distribution(d)
        if self.is_terminal(d, dist):
            return Leaf(dist, data=d)
        choice = _choose(d, remaining, self.cfg)
        if choice is None:
            return Leaf(dist, data=d)
        attr, threshold = choice
        if threshold is not None:
            j = d.index(attr)
            left = [i for i, t in enumerate(d.tuples) if t[j] <= threshold]
            right = [i for i, t in enumerate(d.tuples) if t[j] > threshold]
            branches = [
                Branch(self.grow(d.subset(left), remaining, depth + 1), op=LE, threshold=threshold),
                Branch(self.grow(d.subset(right), remaining, depth + 1), op=GT, threshold=threshold),
            ]
        else:
            parts = partition(d, attr)
            rest = tuple(a for a in remaining if name_key(a) != name_key(attr))
            branches = [
                Branch(self.grow(sub, rest, depth + 1), values=(v,))
                for v, sub in _ordered(parts, self.cfg.order_for(attr))
            ]
        return Split(d.attribute(attr).name, tuple(branches), dist, data=d)


def _ordered(parts: dict, order: Sequence) -> list:
    """Listed values first, in list order; the rest in first-seen order."""
    by_key = {value_key(v): (v, sub) for v, sub in parts.items()}
    out = []
    for v in order:
        item = by_key.pop(value_key(v), None)
        if item is not None:
            out.append(item)
    out.extend(by_key.values())
    return out


def candidate_attributes(d: Dataset, cfg: InductionConfig) -> tuple[str, ...]:
    for p in cfg.priorities:
        if not d.has_attribute(p):
            raise InductionError(f"priority attribute {p!r} is not in the dataset")
        if d.attribute(p).is_class:
            raise InductionError(f"priority attribute {p!r} is the class attribute")
    if cfg.attributes is None:
        return tuple(d.regular_attributes())
    names = []
    for a in list(cfg.attributes) + list(cfg.priorities):
        desc = d.attribute(a)
        if not desc.is_class and desc.name not in names:
            names.append(desc.name)
    # schema order keeps gain ties deterministic
    return tuple(a for a in d.regular_attributes() if a in names)


def build_tree(d: Dataset, cfg: InductionConfig | None = None) -> Node:
    """Grow a decision tree over ``d``; leaves keep full class distributions."""
    cfg = cfg or InductionConfig()
    if len(d) == 0:
        raise InductionError("cannot build a tree from an empty dataset")
    d.class_index  # raises when no class is designated
    return _Grower(cfg, d.total_count).grow(d, candidate_attributes(d, cfg))


# -- multi-level mining ------------------------------------------------

def _path_attributes(tree: Node, path) -> set:
    node, seen = tree, set()
    for i in path:
        seen.add(name_key(node.attribute))
        node = node.branches[i].child
    return seen


def _relevel(tree: Node, path, h: ConceptHierarchy, cfg: InductionConfig | None, delta: int) -> Node:
    cfg = cfg or InductionConfig()
    node = node_at(tree, path)
    if node.is_leaf:
        raise InductionError("cannot roll up or drill down a leaf")
    if name_key(node.attribute) != name_key(h.attribute):
        raise InductionError(f"hierarchy covers {h.attribute!r}, node tests {node.attribute!r}")
    if node.data is None or any(b.is_numeric for b in node.branches):
        raise InductionError("node keeps no nominal training data to re-partition")
    d = node.data
    j = d.index(node.attribute)
    for v in d.distinct(node.attribute):
        if not h.covers(v):
            raise InductionError(f"value {v!r} is not covered by the hierarchy")
    level = max(h.level_of(b.concept if b.concept is not None else b.values[0]) for b in node.branches)
    target = min(max(level + delta, 0), h.top)
    if target == level:
        return tree

    groups: dict = {}
    for i, t in enumerate(d.tuples):
        anc = h.ancestor_at(t[j], target)
        groups.setdefault(value_key(anc), (anc, []))[1].append(i)
    excluded = _path_attributes(tree, path) | {name_key(node.attribute)}
    root_total = tree.data.total_count if tree.data is not None else d.total_count
    grower = _Grower(cfg, root_total)
    remaining = tuple(a for a in candidate_attributes(d, cfg) if name_key(a) not in excluded)
    branches = []
    for anc, idx in groups.values():
        sub = d.subset(idx)
        prim = tuple(sub.distinct(node.attribute))
        concept = None if len(prim) == 1 and value_key(prim[0]) == value_key(anc) else anc
        branches.append(Branch(grower.grow(sub, remaining), values=prim, concept=concept))
    return replace_at(tree, path, node.with_branches(branches))


def rollup_node(tree: Node, path, h: ConceptHierarchy, cfg: InductionConfig | None = None) -> Node:
    """Generalize the test at ``path`` one hierarchy level up and regrow its subtrees."""
    return _relevel(tree, path, h, cfg, +1)


def drilldown_node(tree: Node, path, h: ConceptHierarchy, cfg: InductionConfig | None = None) -> Node:
    """Inverse of :func:`rollup_node`, re-partitioning the node's stored rows one level down."""
    return _relevel(tree, path, h, cfg, -1)
