"""
Concept hierarchies and attribute-oriented induction (AOI).

A hierarchy file is line oriented::

    attribute: region
    levels: Region_Data, Country_Data, World_Data
    USA.east -> USA
    USA -> World
    Cuba.south            # a bare value declares a value without a parent

Levels are listed primitive first. Every value must reach a top-level value
through its parent links, and every leaf value must sit at the primitive
level.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

from .dataset import (
    Dataset,
    aggregate_merge,
    name_key,
    value_key,
)
from .errors import HierarchyError

SUM = "sum"
NONE = "none"


class ConceptHierarchy:
    """Value-to-ancestor mapping for one attribute, with named levels."""

    def __init__(self, attribute: str, levels: Iterable[str], parent: Mapping[str, str], values: Iterable[str] = ()):
        self.attribute = attribute
        self.levels = tuple(levels)
        spelled: dict = {}
        for v in list(values) + [x for pair in parent.items() for x in pair]:
            spelled.setdefault(value_key(v), v)
        self._spelling = spelled
        self._parent = {value_key(c): value_key(p) for c, p in parent.items()}
        self._level = self._validate()

    def _validate(self) -> dict:
        depth = {}
        for k in self._spelling:
            seen = [k]
            cur = k
            while cur in self._parent:
                cur = self._parent[cur]
                if cur in seen:
                    cycle = " -> ".join(self._spelling[x] for x in seen + [cur])
                    raise HierarchyError(f"cycle detected: {cycle}")
                seen.append(cur)
            depth[k] = len(seen) - 1
        n = max(depth.values(), default=0) + 1
        if not self.levels:
            self.levels = tuple(f"level{i}" for i in range(n))
        if n > len(self.levels):
            raise HierarchyError(
                f"hierarchy for {self.attribute!r} is {n} levels deep but declares {len(self.levels)}"
            )
        parents = set(self._parent.values())
        top = len(self.levels) - 1
        for k, dpt in depth.items():
            if k not in parents and dpt != top:
                raise HierarchyError(
                    f"orphan value {self._spelling[k]!r}: no path to the top level {self.levels[-1]!r}"
                )
        return {k: top - dpt for k, dpt in depth.items()}

    def __repr__(self) -> str:
        return f"ConceptHierarchy({self.attribute!r}, levels={list(self.levels)}, values={len(self._spelling)})"

    def covers(self, value) -> bool:
        return value_key(value) in self._spelling

    def _key(self, value):
        k = value_key(value)
        if k not in self._spelling:
            raise HierarchyError(f"value {value!r} is not in the hierarchy for {self.attribute!r}")
        return k

    def level_of(self, value) -> int:
        return self._level[self._key(value)]

    def level_index(self, level_name: str) -> int:
        for i, name in enumerate(self.levels):
            if name_key(name) == name_key(level_name):
                return i
        raise HierarchyError(f"hierarchy for {self.attribute!r} has no level {level_name!r}")

    def values_at(self, level: int) -> list[str]:
        return [self._spelling[k] for k, lv in self._level.items() if lv == level]

    def parent_of(self, value):
        k = self._key(value)
        return self._spelling[self._parent[k]] if k in self._parent else None

    def ascend(self, value, steps: int = 1):
        return ascend(self, value, steps)

    def ancestor_at(self, value, level: int):
        """Ancestor of ``value`` at ``level``; ``value`` itself if already at or above it."""
        return ascend(self, value, max(0, level - self.level_of(value)))

    @property
    def top(self) -> int:
        return len(self.levels) - 1


def load_hierarchy(text: str, attribute: str | None = None) -> ConceptHierarchy:
    """Parse hierarchy text (see module docstring)."""
    levels: list[str] = []
    parent: dict = {}
    seen_child: dict = {}
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and "->" not in line and head.strip().lower() in ("levels", "attribute"):
            if head.strip().lower() == "levels":
                levels = [x.strip() for x in rest.split(",") if x.strip()]
            else:
                attribute = attribute or rest.strip()
            continue
        if "->" in line:
            child, _, par = (x.strip() for x in line.partition("->"))
            if not child or not par:
                raise HierarchyError(f"line {lineno}: expected 'child -> parent', got {raw!r}")
            k = value_key(child)
            if k in seen_child:
                raise HierarchyError(
                    f"line {lineno}: duplicate mapping for {child!r} (first given on line {seen_child[k]})"
                )
            seen_child[k] = lineno
            parent[child] = par
        else:
            values.append(line)
    if attribute is None:
        raise HierarchyError("hierarchy names no attribute")
    if not parent and not values:
        raise HierarchyError("hierarchy declares no values")
    return ConceptHierarchy(attribute, levels, parent, values)


def read_hierarchy(path: str | Path, attribute: str | None = None) -> ConceptHierarchy:
    return load_hierarchy(Path(path).read_text(encoding="utf-8"), attribute)


def ascend(h: ConceptHierarchy, value, steps: int):
    """Ancestor ``steps`` levels above ``value``, clamped at the top level."""
    if steps < 0:
        raise HierarchyError("steps must be >= 0")
    k = h._key(value)
    for _ in range(steps):
        if k not in h._parent:
            break
        k = h._parent[k]
    return h._spelling[k]


@dataclass
class AoiConfig:
    """Per-attribute generalization thresholds and numeric aggregation rules.

    Numeric attributes absent from ``aggregate`` are dropped by :func:`aoi`;
    ``"sum"`` adds them up across merged rows and ``"none"`` keeps them as
    ordinary grouping columns.
    """

    thresholds: dict = field(default_factory=dict)
    aggregate: dict = field(default_factory=dict)
    default_threshold: int | None = None

    def __post_init__(self):
        for a, t in self.thresholds.items():
            if int(t) < 1:
                raise HierarchyError(f"threshold for {a!r} must be >= 1")
        if self.default_threshold is not None and self.default_threshold < 1:
            raise HierarchyError("default threshold must be >= 1")
        for a, rule in self.aggregate.items():
            if rule not in (SUM, NONE):
                raise HierarchyError(f"aggregate rule for {a!r} must be 'sum' or 'none'")

    def threshold_for(self, attr: str) -> int | None:
        for a, t in self.thresholds.items():
            if name_key(a) == name_key(attr):
                return int(t)
        return self.default_threshold

    def aggregate_for(self, attr: str) -> str | None:
        for a, rule in self.aggregate.items():
            if name_key(a) == name_key(attr):
                return rule
        return None

    def sum_attrs(self, d: Dataset) -> list[str]:
        return [a.name for a in d.schema if a.is_numeric and not a.is_class and self.aggregate_for(a.name) == SUM]


def _distinct_keys(d: Dataset, j: int) -> int:
    return len({value_key(t[j]) for t in d.tuples})


def generalize_attribute(
    d: Dataset,
    attr: str,
    h: ConceptHierarchy,
    threshold: int,
    config: AoiConfig | None = None,
) -> Dataset:
    """Climb ``attr`` one level at a time until it has at most ``threshold`` values.

    Climbing stops early when every value is at the top level. Rows that
    become identical are merged; numeric columns with a ``sum`` rule in
    ``config`` are added up.
    """
    if threshold < 1:
        raise HierarchyError("threshold must be >= 1")
    j = d.index(attr)
    if d.schema[j].is_numeric:
        raise HierarchyError(f"attribute {attr!r} is numeric; only nominal attributes generalize")
    for v in d.distinct(attr):
        if not h.covers(v):
            raise HierarchyError(f"value {v!r} of {attr!r} is not covered by the hierarchy")
    tuples = [list(t) for t in d.tuples]
    while True:
        current = {value_key(t[j]) for t in tuples}
        if len(current) <= threshold:
            break
        if all(h.parent_of(t[j]) is None for t in tuples):
            break
        for t in tuples:
            t[j] = ascend(h, t[j], 1)
    out = d._replace(tuples=tuples)
    return aggregate_merge(out, (config or AoiConfig()).sum_attrs(out))


def remove_attribute(d: Dataset, attr: str, config: AoiConfig | None = None) -> Dataset:
    """Drop a non-class column and merge the rows that become identical."""
    j = d.index(attr)
    if d.schema[j].is_class:
        raise HierarchyError(f"cannot remove the class attribute {attr!r}")
    schema = [a for i, a in enumerate(d.schema) if i != j]
    tuples = [[v for i, v in enumerate(t) if i != j] for t in d.tuples]
    out = Dataset(schema, tuples, d.counts, d.class_order)
    return aggregate_merge(out, (config or AoiConfig()).sum_attrs(out))


def _lookup(hierarchies, attr: str):
    if isinstance(hierarchies, Mapping):
        items = hierarchies.values()
    else:
        items = hierarchies or ()
    for h in items:
        if name_key(h.attribute) == name_key(attr):
            return h
    return None


def aoi(d: Dataset, hierarchies, config: AoiConfig) -> Dataset:
    """Attribute-oriented induction over every non-class attribute.

    Per attribute, in schema order: a nominal attribute with a hierarchy and
    a threshold is generalized; one without a hierarchy but with more
    distinct values than its threshold is removed; anything else is kept.
    Numeric attributes without an aggregate rule are dropped.
    """
    out = d
    for a in d.schema:
        if a.is_numeric and not a.is_class and config.aggregate_for(a.name) is None:
            out = remove_attribute(out, a.name, config)
    for a in d.schema:
        if a.is_class or a.is_numeric or not out.has_attribute(a.name):
            continue
        threshold = config.threshold_for(a.name)
        if threshold is None:
            continue
        h = _lookup(hierarchies, a.name)
        if h is not None:
            out = generalize_attribute(out, a.name, h, threshold, config)
        elif _distinct_keys(out, out.index(a.name)) > threshold:
            out = remove_attribute(out, a.name, config)
    return aggregate_merge(out, config.sum_attrs(out))


def generalize_to_concepts(
    d: Dataset,
    attr: str,
    h: ConceptHierarchy,
    targets,
    max_level: int | None = None,
    config: AoiConfig | None = None,
) -> Dataset:
    """Replace each value of ``attr`` by its nearest ancestor listed in ``targets``.

    The search climbs no higher than ``max_level``. A value with no target
    ancestor is an error. Rows that become identical are merged.
    """
    wanted = {value_key(t) for t in targets}
    for t in targets:
        if not h.covers(t):
            raise HierarchyError(f"target concept {t!r} is not in the hierarchy for {h.attribute!r}")
    top = h.top if max_level is None else max_level
    j = d.index(attr)
    mapping = {}
    for v in d.distinct(attr):
        if not h.covers(v):
            raise HierarchyError(f"value {v!r} of {attr!r} is not covered by the hierarchy")
        cur = v
        while value_key(cur) not in wanted:
            if h.level_of(cur) >= top or h.parent_of(cur) is None:
                raise HierarchyError(f"value {v!r} has no ancestor among {sorted(targets)} up to level {h.levels[top]!r}")
            cur = h.parent_of(cur)
        mapping[v] = cur
    tuples = [t[:j] + (mapping[t[j]],) + t[j + 1:] for t in d.tuples]
    out = d._replace(tuples=tuples)
    return aggregate_merge(out, (config or AoiConfig()).sum_attrs(out))
