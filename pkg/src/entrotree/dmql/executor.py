"""Run parsed queries against a catalog of named datasets and hierarchies."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..dataset import Dataset, name_key, project, read_dataset, rename_attribute, value_key
from ..errors import DmqlExecutionError, EntrotreeError
from ..hierarchy import AoiConfig, ConceptHierarchy, generalize_to_concepts, read_hierarchy
from ..induction import BASELINE, PRIORITY, InductionConfig, build_tree
from ..restructure import PriorityAssignment, height_balance, node_merge
from ..rules import ComparisonReport, ClassificationRule, compare_trees, extract_rules
from ..tree import Node
from .parser import GENERALIZE, DmqlQuery

log = logging.getLogger(__name__)

CATALOG_ENV = "ENTROTREE_CATALOG"


@dataclass
class Catalog:
    """Named datasets plus the concept hierarchies available to queries."""

    datasets: dict = field(default_factory=dict)
    hierarchies: list = field(default_factory=list)

    def dataset(self, name: str) -> Dataset:
        for k, d in self.datasets.items():
            if name_key(k) == name_key(name):
                return d
        raise DmqlExecutionError(f"unknown dataset {name!r}")

    def hierarchy_with_level(self, level: str) -> ConceptHierarchy | None:
        for h in self.hierarchies:
            if any(name_key(lv) == name_key(level) for lv in h.levels):
                return h
        return None

    def hierarchy_for(self, attr: str) -> ConceptHierarchy | None:
        for h in self.hierarchies:
            if name_key(h.attribute) == name_key(attr):
                return h
        return None

    @classmethod
    def from_directory(cls, path: str | Path) -> "Catalog":
        """Every ``*.csv`` (schema from its ``.schema`` sidecar) and every ``*.hier`` file."""
        path = Path(path)
        if not path.is_dir():
            raise DmqlExecutionError(f"catalog directory {str(path)!r} does not exist")
        datasets = {p.stem: read_dataset(p) for p in sorted(path.glob("*.csv"))}
        hierarchies = [read_hierarchy(p) for p in sorted(path.glob("*.hier"))]
        return cls(datasets, hierarchies)

    @classmethod
    def from_env(cls) -> "Catalog":
        where = os.environ.get(CATALOG_ENV)
        return cls.from_directory(where) if where else cls()


@dataclass
class QueryResult:
    query: DmqlQuery
    table: Dataset | None = None
    tree: Node | None = None
    baseline: Node | None = None
    rules: list[ClassificationRule] = field(default_factory=list)
    report: ComparisonReport | None = None
    merge_log: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def execute(q: DmqlQuery, catalog: Catalog, defaults: InductionConfig | None = None) -> QueryResult:
    """Generalize (``till ... replace``) or build a priority tree, per the query's task."""
    d = catalog.dataset(q.source_dataset)
    try:
        if q.task == GENERALIZE:
            return _generalize(q, d, catalog)
        return _classify(q, d, defaults or InductionConfig())
    except DmqlExecutionError:
        raise
    except EntrotreeError as e:
        raise DmqlExecutionError(str(e)) from e


def _warn(result: QueryResult, msg: str):
    result.warnings.append(msg)
    log.warning(msg)


def _check_bindings(q: DmqlQuery, catalog: Catalog, result: QueryResult):
    """Bound value sets must exist in the hierarchy level they name."""
    for name, values in q.bindings:
        h = catalog.hierarchy_with_level(name)
        if h is None:
            _warn(result, f"binding {name!r} names no hierarchy level; ignored")
            continue
        level = h.level_index(name)
        for v in values:
            if not h.covers(v):
                raise DmqlExecutionError(f"{name}: value {v!r} is not in the hierarchy for {h.attribute!r}")
            if h.level_of(v) != level:
                raise DmqlExecutionError(f"{name}: value {v!r} is not at level {name!r}")


def _generalize(q: DmqlQuery, d: Dataset, catalog: Catalog) -> QueryResult:
    result = QueryResult(q)
    rc = q.replace_clause
    h = catalog.hierarchy_with_level(rc.from_level)
    if h is None:
        raise DmqlExecutionError(f"no hierarchy has a level named {rc.from_level!r}")
    top = h.level_index(rc.to_level)
    _check_bindings(q, catalog, result)
    if not d.has_attribute(h.attribute):
        raise DmqlExecutionError(f"dataset {q.source_dataset!r} has no attribute {h.attribute!r}")

    bound = q.binding_map
    for name, values in bound.items():
        if name_key(name) == name_key(rc.from_level):
            allowed = {value_key(v) for v in values}
            for v in d.distinct(h.attribute):
                if value_key(v) not in allowed:
                    _warn(result, f"value {v!r} of {h.attribute!r} is not listed in {name}")

    numeric = [a.name for a in d.schema if a.is_numeric and not a.is_class]
    cfg = AoiConfig(aggregate={a: "sum" for a in numeric})
    g = generalize_to_concepts(d, h.attribute, h, rc.target_values, max_level=top, config=cfg)
    g = rename_attribute(g, h.attribute, rc.new_attribute)

    keep = list(q.relevance) if q.relevance else [a.name for a in g.schema if not a.is_numeric]
    for a in keep:
        if not g.has_attribute(a):
            raise DmqlExecutionError(f"unknown attribute {a!r} in relevance list")
    keep_names = [g.attribute(a).name for a in keep]
    keep_names += [a for a in numeric if a not in keep_names and g.has_attribute(a)]
    result.table = project(g, keep_names, sum_attrs=numeric, class_attr=keep_names[0])
    return result


def _classify(q: DmqlQuery, d: Dataset, defaults: InductionConfig) -> QueryResult:
    result = QueryResult(q)
    for a in list(q.relevance) + [p.attribute for p in q.priorities] + [q.leaf_count_attr or q.relevance[0]]:
        if not d.has_attribute(a):
            raise DmqlExecutionError(f"unknown attribute {a!r}")
    d = d.with_class(q.class_attribute)
    priorities = tuple(d.attribute(p.attribute).name for p in q.priorities)
    orders = {}
    for p in q.priorities:
        present = {value_key(v) for v in d.distinct(p.attribute)}
        for v in p.value_order:
            if value_key(v) not in present:
                _warn(result, f"priority value {v!r} of {p.attribute!r} does not occur in the data")
        orders[d.attribute(p.attribute).name] = p.value_order
    attrs = tuple(q.relevance[1:]) or None

    base_cfg = replace(defaults, mode=BASELINE, priorities=(), value_order={}, attributes=attrs)
    result.baseline = build_tree(d, base_cfg)
    if priorities:
        cfg = replace(defaults, mode=PRIORITY, priorities=priorities, value_order=orders, attributes=attrs)
        tree = build_tree(d, cfg)
        tree = node_merge(tree, PriorityAssignment.from_priorities(priorities), result.merge_log)
        tree = height_balance(tree)
    else:
        tree = height_balance(result.baseline)
    result.tree = tree
    result.rules = extract_rules(tree)
    result.report = compare_trees(result.baseline, tree, priorities)
    return result


def run(text: str, catalog: Catalog, defaults: InductionConfig | None = None) -> QueryResult:
    from .parser import parse

    return execute(parse(text), catalog, defaults)
