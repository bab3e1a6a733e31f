"""Command-line front end: ``entrotree {query,induce,score,generalize,compare}``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dataset import Dataset, format_value, read_dataset
from .dmql import Catalog, parse
from .dmql.executor import execute
from .dmql.parser import GENERALIZE
from .entropy import class_info, score_attributes
from .errors import EntrotreeError
from .hierarchy import AoiConfig, aoi, read_hierarchy
from .induction import BASELINE, PRIORITY, InductionConfig, build_tree
from .restructure import PriorityAssignment, height_balance, node_merge
from .rules import compare_trees, extract_rules, format_rules
from .tree import render


def format_table(d: Dataset, count_column: str | None = "count") -> list[str]:
    header = list(d.names) + ([count_column] if count_column else [])
    rows = [
        [format_value(v) for v in t] + ([str(c)] if count_column else [])
        for t, c in zip(d.tuples, d.counts)
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *rows)]
    fmt = lambda r: "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip()
    return [fmt(header)] + [fmt(r) for r in rows]


def _split_list(text: str | None) -> list[str]:
    return [x.strip() for x in (text or "").split(",") if x.strip()]


def _load(args) -> Dataset:
    return read_dataset(args.data, args.schema, class_attr=getattr(args, "class_attr", None))


def _induction_config(args, mode=BASELINE, priorities=()) -> InductionConfig:
    return InductionConfig(
        mode=mode,
        priorities=tuple(priorities),
        epsilon=args.epsilon,
        kappa=args.kappa,
        min_objects=args.min_objects,
    )


def _emit_tree(out, tree, style, rules, count_attr=None):
    out.extend(render(tree, style, count_attr))
    out.append("")
    out.append(f"rules ({len(rules)}):")
    out.extend(format_rules(rules))


def cmd_query(args) -> list[str]:
    path = Path(args.query)
    text = path.read_text(encoding="utf-8") if path.is_file() else args.query
    q = parse(text)
    catalog = Catalog.from_env()
    if args.data:
        catalog.datasets[q.source_dataset] = read_dataset(args.data, args.schema)
    for h in args.hierarchy or ():
        catalog.hierarchies.append(read_hierarchy(h))
    result = execute(q, catalog, _induction_config(args))
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    out: list[str] = []
    if q.task == GENERALIZE:
        out.extend(format_table(result.table, q.count_column or "count"))
        return out
    count_attr = q.leaf_count_attr if q.leaf_count_attr and q.leaf_count_attr != q.class_attribute else None
    _emit_tree(out, result.tree, args.style, result.rules, count_attr)
    out.append("")
    out.extend(result.report.lines("baseline", "priority"))
    if result.merge_log:
        out.append("")
        out.extend(result.merge_log)
    return out


def cmd_induce(args) -> list[str]:
    d = _load(args)
    priorities = _split_list(args.priority)
    mode = PRIORITY if args.mode == "priority" else BASELINE
    if mode == PRIORITY and not priorities:
        raise EntrotreeError("--mode priority needs --priority")
    for p in priorities:
        d.attribute(p)
    cfg = _induction_config(args, mode, priorities if mode == PRIORITY else ())
    tree = build_tree(d, cfg)
    out: list[str] = []
    merge_log: list[str] = []
    if args.merge:
        pa = PriorityAssignment.from_priorities(priorities, args.checkpoint)
        tree = node_merge(tree, pa, merge_log)
    if args.balance or mode == PRIORITY:
        tree = height_balance(tree)
    _emit_tree(out, tree, args.style, extract_rules(tree))
    if merge_log:
        out.append("")
        out.extend(merge_log)
    return out


def cmd_score(args) -> list[str]:
    d = _load(args)
    base = class_info(d)
    out = [f"I({d.class_attribute.name}) = {base:.12f}"]
    scores = score_attributes(d)
    w = max([len("attribute")] + [len(s.attribute) for s in scores])
    out.append(f"{'attribute':<{w}}  {'E':>15}  {'Gain':>15}  {'U':>15}")
    for s in scores:
        out.append(f"{s.attribute:<{w}}  {s.expected_info:>15.12f}  {s.gain:>15.12f}  {s.uncertainty:>15.12f}")
    return out


def _pairs(items, cast=str) -> dict:
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise EntrotreeError(f"expected name=value, got {item!r}")
        out[name.strip()] = cast(val.strip())
    return out


def cmd_generalize(args) -> list[str]:
    d = _load(args)
    hierarchies = [read_hierarchy(h) for h in args.hierarchy or ()]
    cfg = AoiConfig(
        thresholds=_pairs(args.threshold, int),
        aggregate={a: "sum" for a in args.sum or ()},
        default_threshold=args.default_threshold,
    )
    return format_table(aoi(d, hierarchies, cfg))


def cmd_compare(args) -> list[str]:
    d = _load(args)
    priorities = _split_list(args.priority)
    requested = _split_list(args.requested) or priorities
    a = build_tree(d, _induction_config(args))
    b = height_balance(build_tree(d, _induction_config(args, PRIORITY, priorities)))
    return compare_trees(a, b, requested).lines("baseline", "priority")


def _data_args(p, with_class=True):
    p.add_argument("--data", required=True, help="CSV file with a header row")
    p.add_argument("--schema", help="schema file (default: <data>.schema if present)")
    if with_class:
        p.add_argument("--class", dest="class_attr", help="class attribute (overrides the schema)")


def _threshold_args(p):
    p.add_argument("--epsilon", type=float, default=0.0, help="exception threshold, fraction of all rows")
    p.add_argument("--kappa", type=float, default=1.0, help="classification threshold, majority fraction")
    p.add_argument("--min-objects", type=int, default=2, help="rows required on two branches of a gain split")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="entrotree", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("query", help="run a classification-task query")
    p.add_argument("query", help="query text or a file holding it")
    p.add_argument("--data", help="CSV registered under the query's source dataset name")
    p.add_argument("--schema")
    p.add_argument("--hierarchy", action="append", help="hierarchy file (repeatable)")
    p.add_argument("--style", choices=("ascii", "indented"), default="ascii")
    _threshold_args(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("induce", help="build a decision tree and print its rules")
    _data_args(p)
    p.add_argument("--mode", choices=("baseline", "baseline_gain", "priority"), default="baseline")
    p.add_argument("--priority", help="comma-separated priority attributes, most important first")
    p.add_argument("--merge", action="store_true", help="merge equivalent low-priority subtrees")
    p.add_argument("--balance", action="store_true", help="height-balance the tree")
    p.add_argument("--checkpoint", type=float, default=None, help="ranks at or below this are never merged")
    p.add_argument("--style", choices=("ascii", "indented"), default="ascii")
    _threshold_args(p)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("score", help="class entropy and per-attribute E, Gain, U")
    _data_args(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("generalize", help="attribute-oriented induction")
    _data_args(p)
    p.add_argument("--hierarchy", action="append", help="hierarchy file (repeatable)")
    p.add_argument("--threshold", action="append", help="attr=N generalization threshold (repeatable)")
    p.add_argument("--default-threshold", type=int, default=None)
    p.add_argument("--sum", action="append", help="numeric attribute to sum over merged rows (repeatable)")
    p.set_defaults(func=cmd_generalize)

    p = sub.add_parser("compare", help="baseline versus priority tree report")
    _data_args(p)
    p.add_argument("--priority", required=True)
    p.add_argument("--requested", help="attributes to report coverage for (default: the priorities)")
    _threshold_args(p)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        lines = args.func(args)
    except (EntrotreeError, OSError) as e:
        msg = " ".join(str(e).split())
        print(f"entrotree: error: {msg}", file=sys.stderr)
        return 1
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
