"""Merging and balancing change the shape of a tree, never its answers."""
from collections import Counter

from entrotree import data
from entrotree.induction import BASELINE, InductionConfig, build_tree
from entrotree.restructure import PriorityAssignment, balance_factor, height_balance, height_balance_priority, node_merge
from entrotree.rules import extract_rules
from entrotree.tree import predict, render

d = data.edu_regions()
cfg = InductionConfig(BASELINE, min_objects=1, attributes=("avg_edu_level", "region"))
tree = build_tree(d, cfg)
print("\n".join(render(tree)))
print()

# nothing protected: equivalent sibling leaves fold into value sets
log = []
merged = node_merge(tree, PriorityAssignment(), log)
print("\n".join(log))
print("\n".join(render(merged)))
print()

# protecting region refuses every merge below a region test
log = []
kept = node_merge(tree, PriorityAssignment.from_priorities(["region"]), log)
print(f"{len(log)} merges refused, e.g. {log[0]!r}; tree unchanged: {kept == tree}")
print()

balanced = height_balance(merged)
print("balance factor at root:", balance_factor(balanced))
same = all(predict(merged, r) == predict(balanced, r) for r in d.rows())
print("predictions unchanged by balancing:", same)
print("rule multiset unchanged:", Counter(r.key() for r in extract_rules(merged)) == Counter(r.key() for r in extract_rules(balanced)))
print()

regrown = height_balance_priority(tree, d, PriorityAssignment.from_priorities(["country", "region"]), cfg)
print("regrown with country, then region, first")
print("\n".join(render(regrown)))
