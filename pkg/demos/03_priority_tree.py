"""Gain alone never tests country; a priority list forces it to the root."""
from entrotree import data
from entrotree.induction import BASELINE, PRIORITY, InductionConfig, build_tree
from entrotree.rules import compare_trees, extract_rules, format_rules
from entrotree.tree import render

d = data.table3()

baseline = build_tree(d, InductionConfig(BASELINE, epsilon=0.0, kappa=1.0))
print("baseline tree")
print("\n".join(render(baseline)))
print()

order = {"country": ("India", "USA", "China", "Cuba")}
prio = build_tree(d, InductionConfig(PRIORITY, priorities=("country",), value_order=order))
print("priority tree")
print("\n".join(render(prio)))
print()
print("\n".join(format_rules(extract_rules(prio))))
print()
print("\n".join(compare_trees(baseline, prio, ["country"]).lines("baseline", "priority")))

# a looser classification threshold stops growing once 60% agree
print()
print("kappa = 0.6")
print("\n".join(render(build_tree(d, InductionConfig(PRIORITY, priorities=("country",), kappa=0.6)))))
