"""Attribute-oriented induction on the raw 15-row table.

Regions climb to countries through the concept hierarchy, identical rows
merge, counts accumulate and family income is summed.
"""
from entrotree import data
from entrotree.cli import format_table
from entrotree.hierarchy import AoiConfig, aoi, remove_attribute

raw = data.table1()
h = data.region_hierarchy()
print(h)
print("USA.east ->", h.ascend("USA.east"), "->", h.ascend("USA.east", 2))
print()

print("\n".join(format_table(raw)))
print()

cfg = AoiConfig(thresholds={"region": 4}, aggregate={"family_income_per_year": "sum"})
g = aoi(raw, [h], cfg)
print(f"generalized: {len(raw)} rows -> {len(g)} rows, total count {g.total_count}")
print("\n".join(format_table(g)))
print()

# without a sum rule the numeric column is removed instead
d = remove_attribute(raw, "family_income_per_year")
print(f"income removed: {len(d)} rows (the two identical Graduate school/China.west rows merged)")
