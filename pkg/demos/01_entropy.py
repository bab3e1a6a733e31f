"""How much does each attribute tell us about income level?

Walks the 17-row education table: class entropy, the expected information
left after splitting on each attribute, the gain, and the uncertainty
coefficient that normalizes it.
"""
from entrotree import data
from entrotree.dataset import class_distribution, partition
from entrotree.entropy import class_info, expected_info, relevance_filter, RelevancePolicy, score_attributes

d = data.table3()
dist = class_distribution(d)
print(f"class tally {dist.format()}  ->  I = {class_info(d):.12f} bits")

# the expected information is a weighted average over the partition
for value, sub in partition(d, "avg_edu_level").items():
    counts = list(class_distribution(sub).values())
    print(f"  {value:<18} {class_distribution(sub).format():<22} I = {expected_info(counts):.6f}")

print()
for s in score_attributes(d):
    print(f"{s.attribute:<14} E={s.expected_info:.12f}  Gain={s.gain:.12f}  U={s.uncertainty:.6f}")

print()
print("keep attributes with U >= 0.5:", relevance_filter(d, RelevancePolicy(threshold=0.5)))
print("same, but country is protected:", relevance_filter(d, RelevancePolicy(threshold=0.5), protected=["country"]))
