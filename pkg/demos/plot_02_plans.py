"""
Dense versus co-sparsified interaction plans
============================================

A 2-FWL update of pair (u, v) reads the pairs (u, t) and (t, v). The dense plan
does this for every t; the co-sparsified plan keeps three-node interactions
only inside blocks of size >= 3 and replaces the rest with a few two-node terms.
"""

from cosparsify.graph import bowtie, cycle_graph, complete_graph, disjoint_union
from cosparsify.sparsify import cosparsify_plan, dense_plan, distance_bounded_plan, plan_stats

g = bowtie()
for name, plan in (("dense", dense_plan(g)), ("co-sparsified", cosparsify_plan(g))):
    st = plan_stats(plan)
    print(f"{name:>14}: pairs={st['pair_count']:3d} entries={st['entry_count']:3d} "
          f"triples={st['triple_count']:3d}")

# %%
# The neighbour list of one off-diagonal pair of a triangle: one triple, plus
# the two self terms that replace t = u and t = v.
for tag, left, right in cosparsify_plan(complete_graph(3)).neighbors(0, 1):
    print(f"  {tag.name:<11} {left} x {right}")

# %%
# Pairs across components are never materialised, so K3 + K2 needs 9 + 4 pairs.
print("K3+K2 pairs:", plan_stats(cosparsify_plan(disjoint_union(complete_graph(3), complete_graph(2))))["pair_count"])

# %%
# A distance bound drops far pairs as well: C12 with max_dist 4 keeps
# 12 * (1 + 2 * 4) = 108 of its 144 pairs.
print("C12, max_dist=4:", distance_bounded_plan(cycle_graph(12), None, 4).pair_count, "pairs")

# %%
# Plans export to a line-oriented text format.
print("\n".join(cosparsify_plan(g).to_text().splitlines()[:12]))
