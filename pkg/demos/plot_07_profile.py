"""
How much work does co-sparsification save?
==========================================

Molecule-like glued graphs (18 to 30 nodes, blocks of 2 to 8 nodes) keep most
pairs but lose almost all three-node interactions.
"""

from cosparsify.harness import glued_corpus, profile_complexity, tree_corpus

rep = profile_complexity(glued_corpus(200, seed=0), kernel=True)
agg = rep["aggregate"]
print(f"graphs: {agg['graphs']}, mean n: {agg['mean_n']:.1f}")
print(f"mean triple ratio: {agg['mean_triple_ratio']:.4f}")
print(f"mean entry ratio:  {agg['mean_entry_ratio']:.4f}")
print(f"pairs: exact {agg['total_cosp_pairs']}, padded to n={agg['max_nodes']}: {agg['total_padded_pairs']}")
print("closed forms agree with the plans:", agg["all_consistent"])
print("kernel MACs agree with the plans:", agg["kernel"]["all_triple_macs_match_plan"])

# %%
# Trees have no block with three nodes, so no triples at all.
print("tree corpus mean triple ratio:", profile_complexity(tree_corpus(7))["aggregate"]["mean_triple_ratio"])
