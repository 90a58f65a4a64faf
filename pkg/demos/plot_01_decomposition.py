"""
Blocks, cut nodes and the block-cut tree
========================================

Two triangles sharing one node (the bowtie) are the smallest graph where the
block structure matters: node 2 is a cut node and each triangle is a block.
"""

from cosparsify.connectivity import biconnected_decomposition
from cosparsify.graph import bowtie, generate_glued

d = biconnected_decomposition(bowtie())
print("blocks:", d.blocks)
print("cut nodes:", sorted(d.cut_nodes))
print("block-cut tree edges (block index, cut node):", d.block_cut_tree)

# %%
# Glued graphs are built from a prescribed block tree. Sizes 4, 3 and 2 in a
# chain come back as exactly those blocks; the size-2 block is a bridge.
g = generate_glued([4, 3, 2], "chain", seed=7)
d = biconnected_decomposition(g)
print(f"glued graph: n={g.n}, m={g.m}")
print("block sizes:", sorted(len(b) for b in d.blocks), "cut nodes:", sorted(d.cut_nodes))
