"""
Certifying equal expressive power on exhaustive corpora
========================================================

Dense and co-sparsified 2-FWL should split any corpus into the same signature
classes. We check every connected graph on up to 6 nodes, then seeded disjoint
unions of them, and report WL1 for contrast.
"""

from cosparsify.harness import Corpus, certify_equivalence, enumerate_connected_upto, union_corpus

small = enumerate_connected_upto(6)
unions = union_corpus(small, 500, seed=0)

for corpus in (small, unions):
    r = certify_equivalence(corpus, "dense", "cosp")
    print(f"{corpus.name}: {r.graph_count} graphs, classes {r.classes_a}/{r.classes_b}, "
          f"violations {r.violation_count}")

# %%
# WL1 is strictly coarser: it never separates a pair that cosp merges, while
# cosp separates pairs such as C6 versus K3 + K3 (both in the combined corpus).
both = Corpus("connected+unions", small.graphs + unions.graphs)
r = certify_equivalence(both, "wl1", "cosp")
print(f"separated only by wl1: {r.separated_only_by_a}, only by cosp: {r.separated_only_by_b}")
