import json
from collections import Counter

import networkx as nx
import pytest

from cosparsify.graph import cycle_graph, disjoint_union, generate_glued, gnp_random_graph
from cosparsify.harness import (CONNECTED_COUNTS, builtin_corpus, certify_equivalence, corpus_to_graph6,
                                counting_probe, cycle_corpus, enumerate_connected, glued_corpus,
                                load_corpus, profile_complexity, random_corpus, tree_corpus,
                                union_corpus)
from cosparsify.oracle import get_pattern


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_counts(n):
    assert len(enumerate_connected(n)) == CONNECTED_COUNTS[n]


def test_enumeration_matches_graph_atlas():
    atlas = Counter(g.number_of_nodes() for g in nx.graph_atlas_g()
                    if g.number_of_nodes() and nx.is_connected(g))
    for n in range(1, 7):
        assert atlas[n] == CONNECTED_COUNTS[n]


def test_enumeration_refuses_large_n():
    with pytest.raises(ValueError):
        enumerate_connected(9)


def test_provenance_reconstructs_graphs(connected6):
    base = connected6
    u = union_corpus(base, 30, seed=1)
    for g, prov in zip(u.graphs, u.provenance):
        assert g == disjoint_union(*(base.graphs[i] for i in prov["parts"]))
    gl = glued_corpus(20, seed=2)
    for g, prov in zip(gl.graphs, gl.provenance):
        assert g == generate_glued(prov["blocks"], prov["attachment"], prov["seed"])
        assert g.n <= 30
    r = random_corpus(20, seed=3)
    for g, prov in zip(r.graphs, r.provenance):
        assert g == gnp_random_graph(prov["n"], prov["p"], prov["seed"])


def test_corpora_are_seeded():
    assert glued_corpus(10, seed=4).graphs == glued_corpus(10, seed=4).graphs
    assert glued_corpus(10, seed=4).graphs != glued_corpus(10, seed=5).graphs


def test_graph6_file_round_trip(tmp_path, connected6):
    path = tmp_path / "c.g6"
    path.write_text(corpus_to_graph6(connected6))
    loaded = load_corpus(str(path), "graph6")
    assert loaded.graphs == connected6.graphs
    assert loaded.provenance[3] == {"kind": "file", "path": str(path), "line": 4}


def test_certify_dense_vs_cosp(connected6):
    r = certify_equivalence(connected6, "dense", "cosp")
    assert r.equivalent and r.violations == []
    assert r.to_report()["partition_sizes"] == {"dense": 143, "cosp": 143}


def test_certify_unions():
    base = builtin_corpus("connected-upto:5")
    r = certify_equivalence(union_corpus(base, 200, seed=0, max_nodes=10), "dense", "cosp")
    assert r.violation_count == 0


def test_certify_reports_wl1_gap():
    c = builtin_corpus("unions:300:5", seed=1)
    r = certify_equivalence(c, "wl1", "cosp")
    assert r.separated_only_by_a == 0
    assert r.separated_only_by_b > 0 and not r.equivalent
    assert r.violations


def test_certify_is_symmetric(connected6):
    c = union_corpus(connected6, 60, seed=2)
    ab = certify_equivalence(c, "wl1", "dense")
    ba = certify_equivalence(c, "dense", "wl1")
    assert (ab.separated_only_by_a, ab.separated_only_by_b) == (ba.separated_only_by_b, ba.separated_only_by_a)
    assert ab.classes_a == ba.classes_b


def test_counting_probe_triangles(connected6):
    rep = counting_probe(connected6, get_pattern("cycle3"))
    for table in rep["tables"].values():
        assert table["not_separated_count_different"] == 0
    assert rep["agreement"]["dense~cosp"]["separation_sets_equal"]


def test_counting_probe_trees():
    c = tree_corpus(6)
    rep = counting_probe(c, get_pattern("cycle3"))
    assert rep["count_histogram"] == {"0": len(c)}
    assert rep["pairs_count_different"] == 0


def test_profile_trees_and_cycles():
    rep = profile_complexity(tree_corpus(6))
    assert all(row["triple_ratio"] == 0 for row in rep["graphs"])
    rep = profile_complexity(cycle_corpus(8))
    for row in rep["graphs"]:
        assert row["sum_block_triples"] == row["dense_triples"] == row["n"] * (row["n"] - 1) * (row["n"] - 2)
    assert rep["aggregate"]["all_consistent"]


def test_profile_glued_small_blocks():
    c = glued_corpus(100, seed=0, min_nodes=30, max_nodes=30, max_block=6)
    agg = profile_complexity(c)["aggregate"]
    assert agg["mean_triple_ratio"] <= 0.05
    assert agg["total_padded_pairs"] >= agg["total_dense_pairs"] >= agg["total_cosp_pairs"]


def test_profile_kernel_macs():
    rep = profile_complexity(glued_corpus(5, seed=1), kernel=True)
    assert rep["aggregate"]["kernel"]["all_triple_macs_match_plan"]


def test_reports_are_deterministic_and_parallel_safe(connected6):
    c = union_corpus(connected6, 40, seed=3)
    a = json.dumps(certify_equivalence(c, "dense", "cosp").to_report(), sort_keys=True)
    b = json.dumps(certify_equivalence(c, "dense", "cosp", jobs=2).to_report(), sort_keys=True)
    assert a == b
    p1 = json.dumps(profile_complexity(c), sort_keys=True)
    p2 = json.dumps(profile_complexity(c, jobs=2), sort_keys=True)
    assert p1 == p2


@pytest.mark.parametrize("text", ["bogus:3", "connected", "glued:x"])
def test_builtin_corpus_errors(text):
    with pytest.raises(ValueError):
        builtin_corpus(text)
