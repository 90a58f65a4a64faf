import numpy as np
import pytest
from hypothesis import given, settings

from cosparsify.connectivity import all_pairs_distances, biconnected_decomposition
from cosparsify.graph import (bowtie, complete_graph, cycle_graph, disjoint_union, path_graph,
                              petersen_graph)
from cosparsify.sparsify import (PlanError, Tag, cosparsify_plan, dense_plan, distance_bounded_plan,
                                 expected_cosparse_counts, parse_plan_text, plan_stats)

from test_graph import graphs


def test_dense_counts():
    for g, pairs, entries in ((complete_graph(3), 9, 27), (complete_graph(2), 4, 8), (bowtie(), 25, 125)):
        st = plan_stats(dense_plan(g))
        assert (st["pair_count"], st["entry_count"]) == (pairs, entries)
    assert plan_stats(dense_plan(bowtie()))["triple_count"] == 60


def test_cosp_k3_entries():
    p = cosparsify_plan(complete_graph(3))
    assert p.pair_count == 9
    assert plan_stats(p)["triple_count"] == 6
    for u in range(3):
        for v in range(3):
            tags = sorted(t for t, _, _ in p.neighbors(u, v))
            if u == v:
                assert tags == [Tag.BACK, Tag.BACK, Tag.DIAG_SELF]
            else:
                assert tags == [Tag.TRIPLE, Tag.SELF_LEFT, Tag.SELF_RIGHT]


def test_cosp_k3_entry_sources():
    p = cosparsify_plan(complete_graph(3))
    ents = {t: (a, b) for t, a, b in p.neighbors(0, 1)}
    assert ents[Tag.TRIPLE] == ((0, 2), (2, 1))
    assert ents[Tag.SELF_LEFT] == ((0, 0), (0, 1))
    assert ents[Tag.SELF_RIGHT] == ((0, 1), (1, 1))
    backs = sorted((a, b) for t, a, b in p.neighbors(1, 1) if t == Tag.BACK)
    assert backs == [((1, 0), (0, 1)), ((1, 2), (2, 1))]


def test_tree_has_no_triples():
    assert plan_stats(cosparsify_plan(path_graph(4)))["triple_count"] == 0


def test_bowtie_triples():
    assert plan_stats(cosparsify_plan(bowtie()))["triple_count"] == 12


def test_union_pair_count():
    g = disjoint_union(complete_graph(3), complete_graph(2))
    assert plan_stats(cosparsify_plan(g))["pair_count"] == 13


def test_distance_plan_c8_equals_cosp():
    g = cycle_graph(8)
    assert distance_bounded_plan(g, None, 4).same_as(cosparsify_plan(g))


def test_distance_plan_c12():
    g = cycle_graph(12)
    p = distance_bounded_plan(g, None, 4)
    assert p.pair_count == 12 * (1 + 2 * 4)
    assert not p.has_pair(0, 5) and not p.has_pair(0, 6)
    assert p.pair_count < cosparsify_plan(g).pair_count


def test_distance_plan_triples_respect_bound():
    g = cycle_graph(12)
    dist = all_pairs_distances(g)
    p = distance_bounded_plan(g, None, 3)
    for i in range(p.entry_count):
        if p.tags[i] == Tag.TRIPLE:
            u, v = p.pairs[p.targets[i]]
            t = p.middle[i]
            assert max(dist[u][t], dist[t][v], dist[u][v]) <= 3


def test_mismatched_decomposition_rejected():
    with pytest.raises(PlanError):
        cosparsify_plan(complete_graph(4), biconnected_decomposition(path_graph(4)))


def test_plan_arrays_are_read_only():
    p = cosparsify_plan(bowtie())
    with pytest.raises(ValueError):
        p.pairs[0, 0] = 3


def test_text_round_trip():
    for g in (bowtie(), petersen_graph(), disjoint_union(cycle_graph(5), path_graph(3))):
        for p in (cosparsify_plan(g), dense_plan(g), distance_bounded_plan(g, None, 2)):
            q = parse_plan_text(p.to_text())
            assert q.same_as(p)
            assert q.to_text() == p.to_text()


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=9))
def test_plan_invariants(g):
    d = biconnected_decomposition(g)
    p = cosparsify_plan(g, d)
    st = plan_stats(p)
    pairs_cf, triples_cf = expected_cosparse_counts(d)
    assert st["pair_count"] == pairs_cf == sum(len(c) ** 2 for c in d.components)
    assert st["triple_count"] == triples_cf
    n = g.n
    dense_tri = n * (n - 1) * (n - 2)
    assert st["triple_count"] <= dense_tri
    single_block = n >= 3 and len(d.blocks) == 1 and len(d.blocks[0]) == n
    assert (st["triple_count"] == dense_tri) == (single_block or dense_tri == 0)
    comp = d.component_of
    for u, v in p.pairs.tolist():
        assert comp[u] == comp[v]
    blocks = [set(b) for b in d.large_blocks()]
    for i in range(p.entry_count):
        assert 0 <= p.left[i] < p.pair_count and 0 <= p.right[i] < p.pair_count
        if p.tags[i] == Tag.TRIPLE:
            u, v = p.pairs[p.targets[i]].tolist()
            t = int(p.middle[i])
            assert len({u, t, v}) == 3
            assert any({u, t, v} <= b for b in blocks)
    assert np.all(np.diff(p.offsets) > 0)
    # deterministic rebuild, and a vacuous distance bound changes nothing
    assert cosparsify_plan(g, d).to_text() == p.to_text()
    assert distance_bounded_plan(g, d, max(n, 1)).same_as(p)
