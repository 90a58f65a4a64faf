"""Corpora, engine-equivalence certification, counting probes and complexity profiles.

Reports are plain dicts with a schema version and stable field names; they
contain no timing information unless explicitly requested, so identical
inputs give byte-identical JSON.
"""

from __future__ import annotations

import os
import random
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .connectivity import biconnected_decomposition
from .graph import (Graph, cycle_graph, disjoint_union, generate_glued, gnp_random_graph,
                    parse_edge_list, parse_graph6, to_graph6)
from .oracle import Pattern, count_occurrences, isomorphic_bruteforce
from .refine import Engine, parse_engine, signature
from .sparsify import cosparsify_plan, dense_plan, expected_cosparse_counts, plan_stats

SCHEMA = "cosparsify.report/v1"

# Connected graphs on n unlabelled nodes (OEIS A001349).
CONNECTED_COUNTS = {0: 1, 1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


@dataclass
class Corpus:
    name: str
    graphs: list
    provenance: list = field(default_factory=list)

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)


def _map(fn, items, jobs: int = 1):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# ---------------------------------------------------------------------------
# Corpus construction

def _invariant(g: Graph) -> tuple:
    adj = [set(a) for a in g.adj]
    per_node = []
    for u in range(g.n):
        tri = sum(1 for a, b in combinations(g.adj[u], 2) if b in adj[a])
        per_node.append((len(adj[u]), tuple(sorted(len(adj[w]) for w in adj[u])), tri))
    return (g.n, g.m, tuple(sorted(per_node)))


def enumerate_connected(n: int) -> Corpus:
    """All connected graphs on ``n`` nodes up to isomorphism, by vertex augmentation.

    Every connected graph has a non-cut vertex, so each one arises from a
    connected graph on ``n - 1`` nodes plus a new vertex joined to a non-empty
    subset. Candidates are bucketed by an invariant and deduplicated with the
    brute-force isomorphism oracle.
    """
    if n > 8:
        raise ValueError("exhaustive enumeration is limited to n <= 8")
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 1:
        graphs = [Graph(n)]
    else:
        parents = enumerate_connected(n - 1).graphs
        buckets: dict[tuple, list] = defaultdict(list)
        graphs = []
        for parent in parents:
            base = list(parent.edges)
            for mask in range(1, 1 << (n - 1)):
                edges = base + [(v, n - 1) for v in range(n - 1) if mask >> v & 1]
                cand = Graph(n, edges)
                bucket = buckets[_invariant(cand)]
                if any(isomorphic_bruteforce(cand, h) for h in bucket):
                    continue
                bucket.append(cand)
                graphs.append(cand)
    prov = [{"kind": "enumerated", "n": n, "index": i} for i in range(len(graphs))]
    return Corpus(f"connected-{n}", graphs, prov)


def enumerate_connected_upto(n: int) -> Corpus:
    graphs, prov = [], []
    for k in range(1, n + 1):
        c = enumerate_connected(k)
        graphs.extend(c.graphs)
        prov.extend(c.provenance)
    return Corpus(f"connected-upto-{n}", graphs, prov)


def union_corpus(base: Corpus, count: int, seed: int, max_parts: int = 3,
                 max_nodes: int = 12) -> Corpus:
    """Seeded disjoint unions of 2..max_parts graphs drawn from ``base``."""
    rng = random.Random(seed)
    pool = [i for i, g in enumerate(base.graphs) if g.n >= 1]
    graphs, prov = [], []
    while len(graphs) < count:
        k = rng.randint(2, max_parts)
        picks = sorted(rng.choice(pool) for _ in range(k))
        if sum(base.graphs[i].n for i in picks) > max_nodes:
            continue
        graphs.append(disjoint_union(*(base.graphs[i] for i in picks)))
        prov.append({"kind": "union", "base": base.name, "parts": picks})
    return Corpus(f"unions-{count}-of-{base.name}", graphs, prov)


def glued_corpus(count: int, seed: int, min_nodes: int = 18, max_nodes: int = 30,
                 min_block: int = 2, max_block: int = 8) -> Corpus:
    """Seeded block-tree graphs: random biconnected blocks glued at cut nodes.

    Node counts are drawn from ``[min_nodes, max_nodes]`` (the final graph may
    fall short of the drawn target by less than one block).
    """
    rng = random.Random(seed)
    graphs, prov = [], []
    for i in range(count):
        target = rng.randint(min_nodes, max_nodes)
        sizes: list[int] = []
        nodes = 1
        while True:
            s = rng.randint(min_block, max_block)
            if nodes + s - 1 > target:
                break
            sizes.append(s)
            nodes += s - 1
        if not sizes:
            sizes = [min_block]
        tree = [(rng.randrange(b), b) for b in range(1, len(sizes))]
        gseed = rng.randrange(2 ** 31)
        graphs.append(generate_glued(sizes, tree, gseed))
        prov.append({"kind": "generated", "generator": "glued", "blocks": sizes,
                     "attachment": [list(e) for e in tree], "seed": gseed})
    return Corpus(f"glued-{count}-seed{seed}", graphs, prov)


def random_corpus(count: int, seed: int, max_n: int = 12, min_n: int = 1) -> Corpus:
    """Seeded G(n, p) graphs with n in [min_n, max_n] and p drawn per graph."""
    rng = random.Random(seed)
    graphs, prov = [], []
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        p = rng.choice([0.1, 0.2, 0.3, 0.45, 0.6])
        gseed = rng.randrange(2 ** 31)
        graphs.append(gnp_random_graph(n, p, gseed))
        prov.append({"kind": "generated", "generator": "gnp", "n": n, "p": p, "seed": gseed})
    return Corpus(f"random-{count}-seed{seed}", graphs, prov)


def tree_corpus(n: int) -> Corpus:
    graphs, prov = [], []
    for k in range(1, n + 1):
        for i, g in enumerate(enumerate_connected(k).graphs):
            if g.m == g.n - 1:
                graphs.append(g)
                prov.append({"kind": "enumerated", "n": k, "index": i})
    return Corpus(f"trees-upto-{n}", graphs, prov)


def cycle_corpus(n: int) -> Corpus:
    graphs = [cycle_graph(k) for k in range(3, n + 1)]
    return Corpus(f"cycles-upto-{n}", graphs,
                  [{"kind": "generated", "generator": "cycle", "n": k} for k in range(3, n + 1)])


def load_corpus(path: str, fmt: str = "graph6") -> Corpus:
    """A graph6 file (one graph per line) or an edge-list file or directory."""
    graphs, prov = [], []
    if fmt == "graph6":
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                if line.strip():
                    graphs.append(parse_graph6(line))
                    prov.append({"kind": "file", "path": path, "line": lineno})
    elif fmt == "edgelist":
        files = sorted(os.path.join(path, f) for f in os.listdir(path)) if os.path.isdir(path) else [path]
        for f in files:
            with open(f) as fh:
                graphs.append(parse_edge_list(fh.read()))
            prov.append({"kind": "file", "path": f, "line": 1})
    else:
        raise ValueError(f"unknown corpus format {fmt!r}")
    return Corpus(os.path.basename(path.rstrip("/")) or path, graphs, prov)


def builtin_corpus(text: str, seed: int = 0) -> Corpus:
    """Named corpora: ``connected:N``, ``connected-upto:N``, ``unions:COUNT[:N]``,
    ``glued:COUNT``, ``random:COUNT[:MAXN]``, ``trees:N``, ``cycles:N``."""
    kind, _, rest = text.partition(":")
    try:
        args = [int(x) for x in rest.split(":") if x]
    except ValueError:
        raise ValueError(f"corpus arguments must be integers: {text!r}") from None
    if not args:
        raise ValueError(f"corpus {text!r} needs a size argument, e.g. {kind}:6")
    if kind == "connected":
        return enumerate_connected(args[0])
    if kind == "connected-upto":
        return enumerate_connected_upto(args[0])
    if kind == "unions":
        base = enumerate_connected_upto(args[1] if len(args) > 1 else 6)
        return union_corpus(base, args[0], seed)
    if kind == "glued":
        return glued_corpus(args[0], seed)
    if kind == "random":
        return random_corpus(args[0], seed, max_n=args[1] if len(args) > 1 else 12)
    if kind == "trees":
        return tree_corpus(args[0])
    if kind == "cycles":
        return cycle_corpus(args[0])
    raise ValueError(f"unknown corpus {text!r}")


# ---------------------------------------------------------------------------
# Equivalence certification

def _sig_task(args):
    g, engine, layers = args
    return signature(g, engine, layers=layers).digest


def corpus_signatures(c: Corpus, engine, jobs: int = 1, layers: Optional[int] = None) -> list:
    engine = parse_engine(engine)
    return _map(_sig_task, [(g, engine, layers) for g in c.graphs], jobs)


def _class_ids(sigs: Sequence[bytes]) -> np.ndarray:
    ids: dict[bytes, int] = {}
    return np.array([ids.setdefault(s, len(ids)) for s in sigs], dtype=np.int64)


def _disagreements(ids_a: np.ndarray, ids_b: np.ndarray, cap: int):
    """Pairs (i, j), i < j, separated by exactly one of the two partitions."""
    only_a, only_b, listed = 0, 0, []
    joint: dict[tuple, list] = defaultdict(list)
    for i, (a, b) in enumerate(zip(ids_a.tolist(), ids_b.tolist())):
        joint[(a, b)].append(i)
    by_a: dict[int, list] = defaultdict(list)
    by_b: dict[int, list] = defaultdict(list)
    for key, members in joint.items():
        by_a[key[0]].append(members)
        by_b[key[1]].append(members)
    for groups, tag in ((by_a, "b"), (by_b, "a")):
        # same class under one engine, split by the other
        for parts in groups.values():
            for x, y in combinations(parts, 2):
                n_pairs = len(x) * len(y)
                if tag == "b":
                    only_b += n_pairs
                else:
                    only_a += n_pairs
                for i in x:
                    for j in y:
                        if len(listed) < cap:
                            listed.append((min(i, j), max(i, j), f"only_{tag}"))
    listed.sort()
    return only_a, only_b, listed


@dataclass
class EquivalenceReport:
    corpus: str
    engine_a: str
    engine_b: str
    graph_count: int
    classes_a: int
    classes_b: int
    separated_only_by_a: int
    separated_only_by_b: int
    violations: list
    timings: Optional[dict] = None

    @property
    def violation_count(self) -> int:
        return self.separated_only_by_a + self.separated_only_by_b

    @property
    def equivalent(self) -> bool:
        return self.violation_count == 0

    def to_report(self) -> dict:
        rep = {
            "schema": SCHEMA,
            "kind": "equivalence",
            "corpus": self.corpus,
            "engines": [self.engine_a, self.engine_b],
            "graph_count": self.graph_count,
            "partition_sizes": {self.engine_a: self.classes_a, self.engine_b: self.classes_b},
            "separated_only_by": {self.engine_a: self.separated_only_by_a,
                                  self.engine_b: self.separated_only_by_b},
            "violation_count": self.violation_count,
            "violations": [{"graphs": [i, j], "separated_by": self.engine_a if t == "only_a" else self.engine_b}
                           for i, j, t in self.violations],
            "equivalent": self.equivalent,
        }
        if self.timings is not None:
            rep["timings"] = self.timings
        return rep


def certify_equivalence(c: Corpus, a, b, jobs: int = 1, layers: Optional[int] = None,
                        max_listed: int = 100, timings: bool = False) -> EquivalenceReport:
    """Compare the signature partitions two engines induce on a corpus."""
    a, b = parse_engine(a), parse_engine(b)
    t0 = time.perf_counter()
    sa = corpus_signatures(c, a, jobs, layers)
    t1 = time.perf_counter()
    sb = corpus_signatures(c, b, jobs, layers)
    t2 = time.perf_counter()
    ia, ib = _class_ids(sa), _class_ids(sb)
    only_a, only_b, listed = _disagreements(ia, ib, max_listed)
    return EquivalenceReport(
        corpus=c.name, engine_a=str(a), engine_b=str(b), graph_count=len(c),
        classes_a=int(ia.max() + 1) if len(ia) else 0,
        classes_b=int(ib.max() + 1) if len(ib) else 0,
        separated_only_by_a=only_a, separated_only_by_b=only_b, violations=listed,
        timings={str(a): round(t1 - t0, 3), str(b): round(t2 - t1, 3)} if timings else None,
    )


# ---------------------------------------------------------------------------
# Counting probes

def _count_task(args):
    g, pattern = args
    return count_occurrences(g, pattern).total


def corpus_counts(c: Corpus, p: Pattern, jobs: int = 1) -> list[int]:
    return _map(_count_task, [(g, p) for g in c.graphs], jobs)


def counting_probe(c: Corpus, p: Pattern, engines=("dense", "cosp"), jobs: int = 1,
                   counts: Optional[list] = None, signatures: Optional[dict] = None) -> dict:
    """Contingency tables (separated or not x count equal or different) per engine.

    ``signatures`` may map engine strings to precomputed corpus signatures.
    """
    engines = [parse_engine(e) for e in engines]
    counts = counts if counts is not None else corpus_counts(c, p, jobs)
    cnt = np.asarray(counts)
    iu = np.triu_indices(len(c), k=1)
    diff = (cnt[:, None] != cnt[None, :])[iu]
    tables, separated = {}, {}
    for e in engines:
        sigs = (signatures or {}).get(str(e)) or corpus_signatures(c, e, jobs)
        ids = _class_ids(sigs)
        sep = (ids[:, None] != ids[None, :])[iu]
        separated[str(e)] = sep
        tables[str(e)] = {
            "separated_count_different": int(np.sum(sep & diff)),
            "separated_count_equal": int(np.sum(sep & ~diff)),
            "not_separated_count_different": int(np.sum(~sep & diff)),
            "not_separated_count_equal": int(np.sum(~sep & ~diff)),
        }
    names = [str(e) for e in engines]
    agree = {}
    for x, y in combinations(names, 2):
        agree[f"{x}~{y}"] = {
            "separation_sets_equal": bool(np.array_equal(separated[x] & diff, separated[y] & diff)),
            "pairs_differing": int(np.sum((separated[x] != separated[y]) & diff)),
        }
    return {
        "schema": SCHEMA,
        "kind": "counting_probe",
        "corpus": c.name,
        "pattern": p.name,
        "graph_count": len(c),
        "count_histogram": {str(k): int(v) for k, v in sorted(zip(*np.unique(cnt, return_counts=True)))}
        if len(cnt) else {},
        "pairs": int(len(diff)),
        "pairs_count_different": int(np.sum(diff)),
        "tables": tables,
        "agreement": agree,
    }


# ---------------------------------------------------------------------------
# Complexity profile

def _profile_task(args):
    g, kernel, d, L, K, seed = args
    dec = biconnected_decomposition(g)
    pairs_cf, triples_cf = expected_cosparse_counts(dec)
    sp = cosparsify_plan(g, dec)
    st = plan_stats(sp)
    n = g.n
    dense_triples = n * (n - 1) * (n - 2)
    row = {
        "n": n,
        "m": g.m,
        "components": dec.num_components,
        "blocks_ge3": len(dec.large_blocks()),
        "sum_component_sq": pairs_cf,
        "sum_block_triples": triples_cf,
        "plan_pair_count": st["pair_count"],
        "plan_triple_count": st["triple_count"],
        "plan_entry_count": st["entry_count"],
        "dense_pairs": n * n,
        "dense_entries": n ** 3,
        "dense_triples": dense_triples,
        "pair_ratio": pairs_cf / (n * n) if n else 0.0,
        "triple_ratio": triples_cf / dense_triples if dense_triples else 0.0,
        "entry_ratio": st["entry_count"] / n ** 3 if n else 0.0,
        "consistent": pairs_cf == st["pair_count"] and triples_cf == st["triple_count"],
    }
    if kernel:
        from .kernel import KernelParams, forward
        from .rrwp import compute_rrwp
        params = KernelParams.random(L, d, seed)
        enc = compute_rrwp(g, K)
        cos = forward(g, sp, enc, params).macs
        den = forward(g, dense_plan(g), enc, params).macs
        row["kernel"] = {
            "cosp_triple_macs": cos["triple_stage"],
            "dense_triple_macs": den["triple_stage"],
            "cosp_total_macs": cos["total"],
            "dense_total_macs": den["total"],
            "triple_macs_match_plan": cos["triple_stage"] == L * triples_cf * d,
        }
    return row


def profile_complexity(c: Corpus, kernel: bool = False, d: int = 8, L: int = 2, K: int = 4,
                       seed: int = 0, jobs: int = 1) -> dict:
    rows = _map(_profile_task, [(g, kernel, d, L, K, seed) for g in c.graphs], jobs)
    for i, row in enumerate(rows):
        row["graph"] = i
    eta = max((g.n for g in c.graphs), default=0)

    def mean(key):
        return float(np.mean([r[key] for r in rows])) if rows else 0.0

    agg = {
        "graphs": len(rows),
        "mean_n": mean("n"),
        "mean_m": mean("m"),
        "mean_pair_ratio": mean("pair_ratio"),
        "mean_triple_ratio": mean("triple_ratio"),
        "mean_entry_ratio": mean("entry_ratio"),
        "total_cosp_pairs": int(sum(r["sum_component_sq"] for r in rows)),
        "total_dense_pairs": int(sum(r["dense_pairs"] for r in rows)),
        "total_padded_pairs": int(len(rows) * eta * eta),
        "max_nodes": eta,
        "total_cosp_triples": int(sum(r["sum_block_triples"] for r in rows)),
        "total_dense_triples": int(sum(r["dense_triples"] for r in rows)),
        "all_consistent": all(r["consistent"] for r in rows),
    }
    if kernel:
        agg["kernel"] = {"d": d, "L": L, "K": K,
                         "all_triple_macs_match_plan": all(r["kernel"]["triple_macs_match_plan"] for r in rows)}
    return {"schema": SCHEMA, "kind": "complexity_profile", "corpus": c.name,
            "aggregate": agg, "graphs": rows}


def corpus_to_graph6(c: Corpus) -> str:
    return "".join(to_graph6(g) + "\n" for g in c.graphs)
