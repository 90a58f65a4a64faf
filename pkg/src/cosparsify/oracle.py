"""Brute-force ground truth on small graphs: subgraph counts, Menger paths, isomorphism."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional

from .graph import Graph, cycle_graph, path_graph


class OracleRefusal(ValueError):
    """The brute-force oracle declines inputs beyond its size limit."""


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph
    automorphism_count: int

    @classmethod
    def from_graph(cls, name: str, g: Graph) -> "Pattern":
        return cls(name, g, automorphism_count(g))


def _named_graphs() -> dict:
    return {
        "cycle3": cycle_graph(3),
        "cycle4": cycle_graph(4),
        "cycle5": cycle_graph(5),
        "cycle6": cycle_graph(6),
        "path4": path_graph(5),                                   # 4 edges
        "tailed_triangle": Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),
        "chordal_cycle": Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        "triangle_rectangle": Graph(5, [(0, 1), (1, 2), (0, 2), (1, 3), (3, 4), (4, 0)]),
    }


PATTERN_NAMES = tuple(_named_graphs())


def get_pattern(name: str) -> Pattern:
    graphs = _named_graphs()
    if name not in graphs:
        raise KeyError(f"unknown pattern {name!r}; known: {', '.join(graphs)}")
    return Pattern.from_graph(name, graphs[name])


def _search_order(p: Graph) -> list[int]:
    order, seen = [], set()
    for s in range(p.n):
        if s in seen:
            continue
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in p.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _embeddings(p: Graph, g: Graph, induced: bool = False):
    """Yield every injective map pattern-node -> host-node preserving edges (and non-edges if induced)."""
    if p.n > g.n:
        return
    order = _search_order(p)
    pos = {u: i for i, u in enumerate(order)}
    # for each pattern node, earlier nodes it must (or must not) be adjacent to
    back = []
    for i, u in enumerate(order):
        adj = [w for w in p.adj[u] if pos[w] < i]
        non = [w for w in order[:i] if w not in p.adj[u]] if induced else []
        back.append((adj, non))
    host_adj = [set(a) for a in g.adj]
    image = [-1] * p.n
    used = [False] * g.n

    def extend(i):
        if i == len(order):
            yield tuple(image)
            return
        u = order[i]
        adj, non = back[i]
        if adj:
            cand = host_adj[image[adj[0]]]
        else:
            cand = range(g.n)
        for x in cand:
            if used[x]:
                continue
            if any(x not in host_adj[image[w]] for w in adj):
                continue
            if any(x in host_adj[image[w]] for w in non):
                continue
            image[u] = x
            used[x] = True
            yield from extend(i + 1)
            used[x] = False
        image[u] = -1

    yield from extend(0)


def automorphism_count(g: Graph) -> int:
    return sum(1 for _ in _embeddings(g, g))


@dataclass(frozen=True)
class Counts:
    total: int
    per_node: tuple


def count_occurrences(g: Graph, p: Pattern, induced: bool = False) -> Counts:
    """Number of (induced) subgraphs of ``g`` isomorphic to the pattern, and per-node containment counts."""
    if p.graph.n > 8:
        raise OracleRefusal("patterns are limited to 8 nodes")
    if p.graph.n > g.n:
        return Counts(0, (0,) * g.n)
    emb = 0
    per_node = [0] * g.n
    for image in _embeddings(p.graph, g, induced):
        emb += 1
        for x in image:
            per_node[x] += 1
    a = p.automorphism_count
    return Counts(emb // a, tuple(c // a for c in per_node))


def count_occurrences_by_sets(g: Graph, p: Pattern, induced: bool = False) -> int:
    """Independent count: distinct edge-set images over all node subsets and bijections."""
    k = p.graph.n
    if k > 5:
        raise OracleRefusal("set enumeration cross-check is limited to 5-node patterns")
    host = set(g.edges)
    found = set()
    for nodes in combinations(range(g.n), k):
        sub = {(a, b) for a, b in combinations(nodes, 2) if (a, b) in host}
        for perm in permutations(nodes):
            img = frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in p.graph.edges)
            if not img <= host:
                continue
            if induced and img != sub:
                continue
            found.add(img)
    return len(found)


def max_internally_disjoint_paths(g: Graph, u: int, v: int) -> int:
    """Node-version Menger number via unit-capacity max-flow on the node-split graph."""
    if u == v:
        raise ValueError("endpoints must differ")
    # node x -> (2x in, 2x+1 out); internal nodes have capacity 1
    cap: dict[int, dict[int, int]] = {}

    def add(a, b, c):
        cap.setdefault(a, {}).setdefault(b, 0)
        cap[a][b] += c
        cap.setdefault(b, {}).setdefault(a, 0)

    big = g.n + 1
    for x in range(g.n):
        add(2 * x, 2 * x + 1, big if x in (u, v) else 1)
    for a, b in g.edges:
        add(2 * a + 1, 2 * b, 1)
        add(2 * b + 1, 2 * a, 1)
    source, sink = 2 * u + 1, 2 * v
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in cap.get(a, {}).items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1


def simple_paths(g: Graph, u: int, v: int, limit: Optional[int] = None):
    """Yield every simple u-v path as a tuple of nodes (exponential; small graphs only)."""
    stack = [(u, (u,), {u})]
    count = 0
    while stack:
        x, path, seen = stack.pop()
        if x == v:
            yield path
            count += 1
            if limit is not None and count >= limit:
                return
            continue
        for w in g.adj[x]:
            if w not in seen:
                stack.append((w, path + (w,), seen | {w}))


def isomorphic_bruteforce(ga: Graph, gb: Graph) -> bool:
    if ga.n > 10 or gb.n > 10:
        raise OracleRefusal("brute-force isomorphism is limited to n <= 10")
    if ga.n != gb.n or ga.m != gb.m:
        return False
    if sorted(map(len, ga.adj)) != sorted(map(len, gb.adj)):
        return False
    order = sorted(range(ga.n), key=lambda x: -len(ga.adj[x]))
    adj_b = [set(a) for a in gb.adj]
    image = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in range(gb.n):
            if y in used or len(gb.adj[y]) != len(ga.adj[x]):
                continue
            ok = True
            for w, iw in image.items():
                if ga.has_edge(x, w) != (iw in adj_b[y]):
                    ok = False
                    break
            if not ok:
                continue
            image[x] = y
            used.add(y)
            if extend(i + 1):
                return True
            del image[x]
            used.discard(y)
        return False

    return extend(0)
