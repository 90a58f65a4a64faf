"""Connected components, blocks (biconnected components), cut nodes and the block-cut tree."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .graph import Graph


@dataclass(frozen=True)
class ConnectivityDecomposition:
    """Lossless connectivity structure of a graph.

    ``blocks`` contains every maximal biconnected block, bridges included as
    2-node blocks, sorted by (smallest node, size). Isolated nodes belong to no
    block. ``block_cut_tree`` lists the edges ``(block_index, cut_node)``.
    """

    n: int
    component_of: tuple
    components: tuple
    blocks: tuple
    cut_nodes: frozenset
    block_cut_tree: tuple
    graph_key: int = 0

    @property
    def num_components(self) -> int:
        return len(self.components)

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def large_blocks(self, min_size: int = 3) -> list[tuple]:
        return [b for b in self.blocks if len(b) >= min_size]

    def to_report(self) -> dict:
        return {
            "n": self.n,
            "components": [list(c) for c in self.components],
            "blocks": [list(b) for b in self.blocks],
            "cut_nodes": sorted(self.cut_nodes),
            "block_cut_tree": [list(e) for e in self.block_cut_tree],
        }


def connected_components(g: Graph) -> list[int]:
    """Component label per node; labels are numbered by smallest contained node."""
    label = [-1] * g.n
    k = 0
    for s in range(g.n):
        if label[s] >= 0:
            continue
        label[s] = k
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if label[w] < 0:
                    label[w] = k
                    queue.append(w)
        k += 1
    return label


def bfs_distances(g: Graph, source: int) -> list[float]:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = du
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> list[list[float]]:
    return [bfs_distances(g, s) for s in range(g.n)]


def biconnected_decomposition(g: Graph) -> ConnectivityDecomposition:
    """Hopcroft-Tarjan lowpoint DFS with an explicit node stack and an edge stack.

    Per-node state lives in flat lists (no per-frame objects) so the run stays
    linear in practice as well as in theory.
    """
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    pos = [0] * n               # next neighbour index to scan
    is_cut = [False] * n
    stamp = [-1] * n            # last block id that collected the node
    blocks: list[tuple] = []
    es_a: list[int] = []
    es_b: list[int] = []
    comp = [-1] * n             # DFS roots come in increasing order, so labels match connected_components
    k = 0
    timer = 0
    for root in range(n):
        if comp[root] >= 0:
            continue
        comp[root] = k
        k += 1
        if not adj[root]:
            continue
        label = comp[root]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [root]
        while stack:
            u = stack[-1]
            nbrs = adj[u]
            i = pos[u]
            if i < len(nbrs):
                pos[u] = i + 1
                w = nbrs[i]
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    parent[w] = u
                    comp[w] = label
                    es_a.append(u)
                    es_b.append(w)
                    stack.append(w)
                elif w != parent[u] and disc[w] < disc[u]:
                    es_a.append(u)
                    es_b.append(w)
                    if disc[w] < low[u]:
                        low[u] = disc[w]
                continue
            stack.pop()
            p = parent[u]
            if p < 0:
                continue
            if low[u] < low[p]:
                low[p] = low[u]
            if low[u] >= disc[p]:
                if p == root:
                    root_children += 1
                else:
                    is_cut[p] = True
                bid = len(blocks)
                nodes = []
                while True:
                    a = es_a.pop()
                    b = es_b.pop()
                    if stamp[a] != bid:
                        stamp[a] = bid
                        nodes.append(a)
                    if stamp[b] != bid:
                        stamp[b] = bid
                        nodes.append(b)
                    if a == p and b == u:
                        break
                nodes.sort()
                blocks.append(tuple(nodes))
        if root_children > 1:
            is_cut[root] = True

    blocks.sort(key=lambda b: (b[0], len(b), b))
    members: list[list[int]] = [[] for _ in range(k)]
    for v, c in enumerate(comp):
        members[c].append(v)
    cut_nodes = frozenset(v for v in range(n) if is_cut[v])
    tree = tuple((i, v) for i, b in enumerate(blocks) for v in b if v in cut_nodes)
    return ConnectivityDecomposition(
        n=n,
        component_of=tuple(comp),
        components=tuple(tuple(m) for m in members),
        blocks=tuple(blocks),
        cut_nodes=cut_nodes,
        block_cut_tree=tree,
        graph_key=hash(g),
    )


def decompose(g: Graph) -> ConnectivityDecomposition:
    return biconnected_decomposition(g)


# ---------------------------------------------------------------------------
# Brute-force oracles (bitmask based, intended for n <= ~16)

def _neighbour_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _mask_connected(mask: int, nb: list[int]) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        grow = nb[low.bit_length() - 1] & mask & ~seen
        seen |= grow
        frontier |= grow
    return seen == mask


def _biconnected_set(mask: int, nb: list[int]) -> bool:
    """Connected, at least 2 nodes, and (for >= 3 nodes) connected after any single deletion."""
    size = bin(mask).count("1")
    if size < 2 or not _mask_connected(mask, nb):
        return False
    if size == 2:
        return True
    m = mask
    while m:
        low = m & -m
        m ^= low
        if not _mask_connected(mask & ~low, nb):
            return False
    return True


def verify_block_bruteforce(g: Graph, nodes: Iterable[int]) -> bool:
    """True iff ``nodes`` induces a maximal biconnected node set (a block).

    Maximality is checked by trying every superset, so cost is exponential in
    ``n - len(nodes)``.
    """
    nodes = set(nodes)
    if len(nodes) < 2:
        raise ValueError("a block has at least two nodes")
    nb = _neighbour_masks(g)
    mask = 0
    for v in nodes:
        mask |= 1 << v
    if not _biconnected_set(mask, nb):
        return False
    rest = [v for v in range(g.n) if v not in nodes]
    for r in range(1, len(rest) + 1):
        for extra in combinations(rest, r):
            m = mask
            for v in extra:
                m |= 1 << v
            if _biconnected_set(m, nb):
                return False
    return True


def bruteforce_blocks(g: Graph) -> list[tuple]:
    """All maximal biconnected node sets, by exhaustive subset enumeration."""
    if g.n > 20:
        raise ValueError("exhaustive block enumeration is limited to n <= 20")
    nb = _neighbour_masks(g)
    full = 1 << g.n
    connected = [False] * full
    for mask in range(1, full):
        connected[mask] = _mask_connected(mask, nb)
    good = []
    for mask in range(1, full):
        if not connected[mask]:
            continue
        size = bin(mask).count("1")
        if size < 2:
            continue
        if size > 2:
            m, ok = mask, True
            while m:
                low = m & -m
                m ^= low
                if not connected[mask & ~low]:
                    ok = False
                    break
            if not ok:
                continue
        good.append(mask)
    good.sort(key=lambda x: -bin(x).count("1"))
    maximal: list[int] = []
    for mask in good:
        if not any(mask & big == mask for big in maximal):
            maximal.append(mask)
    out = [tuple(v for v in range(g.n) if mask >> v & 1) for mask in maximal]
    out.sort(key=lambda b: (b[0], len(b), b))
    return out


def bruteforce_cut_nodes(g: Graph) -> frozenset:
    """Nodes whose deletion increases the number of connected components."""
    base = max(connected_components(g), default=-1) + 1
    cuts = set()
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        h = g.induced(keep)
        k = max(connected_components(h), default=-1) + 1
        if k > base:
            cuts.add(v)
    return frozenset(cuts)
