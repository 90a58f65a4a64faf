"""Simple undirected graphs: construction, parsing, generators and matrix views."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


class GraphParseError(ValueError):
    """Raised for malformed edge-list or graph6 input."""


class GraphConstructionError(ValueError):
    pass


class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    Edges are stored as sorted ``(u, v)`` tuples with ``u < v``; ``adj[u]`` is
    the sorted tuple of neighbours of ``u``.
    """

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphConstructionError(f"node count must be non-negative, got {n}")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphConstructionError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in canon:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))
        object.__setattr__(self, "_hash", hash((self.n, self.edges)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        # worker pools pickle graphs; rebuild through the constructor
        return (Graph, (self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        # adjacency rows are short and sorted
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=dtype)
        if self.edges:
            e = np.asarray(self.edges)
            A[e[:, 0], e[:, 1]] = 1
            A[e[:, 1], e[:, 0]] = 1
        return A

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel node ``u`` as ``perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphConstructionError("perm must be a permutation of range(n)")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled by the sorted order of ``nodes``."""
        nodes = sorted(set(nodes))
        index = {u: i for i, u in enumerate(nodes)}
        return Graph(
            len(nodes),
            ((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class NodeLabeling:
    """Discrete node labels plus optional discrete edge labels keyed by ``(u, v)``, ``u < v``."""

    labels: tuple
    edge_labels: Optional[dict] = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def uniform(cls, n: int) -> "NodeLabeling":
        return cls((0,) * n)

    def check(self, g: Graph) -> None:
        if len(self.labels) != g.n:
            raise ValueError(f"labeling has {len(self.labels)} entries, graph has {g.n} nodes")

    def edge_label(self, u: int, v: int):
        if self.edge_labels is None:
            return None
        return self.edge_labels.get((u, v) if u < v else (v, u))


# ---------------------------------------------------------------------------
# Edge-list format

def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise GraphParseError("line 1: missing 'n m' header")
    lineno, header = rows[0]
    parts = header.split()
    try:
        if len(parts) != 2:
            raise ValueError
        n, m = int(parts[0]), int(parts[1])
        if n < 0 or m < 0:
            raise ValueError
    except ValueError:
        raise GraphParseError(f"line {lineno}: expected 'n m' header, got {header!r}") from None
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise GraphParseError(f"line {where}: header declares {m} edges, found {len(body)}")
    edges = []
    for lineno, line in body:
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: node index out of range [0, {n})")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at node {u}")
        edges.append((u, v))
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph6 (short form, n <= 62)

def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphParseError("empty graph6 string")
    data = []
    for i, ch in enumerate(s):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise GraphParseError(f"invalid graph6 character {ch!r} at position {i}")
        data.append(c)
    n = data[0]
    if n == 63:
        raise GraphParseError("graph6 long form (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[1:]
    if len(payload) != need:
        raise GraphParseError(f"graph6 payload has {len(payload)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (payload[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 short form supports n <= 62")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Named graphs and simple generators

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphConstructionError("cycle needs at least 3 nodes")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, edges)


def bowtie() -> Graph:
    """Two triangles sharing node 2."""
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def rook_graph() -> Graph:
    """4x4 rook's graph, srg(16, 6, 2, 2)."""
    return Graph(16, ((i, j) for i in range(16) for j in range(i + 1, 16)
                      if i // 4 == j // 4 or i % 4 == j % 4))


def shrikhande_graph() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    gens = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for i in range(16):
        for j in range(i + 1, 16):
            d = ((j // 4 - i // 4) % 4, (j % 4 - i % 4) % 4)
            if d in gens:
                edges.append((i, j))
    return Graph(16, edges)


def gnm_random_graph(n: int, m: int, seed: int) -> Graph:
    rng = random.Random(seed)
    total = n * (n - 1) // 2
    m = min(m, total)
    if m > total // 2:
        all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        return Graph(n, rng.sample(all_pairs, m))
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            chosen.add((u, v) if u < v else (v, u))
    return Graph(n, chosen)


def gnp_random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


def random_biconnected(size: int, rng: random.Random, chord_prob: float = 0.3) -> list[tuple[int, int]]:
    """Edges of a random biconnected graph on ``0..size-1``: a shuffled Hamiltonian cycle plus chords."""
    if size == 2:
        return [(0, 1)]
    order = list(range(size))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[(i + 1) % size]))) for i in range(size)}
    for i in range(size):
        for j in range(i + 1, size):
            if (i, j) not in edges and rng.random() < chord_prob:
                edges.add((i, j))
    return sorted(edges)


def _attachment_edges(attachment, k: int) -> list[tuple[int, int]]:
    if attachment == "chain":
        return [(i - 1, i) for i in range(1, k)]
    if attachment == "star":
        return [(0, i) for i in range(1, k)]
    return [(int(a), int(b)) for a, b in attachment]


def generate_glued(blocks: Sequence[int], attachment="chain", seed: int = 0,
                   chord_prob: float = 0.3) -> Graph:
    """Glue random biconnected blocks into a graph with a prescribed block tree.

    ``attachment`` is ``"chain"``, ``"star"`` or a list of ``(parent, child)``
    block-index pairs forming a tree over ``range(len(blocks))``. Block ``child``
    is attached to a (seeded) node of block ``parent``; each attachment node
    becomes a cut node. Blocks of size 2 are single edges.
    """
    k = len(blocks)
    if k == 0:
        raise GraphConstructionError("need at least one block")
    for s in blocks:
        if s < 2:
            raise GraphConstructionError(f"block size must be >= 2, got {s}")
    tree = _attachment_edges(attachment, k)
    if len(tree) != k - 1:
        raise GraphConstructionError("attachment is not a tree over the blocks")
    children: dict[int, list[int]] = {i: [] for i in range(k)}
    seen_child = set()
    for a, b in tree:
        if not (0 <= a < k and 0 <= b < k) or a == b or b in seen_child:
            raise GraphConstructionError("attachment is not a tree over the blocks")
        seen_child.add(b)
        children[a].append(b)
    roots = [i for i in range(k) if i not in seen_child]
    if len(roots) != 1:
        raise GraphConstructionError("attachment is not a tree over the blocks")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    block_nodes: dict[int, list[int]] = {}
    next_node = 0
    visited = set()
    queue = [(roots[0], None)]
    while queue:
        b, anchor = queue.pop(0)
        if b in visited:
            raise GraphConstructionError("attachment is not a tree over the blocks")
        visited.add(b)
        size = blocks[b]
        local = random_biconnected(size, rng, chord_prob)
        if anchor is None:
            ids = list(range(next_node, next_node + size))
            next_node += size
        else:
            ids = [anchor] + list(range(next_node, next_node + size - 1))
            next_node += size - 1
        block_nodes[b] = ids
        edges.extend((ids[u], ids[v]) for u, v in local)
        for c in children[b]:
            queue.append((c, rng.choice(ids)))
    if len(visited) != k:
        raise GraphConstructionError("attachment is not a tree over the blocks")
    return Graph(next_node, edges)


def random_walk_matrix(g: Graph) -> np.ndarray:
    """Row-normalised adjacency ``D^-1 A``; rows of isolated nodes are zero."""
    A = g.adjacency_matrix(dtype=np.float64)
    deg = A.sum(axis=1)
    out = np.zeros_like(A)
    nz = deg > 0
    out[nz] = A[nz] / deg[nz, None]
    return out
