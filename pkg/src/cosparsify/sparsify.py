"""Interaction plans: which ordered pairs are updated and from which source pairs.

A plan stores materialised ordered pairs ``(u, v)`` in lexicographic order and,
for every pair, a CSR segment of neighbour entries ``((u, t), (t, v))`` given
as positions into ``pairs``. Entries within a segment are ordered by ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import numpy as np

from .connectivity import ConnectivityDecomposition, all_pairs_distances, biconnected_decomposition
from .graph import Graph


class Tag(IntEnum):
    TRIPLE = 0       # u, t, v pairwise distinct
    SELF_LEFT = 1    # ((u,u), (u,v))
    SELF_RIGHT = 2   # ((u,v), (v,v))
    BACK = 3         # ((v,u), (u,v)) into the diagonal target (v,v)
    DIAG_SELF = 4    # ((u,u), (u,u))


class PlanError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InteractionPlan:
    flavor: str
    n: int
    pairs: np.ndarray       # (P, 2) int64
    index: np.ndarray       # (n, n) int64, -1 where the pair is not materialised
    offsets: np.ndarray     # (P + 1,) int64
    left: np.ndarray        # (E,) positions of (u, t)
    right: np.ndarray       # (E,) positions of (t, v)
    tags: np.ndarray        # (E,) int8 Tag values
    middle: np.ndarray      # (E,) the intermediate node t
    max_dist: Optional[int] = None

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    @property
    def entry_count(self) -> int:
        return len(self.left)

    @property
    def stats(self) -> dict:
        return plan_stats(self)

    def pair_index(self, u: int, v: int) -> int:
        """Position of ``(u, v)``; raises ``KeyError`` if not materialised."""
        i = int(self.index[u, v])
        if i < 0:
            raise KeyError((u, v))
        return i

    def has_pair(self, u: int, v: int) -> bool:
        return self.index[u, v] >= 0

    @property
    def targets(self) -> np.ndarray:
        """Target pair position of every entry."""
        return np.repeat(np.arange(self.pair_count), np.diff(self.offsets))

    def neighbors(self, u: int, v: int) -> list[tuple[Tag, tuple[int, int], tuple[int, int]]]:
        """Neighbour entries of ``(u, v)`` as ``(tag, (u, t), (t, v))`` node pairs."""
        p = self.pair_index(u, v)
        out = []
        for e in range(self.offsets[p], self.offsets[p + 1]):
            a, b = self.pairs[self.left[e]], self.pairs[self.right[e]]
            out.append((Tag(int(self.tags[e])), (int(a[0]), int(a[1])), (int(b[0]), int(b[1]))))
        return out

    def same_as(self, other: "InteractionPlan") -> bool:
        """Entry-for-entry equality, ignoring the flavor label."""
        return (
            self.n == other.n
            and np.array_equal(self.pairs, other.pairs)
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
            and np.array_equal(self.tags, other.tags)
        )

    def to_text(self) -> str:
        s = plan_stats(self)
        lines = [
            "# cosparsify plan v1",
            f"flavor {self.flavor}",
            f"n {self.n}",
            f"max_dist {'-' if self.max_dist is None else self.max_dist}",
            f"pair_count {s['pair_count']}",
            f"entry_count {s['entry_count']}",
            f"triple_count {s['triple_count']}",
            f"two_node_count {s['two_node_count']}",
        ]
        for p, (u, v) in enumerate(self.pairs.tolist()):
            parts = [f"{Tag(int(self.tags[e])).name}:{self.left[e]}:{self.right[e]}"
                     for e in range(self.offsets[p], self.offsets[p + 1])]
            lines.append(f"{u} {v} | " + " ".join(parts))
        return "\n".join(lines) + "\n"

    def to_report(self, include_entries: bool = False) -> dict:
        rep = {"flavor": self.flavor, "n": self.n, "max_dist": self.max_dist,
               "stats": plan_stats(self)}
        if include_entries:
            rep["pairs"] = [
                {"pair": [int(u), int(v)],
                 "neighbors": [[Tag(int(self.tags[e])).name, int(self.left[e]), int(self.right[e])]
                               for e in range(self.offsets[p], self.offsets[p + 1])]}
                for p, (u, v) in enumerate(self.pairs.tolist())
            ]
        return rep


def parse_plan_text(text: str) -> InteractionPlan:
    """Inverse of :meth:`InteractionPlan.to_text`."""
    header: dict[str, str] = {}
    rows = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        if "|" in line:
            head, _, rest = line.partition("|")
            u, v = map(int, head.split())
            ents = []
            for tok in rest.split():
                name, a, b = tok.split(":")
                ents.append((Tag[name], int(a), int(b)))
            rows.append(((u, v), ents))
        else:
            k, val = line.split(None, 1)
            header[k] = val.strip()
    n = int(header["n"])
    md = None if header.get("max_dist", "-") == "-" else int(header["max_dist"])
    pairs = [r[0] for r in rows]
    entries = [[(t, a, b, pairs[a][1]) for t, a, b in ents] for _, ents in rows]
    return _assemble(header["flavor"], n, pairs, entries, md)


def _assemble(flavor, n, pairs, entries, max_dist=None) -> InteractionPlan:
    index = np.full((n, n), -1, dtype=np.int64)
    parr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(parr):
        index[parr[:, 0], parr[:, 1]] = np.arange(len(parr))
    offsets = np.zeros(len(pairs) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(e) for e in entries])
    flat = [x for ents in entries for x in ents]
    tags = np.fromiter((x[0] for x in flat), dtype=np.int8, count=len(flat))
    left = np.fromiter((x[1] for x in flat), dtype=np.int64, count=len(flat))
    right = np.fromiter((x[2] for x in flat), dtype=np.int64, count=len(flat))
    middle = np.fromiter((x[3] for x in flat), dtype=np.int64, count=len(flat))
    for arr in (parr, index, offsets, left, right, tags, middle):
        arr.setflags(write=False)
    return InteractionPlan(flavor, n, parr, index, offsets, left, right, tags, middle, max_dist)


def dense_plan(g: Graph) -> InteractionPlan:
    """Unsparsified 2-FWL: every ordered pair, every intermediate node."""
    n = g.n
    pairs = [(u, v) for u in range(n) for v in range(n)]
    entries = []
    for u in range(n):
        for v in range(n):
            ents = []
            for t in range(n):
                if u == v:
                    tag = Tag.DIAG_SELF if t == u else Tag.BACK
                elif t == u:
                    tag = Tag.SELF_LEFT
                elif t == v:
                    tag = Tag.SELF_RIGHT
                else:
                    tag = Tag.TRIPLE
                ents.append((tag, u * n + t, t * n + v, t))
            entries.append(ents)
    return _assemble("dense", n, pairs, entries)


def _check_decomposition(g: Graph, d: ConnectivityDecomposition) -> None:
    if d.n != g.n or (d.graph_key and d.graph_key != hash(g)):
        raise PlanError("decomposition was not computed from this graph")
    covered = sum(len(b) * (len(b) - 1) // 2 for b in d.blocks)
    if covered < g.m:
        raise PlanError("decomposition was not computed from this graph")


def _build_cosparse(g: Graph, d: ConnectivityDecomposition, max_dist: Optional[int]) -> InteractionPlan:
    _check_decomposition(g, d)
    n = g.n
    limit = math.inf if max_dist is None else max_dist
    dist = all_pairs_distances(g) if max_dist is not None else None

    def near(a, b):
        return dist is None or dist[a][b] <= limit

    # common >=3-block of every same-block pair
    block_of = {}
    for bi, b in enumerate(d.blocks):
        if len(b) < 3:
            continue
        for u in b:
            for v in b:
                if u != v:
                    block_of[(u, v)] = bi

    pairs = []
    by_comp = d.component_of
    members = d.components
    for u in range(n):
        for v in members[by_comp[u]]:
            if u == v or near(u, v):
                pairs.append((u, v))
    pairs.sort()
    pos = {p: i for i, p in enumerate(pairs)}

    entries = []
    for (u, v) in pairs:
        ents = []
        if u == v:
            for t in members[by_comp[u]]:
                if t == u:
                    ents.append((Tag.DIAG_SELF, pos[(u, u)], pos[(u, u)], t))
                elif (u, t) in pos:
                    ents.append((Tag.BACK, pos[(u, t)], pos[(t, u)], t))
        else:
            bi = block_of.get((u, v))
            mids = [u, v]
            if bi is not None:
                mids.extend(t for t in d.blocks[bi] if t != u and t != v and near(u, t) and near(t, v))
            for t in sorted(mids):
                if t == u:
                    ents.append((Tag.SELF_LEFT, pos[(u, u)], pos[(u, v)], t))
                elif t == v:
                    ents.append((Tag.SELF_RIGHT, pos[(u, v)], pos[(v, v)], t))
                else:
                    ents.append((Tag.TRIPLE, pos[(u, t)], pos[(t, v)], t))
        entries.append(ents)
    flavor = "cosp" if max_dist is None else "cosp-dist"
    return _assemble(flavor, n, pairs, entries, max_dist)


def cosparsify_plan(g: Graph, d: Optional[ConnectivityDecomposition] = None) -> InteractionPlan:
    """Co-sparsified plan: pairs within connected components, triples within blocks of size >= 3."""
    if d is None:
        d = biconnected_decomposition(g)
    return _build_cosparse(g, d, None)


def distance_bounded_plan(g: Graph, d: Optional[ConnectivityDecomposition], max_dist: int) -> InteractionPlan:
    """Co-sparsified plan further restricted to pairs and triples within ``max_dist`` hops."""
    if max_dist < 1:
        raise PlanError("max_dist must be >= 1")
    if d is None:
        d = biconnected_decomposition(g)
    return _build_cosparse(g, d, int(max_dist))


def plan_stats(p: InteractionPlan) -> dict:
    """Exact counts, recomputed by walking the entries."""
    per_tag = {t.name: 0 for t in Tag}
    for tag in p.tags.tolist():
        per_tag[Tag(tag).name] += 1
    diagonal = sum(1 for u, v in p.pairs.tolist() if u == v)
    triple = per_tag["TRIPLE"]
    return {
        "pair_count": len(p.pairs),
        "diagonal_pairs": diagonal,
        "entry_count": len(p.tags),
        "triple_count": triple,
        "two_node_count": len(p.tags) - triple,
        "per_tag": per_tag,
    }


def expected_cosparse_counts(d: ConnectivityDecomposition) -> tuple[int, int]:
    """Closed-form ``(sum n_i^2, sum |B|(|B|-1)(|B|-2))`` from the decomposition alone."""
    pairs = sum(len(c) ** 2 for c in d.components)
    triples = sum(len(b) * (len(b) - 1) * (len(b) - 2) for b in d.blocks if len(b) >= 3)
    return pairs, triples
