"""Relative random-walk probability (RRWP) encodings and initial pair features."""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Optional

import numpy as np

from .connectivity import connected_components
from .graph import Graph, NodeLabeling, random_walk_matrix


@dataclass(frozen=True, eq=False)
class RRWPEncoding:
    """``values[u, v, k] = (A_hat ** k)[u, v]`` for ``k = 0..K-1``."""

    K: int
    values: np.ndarray

    def __getitem__(self, uv) -> np.ndarray:
        u, v = uv
        return self.values[u, v]


def compute_rrwp(g: Graph, K: int) -> RRWPEncoding:
    if K < 1:
        raise ValueError("K must be >= 1")
    walk = random_walk_matrix(g)
    out = np.empty((g.n, g.n, K), dtype=np.float64)
    power = np.eye(g.n)
    out[:, :, 0] = power
    for k in range(1, K):
        power = power @ walk
        out[:, :, k] = power
    out.setflags(write=False)
    return RRWPEncoding(K, out)


class PairCategory(IntEnum):
    SELF = 0
    ADJACENT = 1
    CONNECTED = 2      # same component, not adjacent
    DISCONNECTED = 3


class PairFeature(NamedTuple):
    x_u: object
    x_v: object
    edge: object
    p: object          # PairCategory, or an RRWP vector as a tuple of floats

    @property
    def discrete(self) -> bool:
        return isinstance(self.p, PairCategory)


def initial_pair_features(g: Graph, labels: Optional[NodeLabeling] = None,
                          enc: Optional[RRWPEncoding] = None) -> dict:
    """Initial feature record for every ordered pair ``(u, v)``.

    Node labels default to ``None`` for every node. ``edge`` is the edge label
    when edge labels are given, else a 0/1 indicator.
    """
    if labels is not None:
        labels.check(g)
    if enc is not None and enc.values.shape[0] != g.n:
        raise ValueError("encoding was computed for a different graph")
    comp = connected_components(g)
    A = g.adjacency_matrix()
    feats = {}
    for u in range(g.n):
        xu = labels.labels[u] if labels is not None else None
        for v in range(g.n):
            xv = labels.labels[v] if labels is not None else None
            adjacent = bool(A[u, v])
            if labels is not None and labels.edge_labels is not None:
                edge = labels.edge_label(u, v) if adjacent else 0
            else:
                edge = int(adjacent)
            if enc is not None:
                p = tuple(float(x) for x in enc.values[u, v])
            elif u == v:
                p = PairCategory.SELF
            elif adjacent:
                p = PairCategory.ADJACENT
            elif comp[u] == comp[v]:
                p = PairCategory.CONNECTED
            else:
                p = PairCategory.DISCONNECTED
            feats[(u, v)] = PairFeature(xu, xv, edge, p)
    return feats
