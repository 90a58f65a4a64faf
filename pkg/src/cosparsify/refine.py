"""Exact colour refinement: 1-WL, dense 2-FWL and co-sparsified 2-FWL.

Colours are compact integers inside one run. Alongside every colour id we keep
a 128-bit canonical key computed from a label-independent record (the initial
feature tuple, then the old key plus the sorted multiset of source key pairs).
Keys make signatures comparable across graphs without a shared registry; a
per-run registry stores the full record behind every key and raises on a
collision, so aggregation is injective rather than probabilistically so.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .connectivity import ConnectivityDecomposition, biconnected_decomposition
from .graph import Graph, NodeLabeling
from .rrwp import initial_pair_features
from .sparsify import InteractionPlan, cosparsify_plan, dense_plan, distance_bounded_plan


class HashCollision(RuntimeError):
    pass


def _digest(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=16).digest()


class ColorRegistry:
    """Maps canonical keys to the records that produced them; detects collisions."""

    def __init__(self):
        self._records: dict[bytes, bytes] = {}

    def key(self, record: bytes) -> bytes:
        k = _digest(record)
        seen = self._records.setdefault(k, record)
        if seen != record:
            raise HashCollision(f"two distinct colour records share key {k.hex()}")
        return k

    def __len__(self):
        return len(self._records)


@dataclass(eq=False)
class PairColoring:
    plan: InteractionPlan
    colors: np.ndarray          # colour id per materialised pair
    keys: list                  # canonical key per colour id
    iteration: int = 0
    registry: ColorRegistry = field(default_factory=ColorRegistry, repr=False)

    @property
    def num_colors(self) -> int:
        return len(self.keys)

    def pair_keys(self) -> list:
        return [self.keys[c] for c in self.colors.tolist()]

    def color(self, u: int, v: int) -> int:
        return int(self.colors[self.plan.pair_index(u, v)])


@dataclass(frozen=True)
class GraphSignature:
    digest: bytes
    component_digests: tuple
    stable_iterations: int

    @property
    def hex(self) -> str:
        return self.digest.hex()

    def __eq__(self, other):
        if not isinstance(other, GraphSignature):
            return NotImplemented
        return self.digest == other.digest

    def __hash__(self):
        return hash(self.digest)


def _feature_record(f) -> bytes:
    p = f.p
    if not f.discrete:
        raise ValueError("init_coloring accepts discrete features only (categorical p)")
    return repr(("init", f.x_u, f.x_v, f.edge, int(p))).encode()


def init_coloring(plan: InteractionPlan, feats: dict,
                  registry: Optional[ColorRegistry] = None) -> PairColoring:
    """Equal colours iff equal ``(x(u), x(v), e(u,v), category)`` records."""
    registry = registry if registry is not None else ColorRegistry()
    local: dict[bytes, int] = {}
    keys: list[bytes] = []
    colors = np.empty(plan.pair_count, dtype=np.int64)
    for i, (u, v) in enumerate(plan.pairs.tolist()):
        try:
            f = feats[(u, v)]
        except KeyError:
            raise ValueError(f"no initial feature for pair {(u, v)}") from None
        rec = _feature_record(f)
        c = local.get(rec)
        if c is None:
            c = local[rec] = len(keys)
            keys.append(registry.key(rec))
        colors[i] = c
    return PairColoring(plan, colors, keys, 0, registry)


def refine_step(c: PairColoring) -> PairColoring:
    """One synchronous 2-FWL round over the plan's neighbour entries.

    New colour of ``(u, v)`` = (old colour, multiset of ``(colour(u,t), colour(t,v))``
    over its entries). Structural tags are not part of the message.
    """
    plan = c.plan
    P = plan.pair_count
    k = max(c.num_colors, 1)
    old = c.colors
    codes = old[plan.left] * k + old[plan.right]
    seg = plan.targets
    order_key = np.sort(seg * (k * k) + codes) - seg * (k * k)
    offsets = plan.offsets.tolist()
    buf = order_key.astype(np.int64)
    old_list = old.tolist()

    local: dict[tuple, int] = {}
    reps: list[int] = []
    colors = np.empty(P, dtype=np.int64)
    for p in range(P):
        rec = (old_list[p], buf[offsets[p]:offsets[p + 1]].tobytes())
        nc = local.get(rec)
        if nc is None:
            nc = local[rec] = len(reps)
            reps.append(p)
        colors[p] = nc

    it = c.iteration + 1
    head = b"step" + it.to_bytes(4, "little")
    keys = []
    left, right = plan.left, plan.right
    old_keys = c.keys
    for p in reps:
        lo, hi = offsets[p], offsets[p + 1]
        msgs = sorted(old_keys[old_list[a]] + old_keys[old_list[b]]
                      for a, b in zip(left[lo:hi].tolist(), right[lo:hi].tolist()))
        rec = head + old_keys[old_list[p]] + b"".join(msgs)
        keys.append(c.registry.key(rec))
    return PairColoring(plan, colors, keys, it, c.registry)


def refine_to_stable(c: PairColoring, max_iters: Optional[int] = None) -> tuple[PairColoring, int]:
    """Refine until the partition stops changing.

    Returns the coloring one round past the last change (same partition, fresh
    keys) and the number of rounds needed to reach the stable partition.
    """
    cap = c.plan.pair_count if max_iters is None else max_iters
    start = c.iteration
    while True:
        nxt = refine_step(c)
        if nxt.num_colors == c.num_colors:
            return nxt, c.iteration
        c = nxt
        if c.iteration - start >= cap:
            return c, c.iteration


def refine_layers(c: PairColoring, layers: int) -> PairColoring:
    for _ in range(layers):
        c = refine_step(c)
    return c


# ---------------------------------------------------------------------------
# Readouts

def _multiset_digest(tag: bytes, keys) -> bytes:
    return _digest(tag + b"".join(sorted(keys)))


def _readout_groups(c: PairColoring, d: Optional[ConnectivityDecomposition]):
    n = c.plan.n
    if d is None or c.plan.flavor == "dense":
        return [tuple(range(n))] if n else []
    return list(d.components)


def graph_signature(c: PairColoring, d: Optional[ConnectivityDecomposition],
                    stable_iterations: Optional[int] = None) -> GraphSignature:
    """Component readout (diagonal and off-diagonal multisets), then a multiset over components.

    Dense plans are read out as a single implicit component over all nodes.
    """
    keys = c.pair_keys()
    pairs = c.plan.pairs.tolist()
    groups = _readout_groups(c, d)
    group_of = {}
    for gi, nodes in enumerate(groups):
        for v in nodes:
            group_of[v] = gi
    diag = [[] for _ in groups]
    off = [[] for _ in groups]
    for (u, v), key in zip(pairs, keys):
        gi = group_of[u]
        if group_of[v] != gi:
            continue
        (diag if u == v else off)[gi].append(key)
    comp = tuple(sorted(
        _digest(b"C" + _multiset_digest(b"D", diag[i]) + _multiset_digest(b"O", off[i]))
        for i in range(len(groups))
    ))
    digest = _multiset_digest(b"G" + c.iteration.to_bytes(4, "little"), comp)
    return GraphSignature(digest, comp, c.iteration if stable_iterations is None else stable_iterations)


def node_signature(c: PairColoring, d: Optional[ConnectivityDecomposition], v: int) -> bytes:
    """Digest of the multiset of colours of pairs ``(u, v)`` with ``u`` in ``v``'s component."""
    plan = c.plan
    if not 0 <= v < plan.n:
        raise ValueError(f"node {v} out of range")
    if d is None or plan.flavor == "dense":
        members = range(plan.n)
    else:
        members = d.components[d.component_of[v]]
    ks = [c.keys[c.colors[plan.index[u, v]]] for u in members if plan.index[u, v] >= 0]
    return _multiset_digest(b"N" + c.iteration.to_bytes(4, "little"), ks)


# ---------------------------------------------------------------------------
# 1-WL baseline

def wl1_signature(g: Graph, labels: Optional[NodeLabeling] = None,
                  max_iters: Optional[int] = None) -> GraphSignature:
    registry = ColorRegistry()
    init = labels.labels if labels is not None else (None,) * g.n
    keys = [registry.key(repr(("wl1-init", x)).encode()) for x in init]
    ncls = len(set(keys))
    cap = g.n if max_iters is None else max_iters
    it = 0
    while True:
        it += 1
        head = b"wl1" + it.to_bytes(4, "little")
        new = [registry.key(head + keys[u] + b"".join(sorted(keys[w] for w in g.adj[u])))
               for u in range(g.n)]
        new_cls = len(set(new))
        keys = new
        if new_cls == ncls or it > cap:
            break
        ncls = new_cls
    digest = _multiset_digest(b"W" + it.to_bytes(4, "little"), keys)
    return GraphSignature(digest, (digest,), it - 1)


# ---------------------------------------------------------------------------
# Engines

@dataclass(frozen=True)
class Engine:
    kind: str                     # "wl1", "dense", "cosp", "cosp-dist"
    max_dist: Optional[int] = None

    def __str__(self):
        return f"cosp-dist:{self.max_dist}" if self.kind == "cosp-dist" else self.kind


WL1 = Engine("wl1")
FWL2_DENSE = Engine("dense")
FWL2_COSP = Engine("cosp")


def FWL2_COSP_DIST(k: int) -> Engine:
    return Engine("cosp-dist", int(k))


_ALIASES = {"wl1": "wl1", "1wl": "wl1", "dense": "dense", "fwl2_dense": "dense",
            "cosp": "cosp", "fwl2_cosp": "cosp"}


def parse_engine(text: Union[str, Engine]) -> Engine:
    if isinstance(text, Engine):
        return text
    s = text.strip().lower()
    for prefix in ("cosp-dist:", "fwl2_cosp_dist:", "cosp-dist=", "cosp_dist:"):
        if s.startswith(prefix):
            k = int(s[len(prefix):])
            if k < 1:
                raise ValueError("distance bound must be >= 1")
            return FWL2_COSP_DIST(k)
    if s in _ALIASES:
        return Engine(_ALIASES[s])
    raise ValueError(f"unknown engine {text!r}; expected wl1, dense, cosp or cosp-dist:K")


def build_plan(g: Graph, engine: Engine, d: Optional[ConnectivityDecomposition] = None) -> InteractionPlan:
    if engine.kind == "dense":
        return dense_plan(g)
    d = d if d is not None else biconnected_decomposition(g)
    if engine.kind == "cosp":
        return cosparsify_plan(g, d)
    if engine.kind == "cosp-dist":
        return distance_bounded_plan(g, d, engine.max_dist)
    raise ValueError(f"engine {engine} has no pair plan")


def stable_coloring(g: Graph, engine: Engine, labels: Optional[NodeLabeling] = None,
                    layers: Optional[int] = None, d: Optional[ConnectivityDecomposition] = None):
    """``(coloring, decomposition, stable_iterations)`` for a 2-FWL engine."""
    d = d if d is not None else biconnected_decomposition(g)
    plan = build_plan(g, engine, d)
    c = init_coloring(plan, initial_pair_features(g, labels))
    if layers is not None:
        c = refine_layers(c, layers)
        return c, d, layers
    c, rounds = refine_to_stable(c)
    return c, d, rounds


def signature(g: Graph, engine: Union[str, Engine], labels: Optional[NodeLabeling] = None,
              layers: Optional[int] = None) -> GraphSignature:
    engine = parse_engine(engine)
    if engine.kind == "wl1":
        return wl1_signature(g, labels, max_iters=layers)
    c, d, rounds = stable_coloring(g, engine, labels, layers)
    return graph_signature(c, d, rounds)


def distinguishes(ga: Graph, gb: Graph, engine: Union[str, Engine], layers: Optional[int] = None) -> bool:
    return signature(ga, engine, layers=layers) != signature(gb, engine, layers=layers)


def color_histogram(c: PairColoring) -> Counter:
    return Counter(c.pair_keys())
