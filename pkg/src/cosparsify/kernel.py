"""Numeric co-sparsified PPGN-style forward pass (no learning).

Each layer computes, for every materialised pair ``(u, v)``,

    msg(u, v) = sum over plan entries ((u,t), (t,v)) of h(u,t) * h(t,v)   (element-wise)
    h'(u, v)  = act(h(u, v) @ W_carry + msg(u, v) @ W_msg + b)

with entries summed in plan order. Multiply-accumulate (MAC) operations are
counted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import Graph
from .rrwp import RRWPEncoding, compute_rrwp
from .sparsify import InteractionPlan, Tag, cosparsify_plan, dense_plan

_ACTIVATIONS = {
    "tanh": np.tanh,
    "identity": lambda x: x,
}


@dataclass(frozen=True, eq=False)
class KernelParams:
    L: int
    d: int
    seed: int
    layers: tuple            # ((W_carry, W_msg, bias), ...) per layer
    activation: str = "tanh"

    @classmethod
    def random(cls, L: int, d: int, seed: int, activation: str = "tanh") -> "KernelParams":
        rng = np.random.default_rng(seed)
        layers = []
        for _ in range(L):
            wc = rng.normal(0.0, 1.0 / np.sqrt(d), size=(d, d))
            wm = rng.normal(0.0, 1.0 / np.sqrt(d), size=(d, d))
            b = rng.normal(0.0, 0.1, size=d)
            layers.append((wc, wm, b))
        return cls(L, d, seed, tuple(layers), activation)

    @classmethod
    def carry_only(cls, L: int, d: int) -> "KernelParams":
        """Phi projects onto the carried state; messages are discarded."""
        eye, zero = np.eye(d), np.zeros((d, d))
        return cls(L, d, 0, tuple((eye, zero, np.zeros(d)) for _ in range(L)), "identity")


@dataclass(eq=False)
class PairTensor:
    plan: InteractionPlan
    d: int
    values: np.ndarray       # (pair_count, d)
    macs: dict = field(default_factory=dict)

    def __getitem__(self, uv) -> np.ndarray:
        return self.values[self.plan.pair_index(*uv)]


def initial_values(plan: InteractionPlan, enc: RRWPEncoding, d: int) -> np.ndarray:
    """RRWP vector of every materialised pair, zero-padded to width ``d``."""
    if d < enc.K:
        raise ValueError(f"feature width d={d} must be >= RRWP order K={enc.K}")
    if enc.values.shape[0] != plan.n:
        raise ValueError("encoding and plan come from different graphs")
    h = np.zeros((plan.pair_count, d))
    if plan.pair_count:
        h[:, :enc.K] = enc.values[plan.pairs[:, 0], plan.pairs[:, 1]]
    return h


def forward(g: Graph, plan: InteractionPlan, enc: RRWPEncoding, params: KernelParams) -> PairTensor:
    if plan.n != g.n:
        raise ValueError("plan was built for a different graph")
    if params.d < enc.K:
        raise ValueError(f"feature width d={params.d} must be >= RRWP order K={enc.K}")
    act = _ACTIVATIONS[params.activation]
    h = initial_values(plan, enc, params.d)
    targets = plan.targets
    left, right = plan.left, plan.right
    n_triple = int(np.count_nonzero(plan.tags == Tag.TRIPLE))
    n_entries = plan.entry_count
    d, P = params.d, plan.pair_count
    for wc, wm, b in params.layers:
        prod = h[left] * h[right]
        msg = np.zeros_like(h)
        np.add.at(msg, targets, prod)
        h = act(h @ wc + msg @ wm + b)
    L = len(params.layers)
    macs = {
        "triple_stage": L * n_triple * d,
        "two_node_stage": L * (n_entries - n_triple) * d,
        "message_total": L * n_entries * d,
        "update": L * P * 2 * d * d,
    }
    macs["total"] = macs["message_total"] + macs["update"]
    return PairTensor(plan, d, h, macs)


def masked_dense_forward(g: Graph, plan: InteractionPlan, enc: RRWPEncoding,
                         params: KernelParams) -> np.ndarray:
    """Reference: a full n x n x d pass whose t-sum is masked to the plan's entries.

    Returns values at the plan's materialised pairs, in plan order.
    """
    n, d = g.n, params.d
    act = _ACTIVATIONS[params.activation]
    mask = np.zeros((n, n, n), dtype=bool)   # mask[u, t, v]
    pu = plan.pairs[plan.targets]
    mask[pu[:, 0], plan.middle, pu[:, 1]] = True
    H = np.zeros((n, n, d))
    H[:, :, :enc.K] = enc.values
    for wc, wm, b in params.layers:
        msg = np.zeros_like(H)
        for t in range(n):
            msg += np.where(mask[:, t, :, None], H[:, t, None, :] * H[None, t, :, :], 0.0)
        H = act(H @ wc + msg @ wm + b)
    return H[plan.pairs[:, 0], plan.pairs[:, 1]] if plan.pair_count else np.zeros((0, d))


def _plan_for(g: Graph, flavor: str) -> InteractionPlan:
    if flavor == "dense":
        return dense_plan(g)
    if flavor == "cosp":
        return cosparsify_plan(g)
    raise ValueError(f"unknown plan flavor {flavor!r}")


def check_equivariance(g: Graph, params: KernelParams, trials: int, K: Optional[int] = None,
                       flavor: str = "cosp", seed: Optional[int] = None) -> float:
    """Worst relative deviation between forward(pi g) and pi(forward(g)) over random pi."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    K = min(params.d, 4) if K is None else K
    rng = np.random.default_rng(params.seed if seed is None else seed)
    base = forward(g, _plan_for(g, flavor), compute_rrwp(g, K), params)
    scale = max(float(np.max(np.abs(base.values))) if base.values.size else 0.0, 1e-300)
    worst = 0.0
    for _ in range(trials):
        perm = rng.permutation(g.n)
        gp = g.permute(perm.tolist())
        out = forward(gp, _plan_for(gp, flavor), compute_rrwp(gp, K), params)
        if base.plan.pair_count == 0:
            continue
        src = base.plan.pairs
        idx = out.plan.index[perm[src[:, 0]], perm[src[:, 1]]]
        if np.any(idx < 0):
            return float("inf")
        dev = float(np.max(np.abs(out.values[idx] - base.values))) / scale
        worst = max(worst, dev)
    return worst
