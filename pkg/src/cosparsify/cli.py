"""Command-line entry point: ``cosparsify <command> [options]``.

Commands: decompose, plan, compare, certify, count, profile, kernel. Reports are
JSON (plans may also be exported as text) written to stdout or ``--out``.
Output files are written only after the command has finished successfully.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .connectivity import biconnected_decomposition
from .graph import Graph, GraphParseError, parse_edge_list, parse_graph6
from .harness import (SCHEMA, builtin_corpus, certify_equivalence, corpus_counts, corpus_signatures,
                      counting_probe, load_corpus, profile_complexity)
from .oracle import PATTERN_NAMES, count_occurrences, get_pattern
from .refine import graph_signature, parse_engine, signature, stable_coloring
from .sparsify import cosparsify_plan, dense_plan, distance_bounded_plan

log = logging.getLogger("cosparsify")

COMMANDS = ("decompose", "plan", "compare", "certify", "count", "profile", "kernel")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    fmt: str = "edgelist"
    corpus: Optional[str] = None
    engine: str = "cosp"
    engines: tuple = ("dense", "cosp")
    flavor: str = "cosp"
    k: int = 4
    max_dist: Optional[int] = None
    layers: Optional[int] = None
    seed: int = 0
    jobs: int = 1
    out: Optional[str] = None
    pattern: str = "cycle3"
    plan_format: str = "json"
    kernel: bool = False
    d: int = 8
    trials: int = 10
    timings: bool = False
    verbosity: int = 0

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.fmt not in ("edgelist", "graph6"):
            raise ConfigError("--format must be edgelist or graph6")
        if self.k < 1:
            raise ConfigError("--k must be >= 1")
        if self.max_dist is not None and self.max_dist < 1:
            raise ConfigError("--max-dist must be >= 1")
        if self.layers is not None and self.layers < 0:
            raise ConfigError("--layers must be >= 0")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        if self.d < self.k:
            raise ConfigError("--d must be >= --k")
        if self.trials < 1:
            raise ConfigError("--trials must be >= 1")
        for p in self.inputs:
            if not os.path.exists(p):
                raise ConfigError(f"input not found: {p}")
        single = ("decompose", "plan", "kernel")
        if self.command in single and len(self.inputs) != 1:
            raise ConfigError(f"{self.command} needs exactly one --input")
        if self.command == "compare" and len(self.inputs) != 2:
            raise ConfigError("compare needs two inputs (--input A --input B)")
        if self.command in ("certify", "count", "profile") and not (self.inputs or self.corpus):
            raise ConfigError(f"{self.command} needs --input or --corpus")
        if self.command == "plan":
            if self.flavor not in ("dense", "cosp", "cosp-dist"):
                raise ConfigError("--flavor must be dense, cosp or cosp-dist")
            if self.flavor == "cosp-dist" and self.max_dist is None:
                raise ConfigError("--flavor cosp-dist needs --max-dist")
            if self.plan_format not in ("json", "text"):
                raise ConfigError("--plan-format must be json or text")
        try:
            parse_engine(self.engine)
            engines = tuple(parse_engine(e) for e in self.engines)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.command == "certify" and len(engines) != 2:
            raise ConfigError("certify needs exactly two engines (--engines A,B)")
        if self.command == "count" and self.pattern not in PATTERN_NAMES:
            raise ConfigError(f"unknown pattern {self.pattern!r}; known: {', '.join(PATTERN_NAMES)}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cosparsify", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--input", "-i", action="append", default=[], help="graph file (repeatable)")
    ap.add_argument("--format", dest="fmt", default="edgelist", help="edgelist or graph6")
    ap.add_argument("--corpus", help="builtin corpus, e.g. connected-upto:6, unions:2000, glued:1000")
    ap.add_argument("--engine", default="cosp", help="wl1, dense, cosp or cosp-dist:K")
    ap.add_argument("--engines", default="dense,cosp", help="comma-separated engine pair")
    ap.add_argument("--flavor", default="cosp", help="plan flavor: dense, cosp, cosp-dist")
    ap.add_argument("--k", type=int, default=4, help="RRWP order")
    ap.add_argument("--max-dist", type=int, default=None)
    ap.add_argument("--layers", type=int, default=None, help="fixed refinement depth")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", "-o", default=None)
    ap.add_argument("--pattern", default="cycle3", help=", ".join(PATTERN_NAMES))
    ap.add_argument("--plan-format", default="json")
    ap.add_argument("--kernel", action="store_true", help="profile: include kernel MAC counts")
    ap.add_argument("--d", type=int, default=8, help="kernel feature width")
    ap.add_argument("--trials", type=int, default=10, help="kernel: equivariance trials")
    ap.add_argument("--timings", action="store_true", help="include wall-clock times (non-deterministic)")
    ap.add_argument("--verbose", "-v", action="count", default=0)
    return ap


def _config(argv) -> RunConfig:
    a = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=a.command, inputs=list(a.input), fmt=a.fmt, corpus=a.corpus, engine=a.engine,
        engines=tuple(e for e in a.engines.split(",") if e), flavor=a.flavor, k=a.k,
        max_dist=a.max_dist, layers=a.layers, seed=a.seed, jobs=a.jobs, out=a.out,
        pattern=a.pattern, plan_format=a.plan_format, kernel=a.kernel, d=a.d, trials=a.trials,
        timings=a.timings, verbosity=a.verbose,
    )
    cfg.validate()
    return cfg


def _read_graph(path: str, fmt: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphParseError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
        return parse_graph6(lines[0])
    return parse_edge_list(text)


def _corpus(cfg: RunConfig):
    if cfg.corpus:
        return builtin_corpus(cfg.corpus, cfg.seed)
    return load_corpus(cfg.inputs[0], cfg.fmt)


def cmd_decompose(cfg: RunConfig) -> tuple[dict, int]:
    g = _read_graph(cfg.inputs[0], cfg.fmt)
    d = biconnected_decomposition(g)
    rep = {"schema": SCHEMA, "kind": "decomposition", "m": g.m}
    rep.update(d.to_report())
    return rep, 0


def cmd_plan(cfg: RunConfig):
    g = _read_graph(cfg.inputs[0], cfg.fmt)
    if cfg.flavor == "dense":
        plan = dense_plan(g)
    else:
        d = biconnected_decomposition(g)
        plan = cosparsify_plan(g, d) if cfg.flavor == "cosp" else distance_bounded_plan(g, d, cfg.max_dist)
    if cfg.plan_format == "text":
        return plan.to_text(), 0
    rep = {"schema": SCHEMA, "kind": "plan"}
    rep.update(plan.to_report(include_entries=True))
    return rep, 0


def cmd_compare(cfg: RunConfig):
    ga = _read_graph(cfg.inputs[0], cfg.fmt)
    gb = _read_graph(cfg.inputs[1], cfg.fmt)
    engine = parse_engine(cfg.engine)
    sa = signature(ga, engine, layers=cfg.layers)
    sb = signature(gb, engine, layers=cfg.layers)
    rep = {
        "schema": SCHEMA, "kind": "compare", "engine": str(engine),
        "result": "distinguished" if sa != sb else "equivalent",
        "signatures": [sa.hex, sb.hex],
        "stable_iterations": [sa.stable_iterations, sb.stable_iterations],
    }
    return rep, 0


def cmd_certify(cfg: RunConfig):
    c = _corpus(cfg)
    a, b = cfg.engines
    r = certify_equivalence(c, a, b, jobs=cfg.jobs, layers=cfg.layers, timings=cfg.timings)
    return r.to_report(), 0 if r.equivalent else 1


def cmd_count(cfg: RunConfig):
    c = _corpus(cfg)
    p = get_pattern(cfg.pattern)
    per_graph = []
    totals = []
    for g in c.graphs:
        cnt = count_occurrences(g, p)
        totals.append(cnt.total)
        per_graph.append({"n": g.n, "count": cnt.total, "per_node": list(cnt.per_node)})
    rep = {"schema": SCHEMA, "kind": "counts", "corpus": c.name, "pattern": p.name,
           "automorphisms": p.automorphism_count, "graphs": per_graph}
    if len(c) > 1:
        sigs = {str(parse_engine(e)): corpus_signatures(c, e, cfg.jobs, cfg.layers) for e in cfg.engines}
        rep["probe"] = counting_probe(c, p, cfg.engines, counts=totals, signatures=sigs)
    return rep, 0


def cmd_profile(cfg: RunConfig):
    c = _corpus(cfg)
    return profile_complexity(c, kernel=cfg.kernel, d=cfg.d, L=cfg.layers or 2, K=cfg.k,
                              seed=cfg.seed, jobs=cfg.jobs), 0


def cmd_kernel(cfg: RunConfig):
    from .kernel import KernelParams, check_equivariance, forward, masked_dense_forward
    from .rrwp import compute_rrwp
    import numpy as np

    g = _read_graph(cfg.inputs[0], cfg.fmt)
    L = cfg.layers or 2
    params = KernelParams.random(L, cfg.d, cfg.seed)
    enc = compute_rrwp(g, cfg.k)
    d = biconnected_decomposition(g)
    sp = cosparsify_plan(g, d)
    out = forward(g, sp, enc, params)
    dense = forward(g, dense_plan(g), enc, params)
    ref = masked_dense_forward(g, sp, enc, params)
    scale = max(float(np.max(np.abs(ref))) if ref.size else 0.0, 1e-300)
    rep = {
        "schema": SCHEMA, "kind": "kernel", "n": g.n, "m": g.m, "L": L, "d": cfg.d, "K": cfg.k,
        "cosp_macs": out.macs, "dense_macs": dense.macs,
        "masked_dense_rel_deviation": float(np.max(np.abs(out.values - ref))) / scale if ref.size else 0.0,
        "equivariance_max_rel_deviation": check_equivariance(g, params, cfg.trials, K=cfg.k,
                                                             seed=cfg.seed),
    }
    return rep, 0


_HANDLERS = {"decompose": cmd_decompose, "plan": cmd_plan, "compare": cmd_compare,
             "certify": cmd_certify, "count": cmd_count, "profile": cmd_profile, "kernel": cmd_kernel}


def _render(payload) -> str:
    if isinstance(payload, str):
        return payload
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cosparsify-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, out)


def main(argv=None) -> int:
    try:
        cfg = _config(argv)
    except ConfigError as exc:
        print(f"cosparsify: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbosity, 2),
                        format="%(levelname)s %(message)s")
    try:
        payload, code = _HANDLERS[cfg.command](cfg)
    except (GraphParseError, OSError, ValueError) as exc:
        print(f"cosparsify: error: {exc}", file=sys.stderr)
        return 2
    _write(_render(payload), cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
