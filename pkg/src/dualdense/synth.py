"""Planted-clique benchmark instances.

Layout of a generated instance: clique ``i`` occupies ids
``[i*clique_size, (i+1)*clique_size)``, the background follows. Randomness
comes from numpy's PCG64 (``numpy.random.default_rng``); the base graph is
drawn from the stream seeded ``(rng_seed, 0)`` and noise from ``(rng_seed, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Tuple

import numpy as np

from .errors import ConfigError
from .graph import WeightedGraph

BACKGROUNDS = {
    "er01": ("er", 0.1),
    "er02": ("er", 0.2),
    "ba10": ("ba", 10),
}


@dataclass(frozen=True)
class SynthConfig:
    background: str = "er01"
    background_nodes: int = 100
    num_cliques: int = 5
    clique_size: int = 30
    clique_weight_range: Tuple[float, float] = (0.8, 1.0)
    background_weight_range: Tuple[float, float] = (0.0, 0.5)
    extra_edges: int = 50
    noise: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.background not in BACKGROUNDS:
            raise ConfigError(f"background must be one of {sorted(BACKGROUNDS)}, got {self.background!r}")
        for name in ("background_nodes", "num_cliques", "clique_size"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.extra_edges < 0:
            raise ConfigError("extra_edges must be non-negative")
        for name in ("clique_weight_range", "background_weight_range"):
            lo, hi = getattr(self, name)
            if not 0.0 <= lo <= hi <= 1.0:
                raise ConfigError(f"{name} must be an interval inside [0, 1], got {(lo, hi)}")
        _check_noise(self.noise)
        kind, param = BACKGROUNDS[self.background]
        if kind == "ba" and self.background_nodes <= param:
            raise ConfigError(f"BA background needs more than {param} nodes")

    @property
    def num_nodes(self) -> int:
        return self.num_cliques * self.clique_size + self.background_nodes


@dataclass
class PlantedInstance:
    graph: WeightedGraph
    truth: List[frozenset]
    config: SynthConfig
    # node pairs touched by apply_noise, in sampling order
    noise_pairs: List[Tuple[int, int]] = field(default_factory=list)


def _check_noise(noise):
    if not 0.0 <= noise <= 1.0:
        raise ConfigError(f"noise must lie in [0, 1], got {noise!r}")


def _er_edges(rng, nodes: np.ndarray, p: float):
    n = len(nodes)
    out = []
    for i in range(n - 1):
        hit = np.flatnonzero(rng.random(n - i - 1) < p) + i + 1
        out.extend((int(nodes[i]), int(nodes[j])) for j in hit)
    return out


def _ba_edges(rng, nodes: np.ndarray, m: int):
    """Preferential attachment from an ``m``-node seed clique, ``m`` links per new node."""
    seed = [int(v) for v in nodes[:m]]
    edges = [(seed[a], seed[b]) for a in range(m) for b in range(a + 1, m)]
    # each endpoint appears once per incident edge -> degree-proportional sampling
    pool = [v for e in edges for v in e]
    for v in nodes[m:]:
        v = int(v)
        targets = set()
        while len(targets) < m:
            targets.add(pool[int(rng.integers(len(pool)))])
        for t in sorted(targets):
            edges.append((t, v))
            pool.extend((t, v))
    return edges


def _uniform(rng, lo, hi):
    return float(rng.uniform(lo, hi))


def generate(cfg: SynthConfig) -> PlantedInstance:
    rng = np.random.default_rng((cfg.rng_seed, 0))
    s = cfg.clique_size
    weights: Dict[Tuple[int, int], float] = {}
    truth = []
    for c in range(cfg.num_cliques):
        members = range(c * s, (c + 1) * s)
        truth.append(frozenset(members))
        for a in members:
            for b in range(a + 1, (c + 1) * s):
                weights[(a, b)] = _uniform(rng, *cfg.clique_weight_range)

    bg = np.arange(cfg.num_cliques * s, cfg.num_nodes)
    kind, param = BACKGROUNDS[cfg.background]
    bg_edges = _er_edges(rng, bg, param) if kind == "er" else _ba_edges(rng, bg, param)
    for u, v in bg_edges:
        weights[(min(u, v), max(u, v))] = _uniform(rng, *cfg.background_weight_range)

    n = cfg.num_nodes
    if cfg.extra_edges > n * (n - 1) // 2 - len(weights):
        raise ConfigError("not enough free node pairs for the extra edges")
    added = 0
    while added < cfg.extra_edges:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in weights:
            continue
        weights[key] = _uniform(rng, *cfg.background_weight_range)
        added += 1

    graph = WeightedGraph.from_edges(((u, v, w) for (u, v), w in weights.items()), nodes=range(n))
    inst = PlantedInstance(graph, truth, replace(cfg, noise=0.0))
    if cfg.noise > 0:
        inst = apply_noise(inst, cfg.noise, cfg.rng_seed)
    return inst


def apply_noise(inst: PlantedInstance, noise: float, rng_seed: int,
                clique_weight_range=(0.8, 1.0), weak_range=(0.0, 0.5)) -> PlantedInstance:
    """Perturb ``floor(noise * |E|)`` distinct random node pairs.

    A pair inside one planted clique gets a fresh weight from ``weak_range``;
    any other pair becomes an edge with weight from ``clique_weight_range``
    if it was not one already (existing edges are left alone).
    """
    _check_noise(noise)
    g = inst.graph
    count = math.floor(noise * g.num_edges + 1e-9)
    if count == 0:
        return inst
    nodes = g.node_ids
    n = len(nodes)
    if count > n * (n - 1) // 2:
        raise ConfigError("noise asks for more pairs than the graph has")
    owner = {}
    for idx, t in enumerate(inst.truth):
        for v in t:
            owner[v] = idx

    rng = np.random.default_rng((rng_seed, 1))
    weights = {(u, v): w for u, v, w in g.edges()}
    seen: Dict[Tuple[int, int], None] = {}  # insertion-ordered
    while len(seen) < count:
        a, b = (nodes[int(x)] for x in rng.integers(n, size=2))
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen[key] = None
        oa, ob = owner.get(a), owner.get(b)
        if oa is not None and oa == ob:
            weights[key] = _uniform(rng, *weak_range)
        elif key not in weights:
            weights[key] = _uniform(rng, *clique_weight_range)

    graph = WeightedGraph.from_edges(((u, v, w) for (u, v), w in sorted(weights.items())), nodes=nodes)
    return PlantedInstance(graph, list(inst.truth), replace(inst.config, noise=noise),
                           inst.noise_pairs + list(seen))
