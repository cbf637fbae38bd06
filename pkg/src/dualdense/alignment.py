"""Merge a dual network into one weighted alignment graph.

An alignment node stands for a seed pair ``(c, p)`` and takes the conceptual
id ``c``. Two alignment nodes are joined when their conceptual vertices are
adjacent and their physical vertices are within ``delta`` hops:

* physically adjacent: the conceptual weight is copied;
* 2..delta hops apart: the weight is the mean conceptual weight along the
  first BFS shortest path (ascending-id expansion) between the physical
  vertices. A path edge missing from the conceptual graph counts with the
  direct conceptual weight of the pair instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .errors import ConfigError, GraphError
from .graph import DualNetwork, WeightedGraph, bfs_tree, is_connected, path_to


@dataclass(frozen=True)
class AlignmentConfig:
    delta: int = 1

    def __post_init__(self):
        if isinstance(self.delta, bool) or not isinstance(self.delta, int) or self.delta < 1:
            raise ConfigError(f"delta must be an integer >= 1, got {self.delta!r}")


class SeedPairs:
    """One-to-one correspondence between conceptual and physical node ids."""

    def __init__(self, pairs: Iterable[Tuple[int, int]]):
        c2p: Dict[int, int] = {}
        p2c: Dict[int, int] = {}
        for c, p in pairs:
            c, p = int(c), int(p)
            if c in c2p and c2p[c] != p or p in p2c and p2c[p] != c:
                raise GraphError(f"seed pair ({c}, {p}) conflicts with an earlier pair")
            c2p[c] = p
            p2c[p] = c
        self.c2p = dict(sorted(c2p.items()))
        self.p2c = p2c

    @classmethod
    def identity(cls, nodes: Iterable[int]) -> "SeedPairs":
        return cls((v, v) for v in nodes)

    @property
    def pairs(self):
        return list(self.c2p.items())

    def __len__(self):
        return len(self.c2p)

    def check(self, dn: DualNetwork):
        for c, p in self.c2p.items():
            if c not in dn.conceptual:
                raise GraphError(f"seed pair ({c}, {p}): unknown conceptual node {c}")
            if p not in dn.physical:
                raise GraphError(f"seed pair ({c}, {p}): unknown physical node {p}")


def build_alignment_graph(dn: DualNetwork, seeds: Optional[SeedPairs] = None,
                          cfg: AlignmentConfig = AlignmentConfig()) -> WeightedGraph:
    if not isinstance(cfg, AlignmentConfig):
        cfg = AlignmentConfig(cfg)
    if seeds is None:
        seeds = SeedPairs.identity(dn.node_ids)
    seeds.check(dn)
    gc, gp = dn.conceptual, dn.physical
    c2p, p2c = seeds.c2p, seeds.p2c

    edges = []
    for u, pu in c2p.items():
        targets = [v for v in gc.neighbors(u) if v > u and v in c2p]
        if not targets:
            continue
        direct = [v for v in targets if gp.has_edge(pu, c2p[v])]
        for v in direct:
            edges.append((u, v, gc.weight(u, v)))
        if cfg.delta == 1 or len(direct) == len(targets):
            continue
        dist, parent = bfs_tree(gp, pu, cfg.delta)
        for v in targets:
            pv = c2p[v]
            d = dist.get(pv)
            if d is None or d < 2:
                continue
            w_uv = gc.weight(u, v)
            path = path_to(parent, pv)
            total = 0.0
            for a, b in zip(path, path[1:]):
                ca, cb = p2c.get(a), p2c.get(b)
                if ca is not None and cb is not None and gc.has_edge(ca, cb):
                    total += gc.weight(ca, cb)
                else:
                    total += w_uv
            edges.append((u, v, total / (len(path) - 1)))
    return WeightedGraph.from_edges(edges, nodes=c2p, labels=_labels(gc, c2p))


def _labels(gc, nodes):
    if gc.labels is None:
        return None
    return {v: gc.labels[v] for v in nodes if v in gc.labels}


def physical_distances_within(dn: DualNetwork, delta: int) -> Dict[Tuple[int, int], int]:
    """Hop counts ``<= delta`` between physical vertices, keyed ``(u, v)`` with ``u < v``."""
    delta = AlignmentConfig(delta).delta
    out = {}
    for u in dn.physical:
        dist, _ = bfs_tree(dn.physical, u, delta)
        for v, d in dist.items():
            if u < v:
                out[(u, v)] = d
    return dict(sorted(out.items()))


def verify_physical_connectivity(dn: DualNetwork, nodes: Iterable[int]) -> bool:
    return is_connected(dn.physical, nodes)
