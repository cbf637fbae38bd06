"""Iterative Weighted Dense Subgraphs: top-k overlapping densest subgraph mining.

Iteration 1 runs V-Greedy on the whole graph. Each later iteration takes the
nodes already covered, keeps only the best-connected fraction ``alpha`` of
them (ranked by weighted degree in the original graph), drops the rest from a
fresh copy of the graph and runs V-Greedy again, skipping node sets that were
already returned.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set

from .alignment import verify_physical_connectivity
from .errors import ConfigError, ExhaustedError, GraphError
from .graph import DualNetwork, WeightedGraph, subset_density
from .peeling import v_greedy_ranked

log = logging.getLogger(__name__)

_EPS = 1e-9


@dataclass(frozen=True)
class MiningConfig:
    k: int = 1
    lam: float = 1.0
    alpha: float = 0.1
    f: float = 0.5
    tie_seed: int = 0  # reserved; every tie-break is currently by node id

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k!r}")
        if not self.lam > 0 or math.isinf(self.lam):
            raise ConfigError(f"lambda must be > 0, got {self.lam!r}")
        if not 0 < self.alpha <= 1:
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not 0 < self.f <= 1:
            raise ConfigError(f"f must lie in (0, 1], got {self.f!r}")


@dataclass
class SubgraphSet:
    subgraphs: List[FrozenSet[int]]
    densities: List[float]
    objective: float
    lam: float
    physical_connected: List[Optional[bool]] = field(default_factory=list)
    exhausted: bool = False

    @property
    def covered(self) -> Set[int]:
        return coverage(self.subgraphs)

    def __len__(self):
        return len(self.subgraphs)

    def distance_matrix(self) -> List[List[float]]:
        k = len(self.subgraphs)
        d = [[0.0] * k for _ in range(k)]
        for i, j in combinations(range(k), 2):
            d[i][j] = d[j][i] = pair_distance(self.subgraphs[i], self.subgraphs[j])
        return d

    def distance_sum(self) -> float:
        return sum(pair_distance(a, b) for a, b in combinations(self.subgraphs, 2))


def pair_distance(a: Iterable[int], b: Iterable[int]) -> float:
    """0 for equal sets, otherwise ``2 - |a & b|**2 / (|a| |b|)``."""
    a, b = set(a), set(b)
    if not a or not b:
        raise GraphError("distance is undefined for empty node sets")
    if a == b:
        return 0.0
    inter = len(a & b)
    return 2.0 - inter * inter / (len(a) * len(b))


def objective(subgraphs: Sequence[Iterable[int]], g_c: WeightedGraph, lam: float) -> float:
    """Sum of densities plus ``lam`` times the sum of pairwise distances."""
    subgraphs = [frozenset(x) for x in subgraphs]
    if not subgraphs:
        raise GraphError("objective needs at least one subgraph")
    dens = sum(subset_density(g_c, x) for x in subgraphs)
    dist = sum(pair_distance(a, b) for a, b in combinations(subgraphs, 2))
    return dens + lam * dist


def objective_from_parts(densities: Sequence[float], subgraphs: Sequence[Iterable[int]],
                         lam: float) -> float:
    subgraphs = [frozenset(x) for x in subgraphs]
    return sum(densities) + lam * sum(pair_distance(a, b) for a, b in combinations(subgraphs, 2))


def coverage(subgraphs: Iterable[Iterable[int]]) -> Set[int]:
    out: Set[int] = set()
    for x in subgraphs:
        out.update(x)
    return out


def _rank_by_vol(g: WeightedGraph, nodes: Iterable[int]) -> List[int]:
    # highest vol first; equal vol -> lower id first
    return sorted(nodes, key=lambda v: (-g.vol(v), v))


def covered_to_remove(g: WeightedGraph, covered: Set[int], alpha: float, f: float) -> List[int]:
    """Covered nodes that the next iteration deletes, ordered highest vol first.

    Case 1 (``|C| <= f|V|``) keeps the top ``ceil(alpha |C|)`` covered nodes;
    case 2 deletes the bottom ``floor((1 - alpha) |C|)``. Both read from the
    same ranking, so with fractional alpha they agree.
    """
    ranked = _rank_by_vol(g, covered)
    c = len(ranked)
    if c <= f * g.num_nodes:
        keep = math.ceil(alpha * c - _EPS)
        return ranked[keep:]
    drop = math.floor((1.0 - alpha) * c + _EPS)
    return ranked[c - drop:] if drop else []


def iwds_mine(g: WeightedGraph, cfg: MiningConfig, dn: Optional[DualNetwork] = None) -> SubgraphSet:
    if g.num_nodes == 0:
        raise GraphError("cannot mine an empty graph")
    if not isinstance(cfg, MiningConfig):
        raise ConfigError("cfg must be a MiningConfig")
    if dn is not None:
        missing = [v for v in g if v not in dn.physical]
        if missing:
            raise GraphError(f"mined graph has nodes outside the dual network: {missing[:10]}")

    found: List[FrozenSet[int]] = []
    exhausted = False
    for i in range(cfg.k):
        if not found:
            x = v_greedy_ranked(g)
        else:
            x = _next_subgraph(g, found, cfg)
            if x is None:
                exhausted = True
                log.warning("IWDS stopped after %d of %d subgraphs: no new candidate left",
                            len(found), cfg.k)
                break
        found.append(x.nodes)
        log.debug("iteration %d: |X|=%d rho=%.6g", i + 1, len(x.nodes), x.rho)

    densities = [subset_density(g, x) for x in found]
    phys = [verify_physical_connectivity(dn, x) if dn is not None else None for x in found]
    return SubgraphSet(
        subgraphs=found,
        densities=densities,
        objective=objective_from_parts(densities, found, cfg.lam),
        lam=cfg.lam,
        physical_connected=phys,
        exhausted=exhausted,
    )


def _next_subgraph(g, found, cfg):
    covered = coverage(found)
    removed = covered_to_remove(g, covered, cfg.alpha, cfg.f)
    # on failure, give back removed nodes one at a time, highest vol first
    for restored in range(len(removed) + 1):
        gi = g.without(removed[restored:])
        if gi.num_nodes == 0:
            continue
        try:
            return v_greedy_ranked(gi, found)
        except ExhaustedError:
            continue
    return None
