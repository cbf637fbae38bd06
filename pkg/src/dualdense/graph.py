"""Weighted/unweighted undirected graphs, density and connectivity helpers.

Node ids are non-negative integers. Adjacency is a dict of dicts keyed in
ascending node-id order, so iterating neighbours is deterministic.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .errors import GraphError

INF = math.inf


def _sorted_adj(adj):
    return {u: dict(sorted(adj[u].items())) for u in sorted(adj)}


class _Graph:
    """Shared machinery for the two graph kinds. Treat instances as immutable."""

    __slots__ = ("_adj", "_m", "labels")

    def __init__(self, adj, m, labels=None):
        self._adj = adj
        self._m = m
        # id -> external label, populated by the loaders when the input used strings
        self.labels: Optional[Dict[int, str]] = labels

    @property
    def node_ids(self) -> List[int]:
        return list(self._adj)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    @property
    def num_nodes(self) -> int:
        return len(self._adj)

    @property
    def num_edges(self) -> int:
        return self._m

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self._adj.get(u)
        return nbrs is not None and v in nbrs

    def neighbors(self, v: int):
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown node id {v!r}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def _check_members(self, nodes: Iterable[int]) -> List[int]:
        nodes = sorted(set(nodes))
        missing = [v for v in nodes if v not in self._adj]
        if missing:
            raise GraphError(f"node ids not in graph: {missing[:10]}")
        return nodes

    def _induced_adj(self, nodes: Iterable[int]):
        keep = self._check_members(nodes)
        keep_set = set(keep)
        adj = {}
        m2 = 0
        for u in keep:
            nb = {w: x for w, x in self._adj[u].items() if w in keep_set}
            m2 += len(nb)
            adj[u] = nb
        return adj, m2 // 2, keep

    def _relabelled(self, keep):
        if self.labels is None:
            return None
        return {v: self.labels[v] for v in keep if v in self.labels}

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.num_nodes}, m={self.num_edges})"


class WeightedGraph(_Graph):
    """Undirected graph with non-negative edge weights (zero allowed)."""

    __slots__ = ()

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int, float]], nodes: Iterable[int] = (),
                   labels=None) -> "WeightedGraph":
        adj: Dict[int, Dict[int, float]] = {int(v): {} for v in nodes}
        m = 0
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if u < 0 or v < 0:
                raise GraphError(f"negative node id in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            if not w >= 0 or math.isinf(w):
                raise GraphError(f"edge ({u}, {v}) has invalid weight {w}")
            nu = adj.setdefault(u, {})
            if v in nu:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nu[v] = w
            adj.setdefault(v, {})[u] = w
            m += 1
        return cls(_sorted_adj(adj), m, labels)

    def weight(self, u: int, v: int) -> float:
        try:
            return self._adj[u][v]
        except KeyError:
            raise GraphError(f"no edge ({u}, {v})") from None

    def edges(self) -> Iterator[Tuple[int, int, float]]:
        """Each undirected edge once, as ``(u, v, w)`` with ``u < v``, ascending."""
        for u, nbrs in self._adj.items():
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w

    def vol(self, v: int) -> float:
        return sum(self.neighbors(v).values())

    def total_weight(self) -> float:
        return sum(w for _, _, w in self.edges())

    def density(self) -> float:
        return density(self)

    def induced_subgraph(self, nodes: Iterable[int]) -> "WeightedGraph":
        adj, m, keep = self._induced_adj(nodes)
        return WeightedGraph(adj, m, self._relabelled(keep))

    def without(self, nodes: Iterable[int]) -> "WeightedGraph":
        drop = set(nodes)
        return self.induced_subgraph(v for v in self._adj if v not in drop)


class UnweightedGraph(_Graph):
    """Undirected simple graph; adjacency values are ``None``."""

    __slots__ = ()

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int]], nodes: Iterable[int] = (),
                   labels=None) -> "UnweightedGraph":
        adj: Dict[int, Dict[int, None]] = {int(v): {} for v in nodes}
        m = 0
        for u, v in edges:
            u, v = int(u), int(v)
            if u < 0 or v < 0:
                raise GraphError(f"negative node id in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop on node {u}")
            nu = adj.setdefault(u, {})
            if v in nu:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nu[v] = None
            adj.setdefault(v, {})[u] = None
            m += 1
        return cls(_sorted_adj(adj), m, labels)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, nbrs in self._adj.items():
            for v in nbrs:
                if u < v:
                    yield u, v

    def induced_subgraph(self, nodes: Iterable[int]) -> "UnweightedGraph":
        adj, m, keep = self._induced_adj(nodes)
        return UnweightedGraph(adj, m, self._relabelled(keep))


class DualNetwork:
    """A weighted conceptual graph and an unweighted physical graph on one vertex set."""

    __slots__ = ("conceptual", "physical")

    def __init__(self, conceptual: WeightedGraph, physical: UnweightedGraph):
        if set(conceptual.node_ids) != set(physical.node_ids):
            only_c = sorted(set(conceptual.node_ids) - set(physical.node_ids))
            only_p = sorted(set(physical.node_ids) - set(conceptual.node_ids))
            raise GraphError(
                "conceptual and physical vertex sets differ "
                f"(only conceptual: {only_c[:10]}, only physical: {only_p[:10]})"
            )
        self.conceptual = conceptual
        self.physical = physical

    @property
    def node_ids(self) -> List[int]:
        return self.conceptual.node_ids

    def __repr__(self) -> str:
        return f"DualNetwork(n={self.conceptual.num_nodes}, m_c={self.conceptual.num_edges}, " \
               f"m_p={self.physical.num_edges})"


def vol(g: WeightedGraph, v: int) -> float:
    return g.vol(v)


def density(g: WeightedGraph) -> float:
    """Twice the total edge weight over the node count. Undefined (error) for no nodes."""
    n = g.num_nodes
    if n == 0:
        raise GraphError("density of an empty graph is undefined")
    return 2.0 * g.total_weight() / n


def subset_density(g: WeightedGraph, nodes: Iterable[int]) -> float:
    """Density of ``g[nodes]`` without materialising the subgraph."""
    members = set(nodes)
    if not members:
        raise GraphError("density of an empty node set is undefined")
    total = 0.0
    for u in members:
        for v, w in g.neighbors(u).items():
            if v in members and u < v:
                total += w
    return 2.0 * total / len(members)


def induced_subgraph(g, nodes: Iterable[int]):
    return g.induced_subgraph(nodes)


def connected_components(g, nodes: Optional[Iterable[int]] = None) -> List[Set[int]]:
    """Components of ``g`` (or of ``g[nodes]``), ordered by their smallest node id."""
    adj = g._adj
    if nodes is None:
        allowed = None
        order = list(adj)
    else:
        order = g._check_members(nodes)
        allowed = set(order)
    seen: Set[int] = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def is_connected(g, nodes: Optional[Iterable[int]] = None) -> bool:
    """True when ``g`` (or ``g[nodes]``) has at most one component; empty is connected."""
    return len(connected_components(g, nodes)) <= 1


def bfs_distances(g, source: int, max_depth: Optional[int] = None) -> Dict[int, float]:
    """Hop counts from ``source``; unreachable nodes map to ``inf``.

    With ``max_depth`` set, nodes farther than that are reported as ``inf`` too.
    """
    dist, _ = bfs_tree(g, source, max_depth)
    out = dict.fromkeys(g._adj, INF)
    out.update(dist)
    return out


def bfs_tree(g, source: int, max_depth: Optional[int] = None):
    """Bounded BFS returning ``(dist, parent)`` for reached nodes only.

    Neighbours are expanded in ascending id order, and a node's parent is the
    first vertex that discovers it, so the recovered shortest paths are
    deterministic.
    """
    adj = g._adj
    if source not in adj:
        raise GraphError(f"unknown source node {source!r}")
    dist = {source: 0}
    parent = {source: None}
    frontier = [source]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        depth += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = depth
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    return dist, parent


def path_to(parent: Dict[int, Optional[int]], target: int) -> List[int]:
    """Walk a BFS parent map back from ``target``; returns source..target."""
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path
