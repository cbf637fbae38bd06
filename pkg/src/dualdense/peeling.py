"""Greedy peeling (Charikar-style) and the V-Greedy selection rule.

``peel_sequence`` removes a minimum-volume node at every step (ties go to the
lowest node id) and records the density of the surviving graph before each
removal. Snapshot ``i`` (1-based) is ``order[i-1:]``, so the whole sequence
costs O(n) memory and candidates are materialised only on demand.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional

from .errors import ExhaustedError, GraphError
from .graph import WeightedGraph, connected_components, subset_density

GREEDY = "greedy"
V_GREEDY = "v-greedy"


def vgreedy_score(rho: float, size: int) -> float:
    return rho + 2.0 * rho / size


def _score(rho, size, mode):
    if mode == GREEDY:
        return rho
    if mode == V_GREEDY:
        return vgreedy_score(rho, size)
    raise ValueError(f"unknown scoring mode {mode!r}")


@dataclass(frozen=True)
class PeelCandidate:
    nodes: FrozenSet[int]
    rho: float
    score: float
    step_index: int

    def __len__(self):
        return len(self.nodes)


@dataclass
class PeelSequence:
    order: List[int]
    densities: List[float]
    # instrumentation for the complexity tests
    heap_pushes: int = 0
    heap_pops: int = 0
    _scores: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.order)

    def size_at(self, step: int) -> int:
        return len(self.order) - step + 1

    def nodes_at(self, step: int) -> FrozenSet[int]:
        if not 1 <= step <= len(self.order):
            raise IndexError(step)
        return frozenset(self.order[step - 1:])

    def scores(self, mode: str = V_GREEDY) -> List[float]:
        if mode not in self._scores:
            n = len(self.order)
            self._scores[mode] = [_score(r, n - i, mode) for i, r in enumerate(self.densities)]
        return self._scores[mode]

    def candidate(self, step: int, mode: str = V_GREEDY) -> PeelCandidate:
        nodes = self.nodes_at(step)
        return PeelCandidate(nodes, self.densities[step - 1], self.scores(mode)[step - 1], step)

    def __iter__(self):
        for step in range(1, len(self.order) + 1):
            yield self.candidate(step)

    def ranked_steps(self, mode: str = V_GREEDY) -> List[int]:
        """1-based steps sorted by descending score, earliest step first on ties."""
        sc = self.scores(mode)
        return sorted(range(1, len(sc) + 1), key=lambda s: (-sc[s - 1], s))


def peel_sequence(g: WeightedGraph) -> PeelSequence:
    n = g.num_nodes
    if n == 0:
        raise GraphError("cannot peel an empty graph")
    adj = g._adj
    vol = {v: sum(nb.values()) for v, nb in adj.items()}
    live_deg = {v: len(nb) for v, nb in adj.items()}
    heap = [(x, v) for v, x in vol.items()]
    heapq.heapify(heap)
    pushes = len(heap)
    pops = 0
    removed = set()
    total = sum(vol.values()) / 2.0
    count = n
    order = []
    densities = []
    pop, push = heapq.heappop, heapq.heappush
    while count:
        x, v = pop(heap)
        pops += 1
        if v in removed or x != vol[v]:
            continue
        densities.append(2.0 * total / count if total > 0 else 0.0)
        order.append(v)
        removed.add(v)
        count -= 1
        total -= x
        for w, wt in adj[v].items():
            if w not in removed:
                d = live_deg[w] = live_deg[w] - 1
                # re-anchor vol at degree 0 and 1 so subtraction drift cannot
                # break exact ties (each node passes through here once: O(m) total)
                if d == 0:
                    vw = 0.0
                elif d == 1:
                    vw = next(x for u, x in adj[w].items() if u not in removed)
                else:
                    vw = vol[w] - wt
                vol[w] = vw
                push(heap, (vw, w))
                pushes += 1
    return PeelSequence(order, densities, pushes, pops)


def greedy_densest(g: WeightedGraph) -> PeelCandidate:
    seq = peel_sequence(g)
    return seq.candidate(seq.ranked_steps(GREEDY)[0], GREEDY)


def best_component(g: WeightedGraph, cand: PeelCandidate) -> PeelCandidate:
    """Return ``cand`` if it is connected in ``g``, else its highest-scoring component."""
    comps = connected_components(g, cand.nodes)
    if len(comps) <= 1:
        return cand
    best = None
    for comp in comps:
        rho = subset_density(g, comp)
        sc = vgreedy_score(rho, len(comp))
        if best is None or sc > best.score:
            best = PeelCandidate(frozenset(comp), rho, sc, cand.step_index)
    return best


def v_greedy(g: WeightedGraph) -> PeelCandidate:
    return v_greedy_ranked(g, ())


def v_greedy_ranked(g: WeightedGraph, exclude: Iterable[Iterable[int]] = (),
                    seq: Optional[PeelSequence] = None) -> PeelCandidate:
    """Best V-Greedy snapshot (connected, see ``best_component``) not listed in ``exclude``."""
    excluded = {frozenset(x) for x in exclude}
    if seq is None:
        seq = peel_sequence(g)
    for step in seq.ranked_steps(V_GREEDY):
        cand = best_component(g, seq.candidate(step, V_GREEDY))
        if cand.nodes not in excluded:
            return cand
    raise ExhaustedError(f"all {len(seq)} peeling candidates are excluded")
