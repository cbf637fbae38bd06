"""Text formats: edge lists, seed pairs, truth sets, label maps and result files.

Edge list grammar (UTF-8, one record per line, fields separated by TAB, or by
runs of whitespace when a line has no TAB)::

    # comment
    u                 node declaration (lets isolated nodes survive a round trip)
    u   v             unweighted edge
    u   v   w         weighted edge, w a decimal literal >= 0

Weighted and unweighted edge lines never share a file. Node tokens are
either all non-negative integers, used verbatim as ids, or arbitrary labels,
mapped to dense ids ``0..n-1`` in sorted label order.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import FormatError, GraphError
from .graph import DualNetwork, UnweightedGraph, WeightedGraph
from .iwds import MiningConfig, SubgraphSet, objective_from_parts, pair_distance

_Record = Tuple[int, List[str]]  # (line number, tokens)


def _read_records(path) -> List[_Record]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(path, 0, f"cannot read: {e.strerror or e}") from e
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = [t.strip() for t in line.split("\t")] if "\t" in line else line.split()
        out.append((lineno, toks))
    return out


def _is_int_token(tok: str) -> bool:
    return tok.isascii() and tok.isdigit()


class NodeMap:
    """Token <-> id mapping shared by every file of one dataset."""

    def __init__(self, tokens):
        tokens = set(tokens)
        self.integer = all(_is_int_token(t) for t in tokens)
        if self.integer:
            self.to_id = {t: int(t) for t in tokens}
            self.labels = None
        else:
            ordered = sorted(tokens)
            self.to_id = {t: i for i, t in enumerate(ordered)}
            self.labels = dict(enumerate(ordered))

    @classmethod
    def from_graph(cls, g) -> "NodeMap":
        nm = cls.__new__(cls)
        if g.labels is None:
            nm.integer, nm.labels = True, None
            nm.to_id = {str(v): v for v in g}
        else:
            nm.integer, nm.labels = False, dict(g.labels)
            nm.to_id = {lab: v for v, lab in g.labels.items()}
        return nm

    def id_of(self, tok: str, path, lineno) -> int:
        if self.integer and _is_int_token(tok):
            return int(tok)
        try:
            return self.to_id[tok]
        except KeyError:
            raise FormatError(path, lineno, f"unknown node {tok!r}") from None

    def token(self, v: int) -> str:
        return str(v) if self.labels is None else self.labels[v]


def _node_tokens(records):
    for _, toks in records:
        yield from toks[:2]


def _parse_weighted(path, records, nmap) -> WeightedGraph:
    nodes, edges, seen = [], [], {}
    for lineno, toks in records:
        if len(toks) == 1:
            nodes.append(nmap.id_of(toks[0], path, lineno))
            continue
        if len(toks) != 3:
            raise FormatError(path, lineno, f"expected 'u<TAB>v<TAB>w', got {len(toks)} fields")
        u, v = nmap.id_of(toks[0], path, lineno), nmap.id_of(toks[1], path, lineno)
        try:
            w = float(toks[2])
        except ValueError:
            raise FormatError(path, lineno, f"bad weight {toks[2]!r}") from None
        if not w >= 0 or math.isinf(w):
            raise FormatError(path, lineno, f"weight must be finite and >= 0, got {toks[2]}")
        _check_pair(path, lineno, u, v, seen)
        edges.append((u, v, w))
    return WeightedGraph.from_edges(edges, nodes, labels=nmap.labels)


def _parse_unweighted(path, records, nmap) -> UnweightedGraph:
    nodes, edges, seen = [], [], {}
    for lineno, toks in records:
        if len(toks) == 1:
            nodes.append(nmap.id_of(toks[0], path, lineno))
            continue
        if len(toks) != 2:
            raise FormatError(path, lineno, f"expected 'u<TAB>v', got {len(toks)} fields")
        u, v = nmap.id_of(toks[0], path, lineno), nmap.id_of(toks[1], path, lineno)
        _check_pair(path, lineno, u, v, seen)
        edges.append((u, v))
    return UnweightedGraph.from_edges(edges, nodes, labels=nmap.labels)


def _check_pair(path, lineno, u, v, seen):
    if u == v:
        raise FormatError(path, lineno, "self-loop")
    key = (min(u, v), max(u, v))
    if key in seen:
        raise FormatError(path, lineno, f"duplicate edge (first seen on line {seen[key]})")
    seen[key] = lineno


def load_weighted(path, nmap: Optional[NodeMap] = None) -> WeightedGraph:
    records = _read_records(path)
    return _parse_weighted(path, records, nmap or NodeMap(_node_tokens(records)))


def load_unweighted(path, nmap: Optional[NodeMap] = None) -> UnweightedGraph:
    records = _read_records(path)
    return _parse_unweighted(path, records, nmap or NodeMap(_node_tokens(records)))


def load_dual(concept_path, physical_path) -> DualNetwork:
    rc, rp = _read_records(concept_path), _read_records(physical_path)
    tc, tp = set(_node_tokens(rc)), set(_node_tokens(rp))
    if tc != tp:
        raise FormatError(
            physical_path, 0,
            "vertex-set mismatch between layers "
            f"(only conceptual: {sorted(tc - tp)[:10]}, only physical: {sorted(tp - tc)[:10]})",
        )
    nmap = NodeMap(tc)
    gc = _parse_weighted(concept_path, rc, nmap)
    gp = _parse_unweighted(physical_path, rp, nmap)
    try:
        return DualNetwork(gc, gp)
    except GraphError as e:
        raise FormatError(physical_path, 0, str(e)) from e


def _write_text(path, text):
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OSError(f"{path}: cannot write: {e.strerror or e}") from e


def _edge_list_text(g, weighted: bool) -> str:
    nm = NodeMap.from_graph(g)
    lines = []
    touched = set()
    if weighted:
        for u, v, w in g.edges():
            lines.append(f"{nm.token(u)}\t{nm.token(v)}\t{w!r}")
            touched.update((u, v))
    else:
        for u, v in g.edges():
            lines.append(f"{nm.token(u)}\t{nm.token(v)}")
            touched.update((u, v))
    lines.extend(nm.token(v) for v in g if v not in touched)
    return "".join(line + "\n" for line in lines)


def save_weighted(g: WeightedGraph, path):
    _write_text(path, _edge_list_text(g, True))


def save_unweighted(g: UnweightedGraph, path):
    _write_text(path, _edge_list_text(g, False))


def save_labels(labels: Dict[int, str], path):
    _write_text(path, "".join(f"{v}\t{lab}\n" for v, lab in sorted(labels.items())))


def load_seed_pairs(path, nmap: NodeMap) -> List[Tuple[int, int]]:
    pairs = []
    for lineno, toks in _read_records(path):
        if len(toks) != 2:
            raise FormatError(path, lineno, "expected 'conceptual<TAB>physical'")
        pairs.append((nmap.id_of(toks[0], path, lineno), nmap.id_of(toks[1], path, lineno)))
    return pairs


def save_truth(truth: Sequence, path, g=None):
    nm = NodeMap.from_graph(g) if g is not None else None
    lines = []
    for t in truth:
        toks = [nm.token(v) if nm else str(v) for v in sorted(t)]
        lines.append("\t".join(toks) + "\n")
    _write_text(path, "".join(lines))


def load_truth(path, nmap: Optional[NodeMap] = None) -> List[frozenset]:
    """One node set per line, members separated by TAB or whitespace."""
    out = []
    for lineno, toks in _read_records(path):
        if nmap is None:
            bad = [t for t in toks if not _is_int_token(t)]
            if bad:
                raise FormatError(path, lineno, f"non-integer node {bad[0]!r} and no label map")
            out.append(frozenset(int(t) for t in toks))
        else:
            out.append(frozenset(nmap.id_of(t, path, lineno) for t in toks))
    return out


# ---- result files -----------------------------------------------------------

def result_document(x: SubgraphSet, cfg: MiningConfig, delta: Optional[int] = None,
                    labels: Optional[Dict[int, str]] = None) -> dict:
    subs = []
    for i, (nodes, rho) in enumerate(zip(x.subgraphs, x.densities)):
        entry = {"index": i, "size": len(nodes), "nodes": sorted(nodes)}
        if labels is not None:
            entry["labels"] = [labels[v] for v in sorted(nodes)]
        entry["density"] = rho
        entry["physical_connected"] = x.physical_connected[i] if x.physical_connected else None
        subs.append(entry)
    dists = []
    for i in range(len(x.subgraphs)):
        for j in range(i + 1, len(x.subgraphs)):
            dists.append({"i": i, "j": j, "distance": pair_distance(x.subgraphs[i], x.subgraphs[j])})
    return {
        "config": {
            "k": cfg.k,
            "lambda": cfg.lam,
            "alpha": cfg.alpha,
            "f": cfg.f,
            "delta": delta,
            "tie_seed": cfg.tie_seed,
        },
        "subgraphs": subs,
        "distances": dists,
        "density_sum": sum(x.densities),
        "distance_sum": sum(d["distance"] for d in dists),
        "objective": x.objective,
        "exhausted": x.exhausted,
    }


def dumps_result(x: SubgraphSet, cfg: MiningConfig, delta=None, labels=None) -> str:
    return json.dumps(result_document(x, cfg, delta, labels), indent=2, allow_nan=False) + "\n"


def save_result(x: SubgraphSet, cfg: MiningConfig, path, delta=None, labels=None):
    _write_text(path, dumps_result(x, cfg, delta, labels))


def load_result(path) -> Tuple[SubgraphSet, dict]:
    """Parse a result file; returns the subgraph set and the raw config echo."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise FormatError(path, 0, f"cannot read: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise FormatError(path, e.lineno, f"invalid JSON: {e.msg}") from e
    try:
        cfg = doc["config"]
        subs = doc["subgraphs"]
        if not subs:
            raise FormatError(path, 0, "result contains no subgraphs")
        x = SubgraphSet(
            subgraphs=[frozenset(int(v) for v in s["nodes"]) for s in subs],
            densities=[float(s["density"]) for s in subs],
            objective=float(doc["objective"]),
            lam=float(cfg["lambda"]),
            physical_connected=[s.get("physical_connected") for s in subs],
            exhausted=bool(doc.get("exhausted", False)),
        )
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(path, 0, f"malformed result file: {e!r}") from e
    return x, cfg


def check_result_consistency(x: SubgraphSet, tol: float = 1e-9) -> bool:
    """Stored objective agrees with densities and distances stored alongside it."""
    return abs(objective_from_parts(x.densities, x.subgraphs, x.lam) - x.objective) <= tol
