"""Best-match F1 between detected subgraphs and planted ground truth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import DualDenseError


@dataclass
class EvalReport:
    f1_truth_to_detected: float
    f1_detected_to_truth: float
    per_pair: Dict[Tuple[int, int], float]

    def line(self) -> str:
        return f"F1[t/d]={self.f1_truth_to_detected:.4f} F1[d/t]={self.f1_detected_to_truth:.4f}"

    def to_dict(self) -> dict:
        return {
            "f1_truth_to_detected": round(self.f1_truth_to_detected, 4),
            "f1_detected_to_truth": round(self.f1_detected_to_truth, 4),
        }


def f1(a: Iterable[int], b: Iterable[int]) -> float:
    a, b = set(a), set(b)
    if not a or not b:
        raise DualDenseError("F1 is undefined for empty node sets")
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return 2.0 * inter / (len(a) + len(b))


def evaluate(truth: Sequence[Iterable[int]], detected: Sequence[Iterable[int]]) -> EvalReport:
    """F1[t/d] averages, over detected sets, the best F1 against any truth set;
    F1[d/t] averages, over truth sets, the best F1 against any detected set."""
    truth = [set(t) for t in truth]
    detected = [set(d) for d in detected]
    if not truth or not detected:
        raise DualDenseError("evaluate needs non-empty truth and detected lists")
    mat = {(i, j): f1(t, d) for i, t in enumerate(truth) for j, d in enumerate(detected)}
    per_detected = [max(mat[i, j] for i in range(len(truth))) for j in range(len(detected))]
    per_truth = [max(mat[i, j] for j in range(len(detected))) for i in range(len(truth))]
    return EvalReport(
        sum(per_detected) / len(per_detected),
        sum(per_truth) / len(per_truth),
        mat,
    )
