"""Simplex-constrained preference vectors and cosine similarity.

Attribute ids are 1-based. For the bundled three-attribute scenarios the
canonical order is 1 = road condition, 2 = efficiency, 3 = aesthetic appeal;
``n`` is a runtime parameter so the adaptation machinery generalizes.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import PrefLoopError

ROAD_CONDITION = 1
EFFICIENCY = 2
AESTHETIC_APPEAL = 3

ATTRIBUTE_NAMES = {
    ROAD_CONDITION: "road_condition",
    EFFICIENCY: "efficiency",
    AESTHETIC_APPEAL: "aesthetic_appeal",
}

# Tolerance for simplex membership; every repair operation must land within it.
EPS_SUM = 1e-9


@dataclass(frozen=True)
class PreferenceVector:
    """Nonnegative weights over quality attributes, summing to one."""

    weights: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, attr_id: int) -> float:
        """Weight for a 1-based attribute id."""
        if not 1 <= attr_id <= self.n:
            raise PrefLoopError("UNKNOWN_ATTRIBUTE", f"attribute id {attr_id} out of 1..{self.n}")
        return self.weights[attr_id - 1]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.float64)

    def __str__(self):
        return "<" + ", ".join(f"{w:.4f}" for w in self.weights) + ">"


def make_preference(weights: Sequence[float] | Iterable[float]) -> PreferenceVector:
    """Validate weights against the simplex invariants and wrap them.

    Raises NEGATIVE_WEIGHT for any weight below zero and SUM_NOT_ONE when the
    total deviates from 1 by more than EPS_SUM (non-finite entries included).
    """
    ws = tuple(float(w) for w in weights)
    if len(ws) < 2:
        raise PrefLoopError("SUM_NOT_ONE", f"need at least 2 weights, got {len(ws)}")
    if any(not math.isfinite(w) for w in ws):
        raise PrefLoopError("SUM_NOT_ONE", f"non-finite weight in {ws}")
    for w in ws:
        if w < 0.0:
            raise PrefLoopError("NEGATIVE_WEIGHT", f"weight {w} is negative")
    total = math.fsum(ws)
    if abs(total - 1.0) > EPS_SUM:
        raise PrefLoopError("SUM_NOT_ONE", f"weights sum to {total}, not 1")
    return PreferenceVector(ws)


def normalize_weights(weights: Sequence[float]) -> PreferenceVector:
    """Scale nonnegative weights to sum 1. Rejects all-zero or negative input."""
    ws = [float(w) for w in weights]
    if any(w < 0.0 or not math.isfinite(w) for w in ws):
        raise PrefLoopError("NEGATIVE_WEIGHT", f"cannot normalize {ws}")
    total = math.fsum(ws)
    if total <= 0.0:
        raise PrefLoopError("SUM_NOT_ONE", "cannot normalize all-zero weights")
    return make_preference([w / total for w in ws])


def cos_sim(p: PreferenceVector, q: PreferenceVector) -> float:
    """Cosine similarity of two preference vectors, clamped to [0, 1].

    Both vectors live on the nonnegative simplex, so the value is 1 exactly
    when they are proportional and 0 only for orthogonal vertices.
    """
    if p.n != q.n:
        raise PrefLoopError("DIMENSION_MISMATCH", f"{p.n} vs {q.n} attributes")
    dot = 0.0
    pp = 0.0
    qq = 0.0
    for a, b in zip(p.weights, q.weights):
        dot += a * b
        pp += a * a
        qq += b * b
    val = dot / (math.sqrt(pp) * math.sqrt(qq))
    return min(1.0, max(0.0, val))
