"""Conflict measures between mass functions.

Pairwise measures (by name in :data:`MEASURES`):

``distance``
    Jousselme distance d_J.
``inclusion-distance`` / ``inclusion-distance-strict``
    (1 - δ_inc) · d_J with the light or strict inclusion degree.
``plausibility-cosine``
    1 - cos(pl1, pl2) over all 2^n subsets.
``global-kappa``
    mass on ∅ after conjunctive combination.

Per-source values aggregate a pairwise measure either by averaging over the
other sources (``avg``) or against one artificial source obtained by
combining all the others (``combined``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .combine import combine
from .errors import UndefinedOperationError
from .mass import MassFunction, pl_vector, same_frame

MEASURES = (
    "inclusion-distance",
    "inclusion-distance-strict",
    "distance",
    "plausibility-cosine",
    "global-kappa",
)
METHODS = ("avg", "combined")
DEFAULT_MEASURE = "inclusion-distance"


def global_conflict(ms: Sequence[MassFunction]) -> float:
    """κ = m_Conj(∅) for two or more sources."""
    ms = list(ms)
    if len(ms) < 2:
        raise ValueError("global conflict needs at least two sources")
    same_frame(ms)
    acc = ms[0]._m
    for m in ms[1:]:
        acc = kernels.combine_pair(acc, m._m, kernels.CONJ)
    return min(max(acc.get(0, 0.0), 0.0), 1.0)


def auto_conflict(m: MassFunction, s: int) -> float:
    """a_s: mass on ∅ after combining m conjunctively with itself s times."""
    if s < 2:
        raise ValueError(f"auto-conflict order must be >= 2, got {s}")
    acc = m._m
    for _ in range(s - 1):
        acc = kernels.combine_pair(acc, m._m, kernels.CONJ)
    return min(max(acc.get(0, 0.0), 0.0), 1.0)


def jousselme_distance(m1: MassFunction, m2: MassFunction) -> float:
    """d_J over the union of focal elements, with D(∅, ∅) = 1."""
    same_frame([m1, m2])
    return min(math.sqrt(kernels.jousselme_sq(m1._m, m2._m)), 1.0)


def conf_plausibility_cosine(m1: MassFunction, m2: MassFunction) -> float:
    same_frame([m1, m2])
    p1 = pl_vector(m1)
    p2 = pl_vector(m2)
    n1 = float(np.linalg.norm(p1))
    n2 = float(np.linalg.norm(p2))
    if n1 == 0.0 or n2 == 0.0:
        raise UndefinedOperationError("plausibility vector is identically zero (m(∅) = 1)")
    cos = float(p1 @ p2) / (n1 * n2)
    return min(max(1.0 - cos, 0.0), 1.0)


# -- inclusion degrees ---------------------------------------------------------


def _inc(x: int, y: int) -> int:
    return 1 if x & ~y == 0 else 0


def inclusion_strict(m1: MassFunction, m2: MassFunction) -> float:
    """Share of focal pairs (X1, Y2) with X1 ⊆ Y2."""
    same_frame([m1, m2])
    f1, f2 = m1.masks(), m2.masks()
    hits = sum(_inc(x, y) for x in f1 for y in f2)
    return hits / (len(f1) * len(f2))


def inclusion_light(m1: MassFunction, m2: MassFunction) -> float:
    """Share of focal elements of m1 contained in at least one focal element of m2."""
    same_frame([m1, m2])
    f1, f2 = m1.masks(), m2.masks()
    hits = sum(max(_inc(x, y) for y in f2) for x in f1)
    return hits / len(f1)


def inclusion_degree(m1: MassFunction, m2: MassFunction, variant: str = "light") -> float:
    if variant == "light":
        d = inclusion_light
    elif variant == "strict":
        d = inclusion_strict
    else:
        raise ValueError(f"inclusion variant must be 'light' or 'strict', got {variant!r}")
    return max(d(m1, m2), d(m2, m1))


def conf_inclusion_distance(m1: MassFunction, m2: MassFunction, variant: str = "light") -> float:
    """(1 - δ_inc) · d_J: zero for included bbas, otherwise distance-scaled."""
    return (1.0 - inclusion_degree(m1, m2, variant)) * jousselme_distance(m1, m2)


def _kappa_pair(m1: MassFunction, m2: MassFunction) -> float:
    return global_conflict([m1, m2])


_PAIRWISE: dict[str, Callable[[MassFunction, MassFunction], float]] = {
    "inclusion-distance": conf_inclusion_distance,
    "inclusion-distance-strict": lambda a, b: conf_inclusion_distance(a, b, "strict"),
    "distance": jousselme_distance,
    "plausibility-cosine": conf_plausibility_cosine,
    "global-kappa": _kappa_pair,
}


def pairwise_measure(name: str) -> Callable[[MassFunction, MassFunction], float]:
    try:
        return _PAIRWISE[name]
    except KeyError:
        raise ValueError(f"unknown conflict measure {name!r}; expected one of {', '.join(MEASURES)}") from None


def conflict_matrix(ms: Sequence[MassFunction], measure: str = DEFAULT_MEASURE) -> np.ndarray:
    """Symmetric matrix of pairwise conflicts; the diagonal holds Conf(m_i, m_i)."""
    ms = list(ms)
    same_frame(ms)
    f = pairwise_measure(measure)
    M = len(ms)
    out = np.zeros((M, M))
    for i in range(M):
        out[i, i] = f(ms[i], ms[i])
        for j in range(i + 1, M):
            out[i, j] = out[j, i] = f(ms[i], ms[j])
    return out


def _check_index(j: int, ms: Sequence[MassFunction]) -> None:
    if len(ms) < 2:
        raise ValueError("per-source conflict needs at least two sources")
    if not 0 <= j < len(ms):
        raise IndexError(f"source index {j} out of range for {len(ms)} sources")


def conf_source_avg(j: int, ms: Sequence[MassFunction], measure: str = DEFAULT_MEASURE) -> float:
    """Mean conflict between source j and each other source."""
    ms = list(ms)
    _check_index(j, ms)
    f = pairwise_measure(measure)
    return math.fsum(f(ms[i], ms[j]) for i in range(len(ms)) if i != j) / (len(ms) - 1)


def conf_source_combined(
    j: int,
    ms: Sequence[MassFunction],
    measure: str = DEFAULT_MEASURE,
    combiner: str = "mean",
) -> float:
    """Conflict between source j and the combination of all other sources."""
    ms = list(ms)
    _check_index(j, ms)
    others = [m for i, m in enumerate(ms) if i != j]
    rest = others[0] if len(others) == 1 else combine(others, combiner)
    return pairwise_measure(measure)(ms[j], rest)


@dataclass
class ConflictReport:
    measure: str
    method: str
    pairwise: np.ndarray
    per_source: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "measure": self.measure,
            "method": self.method,
            "pairwise": np.asarray(self.pairwise).tolist(),
            "per_source": list(self.per_source),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ConflictReport":
        return cls(obj["measure"], obj["method"], np.array(obj["pairwise"], dtype=float), list(obj["per_source"]))


def conflict_report(
    ms: Sequence[MassFunction],
    measure: str = DEFAULT_MEASURE,
    method: str = "avg",
    combiner: str = "mean",
) -> ConflictReport:
    ms = list(ms)
    if len(ms) < 2:
        raise ValueError("a conflict report needs at least two sources")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    matrix = conflict_matrix(ms, measure)
    M = len(ms)
    if method == "avg":
        per = [math.fsum(matrix[i, j] for i in range(M) if i != j) / (M - 1) for j in range(M)]
    else:
        per = [conf_source_combined(j, ms, measure, combiner) for j in range(M)]
    return ConflictReport(measure, method, matrix, per)
