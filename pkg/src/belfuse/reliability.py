"""Source reliability: from conflict to discount factors, and pignistic fitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .conflict import DEFAULT_MEASURE, conflict_report
from .frame import Subset
from .mass import MassFunction, betp_singletons, discount

DEFAULT_LAMBDA = 2.0
PROVENANCES = ("conflict-derived", "pignistic-fit", "user-supplied")


def reliability_from_conflict(conf: float, lam: float = DEFAULT_LAMBDA) -> float:
    """α = (1 - conf^λ)^(1/λ): 1 at no conflict, 0 at full conflict."""
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    if not 0.0 <= conf <= 1.0:
        raise ValueError(f"conflict must lie in [0, 1], got {conf}")
    return (1.0 - conf**lam) ** (1.0 / lam)


@dataclass
class ReliabilityProfile:
    alphas: list = field(default_factory=list)
    lam: float = DEFAULT_LAMBDA
    provenance: str = "conflict-derived"

    def __post_init__(self):
        self.alphas = [float(a) for a in self.alphas]
        if any(not 0.0 <= a <= 1.0 for a in self.alphas):
            raise ValueError("reliabilities must lie in [0, 1]")
        if not self.lam > 0.0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def to_json(self) -> dict:
        return {"lambda": self.lam, "alphas": list(self.alphas), "provenance": self.provenance}

    @classmethod
    def from_json(cls, obj: dict) -> "ReliabilityProfile":
        return cls(alphas=obj["alphas"], lam=float(obj["lambda"]), provenance=obj.get("provenance", "user-supplied"))


def discount_by_conflict(
    ms: Sequence[MassFunction],
    lam: float = DEFAULT_LAMBDA,
    measure: str = DEFAULT_MEASURE,
    method: str = "avg",
    combiner: str = "mean",
) -> tuple[list[MassFunction], ReliabilityProfile]:
    """Discount each source by the reliability its conflict with the others implies."""
    report = conflict_report(ms, measure, method, combiner)
    alphas = [reliability_from_conflict(min(max(c, 0.0), 1.0), lam) for c in report.per_source]
    out = [discount(m, a) for m, a in zip(ms, alphas)]
    return out, ReliabilityProfile(alphas, lam, "conflict-derived")


def estimate_alpha_pignistic(m: MassFunction, supported: Subset) -> float:
    """Discount factor whose pignistic probability best fits the supported target.

    Minimizes Σ_A (BetP^α(A) - δ_A)² over singletons, where δ_A = 1 for the
    singletons in ``supported`` and BetP^α(A) = α·BetP(A) + (1 - α)/n. The
    objective is quadratic in α, so the minimizer is closed-form; it is
    clamped to [0, 1]. A flat objective (uniform BetP) returns 1.
    """
    bits = m.frame.mask(supported)
    if bits == 0:
        raise ValueError("the supported target must be non-empty")
    n = m.frame.n
    p = betp_singletons(m)
    target = np.array([1.0 if bits >> i & 1 else 0.0 for i in range(n)])
    slope = p - 1.0 / n
    offset = 1.0 / n - target
    curvature = float(slope @ slope)
    if curvature <= 1e-15:
        return 1.0
    alpha = -float(slope @ offset) / curvature
    return min(max(alpha, 0.0), 1.0)


def pignistic_fit_objective(m: MassFunction, supported: Subset, alpha: float) -> float:
    """The squared-error objective minimized by :func:`estimate_alpha_pignistic`."""
    bits = m.frame.mask(supported)
    n = m.frame.n
    p = alpha * betp_singletons(m) + (1.0 - alpha) / n
    target = np.array([1.0 if bits >> i & 1 else 0.0 for i in range(n)])
    return float(np.sum((p - target) ** 2))
