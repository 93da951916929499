"""Decision on a combined mass function over a candidate set D ⊆ 2^Ω.

Three schemes share one configuration:

* ``argmax``: the candidate maximizing f_d (bel, pl or betp);
* ``appriou``: the candidate maximizing m_d(X)·f_d(X) with
  m_d(X) = K_d·λ_X·|X|^(-ρ), normalized over D;
* ``distance``: the candidate whose categorical bba is closest to m in
  Jousselme distance.

Ties go to the smaller candidate, then the smaller bitmask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .conflict import jousselme_distance
from .frame import Frame, Subset, popcount
from .mass import MassFunction, bel, betp, categorical, pl

SCHEMES = ("argmax", "appriou", "distance")
FUNCTIONALS: dict[str, Callable[[MassFunction, int], float]] = {"bel": bel, "pl": pl, "betp": betp}

_REL_TIE = 1e-12
_ABS_TIE = 1e-15


@dataclass
class DecisionConfig:
    """How to decide. ``candidates=None`` means the singletons of the frame.

    Candidates and ``lambda_x`` keys are anything :meth:`Frame.mask`
    accepts; they are resolved against the frame of the bba at decision time.
    """

    scheme: str = "argmax"
    fd: str = "betp"
    candidates: Optional[Sequence] = None
    rho: float = 0.0
    lambda_x: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown decision scheme {self.scheme!r}")
        if self.fd not in FUNCTIONALS:
            raise ValueError(f"unknown decision functional {self.fd!r}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if self.candidates is not None and len(self.candidates) == 0:
            raise ValueError("the candidate set must not be empty")
        for v in self.lambda_x.values():
            if not v >= 0.0:
                raise ValueError(f"lambda_x weights must be non-negative, got {v}")

    def candidate_masks(self, frame: Frame) -> list[int]:
        """Candidate bitmasks in tie-break order (cardinality, then mask)."""
        if self.candidates is None:
            masks = {1 << i for i in range(frame.n)}
        else:
            masks = {frame.mask(c) for c in self.candidates}
        if 0 in masks:
            raise ValueError("∅ cannot be a decision candidate")
        return sorted(masks, key=lambda b: (popcount(b), b))

    def weight(self, frame: Frame, bits: int) -> float:
        for key, v in self.lambda_x.items():
            if frame.mask(key) == bits:
                return float(v)
        return 1.0

    def to_json(self, frame: Frame) -> dict:
        out = {"scheme": self.scheme, "fd": self.fd, "rho": self.rho}
        if self.candidates is not None:
            out["candidates"] = [frame.labels_of(b) for b in self.candidate_masks(frame)]
        if self.lambda_x:
            out["lambda_x"] = {",".join(frame.labels_of(frame.mask(k))): float(v) for k, v in self.lambda_x.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "DecisionConfig":
        cands = obj.get("candidates")
        lam = {tuple(k.split(",")) if k else (): float(v) for k, v in obj.get("lambda_x", {}).items()}
        return cls(
            scheme=obj.get("scheme", "argmax"),
            fd=obj.get("fd", "betp"),
            candidates=[tuple(c) for c in cands] if cands is not None else None,
            rho=float(obj.get("rho", 0.0)),
            lambda_x=lam,
        )


@dataclass
class Decision:
    chosen: Subset
    scores: dict

    def to_json(self) -> dict:
        frame = self.chosen.frame
        return {
            "chosen": self.chosen.to_json(),
            "scores": {",".join(frame.labels_of(b)): s for b, s in self.scores.items()},
        }


def _better(score: float, best: float, maximize: bool) -> bool:
    if math.isclose(score, best, rel_tol=_REL_TIE, abs_tol=_ABS_TIE):
        return False
    return score > best if maximize else score < best


def _pick(order: list[int], scores: dict, maximize: bool) -> int:
    best = order[0]
    for b in order[1:]:
        if _better(scores[b], scores[best], maximize):
            best = b
    return best


def argmax_scores(m: MassFunction, cfg: DecisionConfig) -> dict:
    f = FUNCTIONALS[cfg.fd]
    return {b: f(m, b) for b in cfg.candidate_masks(m.frame)}


def appriou_scores(m: MassFunction, cfg: DecisionConfig) -> dict:
    """m_d(X)·f_d(X) for candidates with a non-zero weight λ_X."""
    frame = m.frame
    order = cfg.candidate_masks(frame)
    raw = {b: cfg.weight(frame, b) * popcount(b) ** (-cfg.rho) for b in order}
    raw = {b: w for b, w in raw.items() if w > 0.0}
    total = math.fsum(raw.values())
    if total <= 0.0:
        raise ValueError("every candidate has zero weight λ_X")
    f = FUNCTIONALS[cfg.fd]
    return {b: (w / total) * f(m, b) for b, w in raw.items()}


def distance_scores(m: MassFunction, cfg: DecisionConfig) -> dict:
    return {b: jousselme_distance(m, categorical(m.frame, b)) for b in cfg.candidate_masks(m.frame)}


def decide_argmax(m: MassFunction, cfg: DecisionConfig | None = None) -> Subset:
    return _decide(m, cfg or DecisionConfig(), argmax_scores, True).chosen


def decide_appriou(m: MassFunction, cfg: DecisionConfig | None = None) -> Subset:
    return _decide(m, cfg or DecisionConfig(scheme="appriou"), appriou_scores, True).chosen


def decide_distance(m: MassFunction, cfg: DecisionConfig | None = None) -> Subset:
    """Closest categorical candidate (minimum Jousselme distance)."""
    return _decide(m, cfg or DecisionConfig(scheme="distance"), distance_scores, False).chosen


def _decide(m, cfg, scorer, maximize) -> Decision:
    scores = scorer(m, cfg)
    order = [b for b in cfg.candidate_masks(m.frame) if b in scores]
    return Decision(Subset(m.frame, _pick(order, scores, maximize)), scores)


def decide(m: MassFunction, cfg: DecisionConfig | None = None) -> Decision:
    """Run the scheme named in ``cfg`` and return the choice with all scores."""
    cfg = cfg or DecisionConfig()
    if cfg.scheme == "argmax":
        return _decide(m, cfg, argmax_scores, True)
    if cfg.scheme == "appriou":
        return _decide(m, cfg, appriou_scores, True)
    return _decide(m, cfg, distance_scores, False)
