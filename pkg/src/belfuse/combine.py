"""Combination rules.

Every rule takes a list of mass functions on one frame and returns a new
mass function; :func:`combine` dispatches on the stable rule identifiers in
:data:`RULES`. Multi-source forms (Yager, Dubois-Prade, PCR6, Florea, mean)
are evaluated on the whole list rather than by pairwise folding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from . import kernels
from .errors import InvalidMassError, TotalConflictError
from .mass import (
    WEIGHT_TOL,
    MassFunction,
    WeightFunction,
    canonical_decomposition,
    from_weights,
    is_separable,
    same_frame,
)

RULES = (
    "conjunctive",
    "dempster",
    "disjunctive",
    "yager",
    "dubois-prade",
    "mean",
    "pcr6",
    "florea",
    "mixed",
    "cautious",
    "lns",
)

# rules whose output is built from the conjunctive product, so κ is meaningful
CONJUNCTIVE_FAMILY = frozenset({"conjunctive", "dempster", "yager", "dubois-prade", "pcr6", "florea"})

DELTA_POLICIES = {
    "constant": kernels.DELTA_CONST,
    "cardinality": kernels.DELTA_MINCARD,
    "jaccard": kernels.DELTA_JACCARD,
}


@dataclass(frozen=True)
class RuleConfig:
    """Rule identifier plus the mixed rule's δ2 policy.

    ``delta2`` is only read by the constant policy; δ1 = 1 - δ2 always.
    """

    rule: str = "conjunctive"
    delta_policy: str = "constant"
    delta2: float = 1.0

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}; expected one of {', '.join(RULES)}")
        if self.delta_policy not in DELTA_POLICIES:
            raise ValueError(f"unknown delta policy {self.delta_policy!r}")
        if not 0.0 <= self.delta2 <= 1.0:
            raise ValueError(f"delta2 must lie in [0, 1], got {self.delta2}")

    @property
    def delta1(self) -> float:
        return 1.0 - self.delta2


def _frame(ms: Sequence[MassFunction]):
    if isinstance(ms, MassFunction):
        raise TypeError("expected a list of mass functions")
    return same_frame(ms)


def _closed_world(ms: Sequence[MassFunction], rule: str) -> None:
    for j, m in enumerate(ms):
        if m.empty_mass > 0.0:
            raise InvalidMassError(f"{rule} requires m(∅) = 0; source {j} has {m.empty_mass!r}")


def _fold(ms: Sequence[MassFunction], op: int) -> dict:
    acc = ms[0]._m
    for m in ms[1:]:
        acc = kernels.combine_pair(acc, m._m, op)
    return dict(acc)


def conjunctive_raw(ms: Sequence[MassFunction]) -> dict:
    """Unchecked ``{mask: mass}`` of the conjunctive rule (may hold ∅)."""
    _frame(ms)
    return _fold(ms, kernels.CONJ)


def conjunctive(ms: Sequence[MassFunction]) -> MassFunction:
    frame = _frame(ms)
    return MassFunction._trusted(frame, _fold(ms, kernels.CONJ))


def dempster(ms: Sequence[MassFunction]) -> MassFunction:
    frame = _frame(ms)
    raw = _fold(ms, kernels.CONJ)
    raw.pop(0, None)
    # 1 - κ computed as the sum of the non-empty masses: exact when one focal survives
    norm = math.fsum(raw.values())
    if not raw or norm <= 0.0:
        raise TotalConflictError("Dempster's rule is undefined for total conflict (κ = 1)")
    return MassFunction._trusted(frame, {b: v / norm for b, v in raw.items()})


def disjunctive(ms: Sequence[MassFunction]) -> MassFunction:
    frame = _frame(ms)
    return MassFunction._trusted(frame, _fold(ms, kernels.DISJ))


def yager(ms: Sequence[MassFunction]) -> MassFunction:
    frame = _frame(ms)
    raw = _fold(ms, kernels.CONJ)
    kappa = raw.pop(0, 0.0)
    omega = frame.omega_bits
    raw[omega] = raw.get(omega, 0.0) + kappa
    return MassFunction._trusted(frame, raw)


def dubois_prade(ms: Sequence[MassFunction]) -> MassFunction:
    """Partial conflicts go to the union of the conflicting focal elements."""
    frame = _frame(ms)
    _closed_world(ms, "dubois-prade")
    return MassFunction._trusted(frame, kernels.combine_tuples([m._m for m in ms], kernels.DUBOIS_PRADE))


def mean(ms: Sequence[MassFunction]) -> MassFunction:
    frame = _frame(ms)
    raw: dict = {}
    for m in ms:
        for b, v in m._m.items():
            raw[b] = raw.get(b, 0.0) + v
    s = len(ms)
    return MassFunction._trusted(frame, {b: v / s for b, v in raw.items()})


def pcr6(ms: Sequence[MassFunction]) -> MassFunction:
    """Proportional conflict redistribution, PCR6 variant.

    Each conflicting tuple (Y_1, ..., Y_S) with empty intersection returns its
    product mass to each Y_j in proportion to m_j(Y_j). Summing the
    per-tuple shares over all tuples is the σ-indexed closed form; it is
    symmetric in the sources by construction.
    """
    frame = _frame(ms)
    if len(ms) < 2:
        raise ValueError("pcr6 needs at least two sources")
    _closed_world(ms, "pcr6")
    return MassFunction._trusted(frame, kernels.combine_tuples([m._m for m in ms], kernels.PCR6))


def florea_betas(kappa: float) -> tuple[float, float]:
    d = 1.0 - kappa + kappa * kappa
    return kappa / d, (1.0 - kappa) / d


def florea(ms: Sequence[MassFunction]) -> MassFunction:
    """Conflict-weighted blend of the disjunctive and conjunctive rules."""
    frame = _frame(ms)
    conj = _fold(ms, kernels.CONJ)
    disj = _fold(ms, kernels.DISJ)
    kappa = conj.pop(0, 0.0)
    if disj.get(0, 0.0) > 0.0:
        raise InvalidMassError("florea needs at least one source with m(∅) = 0")
    b1, b2 = florea_betas(kappa)
    raw = {b: b1 * v for b, v in disj.items()}
    for b, v in conj.items():
        raw[b] = raw.get(b, 0.0) + b2 * v
    return MassFunction._trusted(frame, raw)


def mixed(m1: MassFunction, m2: MassFunction, cfg: RuleConfig | None = None) -> MassFunction:
    """Two-source mixed conjunctive/disjunctive rule.

    Policies for δ2(Y1, Y2): ``constant`` (cfg.delta2),
    ``cardinality`` |Y1∩Y2| / min(|Y1|, |Y2|), ``jaccard`` |Y1∩Y2| / |Y1∪Y2|.
    Pairs involving ∅ get δ2 = 0 under the last two.
    """
    cfg = cfg or RuleConfig("mixed")
    frame = _frame([m1, m2])
    raw = kernels.mixed_pair(m1._m, m2._m, DELTA_POLICIES[cfg.delta_policy], float(cfg.delta2))
    return MassFunction._trusted(frame, raw)


def _decompose_all(ms: Sequence[MassFunction], rule: str) -> list[WeightFunction]:
    for j, m in enumerate(ms):
        if m.is_dogmatic():
            raise InvalidMassError(f"{rule} requires non-dogmatic sources; source {j} has m(Ω) = 0")
    return [canonical_decomposition(m) for m in ms]


def cautious(ms: Sequence[MassFunction]) -> MassFunction:
    """Per-subset minimum of the canonical weights, recombined conjunctively."""
    frame = _frame(ms)
    wfs = _decompose_all(ms, "cautious")
    keys = set().union(*(wf.weights for wf in wfs))
    weights = {b: min(wf.weights.get(b, 1.0) for wf in wfs) for b in keys}
    return from_weights(WeightFunction(frame, weights))


def lns_weights(ms: Sequence[MassFunction]) -> WeightFunction:
    """Clustered, count-discounted weights of the LNS rule.

    Simple components are grouped by focal element; a cluster of s_k
    components gets α_k = s_k / Σ s_i and weight 1 - α_k + α_k Π w_j.
    Sources must be separable (all canonical weights ≤ 1): only then is
    every component a genuine simple mass function.
    """
    frame = _frame(ms)
    wfs = _decompose_all(ms, "lns")
    for j, wf in enumerate(wfs):
        if not is_separable(wf):
            raise InvalidMassError(f"lns requires separable sources; source {j} has a canonical weight > 1")
    counts: dict[int, int] = {}
    prods: dict[int, float] = {}
    for wf in wfs:
        for b, w in wf.weights.items():
            if abs(math.log(w)) <= WEIGHT_TOL:
                continue
            counts[b] = counts.get(b, 0) + 1
            prods[b] = prods.get(b, 1.0) * w
    total = sum(counts.values())
    weights = {}
    for b, s in counts.items():
        alpha = s / total
        weights[b] = 1.0 - alpha + alpha * prods[b]
    return WeightFunction(frame, weights)


def lns(ms: Sequence[MassFunction]) -> MassFunction:
    return from_weights(lns_weights(ms))


_DISPATCH: dict[str, Callable] = {
    "conjunctive": conjunctive,
    "dempster": dempster,
    "disjunctive": disjunctive,
    "yager": yager,
    "dubois-prade": dubois_prade,
    "mean": mean,
    "pcr6": pcr6,
    "florea": florea,
    "cautious": cautious,
    "lns": lns,
}


def combine(ms: Sequence[MassFunction], rule: str | RuleConfig = "conjunctive") -> MassFunction:
    """Combine ``ms`` with the rule named by ``rule`` (or described by a RuleConfig)."""
    cfg = rule if isinstance(rule, RuleConfig) else RuleConfig(rule)
    if isinstance(ms, MassFunction):
        raise TypeError("expected a list of mass functions")
    ms = list(ms)
    if cfg.rule == "mixed":
        if len(ms) != 2:
            raise ValueError("the mixed rule is defined for exactly two sources")
        return mixed(ms[0], ms[1], cfg)
    return _DISPATCH[cfg.rule](ms)

