"""Belief-function fusion: mass functions on bitmask frames, combination
rules, conflict measures, reliability discounting and decision."""

__version__ = "0.1.0"

from .errors import (
    BeliefError,
    FrameMismatchError,
    InvalidMassError,
    TotalConflictError,
    UndefinedOperationError,
)
from .frame import MAX_FRAME_SIZE, Frame, Subset, enumerate_subsets
from .kernels import BACKEND_NAME
from .mass import (
    MassFunction,
    WeightFunction,
    bel,
    betp,
    canonical_decomposition,
    categorical,
    commonality,
    discount,
    from_weights,
    is_separable,
    make_mass,
    pl,
    random_mass,
    random_separable_mass,
    simple_mass,
    vacuous,
)
from .combine import RULES, RuleConfig, combine
from .conflict import (
    MEASURES,
    ConflictReport,
    auto_conflict,
    conf_inclusion_distance,
    conflict_report,
    global_conflict,
    jousselme_distance,
)
from .reliability import (
    ReliabilityProfile,
    discount_by_conflict,
    estimate_alpha_pignistic,
    reliability_from_conflict,
)
from .decide import Decision, DecisionConfig, decide, decide_appriou, decide_argmax, decide_distance

__all__ = [name for name in dir() if not name.startswith("_")]
