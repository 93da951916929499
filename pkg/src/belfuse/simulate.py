"""Monte Carlo comparison of combination rules by the decisions they lead to.

Each trial draws ``sources`` random bbas, combines them with every rule in
``SimulationSpec.rules`` and decides on the result. Trials draw from independent generators
seeded by ``(seed, trial)``, so results do not depend on execution order.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .combine import RULES, combine
from .conflict import auto_conflict, global_conflict
from .decide import DecisionConfig, decide
from .frame import MAX_FRAME_SIZE, Frame
from .mass import random_mass, random_separable_mass

CSV_COLUMNS = ("trial", "rule", "chosen_set", "kappa", "runtime_us")
UNDEFINED = "undefined"
GENERATORS = ("dirichlet", "separable")


@dataclass
class SimulationSpec:
    """Parameters of a rule-comparison run.

    ``focal`` is the number of focal elements per source for the Dirichlet
    generator and the number of simple components for the separable one.
    ``autoconflict_order`` defaults to the number of sources.
    """

    n: int = 3
    sources: int = 2
    focal: int = 3
    trials: int = 100
    rules: tuple = RULES
    decision: DecisionConfig = field(default_factory=DecisionConfig)
    seed: int = 0
    generator: str = "dirichlet"
    non_dogmatic: bool = True
    identical_sources: bool = False
    autoconflict_order: Optional[int] = None
    timing: bool = False
    labels: Optional[tuple] = None

    def __post_init__(self):
        self.rules = tuple(self.rules)
        if not 1 <= self.n <= MAX_FRAME_SIZE:
            raise ValueError(f"n must lie in [1, {MAX_FRAME_SIZE}], got {self.n}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.sources < 2:
            raise ValueError("a comparison needs at least two sources")
        unknown = [r for r in self.rules if r not in RULES]
        if unknown or not self.rules:
            raise ValueError(f"unknown or missing rules: {unknown}")
        if "mixed" in self.rules and self.sources != 2:
            raise ValueError("the mixed rule needs exactly two sources")
        if self.generator not in GENERATORS:
            raise ValueError(f"generator must be one of {GENERATORS}")
        limit = (1 << self.n) - 1 if self.generator == "dirichlet" else (1 << self.n) - 2
        lower = 1 if self.generator == "dirichlet" else 0
        if not lower <= self.focal <= limit:
            raise ValueError(f"focal must lie in [{lower}, {limit}] for n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels do not match n")
        if self.autoconflict_order is not None and self.autoconflict_order < 2:
            raise ValueError("auto-conflict order must be >= 2")

    @property
    def frame(self) -> Frame:
        return Frame(self.labels) if self.labels is not None else Frame.of_size(self.n)


@dataclass
class TrialResult:
    trial: int
    kappa: float
    autoconflict: float
    chosen: dict  # rule -> chosen bitmask or None
    runtime_us: dict


@dataclass
class SimulationResult:
    spec: SimulationSpec
    trials: list

    def rows(self) -> list[tuple]:
        frame = self.spec.frame
        out = []
        for t in self.trials:
            for rule in self.spec.rules:
                b = t.chosen[rule]
                chosen = UNDEFINED if b is None else frame.format(b)
                rt = str(t.runtime_us[rule]) if self.spec.timing else ""
                out.append((t.trial, rule, chosen, repr(t.kappa), rt))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        w.writerows(self.rows())
        return buf.getvalue()

    @property
    def mean_kappa(self) -> float:
        return float(np.mean([t.kappa for t in self.trials]))

    @property
    def mean_autoconflict(self) -> float:
        return float(np.mean([t.autoconflict for t in self.trials]))

    def agreement(self) -> np.ndarray:
        """Share of trials where two rules reach the same decision (both defined)."""
        rules = self.spec.rules
        k = len(rules)
        agree = np.zeros((k, k))
        for i, ri in enumerate(rules):
            for j, rj in enumerate(rules):
                both = [t for t in self.trials if t.chosen[ri] is not None and t.chosen[rj] is not None]
                if both:
                    agree[i, j] = sum(t.chosen[ri] == t.chosen[rj] for t in both) / len(both)
                else:
                    agree[i, j] = float("nan")
        return agree

    def summary(self) -> dict:
        agree = self.agreement()
        return {
            "rules": list(self.spec.rules),
            "trials": len(self.trials),
            "mean_kappa": self.mean_kappa,
            "mean_autoconflict": self.mean_autoconflict,
            "undefined": {r: sum(t.chosen[r] is None for t in self.trials) for r in self.spec.rules},
            "agreement": [[None if np.isnan(v) else float(v) for v in row] for row in agree],
        }


def draw_sources(spec: SimulationSpec, trial: int) -> list:
    rng = np.random.default_rng([spec.seed, trial])
    frame = spec.frame

    def one():
        if spec.generator == "separable":
            return random_separable_mass(frame, spec.focal, rng)
        return random_mass(frame, spec.focal, rng, non_dogmatic=spec.non_dogmatic)

    if spec.identical_sources:
        m = one()
        return [m] * spec.sources
    return [one() for _ in range(spec.sources)]


def run_trial(spec: SimulationSpec, trial: int) -> TrialResult:
    ms = draw_sources(spec, trial)
    kappa = global_conflict(ms)
    order = spec.autoconflict_order or max(spec.sources, 2)
    auto = float(np.mean([auto_conflict(m, order) for m in ms]))
    chosen = {}
    runtime = {}
    for rule in spec.rules:
        t0 = time.perf_counter_ns()
        try:
            chosen[rule] = decide(combine(ms, rule), spec.decision).chosen.bits
        except (ValueError, ArithmeticError):
            chosen[rule] = None
        runtime[rule] = (time.perf_counter_ns() - t0) // 1000
    return TrialResult(trial, kappa, auto, chosen, runtime)


def _run_chunk(args):
    spec, trials = args
    return [run_trial(spec, t) for t in trials]


def simulate(spec: SimulationSpec, jobs: int = 1) -> SimulationResult:
    """Run every trial; results are ordered by trial index whatever ``jobs`` is."""
    idx = list(range(spec.trials))
    if jobs <= 1:
        results = [run_trial(spec, t) for t in idx]
    else:
        chunks = [idx[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run_chunk, [(spec, c) for c in chunks]))
        results = sorted((r for part in parts for r in part), key=lambda r: r.trial)
    return SimulationResult(spec, results)
