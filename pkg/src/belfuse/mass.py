"""Mass functions (bbas), weight functions and their transforms.

Masses are stored sparsely as ``{bitmask: mass}`` holding focal elements
only. Weight functions follow the multiplicative convention of the canonical
decomposition: the simple component ``A^w`` puts ``1 - w`` on A and ``w`` on
Ω, so combining ``A^w1`` with ``A^w2`` conjunctively gives ``A^(w1*w2)``.
:func:`simple_mass` keeps the opposite, textbook convention (``w`` on A);
the two are related by ``w_decomposition = 1 - w_simple``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

import numpy as np

from . import kernels
from .errors import InvalidMassError, UndefinedOperationError
from .frame import Frame, Subset, SubsetLike, check_same_frame, popcount

MASS_TOL = 1e-9
# round-off noise below this is dropped from computed (not user-given) masses
CLEAN_TOL = 1e-12
# |ln w| below this counts as w == 1 in a weight function
WEIGHT_TOL = 1e-12


class MassFunction:
    """A basic belief assignment on a frame.

    ``focals`` may be a mapping or an iterable of ``(subset, mass)`` pairs,
    where a subset is anything :meth:`Frame.mask` accepts. Repeated subsets
    are summed. Zero masses are dropped; the total must equal 1 within
    ``tol``. Mass on ∅ is allowed (open world).
    """

    __slots__ = ("frame", "_m")

    def __init__(
        self,
        frame: Frame,
        focals: Union[Mapping, Iterable] = (),
        tol: float = MASS_TOL,
    ):
        items = focals.items() if isinstance(focals, Mapping) else focals
        acc: dict[int, float] = {}
        for x, v in items:
            v = float(v)
            if not math.isfinite(v) or v < 0.0:
                raise InvalidMassError(f"mass must be a finite non-negative number, got {v}")
            b = frame.mask(x)
            acc[b] = acc.get(b, 0.0) + v
        total = math.fsum(acc.values())
        if abs(total - 1.0) > tol:
            raise InvalidMassError(f"masses sum to {total!r}, not 1")
        self.frame = frame
        self._m = {b: acc[b] for b in sorted(acc) if acc[b] > 0.0}

    @classmethod
    def _trusted(cls, frame: Frame, raw: Mapping[int, float], tol: float = MASS_TOL) -> "MassFunction":
        """Wrap a rule's raw output; check it rather than renormalize it."""
        out = {}
        for b, v in raw.items():
            if v < -CLEAN_TOL:
                raise UndefinedOperationError(f"negative mass {v!r} on {frame.format(b)}")
            if v > CLEAN_TOL:
                out[b] = v
        total = math.fsum(out.values())
        if abs(total - 1.0) > tol:
            raise UndefinedOperationError(f"result masses sum to {total!r}, not 1")
        self = object.__new__(cls)
        self.frame = frame
        self._m = {b: out[b] for b in sorted(out)}
        return self

    # -- access ----------------------------------------------------------------

    @property
    def focals(self) -> dict[int, float]:
        """Copy of the ``{bitmask: mass}`` table, ordered by bitmask."""
        return dict(self._m)

    def masks(self) -> list[int]:
        return list(self._m)

    def items(self) -> list[tuple[Subset, float]]:
        return [(Subset(self.frame, b), v) for b, v in self._m.items()]

    def __getitem__(self, x: SubsetLike) -> float:
        return self._m.get(self.frame.mask(x), 0.0)

    def __len__(self) -> int:
        return len(self._m)

    @property
    def empty_mass(self) -> float:
        return self._m.get(0, 0.0)

    @property
    def omega_mass(self) -> float:
        return self._m.get(self.frame.omega_bits, 0.0)

    def is_dogmatic(self) -> bool:
        return self.omega_mass <= 0.0

    def is_vacuous(self) -> bool:
        return list(self._m) == [self.frame.omega_bits]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._m == other._m

    __hash__ = None

    def isclose(self, other: "MassFunction", tol: float = 1e-9) -> bool:
        check_same_frame([self.frame, other.frame])
        keys = set(self._m) | set(other._m)
        return all(abs(self._m.get(k, 0.0) - other._m.get(k, 0.0)) <= tol for k in keys)

    def normalized(self) -> "MassFunction":
        """Copy rescaled to sum exactly to 1 (undoes rounding accepted by ``tol``)."""
        total = math.fsum(self._m.values())
        return MassFunction._trusted(self.frame, {b: v / total for b, v in self._m.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{self.frame.format(b)}: {v:.6g}" for b, v in self._m.items())
        return f"MassFunction({body})"

    # -- dense views -------------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        vec = np.zeros(1 << self.frame.n)
        for b, v in self._m.items():
            vec[b] = v
        return vec

    # -- JSON --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "focals": [{"set": self.frame.labels_of(b), "mass": v} for b, v in self._m.items()],
        }

    @classmethod
    def from_json(cls, obj: dict, tol: float = MASS_TOL) -> "MassFunction":
        try:
            frame = Frame.from_json(obj["frame"])
            pairs = [(f["set"], f["mass"]) for f in obj["focals"]]
        except (KeyError, TypeError) as exc:
            raise InvalidMassError(f"malformed mass-function JSON: {exc}") from None
        return cls(frame, pairs, tol=tol)

    # convenience wrappers around the module functions
    def bel(self, x: SubsetLike) -> float:
        return bel(self, x)

    def pl(self, x: SubsetLike) -> float:
        return pl(self, x)

    def betp(self, x: SubsetLike) -> float:
        return betp(self, x)

    def q(self, x: SubsetLike) -> float:
        return commonality(self, x)


def make_mass(frame: Frame, assignments: Iterable, tol: float = MASS_TOL) -> MassFunction:
    """Build a bba from ``(subset, mass)`` pairs."""
    return MassFunction(frame, assignments, tol=tol)


def vacuous(frame: Frame) -> MassFunction:
    return MassFunction._trusted(frame, {frame.omega_bits: 1.0})


def categorical(frame: Frame, x: SubsetLike) -> MassFunction:
    return MassFunction._trusted(frame, {frame.mask(x): 1.0})


def simple_mass(a: Subset, w: float) -> MassFunction:
    """``A^w`` with m(A) = w and m(Ω) = 1 - w."""
    if a.is_omega():
        raise ValueError("simple mass function on Ω; use vacuous()")
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}")
    return MassFunction(a.frame, [(a.bits, w), (a.frame.omega_bits, 1.0 - w)])


def same_frame(ms: Iterable[MassFunction]) -> Frame:
    ms = list(ms)
    if not ms:
        raise ValueError("at least one mass function is required")
    return check_same_frame(m.frame for m in ms)


# -- set functions -------------------------------------------------------------


def bel(m: MassFunction, x: SubsetLike) -> float:
    """Credibility: total mass of non-empty subsets of X."""
    bx = m.frame.mask(x)
    return math.fsum(v for b, v in m._m.items() if b and b & ~bx == 0)


def pl(m: MassFunction, x: SubsetLike) -> float:
    """Plausibility: total mass of subsets meeting X."""
    bx = m.frame.mask(x)
    return math.fsum(v for b, v in m._m.items() if b & bx)


def commonality(m: MassFunction, x: SubsetLike) -> float:
    bx = m.frame.mask(x)
    return math.fsum(v for b, v in m._m.items() if bx & ~b == 0)


def betp(m: MassFunction, x: SubsetLike) -> float:
    """Pignistic probability of X, normalized by 1 - m(∅)."""
    bx = m.frame.mask(x)
    norm = 1.0 - m.empty_mass
    if norm <= 0.0:
        raise UndefinedOperationError("pignistic probability undefined for m(∅) = 1")
    return math.fsum(popcount(b & bx) / popcount(b) * v for b, v in m._m.items() if b) / norm


def betp_singletons(m: MassFunction) -> np.ndarray:
    """BetP of every singleton, in frame order."""
    norm = 1.0 - m.empty_mass
    if norm <= 0.0:
        raise UndefinedOperationError("pignistic probability undefined for m(∅) = 1")
    out = np.zeros(m.frame.n)
    for b, v in m._m.items():
        if not b:
            continue
        share = v / popcount(b)
        for i in range(m.frame.n):
            if b >> i & 1:
                out[i] += share
    return out / norm


def is_consonant(m: MassFunction) -> bool:
    """True iff the focal elements form a chain under inclusion."""
    chain = sorted(m._m, key=popcount)
    return all(a & ~b == 0 for a, b in zip(chain, chain[1:]))


def commonality_vector(m: MassFunction) -> np.ndarray:
    return kernels.zeta(m.to_dense(), superset=True)


def bel_vector(m: MassFunction) -> np.ndarray:
    vec = kernels.zeta(m.to_dense()) - m.empty_mass
    vec[0] = 0.0
    return vec


def pl_vector(m: MassFunction) -> np.ndarray:
    """Plausibility of every subset, indexed by bitmask (pl(∅) = 0)."""
    cumulative = kernels.zeta(m.to_dense())
    vec = 1.0 - cumulative[::-1]
    vec[0] = 0.0
    return vec


# -- discounting -------------------------------------------------------------


def discount(m: MassFunction, alpha: float) -> MassFunction:
    """Move a fraction ``1 - alpha`` of every mass onto Ω."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"discount factor must lie in [0, 1], got {alpha}")
    omega = m.frame.omega_bits
    raw = {b: alpha * v for b, v in m._m.items() if b != omega}
    raw[omega] = 1.0 - alpha * (1.0 - m.omega_mass)
    return MassFunction._trusted(m.frame, raw)


# -- canonical decomposition -------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """Canonical weights ``w(A)`` for A ⊊ Ω; absent entries mean 1."""

    frame: Frame
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        for b, w in self.weights.items():
            if b == self.frame.omega_bits:
                raise ValueError("Ω carries no weight")
            if not w > 0.0:
                raise ValueError(f"weights must be positive, got {w}")

    def __getitem__(self, x: SubsetLike) -> float:
        return self.weights.get(self.frame.mask(x), 1.0)

    def support(self) -> list[int]:
        """Masks whose weight differs from 1."""
        return [b for b, w in self.weights.items() if abs(math.log(w)) > WEIGHT_TOL]


def is_separable(wf: WeightFunction) -> bool:
    """True iff every weight is ≤ 1, i.e. each component is a simple mass function."""
    return all(math.log(w) <= WEIGHT_TOL for w in wf.weights.values())


def canonical_decomposition(m: MassFunction) -> WeightFunction:
    """Weights w(A) = Π_{B⊇A} q(B)^((-1)^(|B|-|A|+1)) of a non-dogmatic bba."""
    if m.is_dogmatic():
        raise InvalidMassError("canonical decomposition needs a non-dogmatic bba (m(Ω) > 0)")
    logq = np.log(commonality_vector(m))
    logw = -kernels.zeta(logq, superset=True, inverse=True)
    omega = m.frame.omega_bits
    weights = {
        b: math.exp(lw) for b, lw in enumerate(logw.tolist()) if b != omega and abs(lw) > WEIGHT_TOL
    }
    return WeightFunction(m.frame, weights)


def from_weights(wf: WeightFunction) -> MassFunction:
    """Conjunctive combination of the simple components ``A^w(A)``.

    Uses q(X) = Π_{A ⊉ X} w(A), then Möbius inversion back to masses.
    """
    frame = wf.frame
    logw = np.zeros(1 << frame.n)
    for b, w in wf.weights.items():
        logw[b] = math.log(w)
    logq = logw.sum() - kernels.zeta(logw, superset=True)
    masses = kernels.zeta(np.exp(logq), superset=True, inverse=True)
    raw = {b: v for b, v in enumerate(masses.tolist()) if v != 0.0}
    return MassFunction._trusted(frame, raw)


# -- random generation -------------------------------------------------------


def random_mass(
    frame: Frame,
    k: int,
    seed: Union[int, np.random.Generator, None] = None,
    non_dogmatic: bool = False,
) -> MassFunction:
    """``k`` distinct non-empty focal elements with Dirichlet(1, ..., 1) masses.

    With ``non_dogmatic=True`` Ω is always one of the k focal elements.
    """
    n_subsets = (1 << frame.n) - 1
    if not 1 <= k <= n_subsets:
        raise ValueError(f"k must lie in [1, {n_subsets}], got {k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    omega = frame.omega_bits
    if non_dogmatic:
        others = rng.choice(n_subsets - 1, size=k - 1, replace=False) + 1
        masks = [omega] + [int(b) for b in others]
    else:
        masks = [int(b) for b in rng.choice(n_subsets, size=k, replace=False) + 1]
    while True:
        cuts = np.sort(rng.random(k - 1))
        gaps = np.diff(np.concatenate(([0.0], cuts, [1.0])))
        if np.all(gaps > 0.0):
            break
    return MassFunction._trusted(frame, dict(zip(masks, gaps.tolist())))



def random_separable_mass(
    frame: Frame,
    c: int,
    seed: Union[int, np.random.Generator, None] = None,
) -> MassFunction:
    """Conjunctive combination of ``c`` random simple mass functions.

    Focal sets are distinct non-empty proper subsets; weights (mass kept on
    Ω) are uniform on (0, 1). The result is non-dogmatic and separable.
    """
    n_proper = (1 << frame.n) - 2
    if not 0 <= c <= n_proper:
        raise ValueError(f"c must lie in [0, {n_proper}], got {c}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    masks = rng.choice(n_proper, size=c, replace=False) + 1
    weights = {}
    for b in masks.tolist():
        w = 0.0
        while w <= 0.0:
            w = float(rng.random())
        weights[b] = w
    return from_weights(WeightFunction(frame, weights))
