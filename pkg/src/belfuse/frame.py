"""Frames of discernment and the subset lattice 2^Ω as bitmasks.

Bit ``i`` of a mask stands for the i-th label of the frame, in declaration
order. Masses and rules work on raw ``int`` masks internally; :class:`Subset`
is the frame-aware public value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import FrameMismatchError

MAX_FRAME_SIZE = 20


def popcount(bits: int) -> int:
    return bin(bits).count("1")


@dataclass(frozen=True)
class Frame:
    """An ordered, finite set of exclusive and exhaustive hypotheses."""

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not 1 <= len(labels) <= MAX_FRAME_SIZE:
            raise ValueError(f"frame size must be in [1, {MAX_FRAME_SIZE}], got {len(labels)}")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in frame {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, n: int, prefix: str = "w") -> "Frame":
        """Frame ``w1 .. wn``."""
        return cls(f"{prefix}{i + 1}" for i in range(n))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def omega_bits(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Frame({list(self.labels)!r})"

    # -- subset construction -------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"unknown label {label!r} for {self!r}") from None

    def mask(self, x: "SubsetLike") -> int:
        """Bitmask of ``x``: a Subset of this frame, a mask, a label or labels."""
        if isinstance(x, Subset):
            if x.frame != self:
                raise FrameMismatchError(f"{x!r} does not belong to {self!r}")
            return x.bits
        if isinstance(x, bool):
            raise TypeError("booleans are not subsets")
        if isinstance(x, int):
            if not 0 <= x <= self.omega_bits:
                raise ValueError(f"mask {x} out of range for a frame of size {self.n}")
            return x
        if isinstance(x, str):
            return 1 << self.index(x)
        bits = 0
        for lab in x:
            bits |= 1 << self.index(lab)
        return bits

    def subset(self, x: "SubsetLike" = ()) -> "Subset":
        return Subset(self, self.mask(x))

    @property
    def empty(self) -> "Subset":
        return Subset(self, 0)

    @property
    def omega(self) -> "Subset":
        return Subset(self, self.omega_bits)

    def singletons(self) -> list["Subset"]:
        return [Subset(self, 1 << i) for i in range(self.n)]

    def labels_of(self, bits: int) -> list[str]:
        return [lab for i, lab in enumerate(self.labels) if bits >> i & 1]

    def format(self, bits: int) -> str:
        if bits == 0:
            return "{}"
        return "{" + ",".join(self.labels_of(bits)) + "}"

    # -- JSON -----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj: dict) -> "Frame":
        if not isinstance(obj, dict) or "labels" not in obj:
            raise ValueError("frame JSON must be an object with a 'labels' array")
        return cls(obj["labels"])


@dataclass(frozen=True)
class Subset:
    """An element of 2^Ω for a given frame."""

    frame: Frame
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits <= self.frame.omega_bits:
            raise ValueError(f"mask {self.bits} out of range for {self.frame!r}")

    def _other(self, other: "Subset") -> int:
        if not isinstance(other, Subset):
            return NotImplemented
        if other.frame != self.frame:
            raise FrameMismatchError("subsets belong to different frames")
        return other.bits

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.frame, self.bits & self._other(other))

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.frame, self.bits | self._other(other))

    def __sub__(self, other: "Subset") -> "Subset":
        return Subset(self.frame, self.bits & ~self._other(other))

    def complement(self) -> "Subset":
        return Subset(self.frame, self.frame.omega_bits ^ self.bits)

    __invert__ = complement

    def __le__(self, other: "Subset") -> bool:
        return self.bits & ~self._other(other) == 0

    def __ge__(self, other: "Subset") -> bool:
        return other <= self

    def __lt__(self, other: "Subset") -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: "Subset") -> bool:
        return other < self

    issubset = __le__
    issuperset = __ge__

    def __len__(self) -> int:
        return popcount(self.bits)

    def __iter__(self) -> Iterator[str]:
        return iter(self.frame.labels_of(self.bits))

    def __contains__(self, label: str) -> bool:
        return bool(self.bits >> self.frame.index(label) & 1)

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_omega(self) -> bool:
        return self.bits == self.frame.omega_bits

    def __repr__(self) -> str:
        return f"Subset({self.frame.format(self.bits)})"

    def to_json(self) -> list[str]:
        return self.frame.labels_of(self.bits)


SubsetLike = Union[Subset, int, str, Iterable[str]]


def enumerate_subsets(frame: Frame) -> list[Subset]:
    """All 2^n subsets in increasing bitmask order, from ∅ to Ω."""
    return [Subset(frame, b) for b in range(1 << frame.n)]


def check_same_frame(frames: Iterable[Frame]) -> Frame:
    it = iter(frames)
    first = next(it)
    for f in it:
        if f != first:
            raise FrameMismatchError(f"frame mismatch: {first!r} vs {f!r}")
    return first
