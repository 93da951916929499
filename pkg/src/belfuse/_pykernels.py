"""Pure-Python kernels. Reference semantics for ``_ckernels``.

Sparse mass functions are ``dict[int, float]`` keyed by bitmask. Every
function returns fresh objects and never mutates its arguments.
"""

from __future__ import annotations

from itertools import product

import numpy as np

CONJ, DISJ, DUBOIS_PRADE, PCR6 = 0, 1, 2, 3
DELTA_CONST, DELTA_MINCARD, DELTA_JACCARD = 0, 1, 2


def _popcount(x: int) -> int:
    return bin(x).count("1")


def combine_pair(m1: dict, m2: dict, op: int) -> dict:
    """Conjunctive (``op=CONJ``) or disjunctive (``op=DISJ``) product of two masses."""
    out: dict = {}
    items2 = list(m2.items())
    for a, va in m1.items():
        for b, vb in items2:
            x = a & b if op == CONJ else a | b
            out[x] = out.get(x, 0.0) + va * vb
    return out


def combine_tuples(ms: list, mode: int) -> dict:
    """Enumerate every tuple of focal elements, one per source.

    ``mode`` selects where the product mass of a tuple goes: its intersection
    (CONJ), its union (DISJ), its intersection unless empty and then its union
    (DUBOIS_PRADE), or its intersection unless empty and then back onto each
    member proportionally to that member's mass (PCR6).
    """
    out: dict = {}
    sources = [list(m.items()) for m in ms]
    for tup in product(*sources):
        inter = -1
        union = 0
        p = 1.0
        for mask, v in tup:
            inter &= mask
            union |= mask
            p *= v
        if mode == DISJ:
            out[union] = out.get(union, 0.0) + p
        elif inter != 0 or mode == CONJ:
            out[inter] = out.get(inter, 0.0) + p
        elif mode == DUBOIS_PRADE:
            out[union] = out.get(union, 0.0) + p
        else:
            s = 0.0
            for _, v in tup:
                s += v
            if s > 0.0:
                for mask, v in tup:
                    out[mask] = out.get(mask, 0.0) + v * p / s
    return out


def mixed_pair(m1: dict, m2: dict, policy: int, delta2: float) -> dict:
    """Two-source mixed rule: δ1 of each product to the union, δ2 to the intersection."""
    out: dict = {}
    for a, va in m1.items():
        ca = _popcount(a)
        for b, vb in m2.items():
            inter = a & b
            union = a | b
            if policy == DELTA_CONST:
                d2 = delta2
            elif a == 0 or b == 0:
                d2 = 0.0
            elif policy == DELTA_MINCARD:
                d2 = _popcount(inter) / min(ca, _popcount(b))
            else:
                d2 = _popcount(inter) / _popcount(union)
            p = va * vb
            if d2 != 1.0:
                out[union] = out.get(union, 0.0) + (1.0 - d2) * p
            if d2 != 0.0:
                out[inter] = out.get(inter, 0.0) + d2 * p
    return out


def jousselme_sq(m1: dict, m2: dict) -> float:
    """Half the Jaccard quadratic form of ``m1 - m2``, i.e. the squared distance."""
    keys = sorted(set(m1) | set(m2))
    diff = [m1.get(k, 0.0) - m2.get(k, 0.0) for k in keys]
    cards = [_popcount(k) for k in keys]
    total = 0.0
    for i, ki in enumerate(keys):
        di = diff[i]
        if di == 0.0:
            continue
        total += di * di
        for j in range(i + 1, len(keys)):
            kj = keys[j]
            inter = ki & kj
            if inter:
                total += 2.0 * di * diff[j] * _popcount(inter) / _popcount(ki | kj)
    return max(0.5 * total, 0.0)


def zeta(values, superset: bool = False, inverse: bool = False) -> np.ndarray:
    """Dense zeta/Möbius transform on the lattice 2^Ω.

    Forward subset-sum gives f(X) = Σ_{Y⊆X} g(Y); ``superset=True`` sums over
    Y⊇X instead. ``inverse=True`` applies the matching Möbius inversion.
    """
    a = np.array(values, dtype=np.float64)
    size = a.size
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError("length must be a power of two")
    if n == 0:
        return a
    v = a.reshape((2,) * n)
    for ax in range(n):
        lo = [slice(None)] * n
        hi = [slice(None)] * n
        lo[ax] = 0
        hi[ax] = 1
        dst, src = (tuple(lo), tuple(hi)) if superset else (tuple(hi), tuple(lo))
        if inverse:
            v[dst] -= v[src]
        else:
            v[dst] += v[src]
    return a
