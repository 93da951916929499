import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from belfuse import (
    Frame,
    MassFunction,
    ReliabilityProfile,
    categorical,
    conflict_report,
    discount_by_conflict,
    estimate_alpha_pignistic,
    random_mass,
    reliability_from_conflict,
    vacuous,
)
from belfuse.mass import betp_singletons
from belfuse.reliability import pignistic_fit_objective


def grid_alpha(m, supported_bits, points=10_001):
    """Brute-force minimizer of the squared BetP error over an α grid.

    Each grid row holds the masses of the discounted bba; BetP is then the
    row times the focal-to-singleton splitting matrix.
    """
    n = m.frame.n
    omega = frozenset(range(n))
    sets = oracles.to_sets(m)
    sets.setdefault(omega, 0.0)
    sets.pop(frozenset(), None)  # open-world mass is dropped by BetP's normalization
    keys = list(sets)
    v = np.array([sets[k] for k in keys])
    v = v / v.sum()
    alphas = np.linspace(0.0, 1.0, points)
    rows = alphas[:, None] * v[None, :]
    rows[:, keys.index(omega)] += 1.0 - alphas
    split = np.array([[1.0 / len(k) if i in k else 0.0 for i in range(n)] for k in keys])
    p = rows @ split
    target = np.array([1.0 if supported_bits >> i & 1 else 0.0 for i in range(n)])
    err = np.sum((p - target) ** 2, axis=1)
    i = int(np.argmin(err))
    return float(alphas[i]), float(err[i])


class TestReliabilityFromConflict:
    def test_value(self):
        assert reliability_from_conflict(0.6, 2.0) == pytest.approx(0.8)

    def test_lambda_one(self):
        assert reliability_from_conflict(0.3, 1.0) == pytest.approx(0.7)

    def test_endpoints(self):
        assert reliability_from_conflict(0.0) == 1.0
        assert reliability_from_conflict(1.0) == 0.0

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0.1, 10))
    def test_decreasing(self, a, b, lam):
        lo, hi = sorted((a, b))
        assert reliability_from_conflict(hi, lam) <= reliability_from_conflict(lo, lam) + 1e-12

    @pytest.mark.parametrize("conf,lam", [(-0.1, 2), (1.1, 2), (0.5, 0), (0.5, -1)])
    def test_invalid(self, conf, lam):
        with pytest.raises(ValueError):
            reliability_from_conflict(conf, lam)


class TestDiscountByConflict:
    def test_identical_sources_untouched(self, zadeh):
        out, prof = discount_by_conflict([zadeh[0], zadeh[0]])
        assert prof.alphas == [1.0, 1.0]
        assert out[0] == zadeh[0]

    def test_zadeh_lambda_one(self, zadeh):
        out, prof = discount_by_conflict(list(zadeh), lam=1.0)
        conf = conflict_report(zadeh).per_source
        assert prof.alphas == pytest.approx([1 - c for c in conf])
        assert prof.alphas == pytest.approx([0.55, 0.55])
        assert out[0].omega_mass == pytest.approx(0.45)

    def test_profile_json(self):
        prof = ReliabilityProfile([0.2, 0.9], 3.0, "user-supplied")
        assert ReliabilityProfile.from_json(prof.to_json()) == prof

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            ReliabilityProfile([1.2])
        with pytest.raises(ValueError):
            ReliabilityProfile([0.5], provenance="guess")


class TestPignisticFit:
    def test_perfect_source(self, frame3):
        assert estimate_alpha_pignistic(categorical(frame3, "w1"), frame3.subset("w1")) == 1.0

    def test_wrong_source(self, frame3):
        assert estimate_alpha_pignistic(categorical(frame3, "w2"), frame3.subset("w1")) == 0.0

    def test_flat_objective(self, frame3):
        assert estimate_alpha_pignistic(vacuous(frame3), frame3.subset("w1")) == 1.0

    def test_empty_target(self, frame3):
        with pytest.raises(ValueError):
            estimate_alpha_pignistic(vacuous(frame3), frame3.empty)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_grid_search(self, n, rng):
        f = Frame.of_size(n)
        for _ in range(30):
            m = random_mass(f, int(rng.integers(1, 1 << n)), rng)
            target = int(rng.integers(1, 1 << n))
            a_grid, err_grid = grid_alpha(m, target)
            a = estimate_alpha_pignistic(m, target)
            assert pignistic_fit_objective(m, target, a) <= err_grid + 1e-12
            if np.allclose(betp_singletons(m), 1.0 / n, atol=1e-9):
                continue  # flat objective: every α is optimal
            assert a == pytest.approx(a_grid, abs=1e-4 + 1e-6)

    def test_objective_minimal(self, rng):
        f = Frame.of_size(3)
        m = random_mass(f, 4, rng)
        a = estimate_alpha_pignistic(m, 1)
        for b in np.linspace(0, 1, 51):
            assert pignistic_fit_objective(m, 1, a) <= pignistic_fit_objective(m, 1, b) + 1e-12

    def test_open_world_uses_normalized_betp(self, frame3):
        m = MassFunction(frame3, {0: 0.5, 1: 0.5})
        closed = MassFunction(frame3, {1: 1.0})
        assert estimate_alpha_pignistic(m, 1) == estimate_alpha_pignistic(closed, 1)
