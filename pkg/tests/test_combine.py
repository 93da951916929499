import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from belfuse import (
    Frame,
    InvalidMassError,
    MassFunction,
    RULES,
    RuleConfig,
    TotalConflictError,
    WeightFunction,
    canonical_decomposition,
    combine,
    from_weights,
    random_mass,
    random_separable_mass,
    simple_mass,
    vacuous,
)
from belfuse.combine import cautious, florea_betas, lns, lns_weights, mixed


def sources(rng, n, s, non_dogmatic=True):
    f = Frame.of_size(n)
    return [random_mass(f, int(rng.integers(1, 1 << n)), rng, non_dogmatic=non_dogmatic) for _ in range(s)]


def bits_of(m):
    return m.focals


class TestZadeh:
    def test_dempster(self, zadeh):
        assert combine(zadeh, "dempster").focals == {0b100: 1.0}

    def test_conjunctive(self, zadeh):
        out = combine(zadeh, "conjunctive").focals
        assert out == pytest.approx({0: 0.99, 0b100: 0.01}, abs=1e-12)

    def test_pcr6(self, zadeh):
        out = combine(zadeh, "pcr6").focals
        assert out == pytest.approx({0b001: 0.486, 0b010: 0.486, 0b100: 0.028}, abs=1e-12)

    @pytest.mark.parametrize("rule", ["disjunctive", "dubois-prade"])
    def test_disjunctive_like(self, zadeh, rule):
        out = combine(zadeh, rule).focals
        assert out == pytest.approx({0b011: 0.81, 0b101: 0.09, 0b110: 0.09, 0b100: 0.01}, abs=1e-12)

    def test_yager(self, zadeh):
        assert combine(zadeh, "yager").focals == pytest.approx({0b100: 0.01, 0b111: 0.99}, abs=1e-12)

    def test_mean(self, zadeh):
        assert combine(zadeh, "mean").focals == pytest.approx({1: 0.45, 2: 0.45, 4: 0.10}, abs=1e-12)

    def test_florea(self, zadeh):
        b1, b2 = florea_betas(0.99)
        out = combine(zadeh, "florea").focals
        want = {0b011: 0.81 * b1, 0b101: 0.09 * b1, 0b110: 0.09 * b1, 0b100: 0.01 * b1 + 0.01 * b2}
        assert out == pytest.approx(want, abs=1e-12)
        assert sum(out.values()) == pytest.approx(1.0, abs=1e-12)


class TestAgainstOracles:
    @pytest.mark.parametrize("s", [2, 3, 4])
    def test_conjunctive(self, s, rng):
        for _ in range(30):
            ms = sources(rng, 3, s, non_dogmatic=False)
            want = oracles.to_bits(oracles.conjunctive(ms))
            assert oracles.close(bits_of(combine(ms, "conjunctive")), want, 1e-12)

    @pytest.mark.parametrize("s", [2, 3])
    def test_disjunctive(self, s, rng):
        for _ in range(30):
            ms = sources(rng, 3, s, non_dogmatic=False)
            want = oracles.to_bits(oracles.disjunctive(ms))
            assert oracles.close(bits_of(combine(ms, "disjunctive")), want, 1e-12)

    @pytest.mark.parametrize("s", [2, 3])
    def test_pcr6(self, s, rng):
        for _ in range(40):
            ms = sources(rng, 3, s, non_dogmatic=False)
            want = oracles.to_bits(oracles.pcr6(ms))
            assert oracles.close(bits_of(combine(ms, "pcr6")), want, 1e-12)

    def test_dubois_prade(self, rng):
        for _ in range(30):
            ms = sources(rng, 3, 3, non_dogmatic=False)
            acc = {}
            for combo in itertools.product(*(m.focals.items() for m in ms)):
                inter, uni, p = 7, 0, 1.0
                for b, v in combo:
                    inter &= b
                    uni |= b
                    p *= v
                key = inter or uni
                acc[key] = acc.get(key, 0.0) + p
            assert oracles.close(bits_of(combine(ms, "dubois-prade")), acc, 1e-12)

    def test_dempster_is_normalized_conjunctive(self, rng):
        for _ in range(30):
            ms = sources(rng, 3, 2, non_dogmatic=False)
            conj = oracles.to_bits(oracles.conjunctive(ms))
            k = conj.pop(0, 0.0)
            if k > 1 - 1e-9:
                continue
            want = {b: v / (1 - k) for b, v in conj.items()}
            assert oracles.close(bits_of(combine(ms, "dempster")), want, 1e-12)

    def test_mixed_constant(self, rng):
        for _ in range(30):
            m1, m2 = sources(rng, 3, 2, non_dogmatic=False)
            d2 = float(rng.random())
            want = oracles.to_bits(oracles.mixed_constant(m1, m2, d2))
            got = combine([m1, m2], RuleConfig("mixed", "constant", d2))
            assert oracles.close(got.focals, want, 1e-12)

    @pytest.mark.parametrize("policy", ["cardinality", "jaccard"])
    def test_mixed_policies(self, policy, rng):
        for _ in range(30):
            m1, m2 = sources(rng, 3, 2, non_dogmatic=False)
            acc = {}
            for (a, va), (b, vb) in itertools.product(m1.focals.items(), m2.focals.items()):
                i, u = bin(a & b).count("1"), bin(a | b).count("1")
                lo = min(bin(a).count("1"), bin(b).count("1"))
                d2 = i / lo if policy == "cardinality" else i / u
                acc[a & b] = acc.get(a & b, 0.0) + d2 * va * vb
                acc[a | b] = acc.get(a | b, 0.0) + (1 - d2) * va * vb
            assert oracles.close(mixed(m1, m2, RuleConfig("mixed", policy)).focals, acc, 1e-12)


class TestProperties:
    @given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4]), st.sampled_from(["conjunctive", "disjunctive", "pcr6", "dubois-prade", "yager", "mean", "cautious", "florea"]))
    @settings(max_examples=80, deadline=None)
    def test_commutative(self, seed, n, rule):
        rng = np.random.default_rng(seed)
        m1, m2 = sources(rng, n, 2)
        assert combine([m1, m2], rule).isclose(combine([m2, m1], rule), 1e-12)

    @pytest.mark.parametrize("rule", ["conjunctive", "disjunctive", "cautious"])
    def test_associative(self, rule, rng):
        for _ in range(20):
            a, b, c = sources(rng, 3, 3)
            left = combine([combine([a, b], rule), c], rule)
            right = combine([a, combine([b, c], rule)], rule)
            assert left.isclose(right, 1e-9)

    def test_cautious_idempotent(self, rng):
        for m in sources(rng, 4, 20):
            assert combine([m, m], "cautious").isclose(m, 1e-9)

    def test_cautious_is_min_of_weights(self, frame3):
        a = simple_mass(frame3.subset("w1"), 0.3)
        b = simple_mass(frame3.subset("w1"), 0.6)
        assert combine([a, b], "cautious").isclose(b, 1e-12)

    def test_mean_of_identical(self, rng):
        m = sources(rng, 3, 1)[0]
        assert combine([m, m, m], "mean").isclose(m, 1e-12)

    def test_florea_zero_conflict_is_conjunctive(self, frame3):
        m1 = MassFunction(frame3, {0b011: 0.6, 0b111: 0.4})
        m2 = MassFunction(frame3, {0b010: 0.5, 0b110: 0.5})
        assert combine([m1, m2], "florea").isclose(combine([m1, m2], "conjunctive"), 1e-12)

    def test_florea_betas_identity(self):
        for k in np.linspace(0, 1, 101):
            b1, b2 = florea_betas(k)
            assert b1 + b2 * (1 - k) == pytest.approx(1.0, abs=1e-12)


class TestLNS:
    def test_single_cluster_is_conjunctive(self, frame3):
        a = simple_mass(frame3.subset("w1"), 0.3)
        b = simple_mass(frame3.subset("w1"), 0.5)
        assert lns([a, b]).isclose(combine([a, b], "conjunctive"), 1e-12)

    def test_cluster_weights(self, frame3):
        # three components: two on {w1}, one on {w2}
        a = simple_mass(frame3.subset("w1"), 0.5)
        b = simple_mass(frame3.subset("w1"), 0.5)
        c = simple_mass(frame3.subset("w2"), 0.8)
        wf = lns_weights([a, b, c])
        assert wf[1] == pytest.approx(1 - 2 / 3 + 2 / 3 * 0.25)
        assert wf[2] == pytest.approx(1 - 1 / 3 + 1 / 3 * 0.2)

    def test_requires_separable(self, frame3):
        m = MassFunction(frame3, {1: 0.4, 2: 0.4, 7: 0.2})
        with pytest.raises(InvalidMassError):
            lns([m, vacuous(frame3)])

    def test_requires_non_dogmatic(self, zadeh):
        with pytest.raises(InvalidMassError):
            lns(list(zadeh))

    def test_valid_output_on_separable(self, rng):
        f = Frame.of_size(3)
        for _ in range(50):
            ms = [random_separable_mass(f, int(rng.integers(0, 5)), rng) for _ in range(3)]
            out = lns(ms)
            assert sum(out.focals.values()) == pytest.approx(1.0, abs=1e-9)
            assert min(out.focals.values()) >= 0.0


class TestErrors:
    def test_total_conflict(self, frame3):
        a, b = MassFunction(frame3, {1: 1.0}), MassFunction(frame3, {2: 1.0})
        with pytest.raises(TotalConflictError):
            combine([a, b], "dempster")

    def test_total_conflict_is_arithmetic(self):
        assert issubclass(TotalConflictError, ArithmeticError)

    def test_unknown_rule(self, zadeh):
        with pytest.raises(ValueError):
            combine(zadeh, "murphy")

    def test_mixed_needs_two(self, zadeh):
        with pytest.raises(ValueError):
            combine([*zadeh, zadeh[0]], "mixed")

    def test_pcr6_needs_closed_world(self, frame3):
        m = MassFunction(frame3, {0: 0.1, 7: 0.9})
        with pytest.raises(InvalidMassError):
            combine([m, m], "pcr6")

    def test_frame_mismatch(self, zadeh):
        other = MassFunction(Frame(["a", "b", "c"]), {7: 1.0})
        with pytest.raises(ValueError):
            combine([zadeh[0], other], "conjunctive")

    def test_single_mass_not_a_list(self, zadeh):
        with pytest.raises(TypeError):
            combine(zadeh[0], "conjunctive")

    def test_delta2_range(self):
        with pytest.raises(ValueError):
            RuleConfig("mixed", "constant", 1.5)

    def test_rule_ids_stable(self):
        assert RULES == ("conjunctive", "dempster", "disjunctive", "yager", "dubois-prade", "mean",
                         "pcr6", "florea", "mixed", "cautious", "lns")


class TestLNSEdgeCases:
    def test_all_vacuous(self, frame3):
        assert lns([vacuous(frame3), vacuous(frame3)]).is_vacuous()

    def test_disjoint_simple_sources(self, frame3):
        a = simple_mass(frame3.subset("w1"), 0.4)  # weight 0.6
        b = simple_mass(frame3.subset("w2"), 0.8)  # weight 0.2
        wf = lns_weights([a, b])
        assert wf[1] == pytest.approx(0.8)
        assert wf[2] == pytest.approx(0.6)
        assert lns([a, b]).isclose(from_weights(WeightFunction(frame3, {1: 0.8, 2: 0.6})), 1e-12)
