import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belfuse import (
    DecisionConfig,
    Frame,
    MassFunction,
    categorical,
    combine,
    decide,
    decide_appriou,
    decide_argmax,
    decide_distance,
    random_mass,
    vacuous,
)


class TestArgmax:
    def test_zadeh_dempster(self, zadeh):
        assert decide_argmax(combine(zadeh, "dempster")).bits == 0b100

    @pytest.mark.parametrize("fd", ["bel", "pl", "betp"])
    def test_categorical(self, fd, frame3):
        m = categorical(frame3, "w2")
        assert decide(m, DecisionConfig(fd=fd)).chosen.bits == 0b010

    def test_tie_goes_to_smaller_mask(self, frame3):
        assert decide_argmax(vacuous(frame3)).bits == 0b001

    def test_tie_goes_to_smaller_set(self, frame3):
        m = MassFunction(frame3, {0b001: 0.5, 0b110: 0.5})
        cfg = DecisionConfig(fd="bel", candidates=[["w2", "w3"], ["w1"]])
        assert decide(m, cfg).chosen.bits == 0b001

    def test_near_tie_within_tolerance(self, frame3):
        m = MassFunction(frame3, {0b001: 0.5, 0b010: 0.5 + 1e-14}, tol=1e-9)
        assert decide_argmax(m).bits == 0b001

    def test_candidates(self, frame3):
        m = MassFunction(frame3, {0b001: 0.6, 0b110: 0.4})
        cfg = DecisionConfig(fd="bel", candidates=[["w2", "w3"], ["w2"]])
        d = decide(m, cfg)
        assert d.chosen.bits == 0b110
        assert set(d.scores) == {0b010, 0b110}

    def test_empty_candidate_rejected(self, frame3):
        with pytest.raises(ValueError):
            decide(vacuous(frame3), DecisionConfig(candidates=[[]]))


class TestAppriou:
    def test_rho_penalizes_large_sets(self, frame3):
        m = MassFunction(frame3, {0b011: 0.7, 0b100: 0.3})
        cands = [["w1", "w2"], ["w3"]]
        assert decide(m, DecisionConfig("appriou", "pl", cands, rho=0.0)).chosen.bits == 0b011
        assert decide(m, DecisionConfig("appriou", "bel", cands, rho=1.0)).chosen.bits == 0b011
        # with ρ = 1 and f = pl the pair's score halves: 0.7/2 vs 0.3
        d = decide(m, DecisionConfig("appriou", "pl", cands, rho=1.0))
        assert d.scores[0b011] == pytest.approx(0.7 * 0.5 / 1.5)
        assert d.scores[0b100] == pytest.approx(0.3 * 1.0 / 1.5)

    def test_lambda_weights(self, frame3):
        m = MassFunction(frame3, {0b001: 0.6, 0b010: 0.4})
        cfg = DecisionConfig("appriou", "betp", lambda_x={("w1",): 0.0})
        d = decide(m, cfg)
        assert d.chosen.bits == 0b010
        assert 0b001 not in d.scores

    def test_all_zero_weights(self, frame3):
        cfg = DecisionConfig("appriou", candidates=[["w1"]], lambda_x={("w1",): 0.0})
        with pytest.raises(ValueError):
            decide(vacuous(frame3), cfg)

    @given(st.integers(0, 2**32 - 1), st.sampled_from(["bel", "pl", "betp"]))
    @settings(max_examples=100, deadline=None)
    def test_reduces_to_argmax(self, seed, fd):
        rng = np.random.default_rng(seed)
        f = Frame.of_size(3)
        m = random_mass(f, int(rng.integers(1, 8)), rng)
        cands = None if rng.random() < 0.5 else [[lab] for lab in f.labels] + [["w1", "w2"]]
        a = decide_appriou(m, DecisionConfig("appriou", fd, cands, rho=0.0))
        b = decide_argmax(m, DecisionConfig("argmax", fd, cands))
        assert a == b


class TestDistance:
    def test_categorical_in_candidates(self, frame3):
        cands = [["w1"], ["w2", "w3"], ["w1", "w2", "w3"]]
        for c in cands:
            m = categorical(frame3, c)
            assert decide_distance(m, DecisionConfig("distance", candidates=cands)).bits == frame3.mask(c)

    def test_scores_are_distances(self, zadeh):
        d = decide(zadeh[0], DecisionConfig("distance"))
        assert d.chosen.bits == 0b001
        assert d.scores[0b001] == pytest.approx(0.1)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            DecisionConfig(scheme="vote")
        with pytest.raises(ValueError):
            DecisionConfig(fd="q")
        with pytest.raises(ValueError):
            DecisionConfig(rho=2.0)
        with pytest.raises(ValueError):
            DecisionConfig(candidates=[])
        with pytest.raises(ValueError):
            DecisionConfig(lambda_x={("w1",): -1.0})

    def test_json_roundtrip(self, frame3):
        cfg = DecisionConfig("appriou", "pl", [("w1",), ("w2", "w3")], 0.5, {("w1",): 2.0})
        back = DecisionConfig.from_json(cfg.to_json(frame3))
        assert back.to_json(frame3) == cfg.to_json(frame3)
        assert back.candidate_masks(frame3) == [0b001, 0b110]

    def test_decision_json(self, zadeh):
        out = decide(combine(zadeh, "dempster")).to_json()
        assert out["chosen"] == ["w3"]
        assert out["scores"] == {"w1": 0.0, "w2": 0.0, "w3": 1.0}
