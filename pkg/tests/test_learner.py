import math

import numpy as np
import pytest

from noisylstar import (Alphabet, DfaOracle, ExactEquivalence, LearnerConfig,
                        LStarLearner, MuDistribution, NoisyOutputOracle,
                        NotACounterexampleError, PacEquivalence,
                        RandomLanguageKey, dfa_equivalent, learn,
                        pac_sample_size, random_dfa)
from noisylstar.fixtures import (all_words_dfa, empty_language_dfa, parity_dfa,
                                 suffix_a_dfa, until_dfa)
from noisylstar.hashing import derive_key

from util import minimal_state_count, random_small_dfa


def test_pac_sample_size_frozen_values():
    # ceil((ln(1/0.005) + (r+1) ln 2) / 0.005)
    assert pac_sample_size(0.005, 0.005, 0) == 1199
    assert pac_sample_size(0.005, 0.005, 1) == 1337
    with pytest.raises(ValueError):
        pac_sample_size(0.005, 0.005, -1)


def test_pac_sample_size_grows_linearly_in_round():
    step = pac_sample_size(0.01, 0.01, 5) - pac_sample_size(0.01, 0.01, 4)
    assert step in (int(math.log(2) / 0.01), int(math.log(2) / 0.01) + 1)


def test_config_validation():
    dist = MuDistribution(0.1, Alphabet(2))
    with pytest.raises(ValueError):
        LearnerConfig(0.0, 0.5, 10, dist, 0)
    with pytest.raises(ValueError):
        LearnerConfig(0.5, 1.0, 10, dist, 0)
    with pytest.raises(ValueError):
        LearnerConfig(0.5, 0.5, -1, dist, 0)


def _exact_learn(dfa, maxround=200):
    dist = MuDistribution(0.1, dfa.alphabet)
    cfg = LearnerConfig(0.1, 0.1, maxround, dist, derive_key(1, "exact"))
    return learn(DfaOracle(dfa), cfg, equivalence=ExactEquivalence(dfa))


@pytest.mark.parametrize("make", [until_dfa, suffix_a_dfa, parity_dfa,
                                  all_words_dfa, empty_language_dfa])
def test_exact_learning_of_fixtures(make):
    dfa = make()
    result = _exact_learn(dfa)
    assert result.terminated_by == "equivalence-pass"
    assert dfa_equivalent(result.hypothesis, dfa) is None
    assert result.hypothesis.num_states == minimal_state_count(dfa)
    # one leaf split per round
    assert result.hypothesis.num_states == result.rounds_used + 1
    assert result.equivalence_sample_count == 0


def test_exact_learning_of_random_dfas():
    for i in range(20):
        dfa = random_dfa(derive_key(2, "exact-random", i), max_states=15,
                         max_alphabet=4)
        result = _exact_learn(dfa)
        assert dfa_equivalent(result.hypothesis, dfa) is None
        assert result.rounds_used <= minimal_state_count(dfa) - 1


def test_membership_queries_are_memoized():
    class Counting(DfaOracle):
        def __init__(self, dfa):
            super().__init__(dfa)
            self.calls = 0

        def membership(self, word):
            self.calls += 1
            return super().membership(word)

    oracle = Counting(until_dfa())
    learner = LStarLearner(oracle)
    for _ in range(5):
        learner.member((0, 1))
        learner.member(())
    assert oracle.calls == 2  # one per distinct word
    assert learner.membership_query_count == 2


def test_update_rejects_non_counterexamples():
    dfa = parity_dfa()
    learner = LStarLearner(DfaOracle(dfa))
    learner.synthesize()
    with pytest.raises(NotACounterexampleError):
        learner.update(())  # 1-state hypothesis rejects; target rejects too


def test_maxround_zero_yields_trivial_hypothesis():
    dfa = parity_dfa()
    dist = MuDistribution(0.1, dfa.alphabet)
    cfg = LearnerConfig(0.1, 0.1, 0, dist, 0)
    result = learn(DfaOracle(dfa), cfg, equivalence=ExactEquivalence(dfa))
    assert result.terminated_by == "maxround"
    assert result.rounds_used == 0
    assert result.hypothesis.num_states == 1


def test_pac_equivalence_counts_and_finds_disagreements():
    target = DfaOracle(parity_dfa())
    dist = MuDistribution(0.3, Alphabet(2))
    cfg = LearnerConfig(0.05, 0.05, 50, dist, derive_key(3, "pac"))
    eq = PacEquivalence(target, cfg)
    cex, n = eq(all_words_dfa(), 0)
    assert n == pac_sample_size(0.05, 0.05, 0)
    # the two languages differ on every even-length word (mass > 0.5)
    assert cex is not None
    assert all_words_dfa().accepts(cex) != target.membership(cex)
    cex_self, n1 = eq(parity_dfa(), 1)
    assert cex_self is None
    assert n1 == pac_sample_size(0.05, 0.05, 1)


def test_pac_learning_recovers_a_small_language():
    dfa = until_dfa()
    dist = MuDistribution(0.2, dfa.alphabet)
    cfg = LearnerConfig(0.01, 0.01, 60, dist, derive_key(4, "pac-learn"))
    result = learn(DfaOracle(dfa), cfg)
    assert result.terminated_by == "equivalence-pass"
    assert dfa_equivalent(result.hypothesis, dfa) is None
    assert result.equivalence_sample_count == sum(
        pac_sample_size(0.01, 0.01, r) for r in range(result.rounds_used + 1)
    )


def test_learning_under_output_noise_stays_close():
    # with light noise the hypothesis should disagree with the clean target
    # on only a small fraction of the distribution
    dfa = suffix_a_dfa()
    noisy = NoisyOutputOracle(dfa, 0.01, RandomLanguageKey(5, "noisy-learn"))
    dist = MuDistribution(0.1, dfa.alphabet)
    cfg = LearnerConfig(0.05, 0.05, 40, dist, derive_key(6, "noisy-learn"))
    result = learn(noisy, cfg)
    from noisylstar import estimate_distance
    est = estimate_distance(DfaOracle(dfa), DfaOracle(result.hypothesis), dist,
                            0.01, 0.01, derive_key(7, "noisy-learn-dist"))
    assert est.value < 0.1


def test_trajectory_snapshots_every_twenty_rounds():
    dfa = random_dfa(derive_key(8, "trajectory"), max_states=45, max_alphabet=3)
    result = _exact_learn(dfa, maxround=200)
    dist = MuDistribution(0.1, dfa.alphabet)
    cfg = LearnerConfig(0.1, 0.1, result.rounds_used + 1, dist, 0)
    traced = learn(DfaOracle(dfa), cfg, equivalence=ExactEquivalence(dfa),
                   record_trajectory=True)
    assert traced.trajectory is not None
    expected = [r for r in range(20, traced.rounds_used + 1, 20)]
    assert [r for r, _ in traced.trajectory] == expected
    for r, hyp in traced.trajectory:
        assert hyp.num_states == r + 1
