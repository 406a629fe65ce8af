import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noisylstar import Alphabet, Dfa, dfa_equivalent, random_dfa
from noisylstar.fixtures import (all_words_dfa, empty_language_dfa, parity_dfa,
                                 suffix_a_dfa, until_dfa)
from noisylstar.hashing import derive_key
from noisylstar.words import pack_words

from util import enumerate_words, random_small_dfa


def test_validation_rejects_bad_tables():
    with pytest.raises(ValueError):
        Dfa(2, Alphabet(2), 0, {0}, [[0, 2], [0, 1]])  # target out of range
    with pytest.raises(ValueError):
        Dfa(2, Alphabet(2), 2, {0}, [[0, 1], [0, 1]])  # initial out of range
    with pytest.raises(ValueError):
        Dfa(2, Alphabet(2), 0, {5}, [[0, 1], [0, 1]])  # final out of range
    with pytest.raises(ValueError):
        Dfa(2, Alphabet(2), 0, {0}, [[0, 1, 0], [0, 1, 0]])  # wrong shape
    with pytest.raises(ValueError):
        Alphabet(0)


def test_run_and_path_states():
    d = until_dfa()
    assert d.path_states((0, 0, 1, 2)) == [0, 0, 0, 1, 1]
    assert d.run((2,)) == 2
    assert d.accepts((0, 0, 1))
    assert not d.accepts((2, 1))
    assert not d.accepts(())


def test_transitions_are_frozen():
    d = parity_dfa()
    with pytest.raises(ValueError):
        d.transitions[0, 0] = 0


@settings(max_examples=30)
@given(st.integers(0, 2**32), st.integers(0, 2**32))
def test_batch_membership_matches_scalar(dfa_seed, word_seed):
    rng = np.random.default_rng(dfa_seed)
    d = random_small_dfa(rng)
    wrng = np.random.default_rng(word_seed)
    ws = [
        tuple(int(a) for a in wrng.integers(0, d.alphabet.size, size=wrng.integers(0, 10)))
        for _ in range(40)
    ]
    letters, lengths = pack_words(ws, d.alphabet.size)
    batch = d.accepts_batch(letters, lengths)
    assert [bool(b) for b in batch] == [d.accepts(w) for w in ws]


def test_complement_flips_every_word():
    d = suffix_a_dfa()
    c = d.complemented()
    for w in enumerate_words(3, 4):
        assert d.accepts(w) != c.accepts(w)


def test_equivalence_of_identical_and_renamed_automata():
    d = until_dfa()
    assert dfa_equivalent(d, d) is None
    # same language with states renamed
    renamed = Dfa(3, Alphabet(3), 2, {0}, [[0, 0, 0], [1, 1, 1], [2, 0, 1]])
    assert dfa_equivalent(d, renamed) is None


def test_equivalence_counterexample_is_shortest():
    assert dfa_equivalent(parity_dfa(), all_words_dfa()) == ()
    assert dfa_equivalent(parity_dfa(), empty_language_dfa()) == (0,)
    rng = np.random.default_rng(20260825)
    for _ in range(50):
        d1 = random_small_dfa(rng)
        d2 = random_small_dfa(rng)
        if d1.alphabet.size != d2.alphabet.size:
            continue
        cex = dfa_equivalent(d1, d2)
        brute = next(
            (w for w in enumerate_words(d1.alphabet.size, 12)
             if d1.accepts(w) != d2.accepts(w)),
            None,
        )
        if brute is None:
            # any shortest counterexample is longer than the brute horizon
            assert cex is None or len(cex) > 12
        else:
            assert cex is not None
            assert len(cex) == len(brute)
        if cex is not None:
            assert d1.accepts(cex) != d2.accepts(cex)


def test_equivalence_rejects_alphabet_mismatch():
    with pytest.raises(ValueError):
        dfa_equivalent(parity_dfa(2), parity_dfa(3))


def test_random_dfa_respects_bounds():
    for i in range(200):
        d = random_dfa(derive_key(1, "bounds", i))
        assert 10 <= d.num_states <= 50
        assert 3 <= d.alphabet.size <= 20
        assert d.finals == frozenset(range(max(d.finals) + 1))
        assert 1 <= len(d.finals) <= d.num_states
        assert 0 <= d.initial < d.num_states


def test_random_dfa_is_deterministic_in_its_key():
    assert random_dfa(12345) == random_dfa(12345)
    assert random_dfa(12345) != random_dfa(12346)


def test_random_dfa_state_count_statistics():
    # n_q is uniform on [10, 50]: mean 30, sd ~11.83
    n = 4000
    counts = [random_dfa(derive_key(9, "stats", i)).num_states for i in range(n)]
    mean = sum(counts) / n
    assert abs(mean - 30.0) < 4 * 11.83 / n**0.5
    assert min(counts) == 10 and max(counts) == 50


def test_random_dfa_rejects_too_small_limits():
    with pytest.raises(ValueError):
        random_dfa(0, max_states=9)
    with pytest.raises(ValueError):
        random_dfa(0, max_alphabet=2)
