"""Membership oracles: exact DFAs and the three noisy devices.

A noisy device realizes a "random language": each word's classification is
fixed once and for all.  Instead of caching first-query answers (which
would depend on query order), every random decision is derived by keyed
hashing of (master seed, purpose label, word [, position]), so repeated
and reordered queries are trivially stable and thread-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .dfa import Alphabet, Dfa
from .hashing import (GOLDEN, MASK64, derive_key, mix64, mix64_np,
                      position_hash, position_hash_np, rehash, rehash_np,
                      u01, u01_np, uniform_index, word_hash)
from .words import Word, check_letters, length_order


@dataclass(frozen=True)
class RandomLanguageKey:
    """Master seed plus a purpose label naming the random stream."""

    master_seed: int
    purpose_label: str = ""

    def derive(self) -> int:
        return derive_key(self.master_seed, self.purpose_label)


class LanguageOracle:
    """Membership contract shared by exact DFAs and noisy devices.

    Answers are stable: membership(w) returns the same value on every
    call, and batch answers agree bit-for-bit with scalar ones.
    """

    alphabet: Alphabet

    def membership(self, word: Word) -> bool:
        raise NotImplementedError

    def membership_batch(self, letters: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        out = np.empty(len(lengths), dtype=bool)
        for i, n in enumerate(lengths):
            out[i] = self.membership(tuple(int(a) for a in letters[i, : int(n)]))
        return out


class DfaOracle(LanguageOracle):
    """Exact membership in the language of a DFA."""

    def __init__(self, dfa: Dfa) -> None:
        self.dfa = dfa
        self.alphabet = dfa.alphabet

    def membership(self, word: Word) -> bool:
        return self.dfa.accepts(word)

    def membership_batch(self, letters, lengths):
        return self.dfa.accepts_batch(letters, lengths)


class ComplementOracle(LanguageOracle):
    """Negation of another oracle (test utility for distance sanity checks)."""

    def __init__(self, inner: LanguageOracle) -> None:
        self.inner = inner
        self.alphabet = inner.alphabet

    def membership(self, word: Word) -> bool:
        return not self.inner.membership(word)

    def membership_batch(self, letters, lengths):
        return ~self.inner.membership_batch(letters, lengths)


def _check_probability(p: float) -> float:
    # p = 0 is a degenerate no-noise hook used by tests; p = 1 is rejected.
    if not (0.0 <= p < 1.0):
        raise ValueError(f"noise probability must be in [0, 1), got {p}")
    return float(p)


class NoisyOutputOracle(LanguageOracle):
    """Flips the base DFA's classification of each word with probability p."""

    def __init__(self, base: Dfa, p: float, key: RandomLanguageKey) -> None:
        self.base = base
        self.alphabet = base.alphabet
        self.p = _check_probability(p)
        self.key = key
        self._seed = key.derive()

    def flips(self, word: Word) -> bool:
        return u01(word_hash(self._seed, word)) < self.p

    def membership(self, word: Word) -> bool:
        return self.base.accepts(word) ^ self.flips(word)

    def membership_batch(self, letters, lengths):
        base = self.base.accepts_batch(letters, lengths)
        flips = u01_np(_fold_words(self._seed, letters, lengths)) < self.p
        return base ^ flips


class NoisyInputOracle(LanguageOracle):
    """Perturbs each letter of a queried word with probability p, then asks
    the base DFA.

    One perturbation is frozen per word: letter i of w is kept or replaced
    according to hashes of (key, w, i), so every query of w sees the same
    perturbed word.
    """

    def __init__(self, base: Dfa, p: float, key: RandomLanguageKey) -> None:
        if base.alphabet.size < 2:
            raise ValueError("noisy input requires an alphabet of size >= 2")
        self.base = base
        self.alphabet = base.alphabet
        self.p = _check_probability(p)
        self.key = key
        self._seed = key.derive()

    def perturbed(self, word: Word) -> Word:
        """The frozen equal-length perturbation of `word` (inspection hook)."""
        check_letters(word, self.alphabet.size)
        h = word_hash(self._seed, word)
        na = self.alphabet.size
        p = self.p
        out = []
        for i, a in enumerate(word):
            g = position_hash(h, i)
            if u01(g) < p:
                r = uniform_index(rehash(g), na - 1)
                a = r + (1 if r >= a else 0)
            out.append(a)
        return tuple(out)

    def membership(self, word: Word) -> bool:
        return self.base.accepts(self.perturbed(word))

    def membership_batch(self, letters, lengths):
        n = len(lengths)
        if n == 0:
            return np.zeros(0, dtype=bool)
        order, lens, active, maxlen = length_order(lengths)
        lets = letters[order]
        h = _fold_sorted(self._seed, lets, lens, active, maxlen)
        na = self.alphabet.size
        p = self.p
        flat = self.base._flat
        states = np.full(n, self.base.initial, dtype=np.int64)
        for i in range(maxlen):
            k = int(active[i])
            if k == 0:
                break
            g = position_hash_np(h[:k], i)
            a = lets[:k, i].astype(np.int64)
            repl = u01_np(g) < p
            r = (u01_np(rehash_np(g)) * (na - 1)).astype(np.int64)
            b = np.where(repl, r + (r >= a), a)
            states[:k] = flat[states[:k] * na + b]
        acc = self.base._final_mask[states]
        out = np.empty(n, dtype=bool)
        out[order] = acc
        return out


@dataclass(frozen=True)
class CounterFunction:
    """Additive letter weights plus a base value for the empty word."""

    c_lambda: int
    per_letter: Tuple[int, ...]


def counter_value(cf: CounterFunction, word: Sequence[int]) -> int:
    check_letters(word, len(cf.per_letter))
    total = cf.c_lambda
    per = cf.per_letter
    for a in word:
        total += per[a]
    return total


def random_counter_function(rng_key: int, alphabet: Alphabet) -> CounterFunction:
    """Draw a counter function: base value uniform in [0, |alphabet|], each
    letter weight -1 with probability 1/4, else uniform over {0, ..., 6}.
    """
    rng = np.random.default_rng(rng_key)
    na = alphabet.size
    c_lambda = int(rng.integers(0, na + 1))
    negatives = rng.random(na) < 0.25
    values = rng.integers(0, 7, size=na)
    per_letter = tuple(-1 if neg else int(v) for neg, v in zip(negatives, values))
    return CounterFunction(c_lambda, per_letter)


class CounterDfaOracle(LanguageOracle):
    """Deterministic noise: accepts w iff the base DFA does or the running
    counter ends <= 0."""

    def __init__(self, base: Dfa, counter: CounterFunction) -> None:
        if len(counter.per_letter) != base.alphabet.size:
            raise ValueError("counter function does not cover the alphabet")
        self.base = base
        self.alphabet = base.alphabet
        self.counter = counter
        self._ctab = np.array(counter.per_letter, dtype=np.int64)

    def membership(self, word: Word) -> bool:
        return self.base.accepts(word) or counter_value(self.counter, word) <= 0

    def membership_batch(self, letters, lengths):
        base = self.base.accepts_batch(letters, lengths)
        n = len(lengths)
        if n == 0:
            return base
        order, lens, active, maxlen = length_order(lengths)
        lets = letters[order]
        totals = np.full(n, self.counter.c_lambda, dtype=np.int64)
        for i in range(maxlen):
            k = int(active[i])
            if k == 0:
                break
            totals[:k] += self._ctab[lets[:k, i].astype(np.int64)]
        low = np.empty(n, dtype=bool)
        low[order] = totals <= 0
        return base | low


def _fold_words(seed: int, letters: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Vectorized word_hash over a padded batch (order of original rows)."""
    n = len(lengths)
    if n == 0:
        return np.zeros(0, dtype=np.uint64)
    order, lens, active, maxlen = length_order(lengths)
    h = _fold_sorted(seed, letters[order], lens, active, maxlen)
    out = np.empty(n, dtype=np.uint64)
    out[order] = h
    return out


def _fold_sorted(seed: int, lets: np.ndarray, lens: np.ndarray,
                 active: np.ndarray, maxlen: int) -> np.ndarray:
    h = np.full(len(lens), mix64(seed & MASK64), dtype=np.uint64)
    golden = np.uint64(GOLDEN)
    for i in range(maxlen):
        k = int(active[i])
        if k == 0:
            break
        h[:k] = mix64_np(h[:k] + golden + lets[:k, i].astype(np.uint64))
    return mix64_np(h ^ lens.astype(np.uint64))
