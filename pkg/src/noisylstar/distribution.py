"""Geometric-length word distribution and the statistical language distance.

A word is sampled by flipping a biased coin: with probability mu stop,
otherwise append a uniformly chosen letter.  The distance between two
membership oracles is the fraction of disagreements over a Chernoff-
Hoeffding sized sample (natural logarithm convention; see README).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dfa import Alphabet
from .hashing import derive_key
from .words import Word, check_letters, letters_dtype

# Samples are drawn in fixed-size chunks with per-chunk subkeys, so the
# estimate is bit-identical however chunks are scheduled.
CHUNK_SIZE = 1 << 14


@dataclass(frozen=True)
class MuDistribution:
    """Distribution over all words: Pr(w) = mu * ((1-mu)/|alphabet|)^|w|."""

    mu: float
    alphabet: Alphabet

    def __post_init__(self):
        if not (0.0 < self.mu < 1.0):
            raise ValueError(f"mu must be in (0, 1), got {self.mu}")

    @property
    def mean_length(self) -> float:
        return 1.0 / self.mu - 1.0


@dataclass(frozen=True)
class DistanceEstimate:
    """dist = (#disagreements)/sample_size, a multiple of 1/sample_size."""

    value: float
    sample_size: int
    alpha: float
    gamma: float


def word_probability(dist: MuDistribution, w: Word) -> float:
    check_letters(w, dist.alphabet.size)
    return dist.mu * ((1.0 - dist.mu) / dist.alphabet.size) ** len(w)


def sample_word(dist: MuDistribution, rng_key: int) -> Word:
    """Draw one word; deterministic given rng_key."""
    rng = np.random.default_rng(rng_key)
    n = int(rng.geometric(dist.mu)) - 1
    if n == 0:
        return ()
    return tuple(int(a) for a in rng.integers(0, dist.alphabet.size, size=n))


def sample_words(dist: MuDistribution, rng_key: int, n: int):
    """Draw n words as a padded (letters, lengths) batch."""
    rng = np.random.default_rng(rng_key)
    lengths = rng.geometric(dist.mu, size=n).astype(np.int64) - 1
    maxlen = int(lengths.max(initial=0))
    na = dist.alphabet.size
    if na > 256:
        raise ValueError("batched sampling supports alphabets up to 256 letters")
    letters = rng.integers(0, na, size=(n, maxlen), dtype=letters_dtype(na))
    return letters, lengths


def iter_sample_chunks(dist: MuDistribution, rng_key: int, n: int):
    """Yield (letters, lengths) chunks totalling exactly n words."""
    produced = 0
    chunk_index = 0
    while produced < n:
        take = min(CHUNK_SIZE, n - produced)
        subkey = derive_key(rng_key, "chunk", chunk_index)
        letters, lengths = sample_words(dist, subkey, CHUNK_SIZE)
        if take < CHUNK_SIZE:
            letters, lengths = letters[:take], lengths[:take]
        yield letters, lengths
        produced += take
        chunk_index += 1


def required_sample_size(alpha: float, gamma: float) -> int:
    """Chernoff-Hoeffding sample size ceil(ln(2/gamma) / (2 alpha^2)).

    gamma may approach 2 from below (the bound degenerates to size 1);
    gamma >= 2 would make the logarithm nonpositive and is rejected.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not (0.0 < gamma < 2.0):
        raise ValueError(f"gamma must be in (0, 2), got {gamma}")
    return max(1, math.ceil(math.log(2.0 / gamma) / (2.0 * alpha * alpha)))


def estimate_distance(o1, o2, dist: MuDistribution, alpha: float, gamma: float,
                      rng_key: int) -> DistanceEstimate:
    """Estimate the measure of the symmetric difference of two oracles.

    Streams required_sample_size(alpha, gamma) words from the distribution
    and counts per-word disagreement on the fly; nothing is materialized
    beyond one chunk.  Deterministic given rng_key and the oracle keys.
    """
    if o1.alphabet.size != o2.alphabet.size:
        raise ValueError("oracles must share an alphabet")
    if o1.alphabet.size != dist.alphabet.size:
        raise ValueError("distribution alphabet must match the oracles")
    n = required_sample_size(alpha, gamma)
    disagree = 0
    for letters, lengths in iter_sample_chunks(dist, rng_key, n):
        a1 = o1.membership_batch(letters, lengths)
        a2 = o2.membership_batch(letters, lengths)
        disagree += int(np.count_nonzero(a1 != a2))
    return DistanceEstimate(disagree / n, n, alpha, gamma)
