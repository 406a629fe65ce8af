"""Keyed 64-bit hashing for reproducible per-word random decisions.

Every random decision attached to a word (classification flips, letter
perturbations) is a pure function of (seed, word), so answers never depend
on query order or thread schedule.  The mixer is the splitmix64 finalizer;
Bernoulli draws compare the top 53 bits mapped to [0,1) against the
probability, and uniform choices over k alternatives use floor(u * k).
Scalar (Python int) and vectorized (numpy uint64) paths are bit-identical.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_SALT2 = 0xD1B54A32D192ED03

_NP_GOLDEN = np.uint64(GOLDEN)
_NP_M1 = np.uint64(0xBF58476D1CE4E5B9)
_NP_M2 = np.uint64(0x94D049BB133111EB)
_U53_SCALE = 2.0 ** -53


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    x &= MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK64
    x ^= x >> 31
    return x


def mix64_np(x: np.ndarray) -> np.ndarray:
    """Vectorized mix64 over a uint64 array."""
    x = x ^ (x >> np.uint64(30))
    x = x * _NP_M1
    x = x ^ (x >> np.uint64(27))
    x = x * _NP_M2
    return x ^ (x >> np.uint64(31))


def derive_key(master: int, *parts) -> int:
    """Derive an independent 64-bit subkey from a master seed.

    Parts may be short strings (stream labels) or integers (indices).
    """
    h = mix64(master & MASK64)
    for part in parts:
        if isinstance(part, str):
            for b in part.encode():
                h = mix64(h ^ b)
        else:
            h = mix64(h ^ ((int(part) & MASK64) ^ GOLDEN))
    return h


def word_hash(seed: int, word) -> int:
    """Hash of a whole word (sequence of letter indices) under a seed."""
    h = mix64(seed & MASK64)
    for a in word:
        h = mix64((h + GOLDEN + a) & MASK64)
    return mix64(h ^ len(word))


def position_hash(whash: int, i: int) -> int:
    """Per-position value derived from a word hash (position i >= 0)."""
    return mix64((whash + (i + 1) * GOLDEN) & MASK64)


def rehash(h: int) -> int:
    """Second independent value from an already-mixed hash."""
    return mix64(h ^ _SALT2)


def u01(h: int) -> float:
    """Map a 64-bit hash to [0, 1) using its top 53 bits."""
    return (h >> 11) * _U53_SCALE


def uniform_index(h: int, k: int) -> int:
    """Uniform choice in {0, ..., k-1} from a hash."""
    return int(u01(h) * k)


def u01_np(h: np.ndarray) -> np.ndarray:
    return (h >> np.uint64(11)).astype(np.float64) * _U53_SCALE


def position_hash_np(whash: np.ndarray, i: int) -> np.ndarray:
    step = np.uint64(((i + 1) * GOLDEN) & MASK64)
    return mix64_np(whash + step)


def rehash_np(h: np.ndarray) -> np.ndarray:
    return mix64_np(h ^ np.uint64(_SALT2))
