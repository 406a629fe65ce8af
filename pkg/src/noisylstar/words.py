"""Words as tuples of letter indices, plus padded-batch helpers.

Batched operations represent n words as a (n, maxlen) letter matrix plus a
length vector.  Batch kernels sort rows by decreasing length once so that
at position i only a contiguous prefix of rows is still active.
"""

from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np

Word = Tuple[int, ...]

EMPTY_WORD: Word = ()


def letters_dtype(alphabet_size: int):
    if alphabet_size <= 256:
        return np.uint8
    return np.int32


def pack_words(ws: Sequence[Word], alphabet_size: int):
    """Pack a list of words into (letters, lengths) padded arrays."""
    lengths = np.array([len(w) for w in ws], dtype=np.int64)
    maxlen = int(lengths.max(initial=0))
    letters = np.zeros((len(ws), maxlen), dtype=letters_dtype(alphabet_size))
    for i, w in enumerate(ws):
        if w:
            letters[i, : len(w)] = w
    return letters, lengths


def word_from_row(row: np.ndarray, length: int) -> Word:
    return tuple(int(x) for x in row[:length])


def length_order(lengths: np.ndarray):
    """Sort rows by decreasing length.

    Returns (order, sorted_lengths, active_counts, maxlen) where
    active_counts[i] is the number of sorted rows with length > i.
    """
    order = np.argsort(-lengths, kind="stable")
    lens = lengths[order]
    maxlen = int(lens[0]) if lens.size else 0
    active = np.searchsorted(-lens, -np.arange(1, maxlen + 1), side="right")
    return order, lens, active, maxlen


def check_letters(word: Sequence[int], alphabet_size: int) -> None:
    """Raise ValueError if any letter index is outside the alphabet."""
    if word and (min(word) < 0 or max(word) >= alphabet_size):
        raise ValueError(
            f"word {tuple(word)!r} contains a letter outside alphabet of size {alphabet_size}"
        )
