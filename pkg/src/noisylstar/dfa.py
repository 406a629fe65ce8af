"""Complete DFAs over integer-indexed alphabets.

States and letters are dense integer indices; the transition table is a
total (num_states x alphabet_size) array, so membership is a chain of
table lookups.  Dfa values are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .words import Word, check_letters, length_order


@dataclass(frozen=True)
class Alphabet:
    """Letters are the indices 0 .. size-1."""

    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.size}")


class Dfa:
    """Complete deterministic finite automaton.

    transitions[q, a] is the successor of state q under letter a; the table
    must be total and every target must be a valid state.
    """

    __slots__ = (
        "num_states",
        "alphabet",
        "initial",
        "finals",
        "transitions",
        "_flat",
        "_flat_list",
        "_final_mask",
    )

    def __init__(self, num_states: int, alphabet: Alphabet, initial: int,
                 finals: Iterable[int], transitions) -> None:
        if num_states < 1:
            raise ValueError("num_states must be >= 1")
        trans = np.ascontiguousarray(transitions, dtype=np.int64)
        if trans.shape != (num_states, alphabet.size):
            raise ValueError(
                f"transition table has shape {trans.shape}, "
                f"expected ({num_states}, {alphabet.size})"
            )
        if trans.size and (trans.min() < 0 or trans.max() >= num_states):
            raise ValueError("transition target out of range")
        if not (0 <= initial < num_states):
            raise ValueError(f"initial state {initial} out of range")
        fset = frozenset(int(f) for f in finals)
        for f in fset:
            if not (0 <= f < num_states):
                raise ValueError(f"final state {f} out of range")
        self.num_states = num_states
        self.alphabet = alphabet
        self.initial = int(initial)
        self.finals = fset
        trans.setflags(write=False)
        self.transitions = trans
        self._flat = trans.ravel()
        self._flat_list = self._flat.tolist()
        mask = np.zeros(num_states, dtype=bool)
        mask[list(fset)] = True
        mask.setflags(write=False)
        self._final_mask = mask

    # -- membership ---------------------------------------------------

    def run(self, word: Word, start: Optional[int] = None) -> int:
        """State reached from `start` (default: initial) by `word`."""
        check_letters(word, self.alphabet.size)
        q = self.initial if start is None else start
        na = self.alphabet.size
        t = self._flat_list
        for a in word:
            q = t[q * na + a]
        return q

    def accepts(self, word: Word) -> bool:
        return self.run(word) in self.finals

    def path_states(self, word: Word) -> list:
        """All states visited along `word`, starting with the initial state."""
        check_letters(word, self.alphabet.size)
        q = self.initial
        na = self.alphabet.size
        t = self._flat_list
        out = [q]
        for a in word:
            q = t[q * na + a]
            out.append(q)
        return out

    def accepts_batch(self, letters: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        """Vectorized membership for a padded batch of words."""
        n = len(lengths)
        if n == 0:
            return np.zeros(0, dtype=bool)
        order, lens, active, maxlen = length_order(lengths)
        lets = letters[order]
        states = np.full(n, self.initial, dtype=np.int64)
        flat = self._flat
        na = self.alphabet.size
        for i in range(maxlen):
            k = int(active[i])
            if k == 0:
                break
            states[:k] = flat[states[:k] * na + lets[:k, i].astype(np.int64)]
        acc = self._final_mask[states]
        out = np.empty(n, dtype=bool)
        out[order] = acc
        return out

    # -- derived automata ---------------------------------------------

    def complemented(self) -> "Dfa":
        """Same automaton with final states complemented."""
        finals = set(range(self.num_states)) - self.finals
        return Dfa(self.num_states, self.alphabet, self.initial, finals,
                   self.transitions)

    # -- equality (structural, for round-trip tests) ------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.num_states == other.num_states
                and self.alphabet == other.alphabet
                and self.initial == other.initial
                and self.finals == other.finals
                and np.array_equal(self.transitions, other.transitions))

    def __hash__(self):
        return hash((self.num_states, self.alphabet, self.initial, self.finals,
                     self.transitions.tobytes()))

    def __repr__(self):
        return (f"Dfa(num_states={self.num_states}, "
                f"alphabet_size={self.alphabet.size}, initial={self.initial}, "
                f"finals={sorted(self.finals)})")


def dfa_equivalent(d1: Dfa, d2: Dfa) -> Optional[Word]:
    """Exact language-equivalence test via BFS over the product automaton.

    Returns None when L(d1) = L(d2), otherwise a shortest word of the
    symmetric difference (ties broken towards smaller letter indices).
    """
    if d1.alphabet.size != d2.alphabet.size:
        raise ValueError(
            f"alphabet mismatch: {d1.alphabet.size} vs {d2.alphabet.size}"
        )
    na = d1.alphabet.size
    t1, t2 = d1._flat_list, d2._flat_list
    f1, f2 = d1.finals, d2.finals
    start = (d1.initial, d2.initial)
    if (start[0] in f1) != (start[1] in f2):
        return ()
    parent = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        q1, q2 = pair
        base1 = q1 * na
        base2 = q2 * na
        for a in range(na):
            nxt = (t1[base1 + a], t2[base2 + a])
            if nxt in parent:
                continue
            parent[nxt] = (pair, a)
            if (nxt[0] in f1) != (nxt[1] in f2):
                # reconstruct the word back to the start pair
                letters = []
                node = nxt
                while parent[node] is not None:
                    node, letter = parent[node]
                    letters.append(letter)
                return tuple(reversed(letters))
            queue.append(nxt)
    return None


def random_dfa(rng_key: int, max_states: int = 50, max_alphabet: int = 20) -> Dfa:
    """Draw a random complete DFA.

    State count uniform in [10, max_states], alphabet size uniform in
    [3, max_alphabet], finals are the initial segment {0..n_f} with n_f
    uniform in [0, n_q - 1], initial state and all transition targets
    uniform among states.  Deterministic given rng_key.
    """
    if max_states < 10:
        raise ValueError("max_states must be >= 10")
    if max_alphabet < 3:
        raise ValueError("max_alphabet must be >= 3")
    rng = np.random.default_rng(rng_key)
    n_q = int(rng.integers(10, max_states + 1))
    n_a = int(rng.integers(3, max_alphabet + 1))
    n_f = int(rng.integers(0, n_q))
    initial = int(rng.integers(0, n_q))
    trans = rng.integers(0, n_q, size=(n_q, n_a), dtype=np.int64)
    return Dfa(n_q, Alphabet(n_a), initial, range(n_f + 1), trans)
