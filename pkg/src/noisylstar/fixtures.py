"""Small hand-built automata used by tests and demos."""

from __future__ import annotations

from .dfa import Alphabet, Dfa


def until_dfa() -> Dfa:
    """'a Until b' over letters a=0, b=1, c=2: runs of a, then a b, then
    anything.  A c before the first b is fatal.  Equal-length-distinguishing:
    the accepting sink and the rejecting sink are both reached by words of
    length 1.
    """
    # state 0: start; state 1: accepting sink; state 2: rejecting sink
    trans = [
        [0, 1, 2],
        [1, 1, 1],
        [2, 2, 2],
    ]
    return Dfa(3, Alphabet(3), 0, {1}, trans)


def suffix_a_dfa() -> Dfa:
    """L = (a+b)*a over a=0, b=1, with an extra letter c=2 leading to a
    rejecting sink.  The sink is the unique bottom SCC, so the automaton is
    not equal-length-distinguishing.
    """
    # state 0: last letter not a; state 1: last letter a (final); state 2: sink
    trans = [
        [1, 0, 2],
        [1, 0, 2],
        [2, 2, 2],
    ]
    return Dfa(3, Alphabet(3), 0, {1}, trans)


def parity_dfa(alphabet_size: int = 2) -> Dfa:
    """Accepts words of odd length; every letter toggles between 2 states."""
    trans = [[1] * alphabet_size, [0] * alphabet_size]
    return Dfa(2, Alphabet(alphabet_size), 0, {1}, trans)


def all_words_dfa(alphabet_size: int = 2) -> Dfa:
    trans = [[0] * alphabet_size]
    return Dfa(1, Alphabet(alphabet_size), 0, {0}, trans)


def empty_language_dfa(alphabet_size: int = 2) -> Dfa:
    trans = [[0] * alphabet_size]
    return Dfa(1, Alphabet(alphabet_size), 0, set(), trans)
