"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written the slow, obvious way (explicit
partition refinement, dense per-length probability vectors) so that
agreement with the fast library code is meaningful.
"""

import itertools

import numpy as np

from noisylstar import Alphabet, Dfa


def enumerate_words(alphabet_size, max_len):
    """All words over the alphabet up to max_len, shortest first."""
    for n in range(max_len + 1):
        yield from itertools.product(range(alphabet_size), repeat=n)


def minimal_state_count(dfa: Dfa) -> int:
    """Number of states of the minimal DFA for L(dfa).

    Moore's algorithm: restrict to reachable states, then refine the
    final/non-final partition until stable.
    """
    na = dfa.alphabet.size
    reachable = {dfa.initial}
    stack = [dfa.initial]
    while stack:
        q = stack.pop()
        for a in range(na):
            t = int(dfa.transitions[q, a])
            if t not in reachable:
                reachable.add(t)
                stack.append(t)
    states = sorted(reachable)
    block = {q: (q in dfa.finals) for q in states}
    while True:
        signature = {
            q: (block[q],) + tuple(block[int(dfa.transitions[q, a])] for a in range(na))
            for q in states
        }
        ids = {}
        new_block = {}
        for q in states:
            new_block[q] = ids.setdefault(signature[q], len(ids))
        if len(set(new_block.values())) == len(set(block.values())):
            return len(ids)
        block = new_block


def exact_distance(d1: Dfa, d2: Dfa, mu: float, tail: float = 1e-12) -> float:
    """Exact measure of the symmetric difference of two DFA languages under
    the geometric-length distribution.

    Propagates the probability vector over product states length by length:
    the mass of words of length n is mu*(1-mu)^n, spread over product
    states by uniform letter choice.  Truncated when the remaining
    geometric tail drops below `tail`.
    """
    if d1.alphabet.size != d2.alphabet.size:
        raise ValueError("alphabet mismatch")
    na = d1.alphabet.size
    n1, n2 = d1.num_states, d2.num_states
    m = np.zeros((n1 * n2, n1 * n2))
    for q1 in range(n1):
        for q2 in range(n2):
            src = q1 * n2 + q2
            for a in range(na):
                dst = int(d1.transitions[q1, a]) * n2 + int(d2.transitions[q2, a])
                m[src, dst] += 1.0 / na
    diff = np.zeros(n1 * n2)
    for q1 in range(n1):
        for q2 in range(n2):
            if (q1 in d1.finals) != (q2 in d2.finals):
                diff[q1 * n2 + q2] = 1.0
    vec = np.zeros(n1 * n2)
    vec[d1.initial * n2 + d2.initial] = 1.0
    total = 0.0
    weight = mu
    while weight > tail * mu:
        total += weight * float(vec @ diff)
        vec = vec @ m
        weight *= 1.0 - mu
    return total


def random_small_dfa(rng: np.random.Generator, max_states: int = 6) -> Dfa:
    """Small random DFA (arbitrary finals, unlike the experiment generator)."""
    n_q = int(rng.integers(1, max_states + 1))
    n_a = int(rng.integers(2, 4))
    trans = rng.integers(0, n_q, size=(n_q, n_a))
    finals = [q for q in range(n_q) if rng.random() < 0.5]
    initial = int(rng.integers(0, n_q))
    return Dfa(n_q, Alphabet(n_a), initial, finals, trans)
