"""Angluin-style active learning with a discrimination tree and a sampled
(PAC) equivalence query.

Each refinement round splits exactly one leaf, so the hypothesis after r
rounds has r + 1 states.  Counterexamples are decomposed by binary search
over the breakpoint index.  Membership answers are memoized learner-side;
the target oracles are stable, so caching is sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .dfa import Dfa, dfa_equivalent
from .distribution import MuDistribution, iter_sample_chunks
from .hashing import derive_key
from .oracles import LanguageOracle
from .words import Word, word_from_row

SNAPSHOT_EVERY = 20


@dataclass(frozen=True)
class LearnerConfig:
    epsilon: float
    delta: float
    maxround: int
    mu_distribution: MuDistribution
    rng_key: int

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if not (0.0 < self.delta < 1.0):
            raise ValueError(f"delta must be in (0, 1), got {self.delta}")
        if self.maxround < 0:
            raise ValueError("maxround must be >= 0")


@dataclass
class LearnResult:
    hypothesis: Dfa
    rounds_used: int
    terminated_by: str  # "equivalence-pass" | "maxround"
    membership_query_count: int
    equivalence_sample_count: int
    trajectory: Optional[List[Tuple[int, Dfa]]] = None


class NotACounterexampleError(ValueError):
    """The word handed to update() is not misclassified by the hypothesis."""


def pac_sample_size(epsilon: float, delta: float, r: int) -> int:
    """Number of sampled membership comparisons replacing the r-th
    equivalence query: ceil((ln(1/delta) + (r+1) ln 2) / epsilon)."""
    if r < 0:
        raise ValueError("round index must be >= 0")
    return math.ceil((math.log(1.0 / delta) + (r + 1) * math.log(2.0)) / epsilon)


class _Node:
    __slots__ = ("access", "distinguisher", "children", "parent", "side", "index")

    def __init__(self):
        self.access = None          # leaf: access word
        self.distinguisher = None   # internal: distinguishing word
        self.children = None        # internal: {False: _Node, True: _Node}
        self.parent = None
        self.side = None
        self.index = None           # leaf: hypothesis state index


class LStarLearner:
    """Discrimination-tree learner over a stable membership oracle.

    Leaves carry access words (one per hypothesis state); internal nodes
    carry distinguishing words.  For two distinct leaves, the
    distinguisher at their lowest common ancestor separates their access
    words under the target.
    """

    def __init__(self, target: LanguageOracle) -> None:
        self.target = target
        self._memo = {}
        self.membership_query_count = 0
        root = _Node()
        root.access = ()
        root.index = 0
        self.root = root
        self.leaves = [root]
        self.last_hypothesis: Optional[Dfa] = None
        self.member(())  # classify the empty word up front

    # -- membership with memoization ----------------------------------

    def member(self, w: Word) -> bool:
        memo = self._memo
        v = memo.get(w)
        if v is None:
            v = bool(self.target.membership(w))
            memo[w] = v
            self.membership_query_count += 1
        return v

    # -- tree operations ----------------------------------------------

    def sift(self, w: Word) -> _Node:
        node = self.root
        while node.children is not None:
            node = node.children[self.member(w + node.distinguisher)]
        return node

    def synthesize(self) -> Dfa:
        """Build the hypothesis DFA: one state per leaf, transitions found
        by sifting access(leaf) + letter, finals by target membership of
        the access word."""
        leaves = self.leaves
        n = len(leaves)
        na = self.target.alphabet.size
        trans = np.empty((n, na), dtype=np.int64)
        for leaf in leaves:
            acc = leaf.access
            row = leaf.index
            for a in range(na):
                trans[row, a] = self.sift(acc + (a,)).index
        finals = [leaf.index for leaf in leaves if self.member(leaf.access)]
        initial = self.sift(()).index
        hyp = Dfa(n, self.target.alphabet, initial, finals, trans)
        self.last_hypothesis = hyp
        return hyp

    def update(self, counterexample: Word) -> None:
        """Split one leaf using binary-search decomposition of a
        counterexample against the last synthesized hypothesis."""
        w = tuple(counterexample)
        hyp = self.last_hypothesis
        if hyp is None:
            hyp = self.synthesize()
        states = hyp.path_states(w)
        leaves = self.leaves

        def gamma(i: int) -> bool:
            return self.member(leaves[states[i]].access + w[i:])

        n = len(w)
        g0 = gamma(0)
        if g0 == gamma(n):
            raise NotACounterexampleError(
                f"word {w!r} is classified identically by hypothesis and target"
            )
        lo, hi = 0, n
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if gamma(mid) == g0:
                lo = mid
            else:
                hi = mid
        i = lo
        a, suffix = w[i], w[i + 1:]
        old_leaf = leaves[states[i + 1]]
        new_access = leaves[states[i]].access + (a,)
        old_val = self.member(old_leaf.access + suffix)
        new_val = self.member(new_access + suffix)
        assert old_val != new_val, "breakpoint suffix fails to distinguish"

        inner = _Node()
        inner.distinguisher = suffix
        inner.parent = old_leaf.parent
        inner.side = old_leaf.side
        if inner.parent is None:
            self.root = inner
        else:
            inner.parent.children[inner.side] = inner

        new_leaf = _Node()
        new_leaf.access = new_access
        new_leaf.index = len(leaves)
        leaves.append(new_leaf)

        inner.children = {old_val: old_leaf, new_val: new_leaf}
        for side, child in inner.children.items():
            child.parent = inner
            child.side = side
        self.last_hypothesis = None


class PacEquivalence:
    """Sampled equivalence query: compare hypothesis and target on
    pac_sample_size(epsilon, delta, r) random words; return the first
    disagreement in draw order."""

    def __init__(self, target: LanguageOracle, cfg: LearnerConfig) -> None:
        self.target = target
        self.cfg = cfg

    def __call__(self, hypothesis: Dfa, r: int) -> Tuple[Optional[Word], int]:
        cfg = self.cfg
        q = pac_sample_size(cfg.epsilon, cfg.delta, r)
        subkey = derive_key(cfg.rng_key, "pac-equivalence", r)
        first = None
        for letters, lengths in iter_sample_chunks(cfg.mu_distribution, subkey, q):
            hyp_ans = hypothesis.accepts_batch(letters, lengths)
            tgt_ans = self.target.membership_batch(letters, lengths)
            if first is None:
                diff = hyp_ans != tgt_ans
                if diff.any():
                    i = int(np.argmax(diff))
                    first = word_from_row(letters[i], int(lengths[i]))
        return first, q


class ExactEquivalence:
    """Exact equivalence backend against a known DFA (test mode only; the
    production path is always the sampled query)."""

    def __init__(self, target_dfa: Dfa) -> None:
        self.target_dfa = target_dfa

    def __call__(self, hypothesis: Dfa, r: int) -> Tuple[Optional[Word], int]:
        return dfa_equivalent(hypothesis, self.target_dfa), 0


def learn(target: LanguageOracle, cfg: LearnerConfig,
          equivalence: Optional[Callable[[Dfa, int], Tuple[Optional[Word], int]]] = None,
          record_trajectory: bool = False) -> LearnResult:
    """Run the refinement loop: synthesize, ask (approximate) equivalence,
    split on the counterexample, up to cfg.maxround rounds.

    With trajectory recording on, the hypothesis is snapshot every 20
    completed rounds.
    """
    if equivalence is None:
        equivalence = PacEquivalence(target, cfg)
    learner = LStarLearner(target)
    trajectory: List[Tuple[int, Dfa]] = []
    eq_samples = 0
    r = 0
    while r < cfg.maxround:
        hyp = learner.synthesize()
        if record_trajectory and r > 0 and r % SNAPSHOT_EVERY == 0:
            trajectory.append((r, hyp))
        cex, nsamples = equivalence(hyp, r)
        eq_samples += nsamples
        learner.membership_query_count += nsamples
        if cex is None:
            return LearnResult(hyp, r, "equivalence-pass",
                               learner.membership_query_count, eq_samples,
                               trajectory if record_trajectory else None)
        learner.update(cex)
        r += 1
    hyp = learner.synthesize()
    if record_trajectory and r > 0 and r % SNAPSHOT_EVERY == 0:
        trajectory.append((r, hyp))
    return LearnResult(hyp, r, "maxround",
                       learner.membership_query_count, eq_samples,
                       trajectory if record_trajectory else None)
