"""Graph structure of a DFA: bottom SCCs and the equal-length-
distinguishing check.

A DFA is equal-length-distinguishing (ELD) when a final and a non-final
state, each lying inside some bottom SCC, are reachable from the initial
state by two words of equal length.  The check runs a BFS over the pair
graph on Q x Q whose edges allow any pair of letters, which reaches
exactly the pairs of states joined by equal-length word pairs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .dfa import Dfa
from .words import Word


@dataclass(frozen=True)
class SccDecomposition:
    component_of: tuple            # state -> component id
    components: tuple              # component id -> tuple of states
    bottom: tuple                  # component id -> no edge leaves it

    def bottom_states(self) -> set:
        return {q for q, c in enumerate(self.component_of) if self.bottom[c]}


@dataclass(frozen=True)
class EldWitness:
    q1: int          # final state in a bottom SCC
    q2: int          # non-final state in a bottom SCC
    w: Word          # reaches q1 from the initial state
    w_prime: Word    # reaches q2, same length as w


def scc_decompose(dfa: Dfa) -> SccDecomposition:
    """Strongly connected components of the transition graph, with a
    bottom flag per component (no transition leaves the component)."""
    n = dfa.num_states
    na = dfa.alphabet.size
    rows = np.repeat(np.arange(n), na)
    cols = dfa.transitions.ravel()
    graph = csr_matrix((np.ones(n * na, dtype=np.int8), (rows, cols)), shape=(n, n))
    n_comp, labels = connected_components(graph, directed=True, connection="strong")
    comps: List[List[int]] = [[] for _ in range(n_comp)]
    for q, c in enumerate(labels):
        comps[int(c)].append(q)
    bottom = [True] * n_comp
    for q in range(n):
        cq = int(labels[q])
        for t in dfa.transitions[q]:
            if int(labels[t]) != cq:
                bottom[cq] = False
                break
    return SccDecomposition(tuple(int(c) for c in labels),
                            tuple(tuple(c) for c in comps),
                            tuple(bottom))


def _pair_bfs(dfa: Dfa):
    """BFS over the pair graph from (q0, q0).

    Returns (parents, order): parents maps each reached pair to
    (previous pair, letter towards first component, letter towards second),
    and order lists pairs in BFS discovery order (shortest first, ties by
    smallest letter indices).
    """
    na = dfa.alphabet.size
    t = dfa._flat_list
    start = (dfa.initial, dfa.initial)
    parents = {start: None}
    order = [start]
    queue = deque([start])
    while queue:
        q1, q2 = queue.popleft()
        base1 = q1 * na
        base2 = q2 * na
        for a1 in range(na):
            t1 = t[base1 + a1]
            for a2 in range(na):
                nxt = (t1, t[base2 + a2])
                if nxt not in parents:
                    parents[nxt] = ((q1, q2), a1, a2)
                    order.append(nxt)
                    queue.append(nxt)
    return parents, order


def _recover_words(parents, pair) -> tuple:
    w1, w2 = [], []
    node = pair
    while parents[node] is not None:
        node, a1, a2 = parents[node]
        w1.append(a1)
        w2.append(a2)
    return tuple(reversed(w1)), tuple(reversed(w2))


def is_equal_length_distinguishing(dfa: Dfa, method: str = "definition"
                                   ) -> Optional[EldWitness]:
    """ELD check; returns a witness or None.

    method="definition": the final and non-final states must each lie in a
    bottom SCC of the DFA itself (the normative statement).
    method="product-bscc": the reachable pair must lie in a bottom SCC of
    the pair graph (the prose procedure); exposed for comparison.
    """
    if method not in ("definition", "product-bscc"):
        raise ValueError(f"unknown method {method!r}")
    parents, order = _pair_bfs(dfa)
    finals = dfa.finals
    if method == "definition":
        good = scc_decompose(dfa).bottom_states()

        def eligible(pair):
            q1, q2 = pair
            return (q1 in finals and q2 not in finals
                    and q1 in good and q2 in good)
    else:
        pair_bottom = _product_bottom_pairs(dfa, parents)

        def eligible(pair):
            q1, q2 = pair
            return (q1 in finals and q2 not in finals and pair in pair_bottom)

    for pair in order:
        if eligible(pair):
            w, w_prime = _recover_words(parents, pair)
            return EldWitness(pair[0], pair[1], w, w_prime)
    return None


def _product_bottom_pairs(dfa: Dfa, parents) -> set:
    """Pairs (reachable from (q0, q0)) lying in a bottom SCC of the pair
    graph restricted to reachable pairs."""
    pairs = list(parents)
    index = {p: i for i, p in enumerate(pairs)}
    na = dfa.alphabet.size
    t = dfa._flat_list
    rows, cols = [], []
    for p, i in index.items():
        q1, q2 = p
        seen = set()
        for a1 in range(na):
            t1 = t[q1 * na + a1]
            for a2 in range(na):
                nxt = (t1, t[q2 * na + a2])
                j = index[nxt]
                if j not in seen:
                    seen.add(j)
                    rows.append(i)
                    cols.append(j)
    m = len(pairs)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                       shape=(m, m))
    n_comp, labels = connected_components(graph, directed=True, connection="strong")
    bottom = [True] * n_comp
    for i, j in zip(rows, cols):
        if labels[i] != labels[j]:
            bottom[int(labels[i])] = False
    return {p for p, i in index.items() if bottom[int(labels[i])]}


def eld_bruteforce(dfa: Dfa, max_len: int) -> Optional[EldWitness]:
    """Independent oracle for the ELD predicate.

    Walks the per-length sets of states reachable from the initial state
    (every word of length n lands in exactly these states), keeping one
    representative word per (length, state).  For max_len >= 2 *
    num_states^2 absence is conclusive, since the set of equal-length
    reachable pairs saturates.  Bottom-SCC membership is recomputed from
    plain reachability closures, independently of scc_decompose.
    """
    finals = dfa.finals
    good = _bottom_states_by_reachability(dfa)
    na = dfa.alphabet.size
    t = dfa._flat_list
    level = {dfa.initial: ()}
    for _ in range(max_len + 1):
        wit = _level_witness(level, finals, good)
        if wit is not None:
            return wit
        nxt = {}
        for q, w in level.items():
            base = q * na
            for a in range(na):
                q2 = t[base + a]
                if q2 not in nxt:
                    nxt[q2] = w + (a,)
        level = nxt
    return None


def _level_witness(level, finals, good):
    hits_f = [q for q in level if q in finals and q in good]
    hits_n = [q for q in level if q not in finals and q in good]
    if hits_f and hits_n:
        q1, q2 = hits_f[0], hits_n[0]
        return EldWitness(q1, q2, level[q1], level[q2])
    return None


def _bottom_states_by_reachability(dfa: Dfa) -> set:
    n = dfa.num_states
    na = dfa.alphabet.size
    t = dfa._flat_list
    reach = []
    for s in range(n):
        seen = {s}
        stack = [s]
        while stack:
            q = stack.pop()
            for a in range(na):
                q2 = t[q * na + a]
                if q2 not in seen:
                    seen.add(q2)
                    stack.append(q2)
        reach.append(seen)
    return {s for s in range(n) if all(s in reach[u] for u in reach[s])}
