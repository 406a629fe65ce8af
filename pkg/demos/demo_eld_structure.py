"""Equal-length distinguishability and why it matters under input noise.

A DFA is equal-length-distinguishing (ELD) when some final and non-final
state, each inside a bottom strongly-connected component, are reachable
by two words of the same length.  Input noise preserves word length, so
on a non-ELD automaton a perturbed word can never cross between the
long-run accept/reject behaviours -- the noise is largely invisible and
there is little for the learner to clean up.

Prints the verdict and witness for the hand-built fixtures, then a small
census over random 3-letter automata.

Run:  python demos/demo_eld_structure.py
"""

from noisylstar import is_equal_length_distinguishing, random_dfa, scc_decompose
from noisylstar.fixtures import parity_dfa, suffix_a_dfa, until_dfa
from noisylstar.hashing import derive_key


def describe(name, dfa):
    scc = scc_decompose(dfa)
    wit = is_equal_length_distinguishing(dfa)
    print(f"{name}: {dfa.num_states} states, "
          f"{sum(scc.bottom)} bottom SCC(s) -> "
          f"{'ELD' if wit else 'not ELD'}")
    if wit:
        print(f"  witness: words {wit.w} and {wit.w_prime} (length "
              f"{len(wit.w)}) reach final {wit.q1} and non-final {wit.q2}")


def main():
    describe("'a until b'", until_dfa())
    describe("suffix-a with trap", suffix_a_dfa())
    describe("parity", parity_dfa())

    n = 200
    eld = 0
    for i in range(n):
        dfa = random_dfa(derive_key(11, "demo-eld", i), max_alphabet=3)
        if is_equal_length_distinguishing(dfa) is not None:
            eld += 1
    print(f"\nrandom 3-letter automata: {eld}/{n} are ELD")


if __name__ == "__main__":
    main()
