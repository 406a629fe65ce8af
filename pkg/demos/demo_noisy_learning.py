"""Learn a random DFA through increasing output noise.

Walks one automaton through several flip probabilities and prints, for
each, how many refinement rounds the learner used and how far the final
hypothesis is from (a) the clean automaton and (b) the noisy device it
actually queried.  At low noise the hypothesis ends up much closer to the
clean language than the device is -- the learner filters the noise out.

Run:  python demos/demo_noisy_learning.py [--seed N]
"""

import argparse

from noisylstar import (DfaOracle, LearnerConfig, MuDistribution,
                        NoisyOutputOracle, RandomLanguageKey,
                        estimate_distance, learn, random_dfa)
from noisylstar.hashing import derive_key


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--mu", type=float, default=0.02)
    args = parser.parse_args()

    dfa = random_dfa(derive_key(args.seed, "demo-dfa"), max_states=20,
                     max_alphabet=5)
    print(f"target: {dfa.num_states} states, {dfa.alphabet.size} letters")
    dist = MuDistribution(args.mu, dfa.alphabet)
    clean = DfaOracle(dfa)

    print(f"{'p':>8} {'rounds':>7} {'exit':>17} {'d(A,M_N)':>9} "
          f"{'d(A,A_E)':>9} {'gain':>7}")
    for i, p in enumerate((0.02, 0.01, 0.005, 0.001, 0.0)):
        noisy = NoisyOutputOracle(
            dfa, p, RandomLanguageKey(derive_key(args.seed, "demo-noise", i)))
        cfg = LearnerConfig(epsilon=0.02, delta=0.02, maxround=100,
                            mu_distribution=dist,
                            rng_key=derive_key(args.seed, "demo-learn", i))
        result = learn(noisy, cfg)
        hyp = DfaOracle(result.hypothesis)
        d_mn = estimate_distance(clean, noisy, dist, 5e-3, 1e-2,
                                 derive_key(args.seed, "demo-d1", i)).value
        d_ae = estimate_distance(clean, hyp, dist, 5e-3, 1e-2,
                                 derive_key(args.seed, "demo-d2", i)).value
        gain = d_mn / d_ae if d_ae else float("inf")
        print(f"{p:>8} {result.rounds_used:>7} {result.terminated_by:>17} "
              f"{d_mn:>9.5f} {d_ae:>9.5f} {gain:>7.2f}")


if __name__ == "__main__":
    main()
