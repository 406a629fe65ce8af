"""Statistical language distance: sample sizes, calibration, convergence.

Shows how the Chernoff-Hoeffding sample size scales with the tolerance
pair (alpha, gamma), then checks the estimator against an exactly
computable case: the parity language vs the all-words language disagree
exactly on the even-length words, whose mass under the geometric-length
distribution is mu / (1 - (1-mu)^2).

Run:  python demos/demo_distance_estimation.py
"""

from noisylstar import (Alphabet, DfaOracle, MuDistribution,
                        estimate_distance, required_sample_size)
from noisylstar.fixtures import all_words_dfa, parity_dfa
from noisylstar.hashing import derive_key


def main():
    print("sample sizes ceil(ln(2/gamma) / (2 alpha^2)):")
    for alpha, gamma in ((5e-2, 5e-2), (5e-3, 1e-2), (1e-3, 1e-2), (5e-4, 1e-3)):
        n = required_sample_size(alpha, gamma)
        print(f"  alpha={alpha:<7} gamma={gamma:<7} -> {n:>12,} words")

    mu = 0.2
    exact = mu / (1.0 - (1.0 - mu) ** 2)
    print(f"\nparity vs all-words at mu={mu}: exact distance {exact:.6f}")
    dist = MuDistribution(mu, Alphabet(2))
    o1, o2 = DfaOracle(parity_dfa()), DfaOracle(all_words_dfa())
    print(f"{'alpha':>8} {'gamma':>7} {'estimate':>9} {'error':>9}")
    for alpha, gamma in ((5e-2, 5e-2), (1e-2, 1e-2), (2e-3, 1e-2)):
        est = estimate_distance(o1, o2, dist, alpha, gamma,
                                derive_key(7, "demo-distance", int(1 / alpha)))
        print(f"{alpha:>8} {gamma:>7} {est.value:>9.6f} "
              f"{abs(est.value - exact):>9.6f}")
    print("\nerrors shrink with alpha, as the confidence bound promises")


if __name__ == "__main__":
    main()
