"""PAC L* learning over noisy regular devices.

Core pieces: complete DFAs with vectorized membership, the geometric-length
word distribution with a Chernoff-Hoeffding distance estimator, three noisy
membership oracles realized as reproducible random languages, a
discrimination-tree L* learner with sampled equivalence queries, the
equal-length-distinguishing structural check, and an experiment harness.
"""

from .dfa import Alphabet, Dfa, dfa_equivalent, random_dfa
from .distribution import (DistanceEstimate, MuDistribution, estimate_distance,
                           required_sample_size, sample_word, sample_words,
                           word_probability)
from .fileformat import FormatError, parse_device, parse_dfa, serialize_dfa
from .harness import (BucketSummary, ExperimentConfig, ExperimentRecord,
                      aggregate_gain, bucket_records, classify_gain,
                      by_p_summary, desk_profile, eld_sweep,
                      eps_delta_sweep, information_gain, mu_sweep,
                      paper_profile, run_experiment, trajectory_run)
from .learner import (ExactEquivalence, LearnResult, LearnerConfig,
                      LStarLearner, NotACounterexampleError, PacEquivalence,
                      learn, pac_sample_size)
from .oracles import (ComplementOracle, CounterDfaOracle, CounterFunction,
                      DfaOracle, LanguageOracle, NoisyInputOracle,
                      NoisyOutputOracle, RandomLanguageKey, counter_value,
                      random_counter_function)
from .structure import (EldWitness, SccDecomposition, eld_bruteforce,
                        is_equal_length_distinguishing, scc_decompose)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
