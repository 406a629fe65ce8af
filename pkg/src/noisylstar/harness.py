"""Experiment pipeline: random DFA -> noisy device -> learner -> the three
distances, plus the aggregations behind the robustness tables.

Every random decision is derived from (master_seed, dfa_id, role), so a
whole experiment is reproducible byte-for-byte, including with experiments
run out of order.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import time
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from .dfa import Dfa, random_dfa
from .distribution import MuDistribution, estimate_distance
from .hashing import derive_key
from .learner import LearnerConfig, learn
from .oracles import (CounterDfaOracle, DfaOracle, LanguageOracle,
                      NoisyInputOracle, NoisyOutputOracle, RandomLanguageKey,
                      random_counter_function)
from .structure import is_equal_length_distinguishing

NOISE_KINDS = ("noisy-output", "noisy-input", "counter")

GAIN_LOW_MEDIUM = 0.9
GAIN_MEDIUM_HIGH = 1.5

# d(A, M_N) buckets used for the noisy-input and counter tables.
INPUT_NOISE_RANGES = (
    (0.025, 1.0),
    (0.005, 0.025),
    (0.002, 0.005),
    (0.001, 0.002),
    (0.0005, 0.001),
)
COUNTER_RANGES = INPUT_NOISE_RANGES + ((0.0001, 0.0005),)

RECORDS_HEADER = ("dfa_id,noise_kind,p,d_A_MN,d_A_AE,d_MN_AE,gain,gain_class,"
                  "rounds,terminated_by,eld,wall_ms")


@dataclass(frozen=True)
class ExperimentConfig:
    noise_kind: str = "noisy-output"
    p_values: Tuple[float, ...] = (0.01, 0.005, 0.0025, 0.0015, 0.001)
    num_dfas: int = 50
    mu: float = 1e-2
    alpha: float = 5e-4
    gamma: float = 1e-3
    epsilon: float = 0.005
    delta: float = 0.005
    maxround: int = 250
    master_seed: int = 0
    trajectory: bool = False
    eld_partition: bool = False
    max_states: int = 50
    max_alphabet: int = 20

    def __post_init__(self):
        if self.noise_kind not in NOISE_KINDS:
            raise ValueError(f"noise_kind must be one of {NOISE_KINDS}")
        if self.num_dfas < 1:
            raise ValueError("num_dfas must be >= 1")
        for p in self.p_values:
            if not (0.0 <= p < 1.0):
                raise ValueError(f"noise probability out of range: {p}")


def paper_profile(**overrides) -> ExperimentConfig:
    """Full-scale settings; each distance estimate needs ~15.2M words, so a
    whole table is a multi-hour batch."""
    return ExperimentConfig(**overrides)


def desk_profile(**overrides) -> ExperimentConfig:
    """Reduced settings for interactive runs: ~1e5 words per distance."""
    base = dict(alpha=5e-3, gamma=1e-2, num_dfas=5, maxround=100)
    base.update(overrides)
    return ExperimentConfig(**base)


@dataclass
class ExperimentRecord:
    dfa_id: int
    noise_kind: str
    p: Optional[float]          # None for the counter device
    d_A_MN: float
    d_A_AE: float
    d_MN_AE: float
    gain: float
    gain_class: str
    rounds_used: int
    terminated_by: str
    eld: Optional[bool]
    wall_ms: int


@dataclass
class BucketSummary:
    lo: float
    hi: float
    count: int
    mean_d_A_MN: float
    mean_d_A_AE: float
    mean_d_MN_AE: float
    mean_gain: float
    std_d_A_AE: float


def information_gain(d_A_MN: float, d_A_AE: float) -> float:
    """Ratio of the noise distance to the learned distance; > 1 means the
    learner moved closer to the original automaton than the noisy device.
    """
    if d_A_AE == 0.0:
        # statistical estimates never hit exact zero at paper scale, but
        # small desk-scale samples can
        return 1.0 if d_A_MN == 0.0 else math.inf
    return d_A_MN / d_A_AE


def classify_gain(g: float) -> str:
    if g < 0.0 or math.isnan(g):
        raise ValueError(f"information gain must be >= 0, got {g}")
    if g < GAIN_LOW_MEDIUM:
        return "low"
    if g < GAIN_MEDIUM_HIGH:
        return "medium"
    return "high"


def aggregate_gain(records: Sequence["ExperimentRecord"]) -> float:
    """Gain of a group of records: mean d(A,M_N) divided by mean d(A,A_E).

    Aggregating as a ratio of means (rather than a mean of per-record
    ratios) keeps the group gain finite when individual records estimate a
    zero denominator.
    """
    n = len(records)
    if n == 0:
        return 1.0
    return information_gain(sum(r.d_A_MN for r in records) / n,
                            sum(r.d_A_AE for r in records) / n)


def _role_key(cfg: ExperimentConfig, dfa_id: int, role: str, p_index: int = 0) -> int:
    return derive_key(cfg.master_seed, role, dfa_id, p_index)


def build_noisy_oracle(cfg: ExperimentConfig, dfa: Dfa, dfa_id: int,
                       p_index: int, p: Optional[float]) -> LanguageOracle:
    key = RandomLanguageKey(_role_key(cfg, dfa_id, "noise", p_index),
                            cfg.noise_kind)
    if cfg.noise_kind == "noisy-output":
        return NoisyOutputOracle(dfa, p, key)
    if cfg.noise_kind == "noisy-input":
        return NoisyInputOracle(dfa, p, key)
    counter = random_counter_function(key.derive(), dfa.alphabet)
    return CounterDfaOracle(dfa, counter)


def run_single(cfg: ExperimentConfig, dfa: Dfa, dfa_id: int, p_index: int,
               p: Optional[float], eld: Optional[bool],
               clock=time.perf_counter) -> ExperimentRecord:
    t0 = clock()
    oracle_a = DfaOracle(dfa)
    noisy = build_noisy_oracle(cfg, dfa, dfa_id, p_index, p)
    dist = MuDistribution(cfg.mu, dfa.alphabet)
    lcfg = LearnerConfig(cfg.epsilon, cfg.delta, cfg.maxround, dist,
                         _role_key(cfg, dfa_id, "learner-sampling", p_index))
    result = learn(noisy, lcfg)
    hyp_oracle = DfaOracle(result.hypothesis)
    d_a_mn = estimate_distance(oracle_a, noisy, dist, cfg.alpha, cfg.gamma,
                               _role_key(cfg, dfa_id, "distance-A-MN", p_index))
    d_a_ae = estimate_distance(oracle_a, hyp_oracle, dist, cfg.alpha, cfg.gamma,
                               _role_key(cfg, dfa_id, "distance-A-AE", p_index))
    d_mn_ae = estimate_distance(noisy, hyp_oracle, dist, cfg.alpha, cfg.gamma,
                                _role_key(cfg, dfa_id, "distance-MN-AE", p_index))
    gain = information_gain(d_a_mn.value, d_a_ae.value)
    return ExperimentRecord(
        dfa_id=dfa_id,
        noise_kind=cfg.noise_kind,
        p=p,
        d_A_MN=d_a_mn.value,
        d_A_AE=d_a_ae.value,
        d_MN_AE=d_mn_ae.value,
        gain=gain,
        gain_class=classify_gain(gain),
        rounds_used=result.rounds_used,
        terminated_by=result.terminated_by,
        eld=eld,
        wall_ms=int((clock() - t0) * 1000),
    )


def run_experiment(cfg: ExperimentConfig,
                   clock=time.perf_counter) -> List[ExperimentRecord]:
    """Full pipeline over cfg.num_dfas random automata.

    The same noisy oracle instance (same key) serves both learning and the
    final distance measurements, so all three distances refer to the one
    realized random language the learner saw.
    """
    records = []
    for dfa_id in range(cfg.num_dfas):
        dfa = random_dfa(_role_key(cfg, dfa_id, "dfa-gen"),
                         cfg.max_states, cfg.max_alphabet)
        eld = None
        if cfg.eld_partition:
            eld = is_equal_length_distinguishing(dfa) is not None
        if cfg.noise_kind == "counter":
            settings: Sequence[Tuple[int, Optional[float]]] = [(0, None)]
        else:
            settings = list(enumerate(cfg.p_values))
        for p_index, p in settings:
            records.append(run_single(cfg, dfa, dfa_id, p_index, p, eld, clock))
    return records


def trajectory_run(cfg: ExperimentConfig, dfa: Dfa, oracle: LanguageOracle,
                   rng_key: Optional[int] = None) -> List[Tuple[int, float]]:
    """Distance from the original DFA to the hypothesis every 20 rounds."""
    dist = MuDistribution(cfg.mu, dfa.alphabet)
    if rng_key is None:
        rng_key = derive_key(cfg.master_seed, "trajectory-learner")
    lcfg = LearnerConfig(cfg.epsilon, cfg.delta, cfg.maxround, dist, rng_key)
    result = learn(oracle, lcfg, record_trajectory=True)
    oracle_a = DfaOracle(dfa)
    points = []
    for r, hyp in result.trajectory or []:
        est = estimate_distance(oracle_a, DfaOracle(hyp), dist, cfg.alpha,
                                cfg.gamma, derive_key(rng_key, "trajectory", r))
        points.append((r, est.value))
    return points


# -- aggregation ------------------------------------------------------


def bucket_records(records: Sequence[ExperimentRecord],
                   ranges: Sequence[Tuple[float, float]]) -> List[BucketSummary]:
    """Group records by d(A, M_N) into half-open intervals [lo, hi)."""
    ordered = sorted(ranges)
    for (lo1, hi1), (lo2, _) in zip(ordered, ordered[1:]):
        if hi1 > lo2:
            raise ValueError(f"overlapping ranges [{lo1},{hi1}) and [{lo2},...)")
    out = []
    for lo, hi in ranges:
        hits = [r for r in records if lo <= r.d_A_MN < hi]
        if not hits:
            out.append(BucketSummary(lo, hi, 0, 0.0, 0.0, 0.0, 0.0, 0.0))
            continue
        n = len(hits)
        mean_mn = sum(r.d_A_MN for r in hits) / n
        mean_ae = sum(r.d_A_AE for r in hits) / n
        var_ae = sum((r.d_A_AE - mean_ae) ** 2 for r in hits) / n
        out.append(BucketSummary(
            lo, hi, n,
            mean_mn,
            mean_ae,
            sum(r.d_MN_AE for r in hits) / n,
            information_gain(mean_mn, mean_ae),
            math.sqrt(var_ae),
        ))
    return out


def trimmed_mean_gain(gains: Sequence[float]) -> float:
    """Mean gain after dropping the single best and worst value (kept as is
    when fewer than three values)."""
    values = sorted(gains)
    if len(values) >= 3:
        values = values[1:-1]
    return sum(values) / len(values)


def mu_sweep(cfg: ExperimentConfig,
             mus: Sequence[float] = (0.001, 0.005, 0.01, 0.05, 0.1),
             ps: Sequence[float] = (0.01, 0.005, 0.0025, 0.0015, 0.001),
             clock=time.perf_counter):
    """Gain grid over (p, mu) cells, each cell averaging cfg.num_dfas
    experiments with the best and worst gain eliminated."""
    rows = []
    for pi, p in enumerate(ps):
        row = []
        for mi, mu in enumerate(mus):
            cell_cfg = replace(cfg, mu=mu, p_values=(p,),
                               master_seed=derive_key(cfg.master_seed,
                                                      "mu-sweep", pi, mi))
            records = run_experiment(cell_cfg, clock)
            row.append(trimmed_mean_gain([r.gain for r in records]))
        rows.append(row)
    return rows


def eps_delta_sweep(cfg: ExperimentConfig,
                    eps_values: Sequence[float] = (0.05, 0.01, 0.005, 0.001, 0.0005),
                    ps: Sequence[float] = (0.01, 0.005, 0.0025, 0.0015, 0.001),
                    clock=time.perf_counter):
    """Mean gain per (p, epsilon=delta) cell."""
    rows = []
    for pi, p in enumerate(ps):
        row = []
        for ei, eps in enumerate(eps_values):
            cell_cfg = replace(cfg, epsilon=eps, delta=eps, p_values=(p,),
                               master_seed=derive_key(cfg.master_seed,
                                                      "epsdelta-sweep", pi, ei))
            records = run_experiment(cell_cfg, clock)
            row.append(sum(r.gain for r in records) / len(records))
        rows.append(row)
    return rows


def eld_sweep(cfg: ExperimentConfig, clock=time.perf_counter):
    """Noisy-input experiments over 3-letter DFAs, partitioned by the ELD
    flag.  Returns (eld buckets, non-eld buckets, all records)."""
    if cfg.noise_kind != "noisy-input":
        raise ValueError("eld_sweep requires noise_kind='noisy-input'")
    sweep_cfg = replace(cfg, max_alphabet=3, eld_partition=True)
    records = run_experiment(sweep_cfg, clock)
    eld_recs = [r for r in records if r.eld]
    non_recs = [r for r in records if not r.eld]
    return (bucket_records(eld_recs, INPUT_NOISE_RANGES),
            bucket_records(non_recs, INPUT_NOISE_RANGES),
            records)


def by_p_summary(records: Sequence[ExperimentRecord]):
    """Per-p aggregation (the layout used for noisy-output tables):
    rows of (p, mean d_A_AE, mean d_MN_AE, mean gain, std d_A_AE)."""
    rows = []
    for p in sorted({r.p for r in records}, reverse=True):
        hits = [r for r in records if r.p == p]
        n = len(hits)
        mean_ae = sum(r.d_A_AE for r in hits) / n
        var_ae = sum((r.d_A_AE - mean_ae) ** 2 for r in hits) / n
        rows.append((p, mean_ae,
                     sum(r.d_MN_AE for r in hits) / n,
                     aggregate_gain(hits),
                     math.sqrt(var_ae)))
    return rows


# -- serialization ----------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        return repr(x)
    return str(x)


def records_to_csv(records: Sequence[ExperimentRecord]) -> str:
    buf = io.StringIO()
    buf.write(RECORDS_HEADER + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    for r in records:
        writer.writerow([
            r.dfa_id, r.noise_kind, _fmt(r.p), _fmt(r.d_A_MN), _fmt(r.d_A_AE),
            _fmt(r.d_MN_AE), _fmt(r.gain), r.gain_class, r.rounds_used,
            r.terminated_by, _fmt(r.eld), r.wall_ms,
        ])
    return buf.getvalue()


def summaries_to_csv(buckets: Sequence[BucketSummary]) -> str:
    buf = io.StringIO()
    buf.write("range_lo,range_hi,count,mean_d_A_MN,mean_d_A_AE,mean_d_MN_AE,"
              "mean_gain,std_d_A_AE\n")
    writer = csv.writer(buf, lineterminator="\n")
    for b in buckets:
        writer.writerow([_fmt(b.lo), _fmt(b.hi), b.count, _fmt(b.mean_d_A_MN),
                         _fmt(b.mean_d_A_AE), _fmt(b.mean_d_MN_AE),
                         _fmt(b.mean_gain), _fmt(b.std_d_A_AE)])
    return buf.getvalue()


def config_to_json(cfg: ExperimentConfig) -> str:
    return json.dumps(dataclasses.asdict(cfg), indent=2, sort_keys=True) + "\n"


def default_ranges(noise_kind: str):
    return COUNTER_RANGES if noise_kind == "counter" else INPUT_NOISE_RANGES
