import dataclasses
import json
import math

import pytest

from noisylstar import (ExperimentConfig, ExperimentRecord, aggregate_gain,
                        bucket_records, by_p_summary, classify_gain,
                        desk_profile, information_gain, paper_profile)
from noisylstar.harness import (COUNTER_RANGES, INPUT_NOISE_RANGES,
                                RECORDS_HEADER, config_to_json, default_ranges,
                                records_to_csv, run_experiment,
                                summaries_to_csv, trimmed_mean_gain)

NULL_CLOCK = lambda: 0.0


def _tiny_config(**overrides):
    base = dict(noise_kind="noisy-output", p_values=(0.05,), num_dfas=2,
                mu=0.2, alpha=0.05, gamma=0.5, epsilon=0.2, delta=0.2,
                maxround=10, master_seed=77, max_states=12, max_alphabet=3)
    base.update(overrides)
    return ExperimentConfig(**base)


def _record(**overrides):
    base = dict(dfa_id=0, noise_kind="noisy-output", p=0.01, d_A_MN=0.01,
                d_A_AE=0.02, d_MN_AE=0.03, gain=0.5, gain_class="low",
                rounds_used=3, terminated_by="equivalence-pass", eld=None,
                wall_ms=1)
    base.update(overrides)
    return ExperimentRecord(**base)


def test_information_gain_cases():
    assert information_gain(0.2, 0.1) == 2.0
    assert information_gain(0.0, 0.0) == 1.0
    assert information_gain(0.1, 0.0) == math.inf
    assert information_gain(0.0, 0.1) == 0.0


def test_classify_gain_boundaries():
    assert classify_gain(0.0) == "low"
    assert classify_gain(0.89) == "low"
    assert classify_gain(0.9) == "medium"
    assert classify_gain(1.49) == "medium"
    assert classify_gain(1.5) == "high"
    assert classify_gain(math.inf) == "high"
    with pytest.raises(ValueError):
        classify_gain(-0.1)
    with pytest.raises(ValueError):
        classify_gain(math.nan)


def test_aggregate_gain_is_ratio_of_means():
    records = [
        _record(d_A_MN=0.02, d_A_AE=0.01),
        _record(d_A_MN=0.04, d_A_AE=0.02),
    ]
    assert aggregate_gain(records) == pytest.approx(2.0)
    # robust to a record whose own gain is infinite
    records.append(_record(d_A_MN=0.01, d_A_AE=0.0, gain=math.inf))
    assert math.isfinite(aggregate_gain(records))
    assert aggregate_gain([]) == 1.0


def test_trimmed_mean_drops_best_and_worst():
    assert trimmed_mean_gain([1.0, 2.0, 3.0]) == 2.0
    assert trimmed_mean_gain([0.5, 1.0, 2.0, math.inf]) == 1.5
    assert trimmed_mean_gain([4.0, 2.0]) == 3.0  # too few to trim


def test_bucket_records_half_open_intervals():
    records = [
        _record(d_A_MN=0.0005), _record(d_A_MN=0.0009),
        _record(d_A_MN=0.001),  # boundary goes to the upper bucket
        _record(d_A_MN=0.5),
    ]
    buckets = bucket_records(records, ((0.0005, 0.001), (0.001, 0.002)))
    assert buckets[0].count == 2
    assert buckets[1].count == 1
    empty = bucket_records([], ((0.0005, 0.001),))[0]
    assert empty.count == 0 and empty.mean_gain == 0.0


def test_bucket_gain_is_ratio_of_bucket_means():
    records = [
        _record(d_A_MN=0.002, d_A_AE=0.001),
        _record(d_A_MN=0.004, d_A_AE=0.005),
    ]
    (b,) = bucket_records(records, ((0.001, 0.01),))
    assert b.mean_gain == pytest.approx(0.003 / 0.003)
    assert b.mean_d_A_MN == pytest.approx(0.003)
    assert b.std_d_A_AE == pytest.approx(0.002)


def test_bucket_records_rejects_overlaps():
    with pytest.raises(ValueError):
        bucket_records([], ((0.0, 0.5), (0.4, 1.0)))


def test_default_ranges():
    assert default_ranges("counter") == COUNTER_RANGES
    assert default_ranges("noisy-input") == INPUT_NOISE_RANGES
    assert len(COUNTER_RANGES) == len(INPUT_NOISE_RANGES) + 1


def test_profiles():
    paper = paper_profile()
    assert (paper.num_dfas, paper.maxround, paper.alpha) == (50, 250, 5e-4)
    assert paper.gamma == 1e-3 and paper.mu == 1e-2
    assert paper.epsilon == paper.delta == 0.005
    desk = desk_profile()
    assert desk.alpha == 5e-3 and desk.gamma == 1e-2
    assert desk.num_dfas == 5 and desk.maxround == 100
    # overrides pass through
    assert desk_profile(noise_kind="counter").noise_kind == "counter"


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(noise_kind="bogus")
    with pytest.raises(ValueError):
        ExperimentConfig(num_dfas=0)
    with pytest.raises(ValueError):
        ExperimentConfig(p_values=(1.5,))


def test_run_experiment_shape_and_classes():
    cfg = _tiny_config()
    records = run_experiment(cfg, clock=NULL_CLOCK)
    assert len(records) == cfg.num_dfas * len(cfg.p_values)
    for r in records:
        assert r.noise_kind == "noisy-output"
        assert r.gain_class == classify_gain(r.gain)
        assert r.gain == information_gain(r.d_A_MN, r.d_A_AE)
        assert 0.0 <= r.d_A_MN <= 1.0
        assert r.wall_ms == 0
        assert r.eld is None
        # triangle inequality up to twice the statistical tolerance
        assert r.d_A_AE <= r.d_A_MN + r.d_MN_AE + 2 * cfg.alpha


def test_counter_experiments_have_one_record_per_dfa():
    cfg = _tiny_config(noise_kind="counter", num_dfas=3)
    records = run_experiment(cfg, clock=NULL_CLOCK)
    assert len(records) == 3
    assert all(r.p is None for r in records)


def test_eld_partition_annotates_records():
    cfg = _tiny_config(noise_kind="noisy-input", eld_partition=True)
    records = run_experiment(cfg, clock=NULL_CLOCK)
    assert all(r.eld in (True, False) for r in records)


def test_records_csv_layout():
    csv_text = records_to_csv([_record(), _record(p=None, eld=True,
                                                  gain=math.inf,
                                                  gain_class="high")])
    lines = csv_text.strip().split("\n")
    assert lines[0] == RECORDS_HEADER
    assert len(lines) == 3
    fields = lines[2].split(",")
    assert fields[2] == ""        # counter records carry no p
    assert fields[6] == "inf"
    assert fields[10] == "true"


def test_summaries_csv_layout():
    (b,) = bucket_records([_record()], ((0.001, 0.1),))
    text = summaries_to_csv([b])
    header, row = text.strip().split("\n")
    assert header.startswith("range_lo,range_hi,count")
    assert row.split(",")[2] == "1"


def test_by_p_summary_orders_by_decreasing_p():
    records = [_record(p=0.001), _record(p=0.01), _record(p=0.01)]
    rows = by_p_summary(records)
    assert [row[0] for row in rows] == [0.01, 0.001]
    assert rows[0][1] == pytest.approx(0.02)


def test_config_json_round_trips():
    cfg = _tiny_config()
    data = json.loads(config_to_json(cfg))
    assert data["alpha"] == cfg.alpha
    assert tuple(data["p_values"]) == cfg.p_values
    assert ExperimentConfig(**{k: tuple(v) if isinstance(v, list) else v
                               for k, v in data.items()}) == cfg
