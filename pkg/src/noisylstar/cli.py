"""Command-line harness.

Subcommands: gen, learn, experiment, eld, sweep-mu, sweep-epsdelta,
eld-sweep.  Outputs are plain text files and CSVs (no plotting).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys
from pathlib import Path

from .dfa import random_dfa
from .distribution import MuDistribution
from .fileformat import parse_device, serialize_dfa
from .harness import (ExperimentConfig, build_noisy_oracle, by_p_summary,
                      bucket_records, config_to_json, default_ranges,
                      desk_profile, eld_sweep, eps_delta_sweep, mu_sweep,
                      paper_profile, records_to_csv, run_experiment,
                      summaries_to_csv, trajectory_run)
from .hashing import derive_key
from .learner import LearnerConfig, learn
from .oracles import CounterDfaOracle, DfaOracle
from .structure import is_equal_length_distinguishing


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--out", type=Path, default=Path("out"),
                        help="output directory")
    parser.add_argument("--profile", choices=["paper", "desk"], default="paper",
                        help="parameter preset (desk shrinks samples for "
                             "interactive runs)")
    parser.add_argument("--noise", choices=["output", "input", "counter"],
                        default="output")
    parser.add_argument("--p", type=float, nargs="+", default=None,
                        help="noise probabilities (ignored for counter noise)")
    parser.add_argument("--num-dfas", type=int, default=None)
    parser.add_argument("--mu", type=float, default=None)
    parser.add_argument("--alpha", type=float, default=None)
    parser.add_argument("--gamma", type=float, default=None)
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--delta", type=float, default=None)
    parser.add_argument("--maxround", type=int, default=None)
    parser.add_argument("--trajectory", action="store_true")


def _config_from_args(args) -> ExperimentConfig:
    profile = desk_profile if args.profile == "desk" else paper_profile
    cfg = profile(master_seed=args.seed,
                  noise_kind={"output": "noisy-output", "input": "noisy-input",
                              "counter": "counter"}[args.noise])
    overrides = {}
    if args.p is not None:
        overrides["p_values"] = tuple(args.p)
    for name in ("num_dfas", "mu", "alpha", "gamma", "epsilon", "delta",
                 "maxround", "trajectory"):
        value = getattr(args, name)
        if value not in (None, False):
            overrides[name] = value
    return dataclasses.replace(cfg, **overrides)


def _ensure_out(args) -> Path:
    args.out.mkdir(parents=True, exist_ok=True)
    return args.out


def cmd_gen(args) -> int:
    out = _ensure_out(args)
    for i in range(args.num_dfas or 10):
        dfa = random_dfa(derive_key(args.seed, "dfa-gen", i, 0))
        (out / f"dfa_{i:03d}.txt").write_text(serialize_dfa(dfa))
    print(f"wrote {args.num_dfas or 10} DFA files to {out}")
    return 0


def cmd_learn(args) -> int:
    cfg = _config_from_args(args)
    text = Path(args.dfa).read_text()
    dfa, counter = parse_device(text)
    if counter is not None:
        oracle = CounterDfaOracle(dfa, counter)
    elif cfg.noise_kind == "counter":
        oracle = build_noisy_oracle(cfg, dfa, 0, 0, None)
    else:
        p = cfg.p_values[0]
        oracle = build_noisy_oracle(cfg, dfa, 0, 0, p)
    dist = MuDistribution(cfg.mu, dfa.alphabet)
    lcfg = LearnerConfig(cfg.epsilon, cfg.delta, cfg.maxround, dist,
                         derive_key(cfg.master_seed, "learner-sampling", 0, 0))
    result = learn(oracle, lcfg)
    out = _ensure_out(args)
    (out / "hypothesis.txt").write_text(serialize_dfa(result.hypothesis))
    print(f"rounds: {result.rounds_used} ({result.terminated_by})")
    print(f"hypothesis states: {result.hypothesis.num_states}")
    print(f"membership queries: {result.membership_query_count}")
    print(f"equivalence samples: {result.equivalence_sample_count}")
    if args.trajectory:
        points = trajectory_run(cfg, dfa, oracle)
        with (out / "trajectory.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["round", "d_A_AE"])
            writer.writerows(points)
    return 0


def cmd_experiment(args) -> int:
    cfg = _config_from_args(args)
    out = _ensure_out(args)
    records = run_experiment(cfg)
    (out / "records.csv").write_text(records_to_csv(records))
    buckets = bucket_records(records, default_ranges(cfg.noise_kind))
    (out / "summary.csv").write_text(summaries_to_csv(buckets))
    (out / "config.json").write_text(config_to_json(cfg))
    if cfg.noise_kind == "noisy-output":
        with (out / "by_p.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["p", "mean_d_A_AE", "mean_d_MN_AE", "mean_gain",
                             "std_d_A_AE"])
            writer.writerows(by_p_summary(records))
    print(f"wrote {len(records)} records to {out / 'records.csv'}")
    return 0


def cmd_eld(args) -> int:
    dfa, _ = parse_device(Path(args.dfa).read_text())
    witness = is_equal_length_distinguishing(dfa, method=args.method)
    if witness is None:
        print("ELD: no")
    else:
        print("ELD: yes")
        print("witness:", " ".join(str(a) for a in witness.w) or "(empty)")
        print("witness':", " ".join(str(a) for a in witness.w_prime) or "(empty)")
        print(f"states: {witness.q1} (final) {witness.q2} (non-final)")
    return 0


def cmd_sweep_mu(args) -> int:
    cfg = _config_from_args(args)
    mus = tuple(args.mus)
    rows = mu_sweep(cfg, mus=mus, ps=cfg.p_values)
    out = _ensure_out(args)
    with (out / "mu_sweep.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p"] + [str(m) for m in mus])
        for p, row in zip(cfg.p_values, rows):
            writer.writerow([p] + row)
    print(f"wrote {out / 'mu_sweep.csv'}")
    return 0


def cmd_sweep_epsdelta(args) -> int:
    cfg = _config_from_args(args)
    eps_values = tuple(args.eps_values)
    rows = eps_delta_sweep(cfg, eps_values=eps_values, ps=cfg.p_values)
    out = _ensure_out(args)
    with (out / "epsdelta_sweep.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["p"] + [str(e) for e in eps_values])
        for p, row in zip(cfg.p_values, rows):
            writer.writerow([p] + row)
    print(f"wrote {out / 'epsdelta_sweep.csv'}")
    return 0


def cmd_eld_sweep(args) -> int:
    args.noise = "input"
    cfg = _config_from_args(args)
    eld_buckets, non_buckets, records = eld_sweep(cfg)
    out = _ensure_out(args)
    (out / "records.csv").write_text(records_to_csv(records))
    (out / "summary_eld.csv").write_text(summaries_to_csv(eld_buckets))
    (out / "summary_non_eld.csv").write_text(summaries_to_csv(non_buckets))
    (out / "config.json").write_text(config_to_json(cfg))
    n_eld = sum(1 for r in records if r.eld)
    print(f"{len(records)} records ({n_eld} on ELD automata); "
          f"summaries in {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisylstar",
        description="PAC L* learning over noisy regular devices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit random DFA files")
    _add_common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("learn", help="single learning run on a DFA file")
    p.add_argument("dfa", help="path to a DFA text file")
    _add_common(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("experiment", help="full pipeline (records + summary)")
    _add_common(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("eld", help="equal-length-distinguishing check")
    p.add_argument("dfa", help="path to a DFA text file")
    p.add_argument("--method", choices=["definition", "product-bscc"],
                   default="definition")
    p.set_defaults(func=cmd_eld)

    p = sub.add_parser("sweep-mu", help="gain grid over word distributions")
    _add_common(p)
    p.add_argument("--mus", type=float, nargs="+",
                   default=[0.001, 0.005, 0.01, 0.05, 0.1])
    p.set_defaults(func=cmd_sweep_mu)

    p = sub.add_parser("sweep-epsdelta", help="gain grid over epsilon=delta")
    _add_common(p)
    p.add_argument("--eps-values", type=float, nargs="+",
                   default=[0.05, 0.01, 0.005, 0.001, 0.0005])
    p.set_defaults(func=cmd_sweep_epsdelta)

    p = sub.add_parser("eld-sweep", help="noisy-input experiments partitioned "
                                         "by the ELD flag")
    _add_common(p)
    p.set_defaults(func=cmd_eld_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
