"""Command-line interface.

Verbs:
  fit           per-examiner run with uninformative priors
  loocv         group run with leave-one-out informative priors
  table         emit the casework conversion table
  curves        emit prior/posterior density-curve files for one examiner
  oracle-check  cross-check closed-form posterior means against quadrature
  simulate      draw a synthetic dataset from a config file

All file outputs are byte-deterministic for identical inputs and flags.
Exit status is 0 on success and nonzero with a diagnostic on stderr
naming the offending row or flag otherwise.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .calibration import GroupDataset, fit_examiner, loo_group_fit, loo_informative_priors
from .model import (
    BetaHyper,
    EmptySampleError,
    PriorMode,
    ResponseCategory,
    TruthLabel,
    expected_theta,
    posterior_update,
    uninformative_priors,
)
from .numerics import density_curve, posterior_mean_oracle
from .records import RecordParseError, aggregate, export_results, parse_records
from .reporting import conversion_table, curve_csv
from .simulate import SimConfig, synthesize

_ORACLE_TOLERANCE = 1e-6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfcalib",
        description="Convert categorical examiner conclusions to calibrated "
                    "Bayes factors.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p, output=True):
        p.add_argument("--input", required=True, type=Path,
                       help="input file (records CSV, or config JSON for simulate)")
        if output:
            p.add_argument("--output", required=True, type=Path,
                           help="output directory (created if absent)")
        p.add_argument("--format", choices=("structured", "tabular"),
                       default="tabular", help="output encoding")

    fit = sub.add_parser("fit", help="per-examiner fit, uninformative priors")
    add_common(fit)
    fit.add_argument("--prior", choices=("uninformative", "informative"),
                     default="uninformative")

    loocv = sub.add_parser("loocv", help="group fit, leave-one-out informative priors")
    add_common(loocv)

    table = sub.add_parser("table", help="emit the conversion table")
    add_common(table)
    table.add_argument("--prior", choices=("uninformative", "informative"),
                       default="uninformative")

    curves = sub.add_parser("curves", help="emit density-curve files")
    add_common(curves)
    curves.add_argument("--prior", choices=("uninformative", "informative"),
                        default="uninformative")
    curves.add_argument("--examiner", required=True, help="examiner id to plot")
    curves.add_argument("--category", required=True, help="response category (ID/IN/EX)")
    curves.add_argument("--grid", type=int, default=999,
                        help="number of curve grid points")

    oracle = sub.add_parser("oracle-check",
                            help="randomised closed-form vs quadrature check")
    oracle.add_argument("--seed", type=int, default=0)
    oracle.add_argument("--grid", type=int, default=10000)
    oracle.add_argument("--cases", type=int, default=200)

    simulate = sub.add_parser("simulate", help="draw a synthetic dataset")
    add_common(simulate)
    simulate.add_argument("--seed", type=int, default=None,
                          help="override the seed in the config file")

    return parser


def _write(directory: Path, name: str, content: str) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    path.write_text(content)
    return path


def _load_dataset(path: Path):
    with open(path, newline="") as stream:
        return parse_records(stream)


def _result_name(fmt: str) -> str:
    return "results.json" if fmt == "structured" else "results.csv"


def _cmd_fit(args) -> int:
    if args.prior != "uninformative":
        print("error: flag --prior: 'fit' only supports uninformative priors; "
              "use the 'loocv' verb for informative priors", file=sys.stderr)
        return 2
    dataset = _load_dataset(args.input)
    models = [
        fit_examiner(examiner_id, table,
                     uninformative_priors(table.n_same, table.n_diff))
        for examiner_id, table in aggregate(dataset)
    ]
    path = _write(args.output, _result_name(args.format),
                  export_results(models, format=args.format))
    print(f"fit: wrote {len(models)} examiner models to {path}")
    return 0


def _cmd_loocv(args) -> int:
    dataset = _load_dataset(args.input)
    models = loo_group_fit(GroupDataset.from_dataset(dataset))
    path = _write(args.output, _result_name(args.format),
                  export_results(models, format=args.format))
    print(f"loocv: wrote {len(models)} examiner models to {path}")
    return 0


def _cmd_table(args) -> int:
    dataset = _load_dataset(args.input)
    group = GroupDataset.from_dataset(dataset)
    if args.prior == "informative":
        models = loo_group_fit(group)
    else:
        models = [
            fit_examiner(examiner_id, table,
                         uninformative_priors(table.n_same, table.n_diff))
            for examiner_id, table in group.members
        ]
    rendered = conversion_table(models, dataset.condition_label)
    path = _write(args.output, "conversion_table.csv", rendered.to_csv())
    print(f"table: wrote {len(rendered.rows)} rows to {path}")
    return 0


def _cmd_curves(args) -> int:
    try:
        category = ResponseCategory.parse(args.category)
    except ValueError as exc:
        print(f"error: flag --category: {exc}", file=sys.stderr)
        return 2
    dataset = _load_dataset(args.input)
    group = GroupDataset.from_dataset(dataset)
    try:
        table = group.table_for(args.examiner)
    except ValueError:
        print(f"error: flag --examiner: {args.examiner!r} not present in "
              f"{args.input}", file=sys.stderr)
        return 2
    if args.prior == "informative":
        priors = loo_informative_priors(group, args.examiner)
    else:
        priors = uninformative_priors(table.n_same, table.n_diff)
    written = []
    for truth in TruthLabel:
        prior_cell = priors.cell(category, truth)
        post_cell = posterior_update(prior_cell, table.count(category, truth),
                                     table.total(truth))
        for kind, hyper in (("prior", prior_cell), ("posterior", post_cell)):
            curve = density_curve(hyper, args.grid)
            name = (f"curve_{args.examiner}_{category.value}_"
                    f"{truth.value}_{kind}.csv")
            written.append(_write(args.output, name,
                                  curve_csv(curve, args.examiner, category,
                                            truth, kind)))
    print(f"curves: wrote {len(written)} files to {args.output}")
    return 0


def _cmd_oracle_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.cases):
        prior = BetaHyper(rng.uniform(0.1, 20.0), rng.uniform(0.1, 20.0))
        trials = int(rng.integers(0, 51))
        successes = int(rng.integers(0, trials + 1))
        closed = expected_theta(posterior_update(prior, successes, trials))
        numeric = posterior_mean_oracle(prior, successes, trials, args.grid)
        worst = max(worst, abs(closed - numeric))
    print(f"oracle-check: {args.cases} cases, max |closed - quadrature| = "
          f"{worst:.3e} (tolerance {_ORACLE_TOLERANCE:g})")
    if worst > _ORACLE_TOLERANCE:
        print("error: quadrature disagrees with the closed form", file=sys.stderr)
        return 1
    return 0


def _cmd_simulate(args) -> int:
    config = SimConfig.from_json(args.input.read_text())
    if args.seed is not None:
        config = SimConfig(
            profiles=config.profiles,
            n_same=config.n_same,
            n_diff=config.n_diff,
            seed=args.seed,
            condition_label=config.condition_label,
        )
    dataset = synthesize(config)
    lines = ["examiner_id,pair_id,truth,response"]
    for record in dataset.records:
        lines.append(f"{record.examiner_id},{record.pair_id},"
                     f"{record.truth.value},{record.response.value}")
    path = _write(args.output, "simulated.csv", "\n".join(lines) + "\n")
    print(f"simulate: wrote {len(dataset.records)} records to {path}")
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "loocv": _cmd_loocv,
    "table": _cmd_table,
    "curves": _cmd_curves,
    "oracle-check": _cmd_oracle_check,
    "simulate": _cmd_simulate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.verb](args)
    except RecordParseError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return 1
    except (EmptySampleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
