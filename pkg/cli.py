"""
Command-line entry point: run experiments, summarize runs, compare the optimizers, inspect the
search space and generate fixture datasets.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from automl.data import FIXTURE_KINDS, generate_fixture, save_arff, write_arff
from automl.experiment import (
    ExperimentConfig, choice_matrix, comparison_datasets, format_summary, guided_wins,
    load_run_reports, run_comparison, run_experiment, summarize,
)
from automl.experiment.comparison import DEFAULT_EVALUATIONS, DEFAULT_FIXTURE_SIZE, DEFAULT_SEEDS
from automl.experiment.config import (
    DEFAULT_COMPLETIONS, DEFAULT_N_JOBS, DEFAULT_PHASE2_REPETITIONS, DEFAULT_REPETITIONS,
    DEFAULT_SELECTION_K,
)
from automl.experiment.summary import BASELINE, GUIDED
from automl.evaluation import OBJECTIVES
from automl.planning import (
    NODE_SCORES, OPTIMIZERS, BudgetKind, count_pipelines, default_space, enumerate_pipelines,
    load_space_file,
)
from automl.shared.exceptions import AutoMLError
from report import generate_markdown_report, save_report

logger = logging.getLogger("automl.cli")


def cmd_run(args: argparse.Namespace) -> int:
    if args.budget_seconds is not None:
        budget_kind, budget_total = BudgetKind.SECONDS.value, args.budget_seconds
    else:
        budget_kind, budget_total = BudgetKind.EVALUATIONS.value, args.budget_evals
    config = ExperimentConfig.build(
        dataset=args.data,
        optimizer=args.optimizer,
        budget_kind=budget_kind,
        budget_total=budget_total,
        eval_limit=args.eval_limit,
        seed=args.seed,
        split_fraction=args.split_fraction,
        completions=args.completions,
        repetitions=args.repetitions,
        selection_k=args.k,
        phase2_repetitions=args.phase2_repetitions,
        objective=args.objective,
        node_score=args.node_score,
        n_jobs=args.n_jobs,
        output_dir=args.out,
        space_file=args.space,
    )
    report = run_experiment(config)
    directory = str(Path(config.output_dir) / config.run_name())
    markdown_path = save_report(generate_markdown_report(report), "report.md", directory)
    logger.info("Markdown report written to %s", markdown_path)
    print(f"{report.pipeline}\tinstance_f={report.test_metrics['instance_f']:.4f}")
    return 0


def cmd_summarize(args: argparse.Namespace) -> int:
    reports = load_run_reports(args.input)
    if not reports:
        logger.error("No run reports found below %s", args.input)
        return 1
    table = summarize(reports)
    print(format_summary(table))
    if args.out:
        table.to_csv(args.out, index=False)
        logger.info("Summary written to %s", args.out)
    if args.choices:
        choice_matrix(reports).to_csv(args.choices)
        logger.info("Choice matrix written to %s", args.choices)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    out = Path(args.out)
    datasets = comparison_datasets(args.samples, out / "datasets", args.fixture_size)
    settings = {"n_jobs": args.n_jobs}
    if args.completions is not None:
        settings["completions"] = args.completions
    reports = run_comparison(datasets, out / "runs", seeds=args.seeds, evaluations=args.budget_evals,
                             **settings)
    table = summarize(reports)
    print(format_summary(table))
    wins = guided_wins(table)
    print(f"{GUIDED} >= {BASELINE} on {wins}/{len(table)} datasets")
    table.to_csv(out / "summary.csv", index=False)
    return 0 if wins >= args.required_wins else 2


def cmd_space(args: argparse.Namespace) -> int:
    space = load_space_file(args.space) if args.space else default_space()
    print(f"{count_pipelines(space)} pipelines (fingerprint {space.fingerprint()})")
    if args.list:
        for pipeline in enumerate_pipelines(space):
            print(pipeline.serialize())
    return 0


def cmd_gen_fixture(args: argparse.Namespace) -> int:
    data = generate_fixture(args.kind, args.n, args.seed)
    if args.out:
        print(save_arff(data, args.out))
    else:
        sys.stdout.write(write_arff(data))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Multi-label AutoML by hierarchical planning")
    parser.add_argument("--log-level", default=os.getenv("AUTOML_LOG_LEVEL", "INFO"),
                        help="Logging level (default: INFO or $AUTOML_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run one experiment")
    run.add_argument("--data", required=True, help="ARFF dataset")
    run.add_argument("--optimizer", choices=OPTIMIZERS, default="mlplan")
    budget = run.add_mutually_exclusive_group(required=True)
    budget.add_argument("--budget-seconds", type=float, help="Wall-clock budget in seconds")
    budget.add_argument("--budget-evals", type=int, help="Number of candidate evaluations")
    run.add_argument("--eval-limit", type=float, default=None, help="Per-candidate limit in seconds")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--split-fraction", type=float, default=0.7, help="Outer train fraction")
    run.add_argument("--out", default="runs", help="Output directory")
    run.add_argument("--space", default=None, help="Component space definition file")
    run.add_argument("--completions", type=int, default=DEFAULT_COMPLETIONS)
    run.add_argument("--repetitions", type=int, default=DEFAULT_REPETITIONS)
    run.add_argument("--k", type=int, default=DEFAULT_SELECTION_K, help="Selection pool parameter")
    run.add_argument("--phase2-repetitions", type=int, default=DEFAULT_PHASE2_REPETITIONS)
    run.add_argument("--objective", choices=OBJECTIVES, default="instance_f")
    run.add_argument("--node-score", choices=NODE_SCORES, default="min_mean")
    run.add_argument("--n-jobs", type=int, default=DEFAULT_N_JOBS)
    run.set_defaults(handler=cmd_run)

    summary = commands.add_parser("summarize", help="Compare run reports")
    summary.add_argument("--in", dest="input", required=True, help="Directory with run reports")
    summary.add_argument("--out", default=None, help="CSV output")
    summary.add_argument("--choices", default=None, help="CSV output for the choice matrix")
    summary.set_defaults(handler=cmd_summarize)

    compare = commands.add_parser("compare", help="Guided search against random search on the sample datasets")
    compare.add_argument("--samples", default="data/fixtures", help="Directory with the shipped ARFF samples")
    compare.add_argument("--out", default="runs/compare", help="Output directory")
    compare.add_argument("--seeds", type=int, default=DEFAULT_SEEDS)
    compare.add_argument("--budget-evals", type=int, default=DEFAULT_EVALUATIONS)
    compare.add_argument("--fixture-size", type=int, default=DEFAULT_FIXTURE_SIZE)
    compare.add_argument("--completions", type=int, default=None)
    compare.add_argument("--n-jobs", type=int, default=DEFAULT_N_JOBS)
    compare.add_argument("--required-wins", type=int, default=4,
                         help="Exit with status 2 when the guided search wins fewer datasets")
    compare.set_defaults(handler=cmd_compare)

    space = commands.add_parser("space", help="Count (and list) the pipelines of a space")
    space.add_argument("--space", default=None, help="Component space definition file")
    space.add_argument("--list", action="store_true", help="Print every pipeline")
    space.set_defaults(handler=cmd_space)

    fixture = commands.add_parser("gen-fixture", help="Write a synthetic ARFF dataset")
    fixture.add_argument("--kind", choices=sorted(FIXTURE_KINDS), required=True)
    fixture.add_argument("--n", type=int, default=200)
    fixture.add_argument("--seed", type=int, default=0)
    fixture.add_argument("--out", default=None, help="Output path (default: stdout)")
    fixture.set_defaults(handler=cmd_gen_fixture)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except AutoMLError as e:
        logger.error("%s failed: %s", args.command, e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
