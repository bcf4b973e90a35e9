# -*- coding: utf-8 -*-

"""
Command line entry point.

.. code-block:: bash

    rpm run --recipe B-por --data data/student-por.csv --out reports/B-por.json --format json
    rpm compare reports/*.json
"""

import sys
import argparse

from pydantic import ValidationError

from ..constants import LoopRuleEnum, ReportFormatEnum
from ..config.api import Config
from ..exc import RpmError
from ..logger import set_quiet
from .recipes import run_recipe
from .report import emit_report, load_report, compare_rows, render_compare


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rpm",
        description="Robust prediction model: attribute clustering, chi-square "
        "selection and a voting ensemble, compared with a PCA baseline.",
    )
    parser.add_argument("--config", default=None, help="config json path (default: RPM_CONFIG or config/config.json)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one dataset recipe")
    run.add_argument("--recipe", required=True, help="recipe id, e.g. A, B-por, D, E1")
    run.add_argument("--data", required=True, help="dataset file")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--per-class", type=int, default=None, dest="per_class_n")
    run.add_argument("--top-v", type=int, default=None, dest="top_v")
    run.add_argument("--max-levels", type=int, default=None, dest="max_levels")
    run.add_argument(
        "--loop-rule",
        choices=["improvement", "paper-literal"],
        default=None,
        dest="loop_rule",
    )
    run.add_argument("--n-jobs", type=int, default=None, dest="n_jobs")
    run.add_argument("--strict-cv", action="store_true", default=None, dest="strict_cv")
    run.add_argument("--skip-baseline", action="store_true")
    run.add_argument("--quiet", action="store_true", help="log warnings only")
    run.add_argument("--out", default=None, help="report path (default: stdout)")
    run.add_argument(
        "--format",
        choices=[f.value for f in ReportFormatEnum],
        default=ReportFormatEnum.text.value,
    )

    compare = sub.add_parser("compare", help="tabulate RPM against PCA over json reports")
    compare.add_argument("reports", nargs="+", help="json reports written by 'run --format json'")
    compare.add_argument(
        "--format",
        choices=[f.value for f in ReportFormatEnum],
        default=ReportFormatEnum.text.value,
    )
    return parser


def _run(args: argparse.Namespace) -> None:
    set_quiet(args.quiet)
    overrides = {
        "seed": args.seed,
        "per_class_n": args.per_class_n,
        "top_v": args.top_v,
        "max_levels": args.max_levels,
        "loop_rule": None
        if args.loop_rule is None
        else LoopRuleEnum(args.loop_rule.replace("-", "_")),
        "n_jobs": args.n_jobs,
        "strict_cv": args.strict_cv,
    }
    config = Config.load(args.config)
    recipe, _, _, result = run_recipe(
        args.recipe,
        args.data,
        overrides=overrides,
        skip_baseline=args.skip_baseline,
        config=config,
    )
    text = emit_report(result, args.format, args.out, recipe=recipe, data_path=args.data)
    if args.out is None:
        sys.stdout.write(text)


def _compare(args: argparse.Namespace) -> None:
    rows = compare_rows(load_report(path) for path in args.reports)
    sys.stdout.write(render_compare(rows, args.format))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            _run(args)
        else:
            _compare(args)
    except (RpmError, ValidationError, OSError) as e:
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
        sys.stderr.write(f"error: {message}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
