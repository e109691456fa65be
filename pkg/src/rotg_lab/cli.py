"""``rotg-lab`` command line."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from rotg_lab.givens import Algorithm
from rotg_lab.harness import (
    ConfigError,
    ExperimentConfig,
    OutputFormat,
    render_table,
    residual_report,
    run_experiment,
)
from rotg_lab.hypot import HypotVariant


def _count(text: str) -> int:
    # accepts 1000000, 1_000_000 and 1e6
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer count: {text!r}")
    return int(value)


def _add_common(p: argparse.ArgumentParser, default_n: int) -> None:
    p.add_argument("--n", type=_count, default=default_n, help="number of samples")
    p.add_argument("--seed", type=int, default=0, help="unsigned 64-bit seed")
    p.add_argument(
        "--algorithm",
        action="extend",
        nargs="+",
        choices=[a.value for a in Algorithm],
        help="constructor(s) to score; repeatable",
    )
    p.add_argument(
        "--hypot",
        action="extend",
        nargs="+",
        choices=[v.value for v in HypotVariant],
        help="hypot variant(s); repeatable",
    )
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotg-lab", description="Ulp error rates of Givens rotation constructors."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="score constructors against the oracle")
    _add_common(run, 10**6)
    run.add_argument("--workers", type=int, default=1)
    res = sub.add_parser("residuals", help="exact defects of computed rotations")
    _add_common(res, 10**4)
    return parser


def _config(args: argparse.Namespace) -> ExperimentConfig:
    defaults = ExperimentConfig()
    return ExperimentConfig(
        seed=args.seed,
        n_samples=args.n,
        algorithms=args.algorithm or defaults.algorithms,
        hypot_variants=args.hypot or defaults.hypot_variants,
        output_format=args.format,
        workers=getattr(args, "workers", 1),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _config(args)
    except ConfigError as exc:
        parser.error(str(exc))

    if args.command == "run":
        data = render_table(run_experiment(config), config.output_format)
    else:
        data = residual_report(config)

    if args.out is not None:
        args.out.write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
