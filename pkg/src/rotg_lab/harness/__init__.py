"""Randomised error-rate experiments and their rendering."""

from rotg_lab.harness.experiment import (
    ConfigError,
    ErrorTable,
    ExperimentConfig,
    OutputFormat,
    UlpHistogram,
    run_experiment,
)
from rotg_lab.harness.render import parse_csv, render_table
from rotg_lab.harness.residuals import residual_report, residual_stats
from rotg_lab.harness.rng import Distribution, sample_block, sample_inputs

__all__ = [
    "ConfigError",
    "Distribution",
    "ErrorTable",
    "ExperimentConfig",
    "OutputFormat",
    "UlpHistogram",
    "parse_csv",
    "render_table",
    "residual_report",
    "residual_stats",
    "run_experiment",
    "sample_block",
    "sample_inputs",
]
