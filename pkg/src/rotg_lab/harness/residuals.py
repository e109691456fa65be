"""Exact defects of computed rotations.

For each rotation the three identities a true rotation satisfies are
evaluated in exact rational arithmetic:

    normality       c*c + s*s - 1
    orthogonality   c*g - s*f
    norm            c*f + s*g - r

Only the first two are targeted by the compensated constructors; the third
is reported as a diagnostic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2

from rotg_lab.givens import Algorithm, constructor
from rotg_lab.harness.experiment import ExperimentConfig, OutputFormat
from rotg_lab.harness.rng import sample_block
from rotg_lab.hypot import HypotVariant

__all__ = ["RESIDUALS", "ResidualSummary", "residual_stats", "residual_report"]

RESIDUALS = ("normality", "orthogonality", "norm")


@dataclass(frozen=True)
class ResidualSummary:
    max_abs: float
    mean_abs: float


def residual_stats(
    algorithm: Algorithm | str,
    variant: HypotVariant | str,
    fs: Sequence[float],
    gs: Sequence[float],
) -> dict[str, ResidualSummary]:
    build = constructor(algorithm, variant)
    mpq = gmpy2.mpq
    maxima = [mpq(0)] * 3
    totals = [mpq(0)] * 3
    n = 0
    for f, g in zip(fs, gs):
        c, s, r = build(f, g)
        C, S, F, G = mpq(c), mpq(s), mpq(f), mpq(g)
        defects = (C * C + S * S - 1, C * G - S * F, C * F + S * G - mpq(r))
        for k, d in enumerate(defects):
            d = abs(d)
            totals[k] += d
            if d > maxima[k]:
                maxima[k] = d
        n += 1
    return {
        name: ResidualSummary(float(maxima[k]), float(totals[k] / n) if n else 0.0)
        for k, name in enumerate(RESIDUALS)
    }


def _collect(
    config: ExperimentConfig, inputs: Iterable[tuple[float, float]] | None
) -> list[tuple[Algorithm, HypotVariant, dict[str, ResidualSummary]]]:
    if inputs is None:
        f_arr, g_arr = sample_block(config.seed, 0, config.n_samples, config.distribution)
        fs, gs = f_arr.tolist(), g_arr.tolist()
    else:
        pairs = list(inputs)
        fs = [float(f) for f, _ in pairs]
        gs = [float(g) for _, g in pairs]
    return [(a, v, residual_stats(a, v, fs, gs)) for a, v in config.rows]


def residual_report(
    config: ExperimentConfig, inputs: Iterable[tuple[float, float]] | None = None
) -> bytes:
    """Max and mean absolute defects per row, rendered in ``config.output_format``.

    ``inputs`` overrides the sampled ``(f, g)`` pairs.
    """
    rows = _collect(config, inputs)
    fmt = config.output_format
    if fmt is OutputFormat.JSON:
        doc = {
            "seed": config.seed,
            "n": config.n_samples if inputs is None else None,
            "rows": [
                {
                    "algorithm": a.value,
                    "hypot": v.value,
                    **{
                        name: {"max_abs": st.max_abs, "mean_abs": st.mean_abs}
                        for name, st in stats.items()
                    },
                }
                for a, v, stats in rows
            ],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("algorithm", "hypot", "residual", "max_abs", "mean_abs"))
        for a, v, stats in rows:
            for name, st in stats.items():
                writer.writerow((a.value, v.value, name, repr(st.max_abs), repr(st.mean_abs)))
        return buf.getvalue().encode()

    head = f"{'algorithm':<20}{'hypot':<10}" + "".join(
        f"{name + ' max':<18}{name + ' mean':<18}" for name in RESIDUALS
    )
    lines = [head.rstrip()]
    for a, v, stats in rows:
        cells = "".join(
            f"{stats[name].max_abs:<18.3e}{stats[name].mean_abs:<18.3e}" for name in RESIDUALS
        )
        lines.append((f"{a.value:<20}{v.value:<10}" + cells).rstrip())
    return ("\n".join(lines) + "\n").encode()
