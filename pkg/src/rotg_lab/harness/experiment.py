"""Scoring runs: constructors x hypot variants against the oracle."""

from __future__ import annotations

import enum
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from rotg_lab import __version__
from rotg_lab.givens import Algorithm, constructor
from rotg_lab.harness.rng import MAX_SEED, Distribution, sample_block
from rotg_lab.hypot import HypotVariant
from rotg_lab.oracle import checked_reference_rotation, ulp_distances

__all__ = [
    "BUCKETS",
    "ConfigError",
    "OutputFormat",
    "ExperimentConfig",
    "UlpHistogram",
    "TableRow",
    "ErrorTable",
    "run_experiment",
]

logger = logging.getLogger(__name__)

BUCKETS = ("0", "1", "2", ">=3")
CHUNK_SIZE = 20_000


class ConfigError(ValueError):
    pass


class OutputFormat(str, enum.Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


def _as_tuple(values, kind):
    if isinstance(values, (str, enum.Enum)):
        values = (values,)
    try:
        return tuple(kind(v) for v in values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    n_samples: int = 10**6
    algorithms: Sequence[Algorithm] = (Algorithm.SIMPLIFIED, Algorithm.COMPENSATED)
    hypot_variants: Sequence[HypotVariant] = (
        HypotVariant.CORRECT,
        HypotVariant.NAIVE,
        HypotVariant.WEAK,
    )
    output_format: OutputFormat = OutputFormat.TEXT
    workers: int = 1
    distribution: Distribution = Distribution.STANDARD_NORMAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "algorithms", _as_tuple(self.algorithms, Algorithm))
        object.__setattr__(self, "hypot_variants", _as_tuple(self.hypot_variants, HypotVariant))
        try:
            object.__setattr__(self, "output_format", OutputFormat(self.output_format))
            object.__setattr__(self, "distribution", Distribution(self.distribution))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not isinstance(self.n_samples, int) or self.n_samples < 1:
            raise ConfigError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ConfigError(f"workers must be a positive integer, got {self.workers!r}")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        if not self.hypot_variants:
            raise ConfigError("at least one hypot variant is required")

    @property
    def rows(self) -> list[tuple[Algorithm, HypotVariant]]:
        return [(a, v) for a in self.algorithms for v in self.hypot_variants]


@dataclass
class UlpHistogram:
    """Counts of ulp distances in the buckets 0, 1, 2 and 3-or-more."""

    counts: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    excluded: int = 0

    @property
    def scored(self) -> int:
        return sum(self.counts)

    def percent(self, bucket: int, n: int) -> float:
        return 100.0 * self.counts[bucket] / n

    def as_dict(self) -> dict[str, int]:
        return dict(zip(BUCKETS, self.counts))


@dataclass
class TableRow:
    algorithm: Algorithm
    hypot: HypotVariant
    cosine: UlpHistogram
    sine: UlpHistogram

    @property
    def excluded(self) -> int:
        return self.cosine.excluded


@dataclass
class ErrorTable:
    seed: int
    n_samples: int
    distribution: Distribution
    rows: list[TableRow]
    excluded: int = 0
    escalations: int = 0
    version: str = __version__

    def row(self, algorithm: Algorithm | str, hypot: HypotVariant | str) -> TableRow:
        algorithm, hypot = Algorithm(algorithm), HypotVariant(hypot)
        for row in self.rows:
            if row.algorithm is algorithm and row.hypot is hypot:
                return row
        raise KeyError((algorithm.value, hypot.value))

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n": self.n_samples,
            "excluded": self.excluded,
            "escalations": self.escalations,
            "distribution": self.distribution.value,
            "version": self.version,
            "rows": [
                {
                    "algorithm": row.algorithm.value,
                    "hypot": row.hypot.value,
                    "excluded": row.excluded,
                    "cosine": row.cosine.as_dict(),
                    "sine": row.sine.as_dict(),
                }
                for row in self.rows
            ],
        }


@dataclass
class _ChunkResult:
    counts: np.ndarray  # (rows, 2, 4) int64
    excluded: np.ndarray  # (rows,) int64
    excluded_any: int
    escalations: int

    def merge(self, other: _ChunkResult) -> _ChunkResult:
        return _ChunkResult(
            self.counts + other.counts,
            self.excluded + other.excluded,
            self.excluded_any + other.excluded_any,
            self.escalations + other.escalations,
        )


def _bucket_counts(dist: np.ndarray, valid: np.ndarray) -> np.ndarray:
    return np.bincount(np.minimum(dist[valid], 3), minlength=4)[:4].astype(np.int64)


def _score_chunk(
    seed: int,
    distribution: str,
    start: int,
    count: int,
    rows: tuple[tuple[str, str], ...],
) -> _ChunkResult:
    f_arr, g_arr = sample_block(seed, start, count, distribution)
    fs = f_arr.tolist()
    gs = g_arr.tolist()

    c_ref = np.empty(count)
    s_ref = np.empty(count)
    escalations = 0
    for i, (f, g) in enumerate(zip(fs, gs)):
        ref, esc = checked_reference_rotation(f, g)
        c_ref[i] = ref.c_ref
        s_ref[i] = ref.s_ref
        escalations += esc
    finite_inputs = np.isfinite(f_arr) & np.isfinite(g_arr)

    counts = np.zeros((len(rows), 2, 4), dtype=np.int64)
    excluded = np.zeros(len(rows), dtype=np.int64)
    any_excluded = ~finite_inputs
    for k, (algorithm, variant) in enumerate(rows):
        build = constructor(algorithm, variant)
        out = np.array([build(f, g) for f, g in zip(fs, gs)], dtype=np.float64).reshape(count, 3)
        dc, ok_c = ulp_distances(out[:, 0], c_ref)
        ds, ok_s = ulp_distances(out[:, 1], s_ref)
        ok = ok_c & ok_s & np.isfinite(out[:, 2]) & finite_inputs
        counts[k, 0] = _bucket_counts(dc, ok)
        counts[k, 1] = _bucket_counts(ds, ok)
        excluded[k] = count - int(ok.sum())
        any_excluded |= ~ok
    return _ChunkResult(counts, excluded, int(any_excluded.sum()), escalations)


def _chunks(n: int, size: int = CHUNK_SIZE) -> Iterator[tuple[int, int]]:
    for start in range(0, n, size):
        yield start, min(size, n - start)


def run_experiment(config: ExperimentConfig) -> ErrorTable:
    """Score every (algorithm, hypot variant) row on ``config.n_samples`` inputs.

    Work is split into fixed index chunks and the integer histograms are
    summed, so the result does not depend on ``config.workers``. Any failure
    aborts the whole run.
    """
    rows = tuple((a.value, v.value) for a, v in config.rows)
    jobs = list(_chunks(config.n_samples))
    args = (config.seed, config.distribution.value)
    if config.workers == 1 or len(jobs) == 1:
        parts = [_score_chunk(*args, start, count, rows) for start, count in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = list(
                pool.map(
                    _score_chunk,
                    *zip(*[(*args, start, count, rows) for start, count in jobs]),
                )
            )
    total = parts[0]
    for part in parts[1:]:
        total = total.merge(part)

    if total.escalations:
        logger.warning("oracle escalated precision %d time(s)", total.escalations)
    if total.excluded_any:
        logger.warning("%d sample(s) excluded for non-finite values", total.excluded_any)

    table_rows = []
    for k, (algorithm, variant) in enumerate(config.rows):
        excl = int(total.excluded[k])
        table_rows.append(
            TableRow(
                algorithm,
                variant,
                UlpHistogram([int(x) for x in total.counts[k, 0]], excl),
                UlpHistogram([int(x) for x in total.counts[k, 1]], excl),
            )
        )
    return ErrorTable(
        seed=config.seed,
        n_samples=config.n_samples,
        distribution=config.distribution,
        rows=table_rows,
        excluded=total.excluded_any,
        escalations=total.escalations,
    )

