"""Text, CSV and JSON renderings of an :class:`ErrorTable`."""

from __future__ import annotations

import csv
import io
import json

from rotg_lab.harness.experiment import BUCKETS, ErrorTable, OutputFormat

__all__ = ["CSV_HEADER", "render_table", "parse_csv"]

CSV_HEADER = ("algorithm", "hypot", "quantity", "ulp_bucket", "count", "percent")

_ROW_LABELS = ("Zero ulp errors", "One ulp errors", "Two ulp errors", ">=3 ulp errors")
_LABEL_WIDTH = max(map(len, _ROW_LABELS)) + 2
_CELL = 10


def _text(table: ErrorTable) -> str:
    n = table.n_samples
    lines = [
        f"seed={table.seed} n={n} excluded={table.excluded} "
        f"escalations={table.escalations} distribution={table.distribution.value}"
    ]
    groups: dict[str, list] = {}
    for row in table.rows:
        groups.setdefault(row.algorithm.value, []).append(row)
    for algorithm, rows in groups.items():
        lines.append("")
        lines.append(algorithm)
        head = " " * _LABEL_WIDTH + "".join(row.hypot.title.ljust(2 * _CELL) for row in rows)
        sub = " " * _LABEL_WIDTH + "".join("Cosine".ljust(_CELL) + "Sine".ljust(_CELL) for _ in rows)
        lines.append(head.rstrip())
        lines.append(sub.rstrip())
        for bucket, label in enumerate(_ROW_LABELS):
            cells = "".join(
                f"{row.cosine.percent(bucket, n):.3f}".ljust(_CELL)
                + f"{row.sine.percent(bucket, n):.3f}".ljust(_CELL)
                for row in rows
            )
            lines.append((label.ljust(_LABEL_WIDTH) + cells).rstrip())
    return "\n".join(lines) + "\n"


def _csv(table: ErrorTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    n = table.n_samples
    for row in table.rows:
        for quantity, hist in (("cosine", row.cosine), ("sine", row.sine)):
            for bucket, label in enumerate(BUCKETS):
                writer.writerow(
                    (
                        row.algorithm.value,
                        row.hypot.value,
                        quantity,
                        label,
                        hist.counts[bucket],
                        f"{hist.percent(bucket, n):.3f}",
                    )
                )
    return buf.getvalue()


def render_table(table: ErrorTable, fmt: OutputFormat | str = OutputFormat.TEXT) -> bytes:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return (json.dumps(table.to_dict(), indent=2) + "\n").encode()
    if fmt is OutputFormat.CSV:
        return _csv(table).encode()
    return _text(table).encode()


def parse_csv(data: bytes | str) -> dict[tuple[str, str, str], list[int]]:
    """Read rendered CSV back into ``{(algorithm, hypot, quantity): counts}``."""
    if isinstance(data, bytes):
        data = data.decode()
    reader = csv.DictReader(io.StringIO(data))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header: {reader.fieldnames}")
    out: dict[tuple[str, str, str], list[int]] = {}
    for rec in reader:
        key = (rec["algorithm"], rec["hypot"], rec["quantity"])
        counts = out.setdefault(key, [0, 0, 0, 0])
        counts[BUCKETS.index(rec["ulp_bucket"])] = int(rec["count"])
    return out
