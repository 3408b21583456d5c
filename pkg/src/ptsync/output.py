"""Deterministic CSV/JSON emission and the matching readers."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Iterable, Sequence


def format_value(x) -> str:
    """Shortest round-trip text for numbers; flags become 0/1."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def render_csv(columns: Sequence[str], rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return buf.getvalue()


def render_json(config: dict, columns: Sequence[str], rows: Iterable[dict]) -> str:
    records = [{c: _json_safe(row[c]) for c in columns} for row in rows]
    doc = {"config": _json_safe(config), "rows": records}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        import sys

        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def _parse_cell(s: str):
    try:
        return float(s)
    except ValueError:
        return s


def read_table(path: str) -> tuple[dict, list[dict]]:
    """Load a file written by ``render_csv`` or ``render_json``.

    Returns ``(config, rows)``; CSV files carry no config so it is empty.
    """
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        rows = [{k: _parse_cell(v) if isinstance(v, str) else v for k, v in r.items()} for r in doc["rows"]]
        return doc.get("config", {}), rows
    reader = csv.DictReader(io.StringIO(text))
    return {}, [{k: _parse_cell(v) for k, v in r.items()} for r in reader]


def summarize(rows: Sequence[dict]) -> dict[str, dict[str, float]]:
    """Count, min, max and mean of every numeric column."""
    if not rows:
        return {}
    stats = {}
    for col in rows[0]:
        vals = [r[col] for r in rows if isinstance(r[col], (int, float)) and not isinstance(r[col], bool)]
        if len(vals) != len(rows):
            continue
        finite = [v for v in vals if math.isfinite(v)]
        stats[col] = {
            "count": float(len(vals)),
            "min": min(vals),
            "max": max(vals),
            "mean": math.fsum(finite) / len(finite) if finite else math.nan,
        }
    return stats
