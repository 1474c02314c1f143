"""Report sinks: an aligned text table or one JSON object per line."""

from __future__ import annotations

import json
import sys

import numpy as np

from .core import INF, SubsetMask, format_ext


def to_json(value):
    """Convert a report value to plain JSON (``"inf"`` for infinity, labels for subsets)."""
    if isinstance(value, SubsetMask):
        return value.labels
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return "inf" if value == INF else float(value)
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if value is None or isinstance(value, str):
        return value
    return str(value)


def to_text(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (float, np.floating)):
        return format_ext(float(value))
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(to_text(v) for v in value) + "]"
    return str(value)


class Sink:
    """Collects report rows; text mode renders a table, json-lines streams records."""

    def __init__(self, fmt: str = "text", out=None):
        if fmt not in ("text", "json-lines"):
            raise ValueError(f"unknown format {fmt!r}")
        self.fmt = fmt
        self.out = out or sys.stdout
        self._rows: list[dict] = []
        self._notes: list[str] = []

    def row(self, **fields) -> None:
        if self.fmt == "json-lines":
            self.out.write(json.dumps(to_json(fields)) + "\n")
        else:
            self._rows.append(fields)

    def note(self, text: str) -> None:
        """A free-form line printed below the table, text mode only."""
        if self.fmt == "text":
            self._notes.append(text)

    def flush(self) -> None:
        self._table()
        for text in self._notes:
            self.out.write(text + "\n")
        self._notes = []

    def _table(self) -> None:
        if not self._rows:
            return
        columns: list[str] = []
        for r in self._rows:
            columns.extend(k for k in r if k not in columns)
        cells = [[to_text(r.get(c, "")) for c in columns] for r in self._rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
        line = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
        self.out.write(line(columns) + "\n")
        self.out.write(line(["-" * w for w in widths]) + "\n")
        for row in cells:
            self.out.write(line(row) + "\n")
        self._rows = []
