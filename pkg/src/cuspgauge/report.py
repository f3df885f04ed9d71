"""Deterministic JSON and CSV rendering of command results."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from cuspgauge import __version__

SIG_DIGITS = 12

VERDICTS = ("certified", "not-certified", "infeasible", "invalid-input")


def _plain(obj):
    """Recursively turn results into JSON-ready values, rounding floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.{SIG_DIGITS}g}")
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


@dataclass
class ReportEnvelope:
    command: str
    inputs: dict
    results: dict
    verdict: str
    tolerances: dict
    version: str = __version__
    error: str | None = None
    diagnostics: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    def as_dict(self) -> dict:
        d = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "verdict": self.verdict,
            "version": self.version,
            "tolerances": self.tolerances,
        }
        if self.error is not None:
            d["error"] = self.error
        if self.diagnostics:
            d["diagnostics"] = self.diagnostics
        return _plain(d)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


def rows_to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        out = []
        for c in columns:
            v = row.get(c)
            if isinstance(v, (float, np.floating)):
                v = f"{float(v):.{SIG_DIGITS}g}"
            out.append("" if v is None else v)
        writer.writerow(out)
    return buf.getvalue()
