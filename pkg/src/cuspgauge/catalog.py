"""Catalog files: named manifolds with cusp lattices and optional volume data.

Schema (``schema_version`` 1)::

    {
      "schema_version": 1,
      "records": [
        {
          "name": "example",
          "cusps": [{"v1": [x, y], "v2": [x, y], "claimed_maximal": true}],
          "volume": 2.0298832128,     # optional
          "gromov_norm": 2.0          # optional; must match volume / v3
        }
      ]
    }

Bad records are skipped with a diagnostic unless ``strict`` is set, in
which case the first one raises :class:`CatalogError`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from cuspgauge.bounds import HyperbolicDatum
from cuspgauge.errors import CatalogError, InvalidInput
from cuspgauge.lattice import CuspLattice

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CatalogRecord:
    name: str
    cusps: tuple[CuspLattice, ...]
    volume: float | None = None
    gromov_norm: float | None = None


def _number(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInput(f"{what} must be a number, got {value!r}")
    return float(value)


def _vector(value, what: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise InvalidInput(f"{what} must be a list of two numbers")
    return _number(value[0], what), _number(value[1], what)


def parse_record(raw: dict) -> CatalogRecord:
    if not isinstance(raw, dict):
        raise InvalidInput("record must be an object")
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise InvalidInput("record needs a non-empty string name")
    cusps_raw = raw.get("cusps")
    if not isinstance(cusps_raw, list) or not cusps_raw:
        raise InvalidInput(f"{name}: cusps must be a non-empty list")
    cusps = []
    for i, c in enumerate(cusps_raw):
        if not isinstance(c, dict):
            raise InvalidInput(f"{name}: cusp {i} must be an object")
        maximal = c.get("claimed_maximal", False)
        if not isinstance(maximal, bool):
            raise InvalidInput(f"{name}: cusp {i} claimed_maximal must be a boolean")
        v1 = _vector(c.get("v1"), f"{name}: cusp {i} v1")
        v2 = _vector(c.get("v2"), f"{name}: cusp {i} v2")
        try:
            cusps.append(CuspLattice.from_lists(v1, v2, maximal))
        except InvalidInput as exc:
            raise InvalidInput(f"{name}: cusp {i}: {exc}") from exc
    volume = raw.get("volume")
    norm = raw.get("gromov_norm")
    volume = None if volume is None else _number(volume, f"{name}: volume")
    norm = None if norm is None else _number(norm, f"{name}: gromov_norm")
    if norm is not None and volume is None:
        raise InvalidInput(f"{name}: gromov_norm given without volume")
    if volume is not None:
        try:
            HyperbolicDatum(volume, norm)
        except InvalidInput as exc:
            raise InvalidInput(f"{name}: {exc}") from exc
    return CatalogRecord(name, tuple(cusps), volume, norm)


def load_catalog(path: str | Path, strict: bool = False) -> tuple[list[CatalogRecord], list[str]]:
    """Validated records and per-record diagnostics for the ones skipped."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise CatalogError(f"catalog {path} must be an object with schema_version {SCHEMA_VERSION}")
    raw_records = doc.get("records")
    if not isinstance(raw_records, list):
        raise CatalogError(f"catalog {path} needs a 'records' list")
    records, diagnostics = [], []
    seen = set()
    for i, raw in enumerate(raw_records):
        try:
            rec = parse_record(raw)
            if rec.name in seen:
                raise InvalidInput(f"duplicate record name {rec.name!r}")
        except InvalidInput as exc:
            msg = f"record {i}: {exc}"
            if strict:
                raise CatalogError(msg) from exc
            diagnostics.append(msg)
            continue
        seen.add(rec.name)
        records.append(rec)
    return records, diagnostics
