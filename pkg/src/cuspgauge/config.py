"""Tolerances, overridable through the ``CUSPGAUGE_TOL`` environment variable.

Accepted forms::

    CUSPGAUGE_TOL=1e-10                    # geometry tolerance only
    CUSPGAUGE_TOL=geometry=1e-10,ode=1e-7  # either key may be omitted
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

from cuspgauge.errors import InvalidInput

ENV_VAR = "CUSPGAUGE_TOL"

GEOMETRY_TOL = 1e-9
ODE_TOL = 1e-6


@dataclass(frozen=True)
class Tolerances:
    geometry: float = GEOMETRY_TOL
    ode: float = ODE_TOL

    def as_dict(self) -> dict:
        return asdict(self)


def _parse(text: str) -> Tolerances:
    text = text.strip()
    if not text:
        return Tolerances()
    values = {}
    try:
        if "=" not in text:
            values["geometry"] = float(text)
        else:
            for part in text.split(","):
                key, _, val = part.partition("=")
                key = key.strip()
                if key not in ("geometry", "ode"):
                    raise InvalidInput(f"{ENV_VAR}: unknown key {key!r}")
                values[key] = float(val)
    except ValueError as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"{ENV_VAR}: cannot parse {text!r}") from exc
    for key, val in values.items():
        if not (val > 0 and val < 1):
            raise InvalidInput(f"{ENV_VAR}: {key} tolerance must lie in (0, 1)")
    return Tolerances(**values)


def tolerances() -> Tolerances:
    """Current tolerances; the environment is re-read on every call."""
    return _parse(os.environ.get(ENV_VAR, ""))


def geometry_tol() -> float:
    return tolerances().geometry
