"""Filling certification: 2pi-theorem hypotheses and the thresholds built on them.

Threshold conventions follow the statements they come from: lengths must
exceed 2pi strictly, branching indices give lifted lengths of at least 7
(inclusive), and intersection-number criteria are strict ("> 22", "> 3").
Every floating comparison gives doubtful cases the non-certifying answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from cuspgauge.config import geometry_tol
from cuspgauge.errors import DegeneratePair, InvalidInput, InvalidSlope, PreconditionError
from cuspgauge.lattice import (
    SQRT3,
    CuspLattice,
    Slope,
    SlopeMeasurement,
    admissibility,
    enumerate_slopes,
    intersection_number,
    maximality_failures,
    minimal_slope,
    slope_length,
)

TWO_PI = 2.0 * math.pi
CENSUS_LIMIT = 48
BRANCHED_LENGTH_THRESHOLD = 7.0
# intersection-number criteria are strict: Delta > 22 (short e), Delta > 3 (minimal e)
SHORT_DISTANCE_THRESHOLD = 22
MINIMAL_DISTANCE_THRESHOLD = 3

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"


def _slack(x: float) -> float:
    return geometry_tol() * max(1.0, abs(x))


@dataclass(frozen=True)
class SlopeClass:
    length: float
    short: bool
    minimal: bool


def classify_slope(lattice: CuspLattice, s: Slope) -> SlopeClass:
    """Short means length <= 2pi (boundary cases count as short); minimal means globally shortest."""
    length = slope_length(lattice, s).length
    shortest = minimal_slope(lattice).length
    return SlopeClass(
        length=length,
        short=length <= TWO_PI + _slack(TWO_PI),
        minimal=abs(length - shortest) <= _slack(shortest),
    )


@dataclass(frozen=True)
class FillingSpec:
    fillings: tuple[tuple[str, CuspLattice, Slope], ...]
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "fillings", tuple(tuple(f) for f in self.fillings))
        if not self.fillings:
            raise InvalidInput("a filling needs at least one cusp")
        ids = [f[0] for f in self.fillings]
        if len(set(ids)) != len(ids):
            raise InvalidInput(f"cusp ids must be distinct: {ids}")
        if not (self.epsilon >= 0) or not math.isfinite(self.epsilon):
            raise InvalidInput(f"epsilon must be a finite nonnegative number, got {self.epsilon}")


@dataclass
class Certificate:
    measurements: dict[str, SlopeMeasurement]
    threshold: float
    criterion: str
    inclusive: bool = False
    min_length: float = field(init=False)
    verdict: str = field(init=False)

    def __post_init__(self):
        lengths = [m.length for m in self.measurements.values()]
        self.min_length = min(lengths)
        if self.inclusive:
            ok = self.min_length >= self.threshold - _slack(self.threshold)
        else:
            ok = self.min_length > self.threshold + _slack(self.threshold)
        self.verdict = CERTIFIED if ok else NOT_CERTIFIED

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "threshold": self.threshold,
            "min_length": self.min_length,
            "verdict": self.verdict,
            "measurements": {
                k: {"slope": str(m.slope), "translation": list(m.translation), "length": m.length}
                for k, m in self.measurements.items()
            },
        }


def certify_two_pi(spec: FillingSpec) -> Certificate:
    """Certified iff every filling slope is longer than 2pi + epsilon."""
    meas = {cid: slope_length(lat, s) for cid, lat, s in spec.fillings}
    threshold = TWO_PI + spec.epsilon
    return Certificate(meas, threshold, f"every slope length > 2pi + {spec.epsilon:g}")


def short_slope_census(lattice: CuspLattice) -> dict:
    """All slopes of length <= 2pi on a maximal cusp, with the at-most-48 flag."""
    if not lattice.claimed_maximal:
        raise PreconditionError("short-slope census needs a lattice claimed to be maximal")
    problems = maximality_failures(lattice)
    if problems:
        raise PreconditionError("; ".join(problems))
    slopes = enumerate_slopes(lattice, TWO_PI)
    return {
        "slopes": slopes,
        "count": len(slopes),
        "within_limit": len(slopes) <= CENSUS_LIMIT,
        "limit": CENSUS_LIMIT,
    }


def lower_bound_from_reference(delta: int, kind: str) -> float:
    """Length lower bound for s given Delta(s, e) and a short or minimal e."""
    if int(delta) != delta or delta < 1:
        raise InvalidInput(f"intersection number must be a positive integer, got {delta}")
    if kind == "short":
        return SQRT3 * delta / TWO_PI
    if kind == "minimal":
        return SQRT3 * delta
    raise InvalidInput(f"kind must be 'short' or 'minimal', got {kind!r}")


def distance_criterion_audit(lattice: CuspLattice, s: Slope, e: Slope) -> dict:
    """Check the distance hypotheses against reference e and cross-check the implied bound.

    Bounds are only implied on lattices passing the maximal-cusp checks.  The
    minimal-reference bound ``sqrt3 * Delta`` also needs area at least
    ``sqrt3 * l(e)^2``; genuine maximal cusps have it, synthetic lattices may
    not, and then the weaker ``sqrt3 * Delta / l(e)`` is used instead.
    """
    if s == e:
        raise DegeneratePair(f"filling slope and reference coincide: {s}")
    cls = classify_slope(lattice, e)
    delta = intersection_number(s, e)
    measured = slope_length(lattice, s).length
    bounds = {}
    hypothesis = {}
    notes = []
    admissible = not maximality_failures(lattice)
    if not admissible:
        notes.append("lattice fails the maximal-cusp checks; no bound implied")
    if cls.short:
        hypothesis["short"] = delta > SHORT_DISTANCE_THRESHOLD
        if admissible:
            bounds["short"] = lower_bound_from_reference(delta, "short")
    if cls.minimal:
        hypothesis["minimal"] = delta > MINIMAL_DISTANCE_THRESHOLD
        if admissible:
            if admissibility(lattice, cls.length)["area_ok"]:
                bounds["minimal"] = lower_bound_from_reference(delta, "minimal")
            else:
                bounds["minimal"] = SQRT3 * delta / cls.length
                notes.append("area < sqrt3 l(e)^2: minimal-reference bound weakened to sqrt3 Delta / l(e)")
    implied = max(bounds.values()) if bounds else None
    tol = geometry_tol()
    return {
        "slope": str(s),
        "reference": str(e),
        "reference_length": cls.length,
        "reference_short": cls.short,
        "reference_minimal": cls.minimal,
        "intersection_number": delta,
        "hypothesis": hypothesis,
        "hypothesis_holds": any(hypothesis.values()),
        "implied_bounds": bounds,
        "implied_bound": implied,
        "measured_length": measured,
        "bound_consistent": implied is None or measured >= implied - tol * max(1.0, implied),
        "notes": notes,
    }


def surgery_fraction_check(p: int, q: int) -> dict:
    """p/q surgery on a knot in S^3: Delta(meridian, p/q) = |q|, criterion |q| > 22."""
    p, q = int(p), int(q)
    if math.gcd(p, q) != 1:
        raise InvalidSlope(f"{p}/{q} is not in lowest terms")
    if q == 0 and p not in (1, -1):
        raise InvalidSlope(f"{p}/{q} is not a slope")
    delta = abs(q)
    return {
        "fraction": f"{p}/{q}",
        "intersection_with_meridian": delta,
        "satisfied": delta > SHORT_DISTANCE_THRESHOLD,
        "implied_length_bound": SQRT3 * delta / TWO_PI,
    }


def distance_threshold() -> int:
    """Largest Delta that does not force length > 2pi from a short reference: ceil(4pi^2/sqrt3) - 1."""
    return math.ceil(TWO_PI**2 / SQRT3) - 1


def epsilon_for_distance(delta: int) -> float:
    """Margin eps with sqrt(3) delta / 2pi = 2pi + eps."""
    return lower_bound_from_reference(delta, "short") - TWO_PI


def two_slope_epsilon(delta: int = SHORT_DISTANCE_THRESHOLD + 1) -> float:
    """Margin eps with (2pi + eps)^2 = sqrt(3) delta, the two-filling variant."""
    return 3.0**0.25 * math.sqrt(delta) - TWO_PI


@dataclass(frozen=True)
class BranchedCoverSpec:
    degree: int
    branching_indices: tuple[int, ...]
    meridian_lengths: tuple[float, ...]
    base_volume: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "branching_indices", tuple(int(i) for i in self.branching_indices))
        object.__setattr__(self, "meridian_lengths", tuple(float(m) for m in self.meridian_lengths))
        if int(self.degree) != self.degree or self.degree < 1:
            raise InvalidInput(f"degree must be a positive integer, got {self.degree}")
        if not self.branching_indices:
            raise InvalidInput("need at least one boundary lift")
        if len(self.branching_indices) != len(self.meridian_lengths):
            raise InvalidInput("one meridian length per branching index")
        if any(i < 1 for i in self.branching_indices):
            raise InvalidInput("branching indices must be >= 1")
        if any(not (m >= 1.0) or not math.isfinite(m) for m in self.meridian_lengths):
            raise InvalidInput("meridian lengths on a hyperbolic base are >= 1")
        if self.base_volume is not None and not (self.base_volume > 0):
            raise InvalidInput("base volume must be positive")


def certify_branched_cover(spec: BranchedCoverSpec) -> dict:
    """Lifted filling slopes have length index * meridian length; certified iff all are >= 7."""
    lifted = [i * m for i, m in zip(spec.branching_indices, spec.meridian_lengths)]
    tol = geometry_tol()
    ok = all(l >= BRANCHED_LENGTH_THRESHOLD - tol for l in lifted)
    report = {
        "degree": spec.degree,
        "lifted_lengths": lifted,
        "min_lifted_length": min(lifted),
        "threshold": BRANCHED_LENGTH_THRESHOLD,
        "exceeds_two_pi": min(lifted) > TWO_PI,
        "verdict": CERTIFIED if ok else NOT_CERTIFIED,
    }
    if spec.base_volume is not None:
        floor = SQRT3 / 2.0
        report["base_volume"] = spec.base_volume
        report["cover_volume"] = spec.degree * spec.base_volume
        report["base_volume_floor"] = floor
        report["base_volume_ok"] = spec.base_volume >= floor - tol
    return report


def filling_spec_from_lattices(
    lattices: Sequence[CuspLattice], slopes: Sequence[Slope], epsilon: float = 0.0
) -> FillingSpec:
    if len(lattices) != len(slopes):
        raise InvalidInput(f"{len(lattices)} cusps but {len(slopes)} slopes")
    return FillingSpec(tuple((f"cusp{i}", lat, s) for i, (lat, s) in enumerate(zip(lattices, slopes))), epsilon)

