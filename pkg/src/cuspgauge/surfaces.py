"""Boundary-slope audits for essential surfaces in a cusped hyperbolic manifold.

A surface meeting a cusp in ``n`` curves of slope ``s`` must satisfy
``l(s) * n < -2pi chi(F)``: the hyperbolic area ``-2pi chi`` has to cover a
cusp annulus of area at least ``l(s)`` per curve.  For a knot exterior,
with the meridian short, this bounds the denominator of a boundary slope by
``4 pi^2 genus / sqrt(3)``.

Only the numeric inequality is checked; the topological hypotheses
(pi1-injectivity, essential arcs) are the caller's assertion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from cuspgauge.config import geometry_tol
from cuspgauge.errors import InvalidInput, PreconditionError
from cuspgauge.lattice import SQRT3

TWO_PI = 2.0 * math.pi
# |q| < SLOPE_PER_GENUS * genus
SLOPE_PER_GENUS = 4.0 * math.pi**2 / SQRT3


def euler_characteristic(genus: int, boundary_count: int, orientable: bool = True) -> int:
    """2 - 2g - b for orientable surfaces, 2 - g - b with g the crosscap number otherwise."""
    if genus < 0 or boundary_count < 0:
        raise InvalidInput("genus and boundary count must be nonnegative")
    if orientable:
        return 2 - 2 * genus - boundary_count
    if genus < 1:
        raise InvalidInput("a non-orientable surface has at least one crosscap")
    return 2 - genus - boundary_count


@dataclass(frozen=True)
class SurfaceData:
    genus: int
    boundary_count: int
    orientable: bool = True
    euler: int = field(init=False)

    def __post_init__(self):
        if self.boundary_count < 1:
            raise InvalidInput("a properly embedded surface meeting the cusp needs boundary")
        object.__setattr__(self, "euler", euler_characteristic(self.genus, self.boundary_count, self.orientable))
        if self.euler >= 0:
            raise PreconditionError(
                f"chi = {self.euler}: discs, annuli and Mobius bands are excluded (need chi < 0)"
            )


def gauss_bonnet_area(euler: int) -> float:
    if euler >= 0:
        raise PreconditionError(f"chi = {euler} admits no finite-area hyperbolic structure")
    return -TWO_PI * euler


def boundary_area_audit(slope_length: float, boundary_curves: int, surface: SurfaceData) -> dict:
    """Is ``slope_length * boundary_curves < -2pi chi`` (strict)?  Doubtful cases are inconsistent."""
    if not slope_length > 0:
        raise InvalidInput("slope length must be positive")
    if int(boundary_curves) != boundary_curves or boundary_curves < 1:
        raise InvalidInput("need at least one boundary curve on the cusp")
    budget = gauss_bonnet_area(surface.euler)
    used = slope_length * boundary_curves
    margin = geometry_tol() * max(1.0, budget)
    return {
        "euler": surface.euler,
        "area_budget": budget,
        "length_times_curves": used,
        "max_admissible_length": budget / boundary_curves,
        "consistent": used < budget - margin,
        "hypotheses": "user-asserted",
    }


def _strict_floor_below(x: float) -> int:
    """Largest integer strictly below x; near-integer x counts as the integer."""
    n = round(x)
    if abs(x - n) <= geometry_tol() * max(1.0, abs(x)):
        return n - 1
    return math.ceil(x) - 1


def max_denominator(genus: int) -> int:
    """Largest |q| allowed for a boundary slope of a genus-g surface."""
    if int(genus) != genus or genus < 1:
        raise PreconditionError("a planar surface gives no bound; genus must be >= 1")
    return _strict_floor_below(SLOPE_PER_GENUS * genus)


def min_genus(q: int) -> int:
    """Smallest genus g with 4 pi^2 g / sqrt(3) > |q|."""
    if int(q) != q or q == 0:
        raise InvalidInput("q must be a nonzero integer")
    x = abs(q) / SLOPE_PER_GENUS
    n = round(x)
    if abs(x - n) <= geometry_tol() * max(1.0, x):
        return int(n) + 1
    return math.floor(x) + 1


def genus_slope_tradeoff(*, genus: int | None = None, q: int | None = None) -> dict:
    """Trade a surface's genus against its boundary slope's denominator (exactly one argument)."""
    if (genus is None) == (q is None):
        raise InvalidInput("give exactly one of genus or q")
    if genus is not None:
        return {
            "genus": genus,
            "max_abs_q": max_denominator(genus),
            "length_bound": TWO_PI * genus,
            "threshold": SLOPE_PER_GENUS * genus,
        }
    g = min_genus(q)
    return {
        "q": q,
        "min_genus": g,
        "length_bound_at_min_genus": TWO_PI * g,
        "threshold": SLOPE_PER_GENUS * g,
    }
