"""Volume, curvature and Gromov-norm bounds carried through a Dehn filling.

Given the pinching constant alpha of the filling solid tori, the filled
manifold has curvatures in ``[-1/alpha, -alpha]`` and volume above
``alpha * Vol(X)``; combining this with ``|M| pi/2 >= (-k_sup)^(3/2) Vol(M)``
and ``Vol(X) = v3 |X|`` bounds the Gromov norm of the unfilled manifold by
``beta * |filled|`` with ``beta = alpha^(-5/2) pi / (2 v3)``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from cuspgauge.errors import InvalidInput, PreconditionError
from cuspgauge.lattice import CuspLattice, lattice_area

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
SERIES_TERM_CUTOFF = 1e-14
# certified lower bounds are pushed down by this relative amount
ROUND_DOWN = 1e-12
NORM_CONSISTENCY_RTOL = 1e-6


def lobachevsky(theta: float) -> float:
    """Lobachevsky function via ``sum sin(2 n theta) / (2 n^2)``.

    Terms are summed until ``1/(2 n^2)`` drops below 1e-14, with exactly
    rounded summation (``math.fsum``) so the ~7 million terms do not
    accumulate rounding error.
    """
    n_max = int(math.ceil(math.sqrt(0.5 / SERIES_TERM_CUTOFF)))
    partials = []
    chunk = 1_000_000
    for start in range(1, n_max + 1, chunk):
        n = np.arange(start, min(start + chunk, n_max + 1), dtype=float)
        partials.append(math.fsum(np.sin(2.0 * n * theta) / (2.0 * n * n)))
    return math.fsum(partials)


@lru_cache(maxsize=1)
def ideal_simplex_volume() -> float:
    """Volume v3 of the regular ideal tetrahedron, ``3 * Lambda(pi/3)``; computed once."""
    return 3.0 * lobachevsky(math.pi / 3.0)


def _round_down(x: float) -> float:
    return x - ROUND_DOWN * abs(x)


def beta_from_alpha(alpha: float) -> float:
    if not (0.0 < alpha <= 1.0):
        raise InvalidInput(f"alpha must lie in (0, 1], got {alpha}")
    return alpha**-2.5 * math.pi / (2.0 * ideal_simplex_volume())


def cusp_volume(lattice: CuspLattice) -> float:
    """Volume of the horoball cusp above a cross-section: half its area."""
    return 0.5 * lattice_area(lattice)


def hyperbolic_norm(vol: float) -> float:
    """Gromov norm of a hyperbolic manifold of the given volume."""
    if not vol > 0:
        raise InvalidInput(f"volume must be positive, got {vol}")
    return vol / ideal_simplex_volume()


def norm_volume_lower_bound(vol: float, kappa_sup: float) -> float:
    """Gromov-norm lower bound ``2 (-k_sup)^(3/2) vol / pi`` for curvature <= k_sup < 0."""
    if not vol > 0:
        raise InvalidInput(f"volume must be positive, got {vol}")
    if not kappa_sup < 0:
        raise InvalidInput(f"kappa_sup must be negative, got {kappa_sup}")
    return 2.0 * (-kappa_sup) ** 1.5 * vol / math.pi


def curvature_scaling(kappa_sup: float, lam: float) -> float:
    """Curvature bound after scaling the metric by lam."""
    if not lam > 0:
        raise InvalidInput(f"scale factor must be positive, got {lam}")
    return kappa_sup / lam**2


@dataclass(frozen=True)
class HyperbolicDatum:
    volume: float
    gromov_norm: float | None = None

    def __post_init__(self):
        if not self.volume > 0:
            raise InvalidInput(f"volume must be positive, got {self.volume}")
        if self.gromov_norm is not None:
            if not self.gromov_norm > 0:
                raise InvalidInput(f"Gromov norm must be positive, got {self.gromov_norm}")
            expected = ideal_simplex_volume() * self.gromov_norm
            if abs(self.volume - expected) > NORM_CONSISTENCY_RTOL * expected:
                raise InvalidInput(
                    f"volume {self.volume:.12g} != v3 * norm = {expected:.12g} (rtol {NORM_CONSISTENCY_RTOL:g})"
                )


def _resolve_alpha(length: float, alpha: float | None) -> tuple[float, str]:
    if not length > TWO_PI:
        raise PreconditionError(f"minimal filling length {length:.12g} does not exceed 2pi")
    if alpha is not None:
        if not (0.0 < alpha <= 1.0):
            raise InvalidInput(f"alpha must lie in (0, 1], got {alpha}")
        return alpha, "supplied"
    from cuspgauge.torus_metric import alpha_estimate

    est = alpha_estimate(length)
    return est.a, f"estimated from solid-torus profile at t = {est.t_star:.12g}"


@dataclass
class BoundReport:
    alpha: float
    length: float
    volume_lower: float
    curvature_interval: tuple[float, float]
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "length": self.length,
            "volume_lower_bound": self.volume_lower,
            "curvature_interval": list(self.curvature_interval),
            "notes": self.notes,
        }


def propagate_filling_bounds(vol_x: float, length: float, alpha: float | None = None) -> BoundReport:
    """Volume and curvature bounds for the filled manifold; ``length`` is the shortest filling slope."""
    if not vol_x > 0:
        raise InvalidInput(f"volume must be positive, got {vol_x}")
    a, source = _resolve_alpha(length, alpha)
    return BoundReport(
        alpha=a,
        length=length,
        volume_lower=_round_down(a * vol_x),
        curvature_interval=(-1.0 / a, -a),
        notes=[f"alpha {source}", "volume bound is strict: Vol(filled) > alpha * Vol(X)"],
    )


@dataclass
class GromovInterval:
    """Half-open interval ``[lo, hi)`` for the Gromov norm of the unfilled manifold."""

    lo: float
    hi: float
    alpha: float
    beta: float
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "alpha": self.alpha, "beta": self.beta, "notes": self.notes}


def gromov_interval(norm_filled: float, length: float, alpha: float | None = None) -> GromovInterval:
    if not norm_filled >= 0:
        raise InvalidInput(f"Gromov norm must be nonnegative, got {norm_filled}")
    a, source = _resolve_alpha(length, alpha)
    beta = beta_from_alpha(a)
    notes = [f"alpha {source}"]
    if norm_filled == 0:
        log.warning("filled manifold has zero Gromov norm; the interval is empty")
        notes.append("degenerate: zero norm propagates to an empty interval")
    return GromovInterval(norm_filled, norm_filled * beta, a, beta, notes)
