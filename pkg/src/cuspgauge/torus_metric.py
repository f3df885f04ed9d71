"""Negatively curved metrics on the filling solid torus.

The metric is the warped product ``dr^2 + f(r)^2 dmu^2 + g(r)^2 dlambda^2``
on ``r0 <= r <= 0`` with unit periods in ``mu`` and ``lambda``.  The core
circle sits at ``r0`` where ``f`` vanishes with slope ``2pi`` (cone angle
``2pi``), and at ``r = 0`` both profiles are exactly exponential so the
metric matches a hyperbolic cusp.

Profiles solve ``y'' = q(r) y`` with a piecewise constant driver ``q``.
Writing ``s = r - r0`` and ``h = y'/y`` (so ``h' = q - h^2``):

* ``g``: ``q = 1 + t`` from the core until ``h_g`` reaches 1, then ``q = 1``.
* ``f``: ``q = 1 + t`` for ``0 <= s <= s1``, then ``q = 1 - t`` until
  ``h_f`` reaches 1, then ``q = 1``.

Once ``h = 1`` and ``q = 1`` the log-derivative stays at 1 exactly, so the
hyperbolic match is exact.  Every phase has a closed-form solution; the only
free parameter is the switch point ``s1``, chosen by shooting so that
``f(0) = l1``.  Since ``f'' >= (1 - t) f`` the meridian can be no shorter
than ``2pi / sqrt(t)``; below that the requested ``t`` is infeasible.

Sectional curvatures of the coordinate planes are
``-f''/f``, ``-g''/g`` and ``-f'g'/(fg)``.  They are reported from the stored
derivatives and, independently, from finite differences of the sampled
``f`` and ``g``.  Curvature jumps where ``q`` switches, so samples are laid
out segment by segment with nodes on every switch point, and difference
stencils never straddle a switch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from cuspgauge.config import tolerances
from cuspgauge.errors import Infeasible, InvalidInput, NoCertificate, NumericalInconsistency

TWO_PI = 2.0 * math.pi

DEFAULT_SAMPLES = 10_001
SHOOTING_RTOL = 1e-8
FD_AGREEMENT_RTOL = 1e-5
SIGN_TOL = 1e-8
CORE_EXCLUDED = 2
# segments with fewer nodes than this are too short for a 6-point stencil
MIN_FD_NODES = 7
# difference step (in r) near the optimum of truncation vs roundoff error
FD_STEP = 2e-3


@dataclass(frozen=True)
class GridOptions:
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if int(self.samples) != self.samples or self.samples < 101:
            raise InvalidInput("grid needs at least 101 samples")


@dataclass
class Segment:
    """One constant-driver piece; arrays include both end nodes."""

    s: np.ndarray
    f: np.ndarray
    df: np.ndarray
    d2f: np.ndarray
    g: np.ndarray
    dg: np.ndarray
    d2g: np.ndarray
    q_f: float
    q_g: float

    @property
    def length(self) -> float:
        return float(self.s[-1] - self.s[0])

    def scaled_g(self, c: float) -> "Segment":
        return replace(self, g=self.g * c, dg=self.dg * c, d2g=self.d2g * c)


@dataclass
class MetricProfile:
    segments: list[Segment]
    t: float
    switch: float
    r0: float
    has_core: bool = True
    spacing: float = 0.0

    @property
    def s(self) -> np.ndarray:
        return _concat(self.segments, "s")

    @property
    def r(self) -> np.ndarray:
        return self.s + self.r0

    @property
    def f(self) -> np.ndarray:
        return _concat(self.segments, "f")

    @property
    def df(self) -> np.ndarray:
        return _concat(self.segments, "df")

    @property
    def d2f(self) -> np.ndarray:
        return _concat(self.segments, "d2f")

    @property
    def g(self) -> np.ndarray:
        return _concat(self.segments, "g")

    @property
    def dg(self) -> np.ndarray:
        return _concat(self.segments, "dg")

    @property
    def d2g(self) -> np.ndarray:
        return _concat(self.segments, "d2g")

    @property
    def l1(self) -> float:
        return float(self.segments[-1].f[-1])

    @property
    def l2(self) -> float:
        return float(self.segments[-1].g[-1])

    @property
    def r_outer(self) -> float:
        return float(self.segments[-1].s[-1] + self.r0)

    @property
    def cone_slope(self) -> float:
        return float(self.segments[0].df[0])

    @property
    def breakpoints(self) -> list[float]:
        return [float(seg.s[0] + self.r0) for seg in self.segments[1:]]

    def outer_log_derivatives(self) -> tuple[float, float]:
        last = self.segments[-1]
        return float(last.df[-1] / last.f[-1]), float(last.dg[-1] / last.g[-1])

    def with_l2(self, l2: float) -> "MetricProfile":
        c = l2 / self.l2
        return replace(self, segments=[seg.scaled_g(c) for seg in self.segments])

    def to_rows(self) -> list[dict]:
        cols = ("r", "f", "df", "d2f", "g", "dg", "d2g")
        arrays = [getattr(self, c) for c in cols]
        return [dict(zip(cols, map(float, vals))) for vals in zip(*arrays)]


def _concat(segments: list[Segment], name: str) -> np.ndarray:
    parts = [getattr(segments[0], name)]
    parts += [getattr(seg, name)[1:] for seg in segments[1:]]
    return np.concatenate(parts)


def _propagate(y0: float, dy0: float, q: float, u):
    """Solution of y'' = q y with y(0) = y0, y'(0) = dy0, evaluated at u >= 0."""
    w = math.sqrt(q)
    ch, sh = np.cosh(w * u), np.sinh(w * u)
    y = y0 * ch + (dy0 / w) * sh
    dy = y0 * w * sh + dy0 * ch
    return y, dy


@dataclass(frozen=True)
class _Plan:
    """Switch points of a profile with unit g at the core."""

    t: float
    s1: float
    s_f: float
    s_g: float
    f1: float
    df1: float
    f_hyp: float
    g_hyp: float

    @property
    def s_end(self) -> float:
        return max(self.s_f, self.s_g)

    @property
    def meridian(self) -> float:
        return self.f_hyp * math.exp(self.s_end - self.s_f)


def _plan(t: float, s1: float) -> _Plan:
    k = math.sqrt(1.0 + t)
    w = math.sqrt(1.0 - t)
    f1 = TWO_PI / k * math.sinh(k * s1)
    df1 = TWO_PI * math.cosh(k * s1)
    # first u with f' = f in the 1 - t phase
    ratio = w * (df1 - f1) / (df1 - w * w * f1)
    if not ratio < 1.0:
        raise Infeasible(f"t = {t:.3g} is too small to resolve the transition band")
    u = math.atanh(ratio) / w
    f_hyp, _ = _propagate(f1, df1, 1.0 - t, u)
    s_g = math.atanh(1.0 / k) / k
    g_hyp = math.cosh(k * s_g)
    return _Plan(t, s1, s1 + u, s_g, f1, df1, float(f_hyp), g_hyp)


def minimal_meridian(t: float) -> float:
    """Shortest meridian reachable at pinching t (switch point s1 = 0)."""
    _check_t(t)
    return _plan(t, 0.0).meridian


def _check_t(t: float):
    if not (0.0 < t < 1.0):
        raise InvalidInput(f"target pinching t must lie in (0, 1), got {t}")


def is_feasible(l1: float, t: float) -> bool:
    return minimal_meridian(t) <= l1 * (1.0 + SHOOTING_RTOL)


def _shoot(l1: float, t: float) -> _Plan:
    base = _plan(t, 0.0)
    if base.meridian >= l1:
        if base.meridian <= l1 * (1.0 + SHOOTING_RTOL):
            return base
        raise Infeasible(
            f"l1 = {l1:.12g} is below the shortest meridian {base.meridian:.12g} reachable at t = {t:.12g}"
        )

    def miss(s1):
        return _plan(t, s1).meridian - l1

    hi = 0.5
    while miss(hi) < 0:
        hi *= 2.0
        if hi > 100.0:
            raise Infeasible(f"shooting failed to bracket l1 = {l1:.12g} at t = {t:.12g}")
    s1 = brentq(miss, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    plan = _plan(t, s1)
    if abs(plan.meridian - l1) > SHOOTING_RTOL * l1:
        raise Infeasible(f"shooting missed l1 = {l1:.12g}: got {plan.meridian:.12g}")
    return plan


def _phase_f(plan: _Plan, s: np.ndarray):
    """f, f', q_f on s, all inside a single phase of f."""
    t = plan.t
    mid = float(0.5 * (s[0] + s[-1]))
    if mid <= plan.s1:
        k = math.sqrt(1.0 + t)
        return TWO_PI / k * np.sinh(k * s), TWO_PI * np.cosh(k * s), 1.0 + t
    if mid <= plan.s_f:
        y, dy = _propagate(plan.f1, plan.df1, 1.0 - t, s - plan.s1)
        return y, dy, 1.0 - t
    y = plan.f_hyp * np.exp(s - plan.s_f)
    return y, y.copy(), 1.0


def _phase_g(plan: _Plan, s: np.ndarray):
    mid = float(0.5 * (s[0] + s[-1]))
    if mid <= plan.s_g:
        k = math.sqrt(1.0 + plan.t)
        return np.cosh(k * s), k * np.sinh(k * s), 1.0 + plan.t
    y = plan.g_hyp * np.exp(s - plan.s_g)
    return y, y.copy(), 1.0


def _segment_nodes(a: float, b: float, spacing: float) -> np.ndarray:
    n = max(1, int(round((b - a) / spacing)))
    nodes = np.linspace(a, b, n + 1)
    nodes[0], nodes[-1] = a, b
    return nodes


def _sample(plan: _Plan, grid: GridOptions) -> tuple[list[Segment], float]:
    cuts = sorted({0.0, plan.s1, plan.s_f, plan.s_g})
    cuts = [c for c in cuts if c <= plan.s_end]
    if cuts[-1] < plan.s_end:
        cuts.append(plan.s_end)
    spacing = plan.s_end / (grid.samples - 1)
    segments = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        s = _segment_nodes(a, b, spacing)
        f, df, qf = _phase_f(plan, s)
        g, dg, qg = _phase_g(plan, s)
        segments.append(Segment(s, f, df, qf * f, g, dg, qg * g, qf, qg))
    return segments, spacing


def _check_signs(profile: MetricProfile):
    tol = SIGN_TOL
    for seg in profile.segments:
        inner = seg.s > 0 if profile.has_core else np.ones_like(seg.s, dtype=bool)
        for name in ("f", "g"):
            if np.any(getattr(seg, name)[inner] <= 0):
                raise NumericalInconsistency(f"{name} is not positive on (r0, 0]")
        for name in ("df", "d2f", "dg", "d2g"):
            arr = getattr(seg, name)[inner]
            if np.any(arr < -tol * np.maximum(1.0, np.abs(arr))):
                raise NumericalInconsistency(f"{name} is negative somewhere on (r0, 0]")


def build_profile(l1: float, l2: float, t: float, grid: GridOptions | None = None) -> MetricProfile:
    """Solid-torus profile with meridian l1, longitude l2 and target pinching t.

    Raises :class:`InvalidInput` if ``l1 <= 2pi`` and :class:`Infeasible`
    when ``t`` is too small for ``l1`` (``l1 < 2pi / sqrt(t)``).
    """
    grid = grid or GridOptions()
    if not math.isfinite(l1) or not l1 > TWO_PI:
        raise InvalidInput(f"meridian length l1 must exceed 2pi, got {l1}")
    if not math.isfinite(l2) or not l2 > 0:
        raise InvalidInput(f"longitude length l2 must be positive, got {l2}")
    _check_t(t)
    plan = _shoot(l1, t)
    segments, spacing = _sample(plan, grid)
    g_scale = l2 / segments[-1].g[-1]
    segments = [seg.scaled_g(g_scale) for seg in segments]
    profile = MetricProfile(segments, t=t, switch=plan.s1, r0=-plan.s_end, spacing=spacing)
    _check_signs(profile)
    if abs(profile.cone_slope - TWO_PI) > tolerances().ode:
        raise NumericalInconsistency(f"cone slope {profile.cone_slope:.12g} differs from 2pi")
    return profile


def collar_profile(l1: float, l2: float, c: float, grid: GridOptions | None = None) -> MetricProfile:
    """A bare hyperbolic collar ``f = l1 e^r``, ``g = l2 e^r`` on ``[0, c]``; it has no core."""
    grid = grid or GridOptions()
    if not (l1 > 0 and l2 > 0 and c > 0):
        raise InvalidInput("collar needs positive l1, l2 and c")
    s = np.linspace(0.0, c, grid.samples)
    f = l1 * np.exp(s)
    g = l2 * np.exp(s)
    seg = Segment(s, f, f.copy(), f.copy(), g, g.copy(), g.copy(), 1.0, 1.0)
    return MetricProfile([seg], t=0.0, switch=0.0, r0=0.0, has_core=False, spacing=c / (grid.samples - 1))


def attach_collar(profile: MetricProfile, c: float) -> MetricProfile:
    """Extend a profile by a hyperbolic collar of width c (meridian grows by e^c)."""
    if not (c > 0) or not math.isfinite(c):
        raise InvalidInput(f"collar width must be positive, got {c}")
    hf, hg = profile.outer_log_derivatives()
    tol = tolerances().ode
    if abs(hf - 1.0) > tol or abs(hg - 1.0) > tol:
        raise InvalidInput(f"outer end is not hyperbolic (f'/f = {hf:.12g}, g'/g = {hg:.12g})")
    last = profile.segments[-1]
    a = float(last.s[-1])
    s = _segment_nodes(a, a + c, profile.spacing or c / 1000)
    u = s - a
    f = last.f[-1] * np.exp(u)
    g = last.g[-1] * np.exp(u)
    seg = Segment(s, f, f.copy(), f.copy(), g, g.copy(), g.copy(), 1.0, 1.0)
    return replace(profile, segments=[*profile.segments, seg])


# -- finite differences -------------------------------------------------------


@lru_cache(maxsize=None)
def _fd_weights(offsets: tuple[int, ...], order: int) -> np.ndarray:
    """Weights w with sum_j w_j y(x + o_j h) ~ h^order y^(order)(x)."""
    o = np.array(offsets, dtype=float)
    n = len(o)
    a = np.vander(o, n, increasing=True).T
    rhs = np.zeros(n)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(a, rhs)


def _fd(y: np.ndarray, h: float, order: int, stride: int = 1) -> np.ndarray:
    """4th-order accurate derivative of uniformly sampled y.

    Stencil nodes are ``stride`` samples apart: central five-point inside,
    shifted windows (five nodes for first, six for second derivatives) near
    the ends so no stencil leaves the array.
    """
    n, m = len(y), stride
    out = np.empty(n)
    lo, hi = 2 * m, n - 2 * m
    central = _fd_weights((-2, -1, 0, 1, 2), order)
    out[lo:hi] = sum(w * y[lo + j * m : hi + j * m] for j, w in zip(range(-2, 3), central))
    width = 5 if order == 1 else 6
    for i in [*range(0, min(lo, n)), *range(max(hi, lo), n)]:
        kmin, kmax = -(i // m), (n - 1 - i) // m
        k0 = min(max(kmin, -(width // 2)), kmax - width + 1)
        offsets = tuple(range(k0, k0 + width))
        idx = [i + k * m for k in offsets]
        out[i] = float(np.dot(_fd_weights(offsets, order), y[idx]))
    return out / (h * m) ** order


def _stride(n: int, h: float) -> int:
    """Stencil stride balancing truncation (~step^4) against roundoff (~eps/step^2)."""
    m = max(1, int(FD_STEP / h))
    return max(1, min(m, (n - 1) // 6))


@dataclass
class CurvatureReport:
    r: np.ndarray
    k12: np.ndarray
    k13: np.ndarray
    k23: np.ndarray
    kappa_inf: float
    kappa_sup: float
    excluded_core_samples: int
    max_fd_discrepancy: float
    fd_checked_samples: int
    fd_skipped_samples: int

    @property
    def passing(self) -> bool:
        return self.kappa_inf <= self.kappa_sup < 0

    def summary(self) -> dict:
        return {
            "kappa_inf": self.kappa_inf,
            "kappa_sup": self.kappa_sup,
            "samples": int(self.r.size),
            "excluded_core_samples": self.excluded_core_samples,
            "max_fd_discrepancy": self.max_fd_discrepancy,
            "fd_checked_samples": self.fd_checked_samples,
            "fd_skipped_samples": self.fd_skipped_samples,
        }


def _rel_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # floor the scale so a curvature crossing zero does not divide by ~0
    if b.size == 0:
        return np.zeros(0)
    floor = max(1e-6 * float(np.max(np.abs(b))), 1e-300)
    return np.abs(a - b) / np.maximum(np.abs(b), floor)


def curvature_report(profile: MetricProfile, rtol: float = FD_AGREEMENT_RTOL) -> CurvatureReport:
    """Sectional curvatures from stored derivatives, cross-checked by finite differences.

    The two samples nearest the core are skipped because the polar
    coordinates degenerate there.  Raises :class:`NumericalInconsistency`
    when the two evaluations disagree by more than ``rtol`` (relative).
    """
    s_all = profile.s
    cutoff = s_all[CORE_EXCLUDED - 1] if profile.has_core else -np.inf
    excluded = CORE_EXCLUDED if profile.has_core else 0
    rs, k12s, k13s, k23s = [], [], [], []
    extremes = []
    worst = 0.0
    checked = skipped = 0
    for idx, seg in enumerate(profile.segments):
        keep = seg.s > cutoff
        k12 = -seg.d2f[keep] / seg.f[keep]
        k13 = -seg.d2g[keep] / seg.g[keep]
        k23 = -(seg.df[keep] * seg.dg[keep]) / (seg.f[keep] * seg.g[keep])
        if k12.size:
            extremes += [k12.min(), k13.min(), k23.min(), k12.max(), k13.max(), k23.max()]
        if len(seg.s) >= MIN_FD_NODES:
            h = (seg.s[-1] - seg.s[0]) / (len(seg.s) - 1)
            m = _stride(len(seg.s), h)
            fd_d2f, fd_d2g = _fd(seg.f, h, 2, m)[keep], _fd(seg.g, h, 2, m)[keep]
            fd_df, fd_dg = _fd(seg.f, h, 1, m)[keep], _fd(seg.g, h, 1, m)[keep]
            f, g = seg.f[keep], seg.g[keep]
            gaps = [
                _rel_gap(-fd_d2f / f, k12),
                _rel_gap(-fd_d2g / g, k13),
                _rel_gap(-(fd_df * fd_dg) / (f * g), k23),
            ]
            if k12.size:
                worst = max(worst, max(float(x.max()) for x in gaps))
            checked += int(keep.sum())
        else:
            skipped += int(keep.sum())
        drop_first = 1 if idx > 0 and keep[0] else 0
        rs.append(seg.s[keep][drop_first:] + profile.r0)
        k12s.append(k12[drop_first:])
        k13s.append(k13[drop_first:])
        k23s.append(k23[drop_first:])
    report = CurvatureReport(
        r=np.concatenate(rs),
        k12=np.concatenate(k12s),
        k13=np.concatenate(k13s),
        k23=np.concatenate(k23s),
        kappa_inf=float(min(extremes)),
        kappa_sup=float(max(extremes)),
        excluded_core_samples=excluded,
        max_fd_discrepancy=worst,
        fd_checked_samples=checked,
        fd_skipped_samples=skipped,
    )
    if worst > rtol:
        raise NumericalInconsistency(
            f"finite-difference curvature disagrees with stored derivatives by {worst:.3e} (> {rtol:g})"
        )
    return report


def volume(profile: MetricProfile) -> float:
    """Riemannian volume: the integral of f g dr (unit mu and lambda periods), by composite Simpson."""
    total = 0.0
    for seg in profile.segments:
        total += float(simpson(seg.f * seg.g, x=seg.s))
    return total


def boundary_area(profile: MetricProfile) -> float:
    return profile.l1 * profile.l2


def volume_ratio(profile: MetricProfile) -> float:
    """Volume divided by half the boundary area."""
    return 2.0 * volume(profile) / boundary_area(profile)


@dataclass
class PinchCertificate:
    a: float
    kappa_inf: float
    kappa_sup: float
    volume_ratio: float
    l1: float
    t: float
    curvature: CurvatureReport = field(repr=False)

    @property
    def measured_pinching(self) -> float:
        """Smallest t-hat with all curvatures in [-1 - t-hat, -1 + t-hat]."""
        return max(-1.0 - self.kappa_inf, 1.0 + self.kappa_sup)

    @property
    def curvature_ok(self) -> bool:
        return -1.0 / self.a <= self.kappa_inf <= self.kappa_sup <= -self.a

    @property
    def volume_ok(self) -> bool:
        return self.volume_ratio >= self.a

    @property
    def valid(self) -> bool:
        return 0.0 < self.a < 1.0 and self.curvature_ok and self.volume_ok

    @property
    def alpha_half(self) -> float:
        """Half the certified constant: the convention in which alpha is defined as half a supremum."""
        return 0.5 * self.a

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "alpha_half": self.alpha_half,
            "kappa_inf": self.kappa_inf,
            "kappa_sup": self.kappa_sup,
            "volume_ratio": self.volume_ratio,
            "measured_pinching": self.measured_pinching,
            "l1": self.l1,
            "t": self.t,
            "valid": self.valid,
        }


def pinch_certificate(profile: MetricProfile) -> PinchCertificate:
    """The largest a with curvatures in [-1/a, -a] and volume ratio >= a."""
    report = curvature_report(profile)
    if report.kappa_sup >= 0:
        raise NoCertificate(f"a sectional curvature is nonnegative (sup = {report.kappa_sup:.6g})")
    ratio = volume_ratio(profile)
    a = min(-report.kappa_sup, -1.0 / report.kappa_inf, ratio)
    return PinchCertificate(a, report.kappa_inf, report.kappa_sup, ratio, profile.l1, profile.t, report)


# -- alpha ------------------------------------------------------------------------

T_UPPER = 0.99
T_FLOOR = 1e-12
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchOptions:
    t_upper: float = T_UPPER
    bisection_tol: float = 1e-12
    golden_tol: float = 1e-6
    grid: GridOptions = GridOptions()


@dataclass
class AlphaEstimate:
    l1: float
    t_min: float
    t_star: float
    certificate: PinchCertificate

    @property
    def a(self) -> float:
        return self.certificate.a


def minimal_feasible_t(l1: float, tol: float = 1e-12) -> float:
    """Smallest t at which l1 can be built, by bisection on feasibility."""
    if not l1 > TWO_PI:
        raise InvalidInput(f"meridian length l1 must exceed 2pi, got {l1}")
    lo, hi = T_FLOOR, 1.0
    if is_feasible(l1, lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_feasible(l1, mid):
            hi = mid
        else:
            lo = mid
    return hi


def _certified_a(l1: float, t: float, grid: GridOptions) -> tuple[float, PinchCertificate | None]:
    try:
        cert = pinch_certificate(build_profile(l1, 1.0, t, grid))
    except (Infeasible, NoCertificate, NumericalInconsistency):
        return -math.inf, None
    return (cert.a if cert.valid else -math.inf), cert


def alpha_estimate(l1: float, options: SearchOptions | None = None) -> AlphaEstimate:
    """Best certified constant a over the target pinching t, by golden-section search.

    This is a lower bound for the optimal constant of the whole profile
    family; the half-supremum convention is ``certificate.alpha_half``.
    """
    options = options or SearchOptions()
    t_min = minimal_feasible_t(l1, options.bisection_tol)
    if t_min >= 1.0:
        raise Infeasible(f"no feasible t for l1 = {l1:.12g}")
    lo = t_min
    hi = options.t_upper if t_min < options.t_upper else 0.5 * (t_min + 1.0)
    seen: dict[float, tuple[float, PinchCertificate | None]] = {}

    def score(t):
        if t not in seen:
            seen[t] = _certified_a(l1, t, options.grid)
        return seen[t][0]

    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    a, b = lo, hi
    while b - a > options.golden_tol:
        if score(x1) >= score(x2):
            b, x2 = x2, x1
            x1 = b - GOLDEN * (b - a)
        else:
            a, x1 = x1, x2
            x2 = a + GOLDEN * (b - a)
    score(lo)
    score(hi)
    score(0.5 * (a + b))
    t_star = max(sorted(seen), key=lambda t: seen[t][0])
    best, cert = seen[t_star]
    if cert is None or not math.isfinite(best):
        raise Infeasible(f"no certified profile found for l1 = {l1:.12g}")
    return AlphaEstimate(l1, t_min, t_star, cert)


CURVE_COLUMNS = ("l1", "t_star", "a", "kappa_inf", "kappa_sup", "volume_ratio", "status")


def alpha_curve(l1_grid, options: SearchOptions | None = None) -> list[dict]:
    """One row per grid point, in input order; infeasible points are marked, not dropped."""
    rows = []
    for l1 in l1_grid:
        l1 = float(l1)
        row = dict.fromkeys(CURVE_COLUMNS)
        row["l1"] = l1
        try:
            est = alpha_estimate(l1, options)
        except (InvalidInput, Infeasible) as exc:
            row["status"] = f"infeasible: {exc}"
        else:
            cert = est.certificate
            row.update(
                t_star=est.t_star,
                a=cert.a,
                kappa_inf=cert.kappa_inf,
                kappa_sup=cert.kappa_sup,
                volume_ratio=cert.volume_ratio,
                status="ok",
            )
        rows.append(row)
    return rows
