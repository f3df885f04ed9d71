"""Acceptance criteria 1-13.

Each test carries a ``criterion`` marker; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.  Tolerances below are
the pinned acceptance values.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from cuspgauge import bounds, cli, filling, surfaces
from cuspgauge import torus_metric as tm
from cuspgauge.lattice import Slope, enumerate_slopes, intersection_number, verify_length_product

from conftest import random_admissible_lattice

TWO_PI = 2 * math.pi
SQRT3 = math.sqrt(3.0)
L1_GRID = (6.5, 7.0, 8.0, 10.0, 15.0, 20.0)

GEOMETRY_TOL = 1e-9
CONE_TOL = 1e-6
FD_TOL = 1e-5
L2_TOL = 1e-9
COLLAR_VOLUME_TOL = 1e-8
MONOTONE_SLACK = 1e-3
V3_TOL = 1e-10


def criterion(n, title):
    return pytest.mark.criterion(n, title)


# 1 ----------------------------------------------------------------------------


@criterion(1, "length product >= sqrt3 * Delta on 500 random admissible lattices, lengths <= 15, < 30 s")
def test_length_product_suite():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = math.inf
    pairs = 0
    for i in range(500):
        lat = random_admissible_lattice(rng)
        meas = enumerate_slopes(lat, 15.0)
        p = np.array([m.slope.p for m in meas])
        q = np.array([m.slope.q for m in meas])
        length = np.array([m.length for m in meas])
        delta = np.abs(np.outer(p, q) - np.outer(q, p))
        iu = np.triu_indices(len(meas), 1)
        slack = np.outer(length, length)[iu] - SQRT3 * delta[iu]
        worst = min(worst, float(slack.min()))
        pairs += slack.size
        if i % 50 == 0:
            # spot-check the library routine on a few pairs
            for a, b in zip(meas[:5], meas[5:10]):
                assert verify_length_product(lat, a.slope, b.slope, 1.0)["holds"]
    elapsed = time.perf_counter() - start
    assert pairs > 100_000
    assert worst >= -GEOMETRY_TOL
    assert elapsed < 30.0


# 2 ----------------------------------------------------------------------------


@criterion(2, "threshold 22 and eps = 23 sqrt3 / 2pi - 2pi")
def test_threshold_reproduction():
    assert math.ceil(4 * math.pi**2 / SQRT3) - 1 == 22
    assert filling.distance_threshold() == 22
    bound = filling.lower_bound_from_reference(23, "short")
    assert bound == 23 * SQRT3 / TWO_PI
    eps = filling.epsilon_for_distance(23)
    assert eps == pytest.approx(23 * SQRT3 / TWO_PI - TWO_PI, abs=1e-15)
    assert eps > 0 and filling.epsilon_for_distance(22) < 0
    assert round(eps, 3) == 0.057


# 3 ----------------------------------------------------------------------------


@criterion(3, "two-slope margin (2pi + eps)^2 = 23 sqrt3")
def test_two_slope_threshold():
    eps = filling.two_slope_epsilon()
    assert eps == pytest.approx(3**0.25 * math.sqrt(23) - TWO_PI, abs=1e-15)
    assert (TWO_PI + eps) ** 2 == pytest.approx(23 * SQRT3, abs=1e-9)
    assert eps == pytest.approx(0.0284, abs=1e-4)


# 4 ----------------------------------------------------------------------------


@criterion(4, "short-slope census <= 48 on 1000 random admissible lattices")
def test_census_bound():
    rng = np.random.default_rng(4)
    worst = 0
    for _ in range(1000):
        lat = random_admissible_lattice(rng, max_area=4.0)
        census = filling.short_slope_census(lat)
        assert census["within_limit"], census["count"]
        worst = max(worst, census["count"])
    assert worst <= 48


# 5 ----------------------------------------------------------------------------


def _build_targets():
    out = []
    for l1 in L1_GRID:
        est = tm.alpha_estimate(l1)
        mid = 0.5 * (est.t_min + 0.99)
        out += [(l1, est.t_star), (l1, mid)]
    return out


@criterion(5, "metric builds on the l1 grid: cone 2pi +- 1e-6, curvature < 0, FD agreement <= 1e-5, < 60 s")
def test_metric_builder():
    start = time.perf_counter()
    for l1, t in _build_targets():
        profile = tm.build_profile(l1, 1.0, t)
        assert abs(profile.cone_slope - TWO_PI) <= CONE_TOL
        rep = tm.curvature_report(profile, rtol=FD_TOL)
        assert rep.max_fd_discrepancy <= FD_TOL
        for arr in (rep.k12, rep.k13, rep.k23):
            assert np.all(arr < 0)
        assert rep.kappa_sup < 0
    assert time.perf_counter() - start < 60.0


# 6 ----------------------------------------------------------------------------


@criterion(6, "curvatures and volume ratio independent of l2 in {0.5, 1, 5}")
@pytest.mark.parametrize("l1, t", [(7.0, 0.85), (10.0, 0.5), (20.0, 0.3)])
def test_l2_invariance(l1, t):
    reports, ratios = [], []
    for l2 in (0.5, 1.0, 5.0):
        profile = tm.build_profile(l1, l2, t)
        reports.append(tm.curvature_report(profile))
        ratios.append(tm.volume_ratio(profile))
    for rep in reports[1:]:
        for name in ("k12", "k13", "k23"):
            np.testing.assert_allclose(getattr(rep, name), getattr(reports[0], name), rtol=0, atol=L2_TOL)
    assert max(ratios) - min(ratios) <= L2_TOL


# 7 ----------------------------------------------------------------------------


@criterion(7, "collar volume increment l1 l2 (e^2c - 1)/2 within 1e-8 and certificate non-decreasing, 20 cases")
def test_collar_laws():
    rng = np.random.default_rng(7)
    for _ in range(20):
        l1 = rng.uniform(6.5, 20.0)
        t_lo = (TWO_PI / l1) ** 2 * (1 + 1e-6)
        t = rng.uniform(t_lo, 0.99)
        l2 = rng.uniform(0.2, 5.0)
        c = rng.uniform(0.05, 2.0)
        base = tm.build_profile(l1, l2, t)
        ext = tm.attach_collar(base, c)
        increment = tm.volume(ext) - tm.volume(base)
        expected = base.l1 * base.l2 * math.expm1(2 * c) / 2
        assert abs(increment - expected) <= COLLAR_VOLUME_TOL * max(1.0, expected)
        assert tm.pinch_certificate(ext).a >= tm.pinch_certificate(base).a


# 8 ----------------------------------------------------------------------------


@criterion(8, "alpha estimate non-decreasing on the l1 grid, in (0,1), a(50) > a(7)")
def test_alpha_monotone():
    values = [tm.alpha_estimate(l1).a for l1 in L1_GRID]
    assert all(0 < a < 1 for a in values)
    assert all(b >= a - MONOTONE_SLACK for a, b in zip(values, values[1:]))
    a50 = tm.alpha_estimate(50.0).a
    assert a50 > tm.alpha_estimate(7.0).a
    assert a50 >= 0.8


# 9 ----------------------------------------------------------------------------


@criterion(9, "v3 series matches the Lobachevsky integral to 1e-10; norm(2 v3) = 2")
def test_v3_oracle():
    integral, _ = quad(lambda u: -math.log(2 * math.sin(u)), 0.0, math.pi / 3, limit=200, epsabs=1e-14, epsrel=1e-14)
    v3 = bounds.ideal_simplex_volume()
    assert abs(v3 - 3 * integral) <= V3_TOL
    assert abs(bounds.hyperbolic_norm(2 * v3) - 2) <= 1e-9


# 10 ---------------------------------------------------------------------------


@criterion(10, "beta = alpha^(-5/2) pi / (2 v3) at alpha in {1, 0.5, 0.25}; interval hi/lo = beta")
@pytest.mark.parametrize("alpha", [1.0, 0.5, 0.25])
def test_beta_formula(alpha):
    integral, _ = quad(lambda u: -math.log(2 * math.sin(u)), 0.0, math.pi / 3, limit=200, epsabs=1e-14, epsrel=1e-14)
    expected = alpha**-2.5 * math.pi / (2 * 3 * integral)
    beta = bounds.beta_from_alpha(alpha)
    assert beta == pytest.approx(expected, rel=1e-12)
    for norm in (1.0, 2.0, 4.0):
        iv = bounds.gromov_interval(norm, 7.0, alpha)
        assert iv.beta == beta
        assert iv.hi / iv.lo == beta


# 11 ---------------------------------------------------------------------------


@criterion(11, "genus-1 max |q| = 22; min_genus(max_q(g)) = g for g <= 50; l = 2pi, chi = -1 rejected")
def test_surface_suite():
    assert surfaces.max_denominator(1) == 22
    for g in range(1, 51):
        assert surfaces.min_genus(surfaces.max_denominator(g)) == g
    rep = surfaces.boundary_area_audit(TWO_PI, 1, surfaces.SurfaceData(1, 1))
    assert rep["euler"] == -1
    assert rep["consistent"] is False


# 12 ---------------------------------------------------------------------------


@criterion(12, "branched covers: indices >= 7 certify, index <= 6 fails, Vol = r Vol(base)")
@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(st.integers(7, 50), st.floats(1.0, 10.0)), min_size=1, max_size=6),
    st.integers(1, 40),
    st.floats(0.9, 100.0),
)
def test_branched_cover_pass(lifts, degree, base_volume):
    spec = filling.BranchedCoverSpec(degree, [i for i, _ in lifts], [m for _, m in lifts], base_volume)
    rep = filling.certify_branched_cover(spec)
    assert rep["verdict"] == "certified"
    assert min(rep["lifted_lengths"]) >= 7 > TWO_PI
    assert rep["cover_volume"] == degree * base_volume


@criterion(12, "branched covers: indices >= 7 certify, index <= 6 fails, Vol = r Vol(base)")
@pytest.mark.parametrize("index", range(1, 7))
def test_branched_cover_fail(index):
    spec = filling.BranchedCoverSpec(3, [index, 9], [1.0, 1.0])
    assert filling.certify_branched_cover(spec)["verdict"] == "not-certified"


# 13 ---------------------------------------------------------------------------

DETERMINISM_ARGV = [
    ["cusp", "analyze", "--v1", "1.3,0.2", "--v2", "-0.1,1.7"],
    ["fill", "fraction", "1/23"],
    ["metric", "build", "--l1", "8", "--t", "0.7", "--samples", "2001"],
    ["bounds", "gromov", "--norm-filled", "2", "--length", "7", "--alpha", "1"],
]


@criterion(13, "CLI reports byte-identical across runs; exit-code matrix")
@pytest.mark.parametrize("argv", DETERMINISM_ARGV, ids=lambda a: " ".join(a[:2]))
def test_cli_determinism(argv):
    runs = [subprocess.run([sys.executable, "-m", "cuspgauge", *argv], capture_output=True) for _ in range(2)]
    assert runs[0].stdout == runs[1].stdout
    assert runs[0].returncode == runs[1].returncode
    assert runs[0].stdout.startswith(b"{")


@criterion(13, "CLI reports byte-identical across runs; exit-code matrix")
@pytest.mark.parametrize(
    "argv, code",
    [
        (["fill", "fraction", "1/23"], 0),
        (["fill", "fraction", "5/22"], 1),
        (["metric", "build", "--l1", "6.0", "--t", "0.5"], 2),
        (["metric", "build", "--l1", "7", "--t", "0.2"], 1),
        (["cusp", "short-census", "--v1", "2,0", "--v2", "0,2", "--maximal"], 0),
        (["surface", "audit", "--length", "6.283185307179586", "--curves", "1", "--genus", "1", "--boundary", "1"], 1),
        (["no-such-command"], 2),
    ],
)
def test_cli_exit_codes(argv, code):
    got, _ = cli.run_command(argv)
    assert got == code
