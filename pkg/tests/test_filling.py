import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cuspgauge.errors import DegeneratePair, InvalidInput, InvalidSlope, PreconditionError
from cuspgauge.filling import (
    BranchedCoverSpec,
    FillingSpec,
    certify_branched_cover,
    certify_two_pi,
    classify_slope,
    distance_criterion_audit,
    distance_threshold,
    epsilon_for_distance,
    lower_bound_from_reference,
    short_slope_census,
    surgery_fraction_check,
    two_slope_epsilon,
)
from cuspgauge.lattice import CuspLattice, Slope, enumerate_slopes, intersection_number, minimal_slope

from conftest import random_admissible_lattice

TWO_PI = 2 * math.pi
SQRT3 = math.sqrt(3.0)
SQUARE2 = CuspLattice.from_lists((2.0, 0.0), (0.0, 2.0), claimed_maximal=True)


def single(lat, s, eps=0.0):
    return FillingSpec((("c", lat, s),), eps)


class TestClassify:
    def test_square(self):
        c = classify_slope(SQUARE2, Slope(1, 0))
        assert c.short and c.minimal
        c = classify_slope(SQUARE2, Slope(3, 1))
        assert c.length == pytest.approx(2 * math.sqrt(10))
        assert not c.short and not c.minimal

    def test_boundary_counts_as_short(self):
        lat = CuspLattice.from_lists((TWO_PI, 0.0), (0.0, 7.0))
        assert classify_slope(lat, Slope(1, 0)).short

    def test_minimal_slope_is_minimal(self, rng):
        for _ in range(20):
            lat = random_admissible_lattice(rng)
            assert classify_slope(lat, minimal_slope(lat).slope).minimal


class TestCertify:
    def test_long_slope(self):
        lat = CuspLattice.from_lists((7.0, 0.0), (0.0, 7.0))
        cert = certify_two_pi(single(lat, Slope(1, 0)))
        assert cert.certified and cert.min_length == 7.0

    def test_short_slope(self):
        lat = CuspLattice.from_lists((1.0, 0.0), (0.0, SQRT3), claimed_maximal=True)
        assert not certify_two_pi(single(lat, Slope(1, 0))).certified

    def test_two_cusps_margin(self):
        a = CuspLattice.from_lists((7.0, 0.0), (0.0, 7.0))
        b = CuspLattice.from_lists((6.5, 0.0), (0.0, 7.0))
        spec = FillingSpec((("a", a, Slope(1, 0)), ("b", b, Slope(1, 0))), 0.3)
        cert = certify_two_pi(spec)
        assert cert.min_length == 6.5
        assert cert.threshold == pytest.approx(6.5832, abs=1e-4)
        assert cert.verdict == "not-certified"
        assert set(cert.as_dict()["measurements"]) == {"a", "b"}

    def test_exactly_two_pi_not_certified(self):
        lat = CuspLattice.from_lists((TWO_PI, 0.0), (0.0, 9.0))
        assert not certify_two_pi(single(lat, Slope(1, 0))).certified

    def test_spec_validation(self):
        lat = CuspLattice.from_lists((7.0, 0.0), (0.0, 7.0))
        with pytest.raises(InvalidInput):
            FillingSpec((("a", lat, Slope(1, 0)), ("a", lat, Slope(0, 1))))
        with pytest.raises(InvalidInput):
            single(lat, Slope(1, 0), -0.1)
        with pytest.raises(InvalidInput):
            FillingSpec(())

    def test_monotone_in_epsilon_and_scale(self, rng):
        for _ in range(30):
            lat = random_admissible_lattice(rng)
            s = enumerate_slopes(lat, 10.0)[-1].slope
            verdicts = [certify_two_pi(single(lat, s, e)).certified for e in (0.0, 0.1, 0.5, 2.0)]
            assert verdicts == sorted(verdicts, reverse=True)
            base = certify_two_pi(single(lat, s)).min_length
            assert certify_two_pi(single(lat.scaled(1.5), s)).min_length >= base


class TestCensus:
    def test_square(self):
        census = short_slope_census(SQUARE2)
        assert census["count"] == 8 and census["within_limit"]

    def test_large(self):
        x = TWO_PI + 1
        lat = CuspLattice.from_lists((x, 0.0), (0.0, x), claimed_maximal=True)
        assert short_slope_census(lat)["count"] == 0

    def test_requires_maximal(self):
        with pytest.raises(PreconditionError):
            short_slope_census(CuspLattice.from_lists((2.0, 0.0), (0.0, 2.0)))

    def test_equals_enumeration(self, rng):
        for _ in range(50):
            lat = random_admissible_lattice(rng)
            census = short_slope_census(lat)
            assert census["slopes"] == enumerate_slopes(lat, TWO_PI)
            assert census["count"] <= 48


class TestThresholds:
    def test_reference_bounds(self):
        assert lower_bound_from_reference(23, "short") == pytest.approx(23 * SQRT3 / TWO_PI, rel=1e-15)
        assert lower_bound_from_reference(23, "short") == pytest.approx(6.3403, abs=1e-4)
        assert lower_bound_from_reference(4, "minimal") == pytest.approx(6.9282, abs=1e-4)
        assert lower_bound_from_reference(22, "short") == pytest.approx(6.0646, abs=1e-4)
        assert lower_bound_from_reference(22, "short") < TWO_PI
        with pytest.raises(InvalidInput):
            lower_bound_from_reference(0, "short")
        with pytest.raises(InvalidInput):
            lower_bound_from_reference(3, "tiny")

    @given(st.integers(1, 10_000))
    def test_short_below_minimal(self, d):
        assert lower_bound_from_reference(d, "short") < lower_bound_from_reference(d, "minimal")

    def test_constants(self):
        assert distance_threshold() == 22
        assert 4 * math.pi**2 / SQRT3 == pytest.approx(22.7929, abs=1e-4)
        assert epsilon_for_distance(23) == pytest.approx(23 * SQRT3 / TWO_PI - TWO_PI, rel=1e-12)
        assert epsilon_for_distance(23) == pytest.approx(0.0571, abs=1e-4)
        eps = two_slope_epsilon()
        assert (TWO_PI + eps) ** 2 == pytest.approx(23 * SQRT3, abs=1e-9)
        assert eps == pytest.approx(0.0284, abs=1e-4)

    def test_fraction(self):
        rep = surgery_fraction_check(1, 23)
        assert rep["satisfied"] and rep["implied_length_bound"] == pytest.approx(6.3403, abs=1e-4)
        assert not surgery_fraction_check(5, 22)["satisfied"]
        with pytest.raises(InvalidSlope):
            surgery_fraction_check(2, 46)

    @given(st.integers(-200, 200), st.integers(-200, 200))
    def test_fraction_matches_q(self, p, q):
        if math.gcd(p, q) != 1:
            return
        if q == 0 and abs(p) != 1:
            return
        assert surgery_fraction_check(p, q)["satisfied"] == (abs(q) >= 23)


class TestAudit:
    def test_short_reference(self):
        # tall rectangle: meridian (1,0) short, s = (p, 23) has Delta = 23
        lat = CuspLattice.from_lists((1.0, 0.0), (0.0, 2.0), claimed_maximal=True)
        rep = distance_criterion_audit(lat, Slope(1, 23), Slope(1, 0))
        assert rep["reference_short"] and rep["intersection_number"] == 23
        assert rep["hypothesis"]["short"]
        assert rep["bound_consistent"]

    def test_strict_22(self):
        lat = CuspLattice.from_lists((1.0, 0.0), (0.0, 2.0), claimed_maximal=True)
        rep = distance_criterion_audit(lat, Slope(1, 22), Slope(1, 0))
        assert rep["hypothesis"]["short"] is False

    def test_minimal_reference(self):
        lat = CuspLattice.from_lists((1.0, 0.0), (0.0, 2.0), claimed_maximal=True)
        rep = distance_criterion_audit(lat, Slope(1, 4), Slope(1, 0))
        assert rep["reference_minimal"] and rep["hypothesis"]["minimal"]
        assert rep["implied_bounds"]["minimal"] == pytest.approx(6.9282, abs=1e-4)

    def test_weakened_minimal_bound(self):
        # shortest 1.5 but area 2.025 < sqrt3 * 1.5^2: the sqrt3 Delta form is not implied
        lat = CuspLattice.from_lists((1.5, 0.0), (0.7, 1.35), claimed_maximal=True)
        rep = distance_criterion_audit(lat, Slope(1, 4), Slope(1, 0))
        assert rep["implied_bounds"]["minimal"] == pytest.approx(SQRT3 * 4 / 1.5)
        assert rep["notes"]

    def test_non_admissible_implies_nothing(self):
        lat = CuspLattice.from_lists((1.0, 0.0), (0.5, SQRT3 / 2))
        rep = distance_criterion_audit(lat, Slope(1, 23), Slope(1, 0))
        assert rep["implied_bound"] is None and rep["bound_consistent"]

    def test_degenerate(self):
        with pytest.raises(DegeneratePair):
            distance_criterion_audit(SQUARE2, Slope(1, 0), Slope(1, 0))

    def test_implied_bound_sound(self, rng):
        for _ in range(60):
            lat = random_admissible_lattice(rng)
            refs = enumerate_slopes(lat, TWO_PI)[:4]
            for e in refs:
                for m in enumerate_slopes(lat, 30.0)[::7]:
                    if m.slope == e.slope:
                        continue
                    rep = distance_criterion_audit(lat, m.slope, e.slope)
                    assert rep["bound_consistent"], rep
                    assert rep["intersection_number"] == intersection_number(m.slope, e.slope)


class TestBranchedCover:
    def test_index_seven_pair(self):
        rep = certify_branched_cover(BranchedCoverSpec(3, (7, 7), (1.0, 1.2), 2.0))
        assert rep["lifted_lengths"] == pytest.approx([7.0, 8.4])
        assert rep["verdict"] == "certified"
        assert rep["cover_volume"] == 6.0
        assert rep["base_volume_ok"]

    def test_index_six(self):
        rep = certify_branched_cover(BranchedCoverSpec(2, (6, 9), (1.0, 1.0)))
        assert rep["verdict"] == "not-certified"

    def test_inclusive_seven(self):
        rep = certify_branched_cover(BranchedCoverSpec(7, (7,), (1.0,)))
        assert rep["verdict"] == "certified" and rep["exceeds_two_pi"]

    def test_small_base_volume_flagged(self):
        rep = certify_branched_cover(BranchedCoverSpec(2, (7,), (1.0,), 0.5))
        assert not rep["base_volume_ok"]

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(degree=0, branching_indices=(7,), meridian_lengths=(1.0,)),
            dict(degree=2, branching_indices=(0,), meridian_lengths=(1.0,)),
            dict(degree=2, branching_indices=(7,), meridian_lengths=(0.9,)),
            dict(degree=2, branching_indices=(7, 8), meridian_lengths=(1.0,)),
            dict(degree=2, branching_indices=(7,), meridian_lengths=(1.0,), base_volume=-1.0),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidInput):
            BranchedCoverSpec(**kwargs)
