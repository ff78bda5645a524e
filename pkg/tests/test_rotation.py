from fractions import Fraction as F

import pytest

from liftlab.lifts import PLLift
from liftlab.rotation import CertifiedInterval, tau, tau_bounds, tau_rational

ID = PLLift.identity()


def lift(*samples):
    return PLLift.from_samples(samples)


SAWTOOTH = lift((0, F(1, 8)), (F(1, 2), F(3, 4)))


class TestCertifiedInterval:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            CertifiedInterval(F(1), F(0))

    def test_exact_must_be_degenerate(self):
        with pytest.raises(ValueError):
            CertifiedInterval(F(0), F(1), exact=True)

    def test_arithmetic(self):
        a = CertifiedInterval(F(1, 4), F(1, 2))
        b = CertifiedInterval.point(F(1, 4))
        assert (a + b).lo == F(1, 2)
        assert (a - b) == CertifiedInterval(F(0), F(1, 4))
        assert (-a) == CertifiedInterval(F(-1, 2), F(-1, 4))
        assert abs(CertifiedInterval(F(-1, 2), F(1, 4))) == CertifiedInterval(
            F(0), F(1, 2)
        )

    def test_intersection(self):
        a = CertifiedInterval(F(0), F(1, 2))
        b = CertifiedInterval(F(1, 4), F(3, 4))
        assert a.intersection(b) == CertifiedInterval(F(1, 4), F(1, 2))


class TestTauBounds:
    def test_translation_exact_at_n1(self):
        got = tau_bounds(PLLift.translation(F(1, 3)), 1)
        assert got == CertifiedInterval.point(F(1, 3))

    def test_fixed_point_interval_contains_zero(self):
        f = lift((0, F(1, 4)), (F(1, 2), F(1, 2)))  # displacement touches 0
        for n in (1, 2, 5):
            got = tau_bounds(f, n)
            assert got.lo <= 0 <= got.hi

    def test_width_shrinks_and_intervals_intersect(self):
        f = lift((0, F(1, 8)), (F(1, 2), F(3, 4)))
        i16 = tau_bounds(f, 16)
        i32 = tau_bounds(f, 32)
        assert i16.width < F(1, 16)
        assert i16.intersects(i32)
        meet = i16.intersection(i32)
        assert i16.lo <= meet.lo and meet.hi <= i16.hi

    def test_width_below_one_over_n(self):
        for i, f in enumerate(_corpus(20)):
            for n in (1, 4, 16):
                assert tau_bounds(f, n).width < F(1, n)

    def test_deck_translation_shift(self):
        f = SAWTOOTH
        a = tau_bounds(f, 8)
        b = tau_bounds(f.translated(1), 8)
        assert (b.lo, b.hi) == (a.lo + 1, a.hi + 1)

    def test_inverse_negates(self):
        f = SAWTOOTH
        a = tau_bounds(f, 8)
        b = tau_bounds(f.inverse(), 8)
        assert (b.lo, b.hi) == (-a.hi, -a.lo)


class TestTauRational:
    def test_translation_two_fifths(self):
        f = PLLift.translation(F(2, 5))
        assert tau_rational(f, 4) is None
        assert tau_rational(f, 5) == F(2, 5)

    def test_period_two_orbit(self):
        f = lift((0, F(1, 2)), (F(1, 2), 1))
        assert f.power(2) == PLLift.translation(1)
        assert tau_rational(f, 2) == F(1, 2)

    def test_identity(self):
        assert tau_rational(ID, 1) == 0

    def test_no_small_period(self):
        # Two-slope lift whose certified interval excludes all p/q, q <= 10.
        f = _no_small_period_lift(10)
        assert tau_rational(f, 10) is None


class TestTau:
    def test_exact_translation(self):
        r = tau(PLLift.translation(F(1, 3)))
        assert r.rational_value == F(1, 3)
        assert r.interval.exact
        assert (r.degree, r.period) == (1, 3)

    def test_deck_translation(self):
        f = SAWTOOTH
        a = tau(f, q_max=6)
        b = tau(f.translated(1), q_max=6)
        if a.rational_value is not None:
            assert b.rational_value == a.rational_value + 1
        else:
            assert (b.interval.lo, b.interval.hi) == (
                a.interval.lo + 1,
                a.interval.hi + 1,
            )

    def test_inverse_negates_interval(self):
        f = _no_small_period_lift(6)
        a = tau(f, width_target=F(1, 32), q_max=6)
        b = tau(f.inverse(), width_target=F(1, 32), q_max=6)
        assert b.interval.intersects(-a.interval)

    def test_width_target_met(self):
        f = _no_small_period_lift(8)
        r = tau(f, width_target=F(1, 100), q_max=8)
        assert r.rational_value is None
        assert r.interval.width < F(1, 100)

    def test_rational_value_inside_all_bounds(self):
        f = lift((0, F(1, 2)), (F(1, 2), 1))
        value = tau(f, q_max=4).rational_value
        for n in (1, 2, 4, 8):
            assert tau_bounds(f, n).contains(value)

    def test_homogeneity_exact(self):
        f = lift((0, F(1, 2)), (F(1, 2), 1))  # tau = 1/2
        for n in range(1, 6):
            r = tau(f.power(n), q_max=8)
            assert r.rational_value == F(n, 2)


class TestMonotoneConsistency:
    def test_pointwise_order_implies_interval_order(self):
        f = SAWTOOTH
        g = PLLift.from_samples([(x, y + F(1, 16)) for x, y in f.samples()])
        # g >= f pointwise, so tau(f) <= tau(g): the f interval cannot sit
        # strictly above the g interval.
        a = tau(f, q_max=6).interval
        b = tau(g, q_max=6).interval
        assert a.lo <= b.hi


def _corpus(count):
    out = []
    for i in range(count):
        off = F(i - count // 2, 7)
        out.append(
            PLLift.from_samples(
                [
                    (0, off + F(1, 9 + i % 4)),
                    (F(1, 3), F(1, 3) + off - F(1, 11 + i % 3)),
                    (F(2, 3), F(2, 3) + off + F(i % 5, 17)),
                ]
            )
        )
    return out


def _no_small_period_lift(q_max):
    """Two-slope lift tuned by bisection until the n=64 enclosure excludes
    every rational with denominator <= q_max."""
    lo, hi = F(1, 16), F(15, 16)
    for _ in range(40):
        mid = (lo + hi) / 2
        f = PLLift.from_samples([(0, mid), (F(1, 2), mid + F(9, 16))])
        box = tau_bounds(f, 64)
        if _excludes_small_rationals(box, q_max):
            return f
        # Steer by the mediant-free heuristic: nudge the offset.
        lo, hi = (mid, hi) if (lo + hi) % 2 == 0 else (lo + (hi - lo) / 3, hi)
        hi = hi - (hi - lo) / 5
    raise AssertionError("bisection failed to avoid small periods")


def _excludes_small_rationals(box, q_max):
    for q in range(1, q_max + 1):
        p_lo = (box.lo * q).__ceil__()
        p_hi = (box.hi * q).__floor__()
        if p_lo <= p_hi:
            return False
    return True
