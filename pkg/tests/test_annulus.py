from fractions import Fraction as F

from liftlab.annulus import AnnulusLift
from liftlab.lifts import PLLift

ID = PLLift.identity()
TWIST = AnnulusLift.twist_power(1)


def lift(*samples):
    return PLLift.from_samples(samples)


def translations(c0, c1):
    return AnnulusLift(PLLift.translation(c0), PLLift.translation(c1))


class TestConstruction:
    def test_identity_pair(self):
        a = AnnulusLift.identity()
        assert a.is_identity()

    def test_twist(self):
        assert TWIST.lower == ID
        assert TWIST.upper == PLLift.translation(1)

    def test_twist_power_negative(self):
        a = AnnulusLift.twist_power(-2)
        assert a.upper == PLLift.translation(-2)
        assert a.rho().lo == -2


class TestRho:
    def test_twist_exact_one(self):
        r = TWIST.rho()
        assert r.exact and r.lo == 1

    def test_twist_powers_homogeneous(self):
        for n in range(-20, 21):
            r = AnnulusLift.twist_power(n).rho()
            assert r.exact and r.lo == n

    def test_translation_pair(self):
        r = translations(F(1, 3), F(3, 4)).rho()
        assert r.exact and r.lo == F(5, 12)

    def test_lift_invariance(self):
        a = AnnulusLift(lift((0, F(1, 8)), (F(1, 2), F(3, 4))), PLLift.translation(2))
        base = a.rho(q_max=6)
        for k in range(-3, 4):
            shifted = a.translated(k).rho(q_max=6)
            assert shifted.intersects(base)


class TestAlpha:
    def test_twist(self):
        assert TWIST.alpha() == 1

    def test_equal_traces(self):
        assert translations(F(1, 2), F(1, 2)).alpha() == 0

    def test_displacement_band(self):
        upper = lift((0, F(1, 4)), (F(1, 2), F(7, 8)))  # gap in [1/4, 3/8]
        a = AnnulusLift(ID, upper)
        assert a.alpha() == F(1, 4)

    def test_lift_invariance(self):
        a = AnnulusLift(ID, lift((0, F(1, 4)), (F(1, 2), F(7, 8))))
        for k in range(-3, 4):
            assert a.translated(k).alpha() == a.alpha()

    def test_zero_iff_gap_changes_sign(self):
        upper = lift((0, F(-1, 4)), (F(1, 2), F(5, 8)))  # gap crosses 0
        assert AnnulusLift(ID, upper).alpha() == 0

    def test_nonnegative(self):
        assert translations(F(3, 4), F(-1, 2)).alpha() == F(5, 4)


class TestFlip:
    def test_twist_flip(self):
        flipped = TWIST.flip()
        assert flipped.lower == PLLift.translation(1)
        assert flipped.upper == ID
        assert flipped.rho().lo == -1

    def test_involution_and_alpha_preserved(self):
        pairs = [
            translations(F(i, 7), F(i % 3, 5)) for i in range(10)
        ] + [
            AnnulusLift(
                lift((0, F(i % 4, 8)), (F(1, 2), F(1, 2) + F(i % 3 + 1, 8))),
                PLLift.translation(F(i, 6)),
            )
            for i in range(10)
        ]
        for a in pairs:
            assert a.flip().flip() == a
            assert a.flip().alpha() == a.alpha()


class TestRecenter:
    def test_shift_down(self):
        a = translations(F(5, 2), F(7, 2))
        r = a.recenter()
        assert r.k == -3 and not r.flipped
        assert r.annulus == translations(F(-1, 2), F(1, 2))

    def test_already_centered(self):
        a = AnnulusLift(ID, PLLift.translation(2))
        r = a.recenter()
        assert r.k == 0 and r.annulus == a

    def test_integer_shift(self):
        a = translations(1, 3)
        r = a.recenter()
        assert r.k == -1
        assert r.annulus == AnnulusLift(ID, PLLift.translation(2))

    def test_negative_twist_flips(self):
        a = AnnulusLift(PLLift.translation(2), ID)
        r = a.recenter()
        assert r.flipped
        assert r.annulus.upper(r.base_point) - r.annulus.lower(r.base_point) == 2

    def test_postcondition_bounds(self):
        samples = [
            translations(F(5, 2), F(7, 2)),
            AnnulusLift(lift((0, F(1, 8)), (F(1, 2), F(3, 4))), PLLift.translation(3)),
            AnnulusLift(PLLift.translation(F(-7, 3)), PLLift.translation(F(1, 3))),
        ]
        for a in samples:
            r = a.recenter()
            x0 = r.base_point
            d0 = r.annulus.lower(x0) - x0
            assert -1 < d0 <= 0
            alpha = a.alpha()
            assert r.annulus.upper(x0) - x0 < alpha.__floor__() + 1
            assert r.annulus.alpha() == alpha


class TestComposition:
    def test_twist_squares(self):
        assert TWIST.compose(TWIST) == AnnulusLift.twist_power(2)

    def test_inverse(self):
        a = AnnulusLift(lift((0, F(1, 8)), (F(1, 2), F(3, 4))), PLLift.translation(2))
        assert a.compose(a.inverse()) == AnnulusLift.identity()

    def test_componentwise(self):
        a = AnnulusLift(ID, PLLift.translation(F(1, 2)))
        b = AnnulusLift(PLLift.translation(F(1, 4)), ID)
        assert a.compose(b) == translations(F(1, 4), F(1, 2))


class TestRhoAlphaGap:
    def test_twist_powers_gap_zero(self):
        for n in range(-12, 13):
            a = AnnulusLift.twist_power(n)
            assert abs(abs(a.rho().lo) - a.alpha()) == 0

    def test_translation_pairs_gap_zero(self):
        a = translations(F(1, 3), F(3, 4))
        assert abs(a.rho().lo) == a.alpha()

    def test_gap_at_most_two_on_mixed_pairs(self):
        pairs = [
            AnnulusLift(
                lift((0, F(i % 3, 8)), (F(1, 2), F(1, 2) + F(i % 2 + 1, 8))),
                PLLift.translation(F(2 * i - 5, 3)),
            )
            for i in range(12)
        ]
        for a in pairs:
            rho = a.rho(q_max=8)
            alpha = a.alpha()
            # distance from alpha to the |rho| interval
            mag = abs(rho)
            dist = max(mag.lo - alpha, alpha - mag.hi, F(0))
            assert dist <= 2
