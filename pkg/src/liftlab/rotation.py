"""Certified translation numbers.

The translation number of a lift F is the limit of (F^n(x) - x)/n.  Exact
rational values are detected through periodic orbits; otherwise iteration
yields a rational enclosure whose width shrinks like 1/n because the
displacement of any lift spreads over less than one unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ResourceLimit
from .lifts import PLLift, ResourceGuard


@dataclass(frozen=True)
class CertifiedInterval:
    """Rational interval guaranteed to contain an exact real invariant."""

    lo: Fraction
    hi: Fraction
    exact: bool = False

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if self.exact and self.lo != self.hi:
            raise ValueError("exact interval must be degenerate")

    @staticmethod
    def point(value: Fraction) -> "CertifiedInterval":
        return CertifiedInterval(value, value, exact=True)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "CertifiedInterval") -> "CertifiedInterval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return CertifiedInterval(lo, hi, exact=self.exact or other.exact or lo == hi)

    def __add__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(
            self.lo + other.lo, self.hi + other.hi, self.exact and other.exact
        )

    def __sub__(self, other: "CertifiedInterval") -> "CertifiedInterval":
        return CertifiedInterval(
            self.lo - other.hi, self.hi - other.lo, self.exact and other.exact
        )

    def __neg__(self) -> "CertifiedInterval":
        return CertifiedInterval(-self.hi, -self.lo, self.exact)

    def __abs__(self) -> "CertifiedInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedInterval(Fraction(0), max(-self.lo, self.hi), False)

    def scaled(self, n: int) -> "CertifiedInterval":
        if n >= 0:
            return CertifiedInterval(self.lo * n, self.hi * n, self.exact)
        return CertifiedInterval(self.hi * n, self.lo * n, self.exact)

    def shifted(self, c: Fraction) -> "CertifiedInterval":
        return CertifiedInterval(self.lo + c, self.hi + c, self.exact)

    def to_payload(self) -> dict:
        from .documents import frac_str

        return {"lo": frac_str(self.lo), "hi": frac_str(self.hi), "exact": self.exact}


@dataclass(frozen=True)
class TauResult:
    """Outcome of a translation-number computation.

    `rational_value` is set only when a periodic orbit proves the value, in
    which case the interval is the exact point p/q (`degree` p, `period` q).
    """

    interval: CertifiedInterval
    rational_value: Optional[Fraction] = None
    period: Optional[int] = None
    degree: Optional[int] = None
    iterations_used: int = 0

    def __post_init__(self):
        if self.rational_value is not None:
            assert self.interval.exact
            assert self.interval.lo == self.rational_value

    def to_payload(self) -> dict:
        from .documents import frac_str

        payload = self.interval.to_payload()
        payload["iterations"] = self.iterations_used
        if self.rational_value is not None:
            payload["rational"] = frac_str(self.rational_value)
            payload["q"] = self.period
            payload["p"] = self.degree
        return payload


class _PowerCache:
    """Incrementally built powers of one lift, shared across strategies."""

    def __init__(self, lift: PLLift, guard: Optional[ResourceGuard] = None):
        self.guard = guard
        self.powers: dict[int, PLLift] = {1: lift}

    def get(self, n: int) -> PLLift:
        assert n >= 1
        cached = self.powers.get(n)
        if cached is not None:
            return cached
        half = self.get(n // 2)
        rest = self.get(n - n // 2)
        result = half.compose(rest, self.guard)
        self.powers[n] = result
        return result


def tau_bounds(
    F: PLLift, n: int, guard: Optional[ResourceGuard] = None
) -> CertifiedInterval:
    """Enclosure [min_disp(F^n)/n, max_disp(F^n)/n] of the translation number.

    Strictly narrower than 1/n since displacement spreads over less than 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = F.power(n, guard).displacement_extrema()
    lo = s.min_disp / n
    hi = s.max_disp / n
    return CertifiedInterval(lo, hi, exact=lo == hi)


def tau_rational(
    F: PLLift, q_max: int, guard: Optional[ResourceGuard] = None
) -> Optional[Fraction]:
    """Smallest-period rational translation number p/q with q <= q_max.

    F has translation number p/q iff the displacement of F^q attains the
    integer p; the displacement range is shorter than 1, so the candidate p
    is unique and the test is an exact comparison.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    found = _detect_rational(_PowerCache(F, guard), q_max)
    return None if found is None else Fraction(found[0], found[1])


def _detect_rational(cache: _PowerCache, q_max: int) -> Optional[tuple[int, int]]:
    for q in range(1, q_max + 1):
        s = cache.get(q).displacement_extrema()
        p = math.ceil(s.min_disp)
        if p <= s.max_disp:
            return p, q
    return None


def tau(
    F: PLLift,
    width_target: Fraction = Fraction(1, 64),
    q_max: int = 32,
    guard: Optional[ResourceGuard] = None,
    max_iterations: int = 1 << 20,
) -> TauResult:
    """Translation number: exact rational when a period <= q_max exists,
    otherwise a certified enclosure narrower than width_target."""
    if width_target <= 0:
        raise ValueError("width_target must be positive")
    cache = _PowerCache(F, guard)
    found = _detect_rational(cache, q_max)
    if found is not None:
        p, q = found
        return TauResult(
            interval=CertifiedInterval.point(Fraction(p, q)),
            rational_value=Fraction(p, q),
            period=q,
            degree=p,
            iterations_used=q,
        )
    n = 1
    best: Optional[CertifiedInterval] = None
    while True:
        s = cache.get(n).displacement_extrema()
        current = CertifiedInterval(s.min_disp / n, s.max_disp / n)
        best = current if best is None else best.intersection(current)
        if best.width < width_target:
            return TauResult(interval=best, iterations_used=n)
        if n >= max_iterations:
            raise ResourceLimit(
                f"width {best.width} not below {width_target} after n={n}"
            )
        n *= 2
