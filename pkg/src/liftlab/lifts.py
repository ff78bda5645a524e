"""Exact piecewise-linear lifts of circle homeomorphisms.

A lift is an increasing homeomorphism F of the real line that commutes with
the unit translation, F(x+1) = F(x)+1.  We store one period of breakpoint
samples (x, F(x)) with x in [0, 1) and interpolate linearly in between; the
equivariance relation extends the map to the whole line.  All coordinates are
`fractions.Fraction`, so every operation below is exact and equality of maps
is decidable on the canonical form.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DuplicateX,
    InvariantViolation,
    NonIncreasingY,
    PeriodViolation,
    ResourceLimit,
    XOutOfRange,
)

RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class ResourceGuard:
    """Optional hard limits; operations raise ResourceLimit instead of degrading.

    `max_denominator_bits` bounds the bit length of every breakpoint
    denominator, `max_breakpoints` the canonical sample count.
    """

    max_breakpoints: Optional[int] = None
    max_denominator_bits: Optional[int] = None

    def check(self, lift: "PLLift") -> "PLLift":
        if self.max_breakpoints is not None and len(lift.xs) > self.max_breakpoints:
            raise ResourceLimit(
                f"{len(lift.xs)} breakpoints exceed limit {self.max_breakpoints}"
            )
        if self.max_denominator_bits is not None:
            for x, y in zip(lift.xs, lift.ys):
                if (
                    x.denominator.bit_length() > self.max_denominator_bits
                    or y.denominator.bit_length() > self.max_denominator_bits
                ):
                    raise ResourceLimit(
                        f"denominator exceeds {self.max_denominator_bits} bits"
                    )
        return lift


@dataclass(frozen=True)
class DisplacementSummary:
    """Exact extrema of the periodic displacement x -> F(x) - x.

    argmin/argmax are the leftmost attaining breakpoints in [0, 1).
    min_abs_disp is 0 exactly when the displacement vanishes somewhere.
    """

    min_disp: Fraction
    max_disp: Fraction
    argmin: Fraction
    argmax: Fraction
    min_abs_disp: Fraction


class PLLift:
    """Canonical piecewise-linear lift.

    The canonical form keeps exactly the true breakpoints (points where the
    slope changes), except for pure translations x + c which are stored as the
    single sample (0, c).  Two PLLift objects are equal iff they represent the
    same map.
    """

    __slots__ = ("xs", "ys", "_slopes")

    def __init__(self, xs: Sequence[Fraction], ys: Sequence[Fraction]):
        # Internal constructor: expects already-canonical data.
        object.__setattr__(self, "xs", tuple(xs))
        object.__setattr__(self, "ys", tuple(ys))
        object.__setattr__(self, "_slopes", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PLLift is immutable")

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_samples(
        samples: Iterable[tuple[RationalLike, RationalLike]],
        guard: Optional[ResourceGuard] = None,
    ) -> "PLLift":
        """Build the canonical lift through the given (x, F(x)) samples.

        x values must lie in [0, 1) and be pairwise distinct; y values must be
        strictly increasing in x order with y_last < y_first + 1.  Samples that
        are collinear with their neighbours are pruned.
        """
        pts = [(_frac(x), _frac(y)) for x, y in samples]
        if not pts:
            raise InvariantViolation("at least one sample is required")
        for x, _ in pts:
            if not (ZERO <= x < ONE):
                raise XOutOfRange(f"sample x = {x} outside [0, 1)")
        pts.sort(key=lambda p: p[0])
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if x0 == x1:
                raise DuplicateX(f"duplicate sample x = {x0}")
        ys = [y for _, y in pts]
        for y0, y1 in zip(ys, ys[1:]):
            if y1 <= y0:
                raise NonIncreasingY(f"y values {y0} -> {y1} not increasing")
        if ys[-1] >= ys[0] + 1:
            raise PeriodViolation(
                f"y span {ys[-1] - ys[0]} >= 1 breaks the period-1 extension"
            )
        lift = PLLift(*_canonicalize(pts))
        if guard is not None:
            guard.check(lift)
        return lift

    @staticmethod
    def identity() -> "PLLift":
        return PLLift((ZERO,), (ZERO,))

    @staticmethod
    def translation(c: RationalLike) -> "PLLift":
        return PLLift((ZERO,), (_frac(c),))

    # -- basic queries -----------------------------------------------------

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        """Slope on each segment [x_i, x_{i+1}) with the periodic wrap last."""
        cached = self._slopes
        if cached is None:
            xs, ys = self.xs, self.ys
            n = len(xs)
            cached = tuple(
                (ys[(i + 1) % n] + (i + 1 == n) - ys[i])
                / (xs[(i + 1) % n] + (i + 1 == n) - xs[i])
                for i in range(n)
            )
            object.__setattr__(self, "_slopes", cached)
        return cached

    def is_identity(self) -> bool:
        return self.xs == (ZERO,) and self.ys == (ZERO,)

    def is_translation(self) -> Optional[Fraction]:
        """The constant c when the map equals x + c, else None."""
        if len(self.xs) == 1:
            return self.ys[0] - self.xs[0]
        return None

    def evaluate(self, x: RationalLike) -> Fraction:
        """Exact value of the lift at x; equivariant under x -> x + 1."""
        x = _frac(x)
        xs, ys = self.xs, self.ys
        if len(xs) == 1:
            return x + (ys[0] - xs[0])
        shift = (x - xs[0]).__floor__()
        x0 = x - shift
        i = bisect_right(xs, x0) - 1  # xs[i] <= x0 < xs[i+1] (or last segment)
        if i + 1 < len(xs):
            xa, ya, xb, yb = xs[i], ys[i], xs[i + 1], ys[i + 1]
        else:
            xa, ya, xb, yb = xs[-1], ys[-1], xs[0] + 1, ys[0] + 1
        if x0 == xa:
            return ya + shift
        return ya + (x0 - xa) * (yb - ya) / (xb - xa) + shift

    __call__ = evaluate

    # -- group operations ----------------------------------------------------

    def compose(self, other: "PLLift", guard: Optional[ResourceGuard] = None) -> "PLLift":
        """self after other: x -> self(other(x)). Exact; breakpoints merge."""
        pts: list[tuple[Fraction, Fraction]] = []
        # Breakpoints of `other` survive; self(other(x)) = self(y) at samples.
        for x, y in zip(other.xs, other.ys):
            pts.append((x, self.evaluate(y)))
        # Breakpoints of `self` pull back through other^{-1}.
        inv = other.inverse()
        for b in self.xs:
            x = inv.evaluate(b)
            shift = x.__floor__()
            pts.append((x - shift, self.evaluate(b) - shift))
        pts.sort(key=lambda p: p[0])
        dedup = [pts[0]]
        for p in pts[1:]:
            if p[0] != dedup[-1][0]:
                dedup.append(p)
        lift = PLLift(*_canonicalize(dedup))
        if guard is not None:
            guard.check(lift)
        return lift

    def inverse(self) -> "PLLift":
        """Exact inverse lift; compose(inverse()) is the identity."""
        pts = []
        for x, y in zip(self.xs, self.ys):
            shift = y.__floor__()
            pts.append((y - shift, x - shift))
        pts.sort(key=lambda p: p[0])
        return PLLift(*_canonicalize(pts))

    def translated(self, k: int) -> "PLLift":
        """The lift F + k, the deck-transformation ambiguity of lifts."""
        return PLLift(self.xs, tuple(y + k for y in self.ys))

    def power(self, n: int, guard: Optional[ResourceGuard] = None) -> "PLLift":
        """Exact n-fold composition; negative n goes through the inverse."""
        if n == 0:
            return PLLift.identity()
        base = self if n > 0 else self.inverse()
        n = abs(n)
        result: Optional[PLLift] = None
        sq = base
        while n:
            if n & 1:
                result = sq if result is None else result.compose(sq, guard)
            n >>= 1
            if n:
                sq = sq.compose(sq, guard)
        assert result is not None
        return result

    def reflect_conjugate(self) -> "PLLift":
        """Conjugation by x -> -x; an involution that negates displacement."""
        pts = []
        for x, y in zip(self.xs, self.ys):
            if x == 0:
                pts.append((ZERO, -y))
            else:
                pts.append((ONE - x, ONE - y))
        pts.sort(key=lambda p: p[0])
        return PLLift(*_canonicalize(pts))

    # -- displacement ---------------------------------------------------------

    def displacement_extrema(self) -> DisplacementSummary:
        """Exact extrema of F(x) - x; attained at breakpoints since the
        displacement is PL with the same nodes."""
        disps = [y - x for x, y in zip(self.xs, self.ys)]
        min_d = min(disps)
        max_d = max(disps)
        argmin = self.xs[disps.index(min_d)]
        argmax = self.xs[disps.index(max_d)]
        if min_d <= 0 <= max_d:
            min_abs = ZERO
        else:
            min_abs = min(abs(min_d), abs(max_d))
        return DisplacementSummary(min_d, max_d, argmin, argmax, min_abs)

    def min_abs_displacement(self) -> Fraction:
        return self.displacement_extrema().min_abs_disp

    def fixed_interval(self) -> Optional[tuple[Fraction, Fraction]]:
        """A maximal open interval (mod 1) fixed pointwise, or None.

        The identity returns (0, 1) (the whole line; see `fixes_whole_line`).
        For a wrapped interval the right endpoint exceeds 1.  When several
        maximal intervals exist the one with the leftmost start is returned.
        """
        if self.is_identity():
            return (ZERO, ONE)
        xs, ys = self.xs, self.ys
        n = len(xs)
        if n == 1:
            return None
        # Segment i joins node i to node i+1 (cyclically, +1 on the wrap);
        # it is an identity segment iff both endpoints lie on the diagonal.
        fixed_node = [ys[i] == xs[i] for i in range(n)]
        seg_fixed = [fixed_node[i] and fixed_node[(i + 1) % n] for i in range(n)]
        if not any(seg_fixed):
            return None
        if all(seg_fixed):  # only the identity, which canonicalizes to 1 node
            return (ZERO, ONE)
        runs: list[tuple[Fraction, Fraction]] = []
        i = 0
        while i < n:
            if seg_fixed[i] and not seg_fixed[i - 1]:
                j = i
                while seg_fixed[j % n]:
                    j += 1
                end_node = j % n
                end = xs[end_node] + (1 if end_node <= i else 0)
                runs.append((xs[i], end))
                i = j if j > i else i + 1
            else:
                i += 1
        if not runs:
            # All segments fixed but map is not the identity: impossible for
            # canonical data; guard anyway.
            return None
        runs.sort(key=lambda r: r[0])
        return runs[0]

    def fixes_whole_line(self) -> bool:
        return self.is_identity()

    def fixes_open_interval(self) -> bool:
        """Membership in the generating set of interval-fixing lifts."""
        return self.fixed_interval() is not None

    # -- serialization & dunder ------------------------------------------------

    def samples(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.xs, self.ys))

    def to_payload(self) -> list[list[str]]:
        """Canonical text form: ["p/q", "r/s"] pairs, lowest terms."""
        return [[_frac_str(x), _frac_str(y)] for x, y in zip(self.xs, self.ys)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLLift):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self) -> int:
        return hash((self.xs, self.ys))

    def __repr__(self) -> str:
        c = self.is_translation()
        if c is not None:
            return f"PLLift(x{'+' if c >= 0 else ''}{c})" if c else "PLLift(id)"
        pairs = ", ".join(f"({x},{y})" for x, y in zip(self.xs, self.ys))
        return f"PLLift[{pairs}]"


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _canonicalize(
    pts: list[tuple[Fraction, Fraction]]
) -> tuple[list[Fraction], list[Fraction]]:
    """Drop samples collinear with their cyclic neighbours.

    Expects sorted, validated samples.  A constant displacement collapses to
    the single sample (0, c).
    """
    d0 = pts[0][1] - pts[0][0]
    if all(y - x == d0 for x, y in pts):
        return [ZERO], [d0]
    changed = True
    while changed and len(pts) > 2:
        changed = False
        n = len(pts)
        kept: list[tuple[Fraction, Fraction]] = []
        for i in range(n):
            xp, yp = pts[(i - 1) % n]
            x, y = pts[i]
            xn, yn = pts[(i + 1) % n]
            # Unwrap the cyclic neighbours around pts[i].
            if xp >= x:
                xp, yp = xp - 1, yp - 1
            if xn <= x:
                xn, yn = xn + 1, yn + 1
            if (y - yp) * (xn - x) == (yn - y) * (x - xp):
                changed = True
                continue
            kept.append((x, y))
        pts = kept
    if len(pts) == 2:
        # Two samples may still be collinear across the wrap (translation was
        # handled above, so slopes differ here); nothing to prune.
        pass
    return [p[0] for p in pts], [p[1] for p in pts]


def commutator(g: PLLift, h: PLLift, guard: Optional[ResourceGuard] = None) -> PLLift:
    """[g, h] = g h g^-1 h^-1, exact."""
    return g.compose(h, guard).compose(g.inverse(), guard).compose(h.inverse(), guard)
