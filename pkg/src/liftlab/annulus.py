"""Annulus homeomorphism lifts represented by their two boundary traces.

A lift is stored as the ordered pair (lower trace, upper trace) of circle
lifts under one common deck convention; replacing the lift shifts both traces
by the same integer.  The torsion number rho is the difference of the traces'
translation numbers and the displacement gap alpha is the minimum of
|upper(r) - lower(r)| over the line; both are independent of the chosen lift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .lifts import PLLift, ResourceGuard
from .rotation import CertifiedInterval, TauResult, tau

ZERO = Fraction(0)


@dataclass(frozen=True)
class RecenterResult:
    """Deck-normalized lift with the integer shift and flip flag applied."""

    annulus: "AnnulusLift"
    k: int
    flipped: bool
    base_point: Fraction  # leftmost alpha-attaining point in [0, 1)


class AnnulusLift:
    """Ordered pair of canonical boundary-trace lifts."""

    __slots__ = ("lower", "upper")

    def __init__(self, lower: PLLift, upper: PLLift):
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("AnnulusLift is immutable")

    @staticmethod
    def identity() -> "AnnulusLift":
        return AnnulusLift(PLLift.identity(), PLLift.identity())

    @staticmethod
    def twist_power(n: int) -> "AnnulusLift":
        """Canonical lift of the n-th power of the boundary twist."""
        return AnnulusLift(PLLift.identity(), PLLift.translation(n))

    def is_identity(self) -> bool:
        return self.lower.is_identity() and self.upper.is_identity()

    # -- group structure (componentwise on traces) --------------------------

    def compose(
        self, other: "AnnulusLift", guard: Optional[ResourceGuard] = None
    ) -> "AnnulusLift":
        return AnnulusLift(
            self.lower.compose(other.lower, guard),
            self.upper.compose(other.upper, guard),
        )

    def inverse(self) -> "AnnulusLift":
        return AnnulusLift(self.lower.inverse(), self.upper.inverse())

    def translated(self, k: int) -> "AnnulusLift":
        """Diagonal deck transformation: both traces shift by k."""
        return AnnulusLift(self.lower.translated(k), self.upper.translated(k))

    def flip(self) -> "AnnulusLift":
        """Conjugation by the annulus flip: swaps the boundary traces."""
        return AnnulusLift(self.upper, self.lower)

    # -- invariants ----------------------------------------------------------

    def gap_extrema(self) -> tuple[Fraction, Fraction]:
        """Signed extrema of the periodic PL function upper(r) - lower(r)."""
        values = [self.upper(x) - self.lower(x) for x in self._merged_nodes()]
        return min(values), max(values)

    def alpha(self) -> Fraction:
        """Exact minimum of |upper(r) - lower(r)|; 0 iff the gap vanishes."""
        lo, hi = self.gap_extrema()
        if lo <= 0 <= hi:
            return ZERO
        return min(abs(lo), abs(hi))

    def alpha_base_point(self) -> tuple[Fraction, bool]:
        """Leftmost point in [0, 1) where the gap attains +alpha or -alpha.

        Returns (point, positive) with positive = True when the gap at the
        point is nonnegative.  A positive witness is preferred when one
        exists (only when the gap is negative everywhere is there none).
        """
        lo, hi = self.gap_extrema()
        if hi < 0:
            return self._leftmost_gap_value(hi), False
        if lo > 0:
            return self._leftmost_gap_value(lo), True
        return self._leftmost_gap_zero(), True

    def rho(
        self,
        width_target: Fraction = Fraction(1, 64),
        q_max: int = 32,
        guard: Optional[ResourceGuard] = None,
    ) -> CertifiedInterval:
        """Torsion number: tau(upper) - tau(lower) by interval arithmetic."""
        upper = tau(self.upper, width_target, q_max, guard).interval
        lower = tau(self.lower, width_target, q_max, guard).interval
        return upper - lower

    def tau_results(
        self,
        width_target: Fraction = Fraction(1, 64),
        q_max: int = 32,
        guard: Optional[ResourceGuard] = None,
    ) -> tuple[TauResult, TauResult]:
        return (
            tau(self.lower, width_target, q_max, guard),
            tau(self.upper, width_target, q_max, guard),
        )

    def recenter(self) -> RecenterResult:
        """Deck-normalize so the lower trace displaces into (-1, 0] at the
        alpha point.

        Flips first when the gap is negative everywhere (so alpha is attained
        as upper - lower >= 0), then applies the diagonal integer translation
        putting lower(x0) - x0 in (-1, 0] at the leftmost alpha-attaining
        point x0.  After this, upper(x0) - x0 < floor(alpha) + 1.
        """
        x0, positive = self.alpha_base_point()
        if positive:
            base, flipped = self, False
        else:
            base = self.flip()
            flipped = True
            x0, positive = base.alpha_base_point()
            assert positive
        d0 = base.lower(x0) - x0
        k = -(d0.__ceil__())
        return RecenterResult(base.translated(k), k, flipped, x0)

    # -- helpers ---------------------------------------------------------------

    def _merged_nodes(self) -> list[Fraction]:
        return sorted(set(self.lower.xs) | set(self.upper.xs))

    def _gap_segments(self):
        """Nodes of one period plus the wrap node, with gap values."""
        nodes = self._merged_nodes()
        gaps = [self.upper(x) - self.lower(x) for x in nodes]
        nodes.append(nodes[0] + 1)
        gaps.append(gaps[0])
        return nodes, gaps

    def _leftmost_gap_value(self, value: Fraction) -> Fraction:
        nodes, gaps = self._gap_segments()
        hits = [nodes[i] for i in range(len(nodes) - 1) if gaps[i] == value]
        assert hits, "extremum must be attained at a merged node"
        return min(hits)

    def _leftmost_gap_zero(self) -> Fraction:
        """Leftmost zero of the gap in [0, 1); may lie inside a segment."""
        nodes, gaps = self._gap_segments()
        zeros = []
        for i in range(len(nodes) - 1):
            g0, g1 = gaps[i], gaps[i + 1]
            if g0 == 0:
                zeros.append(nodes[i])
            elif (g0 < 0 < g1) or (g1 < 0 < g0):
                x = nodes[i] - g0 * (nodes[i + 1] - nodes[i]) / (g1 - g0)
                zeros.append(x)
        assert zeros, "gap must vanish when extrema straddle zero"
        return min(z if z < 1 else z - 1 for z in zeros)

    # -- serialization & dunder --------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "lower": {"kind": "lift", "samples": self.lower.to_payload()},
            "upper": {"kind": "lift", "samples": self.upper.to_payload()},
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnulusLift):
            return NotImplemented
        return self.lower == other.lower and self.upper == other.upper

    def __hash__(self) -> int:
        return hash((self.lower, self.upper))

    def __repr__(self) -> str:
        return f"AnnulusLift(lower={self.lower!r}, upper={self.upper!r})"
