"""Constructive fragmentation into interval-fixing factors.

A circle lift F with minimal absolute displacement m factors exactly into
floor(m) + 2 lifts that each fix an open interval pointwise (0 factors for the
identity, 1 when F itself fixes an interval).  The construction walks the
displacement down one integer at a time with an auxiliary lift h that is the
identity near the image of the minimizing point, then settles the final unit
with an h that undoes F near a chosen point.  Certificates carry the factors
and witnesses so verification is an independent exact computation.

The annulus planner fragments both boundary traces of a deck-normalized lift
and appends counted interior/collar factors with identity traces; the audit
re-derives the boundary-touch accounting and checks the displacement-gap
lower bound alpha < total.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .annulus import AnnulusLift
from .errors import IdentityTarget, InternalInvariant
from .lifts import DisplacementSummary, PLLift, ResourceGuard
from .reports import Check, CheckReport

ZERO = Fraction(0)
ONE = Fraction(1)

EXPLICIT = "explicit"
COUNTED = "counted"

REGIME_TAGS = ("r0", "r_general", "r0_open_annulus", "r_general_open_annulus")

# Factor budget above floor(alpha) per regime tag.
PLAN_BUDGET = {
    "r0": 36,
    "r_general": 40,
    "r0_open_annulus": 12,
    "r_general_open_annulus": 16,
}

_COLLAR_COUNT = 4
_INTERIOR_COUNT = 28
_INTERIOR_COUNT_OPEN = 4
_SMOOTHING_COUNT = 4


@dataclass(frozen=True)
class FragCertificate:
    """Ordered interval-fixing factors whose exact product is the target.

    `k` is floor(min |F(x) - x|); the factor list has k + 2 entries except for
    the identity (0) and targets that already fix an interval (1).  The signed
    displacement extrema of the target are recorded for inspection.
    """

    target: PLLift
    factors: tuple[PLLift, ...]
    k: int
    fixed_intervals: tuple[tuple[Fraction, Fraction], ...]
    reflected: bool
    min_disp: Fraction
    max_disp: Fraction


@dataclass(frozen=True)
class TraceFactor:
    """One annulus factor seen through its boundary traces.

    Counted factors stand for disc-supported maps whose interiors are outside
    the boundary-trace model; they carry identity traces and a multiplicity.
    """

    lower_trace: PLLift
    upper_trace: PLLift
    touches_lower: bool
    touches_upper: bool
    kind: str = EXPLICIT
    multiplicity: int = 1
    label: str = ""

    def __post_init__(self):
        if self.kind not in (EXPLICIT, COUNTED):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        if self.kind == EXPLICIT and self.multiplicity != 1:
            raise ValueError("explicit factors have multiplicity 1")


@dataclass(frozen=True)
class AnnulusFragPlan:
    """Planned decomposition of a normalized annulus lift.

    `target` is the flip/recenter-normalized lift the factors compose to;
    `flipped` and `recenter_k` relate it to the lift the plan was built from.
    """

    target: AnnulusLift
    factors: tuple[TraceFactor, ...]
    regime: str
    total_count: int
    alpha: Fraction
    flipped: bool
    recenter_k: int


# -- circle fragmentation ----------------------------------------------------


def fragment_circle(
    F: PLLift, guard: Optional[ResourceGuard] = None
) -> FragCertificate:
    """Factor F into interval-fixing lifts; exact product, deterministic."""
    if F.is_identity():
        return _certify(F, (), reflected=False)
    if F.fixed_interval() is not None:
        return _certify(F, (F,), reflected=False)
    if F.displacement_extrema().max_disp < 0:
        mirrored = fragment_circle(F.reflect_conjugate(), guard)
        factors = tuple(f.reflect_conjugate() for f in mirrored.factors)
        return _certify(F, factors, reflected=True)
    return _certify(F, tuple(_descend(F, guard)), reflected=False)


def _descend(F: PLLift, guard: Optional[ResourceGuard]) -> list[PLLift]:
    """Emit one factor per displacement unit, then the two base factors.

    Entry: F is not the identity, fixes no interval, and its displacement is
    nonnegative somewhere (reflection already applied when needed).
    """
    factors: list[PLLift] = []
    work = F
    while True:
        summary = work.displacement_extrema()
        k = int(summary.min_abs_disp)  # floor: min_abs_disp >= 0
        if k == 0:
            h = _settling_map(work, summary, guard)
            factors.append(h.inverse())
            factors.append(h.compose(work, guard))
            return factors
        h = _lowering_map(work, summary, k, guard)
        factors.append(h.inverse())
        work = h.compose(work, guard)
        new_min = work.displacement_extrema().min_disp
        if not (k - 1 < new_min < k):
            raise InternalInvariant(
                f"lowering step left displacement minimum {new_min}, "
                f"expected it inside ({k - 1}, {k})"
            )


def _settling_map(
    F: PLLift, summary: DisplacementSummary, guard: Optional[ResourceGuard]
) -> PLLift:
    """h with h = id near F(x0) and h = F^-1 near F(x1), so that both h^-1
    and h∘F fix an open interval; requires min |F - id| < 1."""
    x0 = _base_point(F, summary)
    a = F.evaluate(x0)
    x1 = (a + x0 + 1) / 2  # midpoint of (F(x0), x0 + 1)
    b = F.evaluate(x1)
    inv = F.inverse()
    delta = min(b - a, a + 1 - b, x1 - a, a + 1 - x1) / 4
    # Shrink until the interpolating segments stay monotone.
    while not (F.evaluate(a + delta) < b - delta and F.evaluate(a - delta) > b + delta - 1):
        delta /= 2
    nodes = [(a - delta, a - delta), (a + delta, a + delta)]
    nodes.append((b - delta, inv.evaluate(b - delta)))
    for t, v in _nodes_within(inv, b - delta, b + delta):
        nodes.append((t, v))
    nodes.append((b + delta, inv.evaluate(b + delta)))
    return _from_period_nodes(nodes)


def _lowering_map(
    F: PLLift, summary: DisplacementSummary, k: int, guard: Optional[ResourceGuard]
) -> PLLift:
    """h fixing a neighbourhood of F(x0) that steers F(x1) below x1 + k;
    requires k <= min (F - id) < k + 1 with k >= 1."""
    if summary.min_disp != summary.min_abs_disp:
        raise InternalInvariant("lowering step expects positive displacement")
    m = summary.min_disp
    x0 = summary.argmin
    a = x0 + m
    x1 = x0 + (m - k + 1) / 2  # midpoint of (x0 + m - k, x0 + 1)
    b = F.evaluate(x1)
    delta = min(b - a, a + 1 - b) / 4
    while a + delta >= min(x1 + k, a + 1 - delta):
        delta /= 2
    c = (a + delta + min(x1 + k, a + 1 - delta)) / 2
    nodes = [(a - delta, a - delta), (a + delta, a + delta), (b, c)]
    return _from_period_nodes(nodes)


def _base_point(F: PLLift, summary: DisplacementSummary) -> Fraction:
    """Leftmost x in [0, 1) with F(x) - x equal to +min_abs_disp."""
    if summary.min_disp >= 0:
        return summary.argmin
    return _leftmost_displacement_zero(F)


def _leftmost_displacement_zero(F: PLLift) -> Fraction:
    xs = list(F.xs)
    disps = [y - x for x, y in zip(F.xs, F.ys)]
    xs.append(xs[0] + 1)
    disps.append(disps[0])
    zeros = []
    for i in range(len(xs) - 1):
        d0, d1 = disps[i], disps[i + 1]
        if d0 == 0:
            zeros.append(xs[i])
        elif (d0 < 0 < d1) or (d1 < 0 < d0):
            zeros.append(xs[i] - d0 * (xs[i + 1] - xs[i]) / (d1 - d0))
    if not zeros:
        raise InternalInvariant("displacement must vanish when extrema straddle 0")
    return min(z if z < 1 else z - 1 for z in zeros)


def _nodes_within(lift: PLLift, lo: Fraction, hi: Fraction):
    """Breakpoints of `lift` strictly inside (lo, hi), with values; the window
    is shorter than one period so each breakpoint occurs at most once."""
    out = []
    for x, y in zip(lift.xs, lift.ys):
        j_min = (lo - x).__floor__() + 1
        j_max = -((x - hi).__floor__() + 1)
        for j in range(j_min, j_max + 1):
            if lo < x + j < hi:
                out.append((x + j, y + j))
    out.sort()
    return out


def _from_period_nodes(nodes: Sequence[tuple[Fraction, Fraction]]) -> PLLift:
    """Build a lift from one period of nodes at arbitrary positions."""
    reduced = []
    for x, y in nodes:
        shift = x.__floor__()
        reduced.append((x - shift, y - shift))
    return PLLift.from_samples(reduced)


def _certify(
    target: PLLift, factors: tuple[PLLift, ...], reflected: bool
) -> FragCertificate:
    summary = target.displacement_extrema()
    k = int(summary.min_abs_disp)
    if len(factors) >= 2 and len(factors) != k + 2:
        raise InternalInvariant(
            f"expected {k + 2} factors, built {len(factors)}"
        )
    witnesses = []
    for f in factors:
        interval = f.fixed_interval()
        if interval is None:
            raise InternalInvariant("factor fixes no interval")
        witnesses.append(interval)
    return FragCertificate(
        target=target,
        factors=factors,
        k=k,
        fixed_intervals=tuple(witnesses),
        reflected=reflected,
        min_disp=summary.min_disp,
        max_disp=summary.max_disp,
    )


def compose_factors(factors: Sequence[PLLift]) -> PLLift:
    """Left-to-right product f0 ∘ f1 ∘ ... (identity for the empty list)."""
    product = PLLift.identity()
    for f in factors:
        product = product.compose(f)
    return product


def verify_certificate(cert: FragCertificate) -> CheckReport:
    """Independent exact re-check of a fragmentation certificate."""
    checks = []
    fixing = all(f.fixed_interval() is not None for f in cert.factors)
    checks.append(
        Check(
            "factors_fix_open_interval",
            fixing,
            "" if fixing else "some factor fixes no open interval",
        )
    )
    product = compose_factors(cert.factors)
    matches = product == cert.target
    checks.append(
        Check(
            "product_equals_target",
            matches,
            "" if matches else "factor product differs from target",
        )
    )
    count = len(cert.factors)
    if count >= 2:
        m = cert.target.min_abs_displacement()
        ok = m < count - 1
        detail = f"min abs displacement {m} vs {count - 1}"
    else:
        ok = True
        detail = "fewer than 2 factors: bound is vacuous"
    checks.append(Check("displacement_below_count_minus_one", ok, detail))
    return CheckReport(
        subject="fragmentation-certificate",
        checks=tuple(checks),
        info={"factor_count": count, "k": cert.k},
    )


# -- annulus planning ----------------------------------------------------------


def regime_tag(r0: bool, open_annulus_assumed: bool) -> str:
    if r0:
        return "r0_open_annulus" if open_annulus_assumed else "r0"
    return "r_general_open_annulus" if open_annulus_assumed else "r_general"


def plan_annulus_fragmentation(
    a: AnnulusLift,
    regime: str = "r0",
    guard: Optional[ResourceGuard] = None,
) -> AnnulusFragPlan:
    """Decompose a non-identity annulus lift into boundary-touching explicit
    factors plus counted collar/interior factors, within the regime budget."""
    if regime not in REGIME_TAGS:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIME_TAGS}")
    if a.is_identity():
        raise IdentityTarget("cannot plan a fragmentation of the identity")
    rec = a.recenter()
    target = rec.annulus
    alpha = target.alpha()
    e_alpha = int(alpha)

    upper_cert = fragment_circle(target.upper, guard)
    lower_cert = fragment_circle(target.lower, guard)
    if len(upper_cert.factors) > e_alpha + 2:
        raise InternalInvariant("upper trace needed more than floor(alpha)+2 factors")
    if len(lower_cert.factors) > 2:
        raise InternalInvariant("recentered lower trace needed more than 2 factors")

    identity = PLLift.identity()
    factors: list[TraceFactor] = []
    for u in upper_cert.factors:
        factors.append(
            TraceFactor(identity, u, touches_lower=False, touches_upper=True)
        )
    for l in lower_cert.factors:
        factors.append(
            TraceFactor(l, identity, touches_lower=True, touches_upper=False)
        )
    factors.append(
        TraceFactor(
            identity, identity, False, False, COUNTED, _COLLAR_COUNT, "boundary-collar"
        )
    )
    interior = (
        _INTERIOR_COUNT_OPEN if regime.endswith("open_annulus") else _INTERIOR_COUNT
    )
    factors.append(
        TraceFactor(identity, identity, False, False, COUNTED, interior, "interior")
    )
    if regime.startswith("r_general"):
        factors.append(
            TraceFactor(
                identity, identity, False, False, COUNTED, _SMOOTHING_COUNT, "smoothing"
            )
        )

    total = sum(f.multiplicity for f in factors)
    if not (e_alpha + 1 <= total <= e_alpha + PLAN_BUDGET[regime]):
        raise InternalInvariant(
            f"plan total {total} outside [{e_alpha + 1}, {e_alpha + PLAN_BUDGET[regime]}]"
        )
    return AnnulusFragPlan(
        target=target,
        factors=tuple(factors),
        regime=regime,
        total_count=total,
        alpha=alpha,
        flipped=rec.flipped,
        recenter_k=rec.k,
    )


def _trace_product(factors: Sequence[TraceFactor]) -> AnnulusLift:
    lower = PLLift.identity()
    upper = PLLift.identity()
    for f in factors:
        lower = lower.compose(f.lower_trace)
        upper = upper.compose(f.upper_trace)
    return AnnulusLift(lower, upper)


def _classify_touch_counts(k0: int, k1: int) -> str:
    if k0 >= 2 and k1 >= 2:
        return "(k0>=2,k1>=2)"
    if (k0 == 1 and k1 >= 2) or (k1 == 1 and k0 >= 2):
        return "(1,>=2)"
    if (k0 == 0 and k1 >= 2) or (k1 == 0 and k0 >= 2):
        return "(0,>=2)"
    if k0 == 1 and k1 == 1:
        return "(1,1)"
    return "degenerate"


def audit_annulus_fragmentation(
    a: AnnulusLift, factors: Sequence[TraceFactor]
) -> CheckReport:
    """Validate factor invariants, exact trace composition, and the
    boundary-touch accounting conclusion alpha < total count."""
    checks = []

    both = [f for f in factors if f.touches_lower and f.touches_upper]
    checks.append(
        Check(
            "no_factor_touches_both_boundaries",
            not both,
            "" if not both else f"{len(both)} factor(s) claim both boundaries",
        )
    )
    flag_ok = all(
        (f.touches_lower or f.lower_trace.is_identity())
        and (f.touches_upper or f.upper_trace.is_identity())
        for f in factors
    )
    checks.append(
        Check(
            "untouched_boundary_has_identity_trace",
            flag_ok,
            "" if flag_ok else "non-identity trace on an untouched boundary",
        )
    )
    counted_ok = all(
        f.lower_trace.is_identity() and f.upper_trace.is_identity()
        for f in factors
        if f.kind == COUNTED
    )
    checks.append(
        Check(
            "counted_factors_have_identity_traces",
            counted_ok,
            "" if counted_ok else "counted factor carries a non-identity trace",
        )
    )
    in_set = all(
        trace.is_identity() or trace.fixed_interval() is not None
        for f in factors
        for trace in (f.lower_trace, f.upper_trace)
    )
    checks.append(
        Check(
            "traces_fix_open_intervals",
            in_set,
            "" if in_set else "a non-identity trace fixes no open interval",
        )
    )

    product = _trace_product(factors)
    matches = product == a
    checks.append(
        Check(
            "trace_composition_equals_target",
            matches,
            "" if matches else "trace product differs from target",
        )
    )

    k0 = sum(f.multiplicity for f in factors if f.touches_lower)
    k1 = sum(f.multiplicity for f in factors if f.touches_upper)
    total = sum(f.multiplicity for f in factors)
    case = _classify_touch_counts(k0, k1)

    alpha = a.alpha()
    if a.is_identity():
        checks.append(Check("alpha_below_total", True, "identity target: vacuous"))
    else:
        checks.append(
            Check(
                "alpha_below_total",
                alpha < total,
                f"alpha = {alpha}, total = {total}",
            )
        )

    for name, trace, count in (("lower", a.lower, k0), ("upper", a.upper, k1)):
        if count == 0:
            ok = trace.is_identity()
            detail = f"{name} trace must be the identity when untouched"
        elif count == 1:
            ok = trace.min_abs_displacement() == 0
            detail = f"{name} trace of a single disc factor must vanish somewhere"
        else:
            ok = trace.min_abs_displacement() < count - 1
            detail = f"{name} trace displacement vs touch count {count}"
        checks.append(Check(f"{name}_trace_touch_accounting", ok, detail))

    return CheckReport(
        subject="annulus-fragmentation-audit",
        checks=tuple(checks),
        info={"k0": k0, "k1": k1, "total": total, "case": case, "alpha": str(alpha)},
    )
