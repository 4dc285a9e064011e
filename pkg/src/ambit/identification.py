"""Identification regions for a partially observed mean.

The observable facts about a stratum are the mean outcome among respondents
and the response rate. The mean among nonrespondents is logically confined to
the normalized outcome range [0, 1] but is otherwise unknown, so the stratum
mean is only set-identified: by iterated expectations it equals

    observed_mean * response_rate + missing_mean * (1 - response_rate)

with ``missing_mean`` free to roam over whatever subset of [0, 1] the analyst
is willing to assume. Each :class:`Assumption` pins that subset down:

* ``Agnostic``      -- no restriction; missing_mean in [0, 1].
* ``MAR``           -- missing_mean equals observed_mean (point identification).
* ``RestrictionSet``-- missing_mean confined to a stated interval.
* ``BoundedVariation`` -- observed_mean - missing_mean confined to [d0, d1],
  which induces the interval [observed_mean - d1, observed_mean - d0],
  intersected with [0, 1].

All outcomes here live on the normalized [0, 1] scale; ``normalize`` /
``denormalize`` translate to and from original measurement units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    InfeasibleAssumptionError,
    OutOfRangeError,
    UndefinedMARError,
    ValidationError,
)

#: Absolute tolerance for exact-arithmetic assertions on endpoints.
ENDPOINT_ATOL = 1e-12

#: Slack allowed when snapping computed endpoints back into [0, 1]; pure
#: float rounding can overshoot by a few ulp, anything larger is a bug.
_UNIT_SNAP = 1e-9


def _check_unit(value: float, name: str) -> float:
    """Validate a normalized (unit-interval) value."""
    v = float(value)
    if math.isnan(v) or v < 0.0 or v > 1.0:
        raise OutOfRangeError(f"{name} must lie in [0, 1], got {value!r}")
    return v


def _snap_unit(value: float, name: str) -> float:
    """Clamp float-rounding overshoot into [0, 1]; reject real violations."""
    if -_UNIT_SNAP <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + _UNIT_SNAP:
        return 1.0
    return _check_unit(value, name)


@dataclass(frozen=True)
class OutcomeScale:
    """Original measurement range [lo, hi] of a bounded outcome."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValidationError("outcome scale bounds must be finite")
        if not self.lo < self.hi:
            raise ValidationError(
                f"outcome scale requires lo < hi, got lo={self.lo}, hi={self.hi}"
            )


def normalize(value: float, scale: OutcomeScale) -> float:
    """Map a value in original units onto [0, 1]."""
    if value < scale.lo:
        raise OutOfRangeError(
            f"value {value} is below the scale lower bound {scale.lo}"
        )
    if value > scale.hi:
        raise OutOfRangeError(
            f"value {value} is above the scale upper bound {scale.hi}"
        )
    return (value - scale.lo) / (scale.hi - scale.lo)


def denormalize(value: float, scale: OutcomeScale) -> float:
    """Inverse of :func:`normalize`, up to float tolerance."""
    v = _check_unit(value, "normalized value")
    return scale.lo + v * (scale.hi - scale.lo)


@dataclass(frozen=True)
class Interval:
    """A closed subinterval of [0, 1], the carrier of identification regions."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", _check_unit(self.lo, "interval lo"))
        object.__setattr__(self, "hi", _check_unit(self.hi, "interval hi"))
        if self.lo > self.hi:
            raise ValidationError(
                f"interval requires lo <= hi, got [{self.lo}, {self.hi}]"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= value <= self.hi + tol

    def issubset(self, other: "Interval", tol: float = 0.0) -> bool:
        return other.lo - tol <= self.lo and self.hi <= other.hi + tol


#: The whole normalized outcome range.
UNIT = Interval(0.0, 1.0)


def region_width(region: Interval) -> float:
    """Width hi - lo; for the agnostic region this equals the missing share."""
    return region.hi - region.lo


def outward_round(region: Interval, decimals: int = 3) -> tuple[float, float]:
    """Round endpoints outward (floor lo, ceil hi).

    Presentation-only: the rounded pair always contains the exact region, so
    no feasible value is ever excluded by rounding.
    """
    f = 10.0**decimals
    return math.floor(region.lo * f) / f, math.ceil(region.hi * f) / f


# ---------------------------------------------------------------------------
# Assumptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Agnostic:
    """No restriction on the nonrespondent mean beyond the logical range."""


@dataclass(frozen=True)
class MAR:
    """Missing at random: nonrespondent mean equals the respondent mean."""


@dataclass(frozen=True)
class RestrictionSet:
    """Nonrespondent mean confined to a stated subinterval of [0, 1]."""

    gamma: Interval


@dataclass(frozen=True)
class BoundedVariation:
    """Bound ``delta0 <= observed_mean - missing_mean <= delta1``.

    Any reals with delta0 <= delta1 are accepted; delta0 = delta1 = 0 is MAR,
    and (-1, 1) is vacuous (agnostic). A strictly positive delta0 encodes the
    one-sided case where respondents are assumed more favorable.
    """

    delta0: float
    delta1: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta0) and math.isfinite(self.delta1)):
            raise ValidationError("bounded-variation deltas must be finite")
        if self.delta0 > self.delta1:
            raise ValidationError(
                f"bounded variation requires delta0 <= delta1, "
                f"got ({self.delta0}, {self.delta1})"
            )


Assumption = Union[Agnostic, MAR, RestrictionSet, BoundedVariation]


# ---------------------------------------------------------------------------
# Observed data and regions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ObservedStratum:
    """Point-identified facts for one covariate cell.

    ``observed_mean`` is the mean outcome among respondents (normalized) and
    ``response_rate`` the probability of observing the outcome. When the
    response rate is zero the respondent mean is undefined and is stored as
    ``None``; consumers must handle the absent case.
    """

    label: str
    observed_mean: Optional[float]
    response_rate: float

    def __post_init__(self) -> None:
        rate = float(self.response_rate)
        if not 0.0 <= rate <= 1.0:
            raise OutOfRangeError(
                f"response_rate must lie in [0, 1], got {self.response_rate!r}"
            )
        object.__setattr__(self, "response_rate", rate)
        if rate == 0.0:
            object.__setattr__(self, "observed_mean", None)
            return
        if self.observed_mean is None:
            raise ValidationError(
                f"stratum {self.label!r}: observed_mean required when "
                f"response_rate > 0"
            )
        object.__setattr__(
            self, "observed_mean", _check_unit(self.observed_mean, "observed_mean")
        )


@dataclass(frozen=True)
class IdentificationRegion:
    """An identified set for a stratum mean, tagged with its assumption."""

    region: Interval
    assumption: Assumption
    stratum_label: str


def lie_mean(observed_mean: float, response_rate: float, missing_mean: float) -> float:
    """Stratum mean implied by iterated expectations.

    Returns ``observed_mean * response_rate + missing_mean * (1 - response_rate)``.
    """
    m = _check_unit(observed_mean, "observed_mean")
    p = _check_unit(response_rate, "response_rate")
    g = _check_unit(missing_mean, "missing_mean")
    return m * p + g * (1.0 - p)


def agnostic_region(stratum: ObservedStratum) -> IdentificationRegion:
    """Bounds with no assumption on the nonrespondent mean.

    Returns [m*p, m*p + (1-p)]; the width is exactly the missing share 1-p.
    With no respondents at all the region is the whole range [0, 1].
    """
    p = stratum.response_rate
    if p == 0.0:
        return IdentificationRegion(UNIT, Agnostic(), stratum.label)
    lo = stratum.observed_mean * p
    return IdentificationRegion(
        Interval(_snap_unit(lo, "lo"), _snap_unit(lo + (1.0 - p), "hi")),
        Agnostic(),
        stratum.label,
    )


def region_under_gamma(stratum: ObservedStratum, gamma: Interval) -> IdentificationRegion:
    """Bounds when the nonrespondent mean is confined to ``gamma``.

    Returns [m*p + gamma.lo*(1-p), m*p + gamma.hi*(1-p)]. With gamma = [0, 1]
    this reproduces the agnostic region; a singleton gamma gives a point.
    With no respondents the stratum mean is the nonrespondent mean, so the
    region is gamma itself.
    """
    p = stratum.response_rate
    if p == 0.0:
        return IdentificationRegion(gamma, RestrictionSet(gamma), stratum.label)
    base = stratum.observed_mean * p
    q = 1.0 - p
    return IdentificationRegion(
        Interval(
            _snap_unit(base + gamma.lo * q, "lo"),
            _snap_unit(base + gamma.hi * q, "hi"),
        ),
        RestrictionSet(gamma),
        stratum.label,
    )


def mar_point(stratum: ObservedStratum) -> IdentificationRegion:
    """Point identification under missing-at-random: the region [m, m]."""
    if stratum.response_rate == 0.0:
        raise UndefinedMARError(
            f"stratum {stratum.label!r}: no respondents to anchor the "
            f"missing-at-random point"
        )
    m = stratum.observed_mean
    return IdentificationRegion(Interval(m, m), MAR(), stratum.label)


def bounded_variation_region(
    stratum: ObservedStratum, delta0: float, delta1: float
) -> IdentificationRegion:
    """Bounds under ``delta0 <= observed_mean - missing_mean <= delta1``.

    The induced restriction is [m - delta1, m - delta0] intersected with
    [0, 1]; an empty intersection means the assumption contradicts the
    logical outcome range and raises :class:`InfeasibleAssumptionError`.
    delta0 = delta1 = 0 reproduces MAR; (-1, 1) reproduces the agnostic
    region.
    """
    assumption = BoundedVariation(delta0, delta1)
    if stratum.response_rate == 0.0:
        raise UndefinedMARError(
            f"stratum {stratum.label!r}: no respondents to anchor the "
            f"bounded-variation restriction"
        )
    m = stratum.observed_mean
    g_hi = m - assumption.delta0
    g_lo = m - assumption.delta1
    if g_hi < 0.0 or g_lo > 1.0:
        raise InfeasibleAssumptionError(
            f"stratum {stratum.label!r}: assumption contradicts the logical "
            f"outcome range (nonrespondent mean confined to "
            f"[{g_lo:.6g}, {g_hi:.6g}], outside [0, 1])"
        )
    gamma = Interval(max(g_lo, 0.0), min(g_hi, 1.0))
    region = region_under_gamma(stratum, gamma).region
    return IdentificationRegion(region, assumption, stratum.label)


def sweep_bounded_variation(
    stratum: ObservedStratum, deltas: list[tuple[float, float]]
) -> list[tuple[tuple[float, float], Optional[IdentificationRegion]]]:
    """Elementwise :func:`bounded_variation_region` over a list of delta pairs.

    Infeasible pairs are reported as ``None`` rather than raised or dropped;
    output order matches input order.
    """
    out: list[tuple[tuple[float, float], Optional[IdentificationRegion]]] = []
    for d0, d1 in deltas:
        try:
            out.append(((d0, d1), bounded_variation_region(stratum, d0, d1)))
        except InfeasibleAssumptionError:
            out.append(((d0, d1), None))
    return out


def region_for(stratum: ObservedStratum, assumption: Assumption) -> IdentificationRegion:
    """Dispatch to the region constructor matching the assumption tag."""
    if isinstance(assumption, Agnostic):
        return agnostic_region(stratum)
    if isinstance(assumption, MAR):
        return mar_point(stratum)
    if isinstance(assumption, RestrictionSet):
        return region_under_gamma(stratum, assumption.gamma)
    if isinstance(assumption, BoundedVariation):
        return bounded_variation_region(stratum, assumption.delta0, assumption.delta1)
    raise ValidationError(f"unknown assumption: {assumption!r}")
