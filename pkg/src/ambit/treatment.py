"""Treatment choice when counterfactual outcomes are missing by construction.

Each arm of a treatment problem is observed only for the people who received
it, so the mean outcome under an arm is set-identified exactly like a
partially observed stratum mean: the arm's share of the population plays the
role of the response rate. Per-arm regions are assembled into a rectangular
state space (the per-arm means vary independently over their intervals; no
cross-arm restriction is imposed -- a deliberate extension point), and the
choice criteria act on it in closed form:

* maximin picks the arm with the highest interval lower endpoint;
* minimax regret scores arm a by max(0, max over rivals b of hi_b - lo_a),
  the shortfall when a sits at its worst and the best rival at its best.

Both closed forms are validated in the test suite against exhaustive
enumeration of discretized state spaces (``ambit.gridkernels``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .criteria import CriterionResult, argmax_set, argmin_set
from .errors import AmbitError, ValidationError
from .identification import (
    Assumption,
    IdentificationRegion,
    Interval,
    ObservedStratum,
    region_for,
)

#: Tolerance for arm shares summing to one.
SHARE_ATOL = 1e-9


@dataclass(frozen=True)
class TreatmentArm:
    """One treatment: its population share, observed mean, and assumption.

    ``observed_mean`` is the mean outcome among those who received the arm;
    it must be present exactly when ``share > 0``. ``assumption`` restricts
    the arm's counterfactual mean among those who received something else.
    """

    label: str
    share: float
    observed_mean: Optional[float]
    assumption: Assumption

    def __post_init__(self) -> None:
        if not 0.0 <= self.share <= 1.0:
            raise ValidationError(
                f"arm {self.label!r}: share must lie in [0, 1], got {self.share!r}"
            )
        if self.share > 0.0 and self.observed_mean is None:
            raise ValidationError(
                f"arm {self.label!r}: observed_mean required when share > 0"
            )
        if self.share == 0.0 and self.observed_mean is not None:
            raise ValidationError(
                f"arm {self.label!r}: observed_mean must be absent when share = 0"
            )


@dataclass(frozen=True)
class TreatmentProblem:
    """Mutually exclusive, exhaustive arms for one covariate stratum."""

    stratum_label: str
    arms: tuple[TreatmentArm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "arms", tuple(self.arms))
        if len(self.arms) < 2:
            raise ValidationError("a treatment problem needs at least 2 arms")
        labels = [a.label for a in self.arms]
        if len(set(labels)) != len(labels):
            raise ValidationError(f"arm labels must be unique, got {labels}")
        total = sum(a.share for a in self.arms)
        if abs(total - 1.0) > SHARE_ATOL:
            raise ValidationError(
                f"arm shares must sum to 1 within {SHARE_ATOL}, got {total!r}"
            )


@dataclass(frozen=True)
class RectangularStateSpace:
    """Per-arm intervals read as a product set of jointly feasible means."""

    arm_labels: tuple[str, ...]
    regions: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if len(self.arm_labels) != len(self.regions):
            raise ValidationError("one region per arm label required")
        object.__setattr__(self, "arm_labels", tuple(self.arm_labels))
        object.__setattr__(self, "regions", tuple(self.regions))

    @property
    def n_arms(self) -> int:
        return len(self.regions)


def arm_region(arm: TreatmentArm) -> IdentificationRegion:
    """Identification region for an arm's mean outcome.

    Delegates to the stratum machinery with response rate = the arm's share:
    agnostic gives [m*share, m*share + (1-share)], whose width is the share of
    people who did not receive the arm; MAR gives the point [m, m]; bounded
    variation bounds the observed-vs-counterfactual mean difference.
    """
    stratum = ObservedStratum(arm.label, arm.observed_mean, arm.share)
    return region_for(stratum, arm.assumption)


def problem_state_space(problem: TreatmentProblem) -> RectangularStateSpace:
    """Assemble per-arm regions; errors carry the offending arm's label."""
    regions = []
    for arm in problem.arms:
        try:
            regions.append(arm_region(arm).region)
        except AmbitError as exc:
            raise type(exc)(f"arm {arm.label!r}: {exc}") from exc
    return RectangularStateSpace(tuple(a.label for a in problem.arms), tuple(regions))


def _require_arms(space: RectangularStateSpace) -> tuple[np.ndarray, np.ndarray]:
    if space.n_arms < 2:
        raise ValidationError("need at least 2 arms")
    los = np.array([r.lo for r in space.regions])
    his = np.array([r.hi for r in space.regions])
    return los, his


def mmr_treatment_choice(space: RectangularStateSpace) -> CriterionResult:
    """Minimize worst-case regret over the product state space.

    Max regret of arm a is max(0, max over rivals b of hi_b - lo_a): the
    worst state puts a at its lower endpoint and the best rival at its upper.
    """
    los, his = _require_arms(space)
    k = space.n_arms
    scores = np.empty(k)
    for a in range(k):
        rival_hi = max(his[b] for b in range(k) if b != a)
        scores[a] = max(0.0, rival_hi - los[a])
    optimal = argmin_set(scores)
    return CriterionResult("minimax_regret", scores, optimal, min(optimal))


def maximin_treatment_choice(space: RectangularStateSpace) -> CriterionResult:
    """Maximize worst-case welfare: score of arm a is its lower endpoint."""
    los, _ = _require_arms(space)
    optimal = argmax_set(los)
    return CriterionResult("maximin", los, optimal, min(optimal))


def arm_dominance(space: RectangularStateSpace) -> list[tuple[int, int]]:
    """(dominated, dominator) index pairs over the product state space.

    Arm a weakly dominates arm b iff lo_a >= hi_b, unless both regions are
    the same single point (then no state gives a strict advantage).
    """
    los, his = _require_arms(space)
    k = space.n_arms
    pairs = []
    for b in range(k):
        for a in range(k):
            if a == b or los[a] < his[b]:
                continue
            same_point = (
                los[a] == his[a] == los[b] == his[b]
            )
            if not same_point:
                pairs.append((b, a))
    return pairs
