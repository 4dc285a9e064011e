"""Choosing among actions when the true state is only known to lie in a set.

A finite decision problem is a welfare matrix w(action, state). Dominance
elimination discards actions that another action weakly beats everywhere;
the remaining ranking criteria are deliberately plural, because no single one
is canonical:

* Bayes          -- maximize prior-weighted expected welfare.
* maximin        -- maximize the worst-case welfare.
* minimax regret -- minimize the worst-case shortfall from the best action.

For a scalar mean identified only up to an interval, the minimax-regret point
prediction under square loss has a closed form (the midpoint); the interval
discretizer bridges interval-identified state spaces back to finite matrices
so closed forms can be checked by exhaustive enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ValidationError
from .identification import Interval

#: Absolute epsilon for membership in an optimal set.
ARGSET_ATOL = 1e-12

#: Tolerance for prior weights summing to one (renormalized exactly after).
PRIOR_ATOL = 1e-9

#: Refuse to materialize discretized state spaces larger than this.
MAX_GRID_STATES = 10**7


@dataclass(frozen=True)
class WelfareMatrix:
    """Finite actions x states welfare table."""

    action_labels: tuple[str, ...]
    state_labels: tuple[str, ...]
    welfare: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.welfare, dtype=float)
        if w.ndim != 2:
            raise ValidationError(f"welfare must be 2-D, got shape {w.shape}")
        if w.shape != (len(self.action_labels), len(self.state_labels)):
            raise ValidationError(
                f"welfare shape {w.shape} does not match "
                f"{len(self.action_labels)} actions x {len(self.state_labels)} states"
            )
        if w.shape[0] < 1 or w.shape[1] < 1:
            raise ValidationError("need at least one action and one state")
        if not np.isfinite(w).all():
            raise ValidationError("welfare entries must all be finite")
        w = np.ascontiguousarray(w)
        w.setflags(write=False)
        object.__setattr__(self, "welfare", w)
        object.__setattr__(self, "action_labels", tuple(self.action_labels))
        object.__setattr__(self, "state_labels", tuple(self.state_labels))

    @property
    def n_actions(self) -> int:
        return self.welfare.shape[0]

    @property
    def n_states(self) -> int:
        return self.welfare.shape[1]


@dataclass(frozen=True)
class Prior:
    """Subjective probability weights over states."""

    weights: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValidationError("prior weights must be a nonempty vector")
        if (w < 0).any():
            raise ValidationError("prior weights must be nonnegative")
        total = w.sum()
        if abs(total - 1.0) > PRIOR_ATOL:
            raise ValidationError(
                f"prior weights must sum to 1 within {PRIOR_ATOL}, got {total!r}"
            )
        w = w / total
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class CriterionResult:
    """Per-action scores plus the optimizing set and a deterministic choice.

    ``optimal_set`` holds every action index whose score is optimal within
    ``ARGSET_ATOL``; ``chosen`` is its lowest index, a stable tie-break.
    """

    criterion: str
    scores: np.ndarray
    optimal_set: tuple[int, ...]
    chosen: int


@dataclass(frozen=True)
class RegretMatrix:
    """Shortfall from the best action, per state: max_d w(d,s) - w(c,s)."""

    regret: np.ndarray


def argmax_set(scores: np.ndarray, atol: float = ARGSET_ATOL) -> tuple[int, ...]:
    """Indices whose score is within ``atol`` of the maximum."""
    s = np.asarray(scores, dtype=float)
    return tuple(int(i) for i in np.flatnonzero(s >= s.max() - atol))


def argmin_set(scores: np.ndarray, atol: float = ARGSET_ATOL) -> tuple[int, ...]:
    """Indices whose score is within ``atol`` of the minimum."""
    s = np.asarray(scores, dtype=float)
    return tuple(int(i) for i in np.flatnonzero(s <= s.min() + atol))


def _result(criterion: str, scores: np.ndarray, optimal: tuple[int, ...]) -> CriterionResult:
    scores = np.asarray(scores, dtype=float)
    scores.setflags(write=False)
    return CriterionResult(criterion, scores, optimal, min(optimal))


def eliminate_dominated(
    matrix: WelfareMatrix,
) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
    """Drop weakly dominated actions.

    Action c is weakly dominated by d when w(d,s) >= w(c,s) in every state
    with strict inequality somewhere. Duplicate rows never dominate each
    other (strictness fails), so all duplicates survive. Returns the
    surviving indices and every (dominated, dominator) pair found.
    """
    w = matrix.welfare
    n = matrix.n_actions
    pairs: list[tuple[int, int]] = []
    dominated: set[int] = set()
    for c in range(n):
        for d in range(n):
            if d == c:
                continue
            if (w[d] >= w[c]).all() and (w[d] > w[c]).any():
                pairs.append((c, d))
                dominated.add(c)
    survivors = tuple(i for i in range(n) if i not in dominated)
    return survivors, pairs


def bayes_rank(matrix: WelfareMatrix, prior: Prior) -> CriterionResult:
    """Rank actions by prior-weighted expected welfare (higher is better)."""
    if prior.weights.size != matrix.n_states:
        raise ValidationError(
            f"prior has {prior.weights.size} weights but the matrix has "
            f"{matrix.n_states} states"
        )
    scores = matrix.welfare @ prior.weights
    return _result("bayes", scores, argmax_set(scores))


def maximin_rank(matrix: WelfareMatrix) -> CriterionResult:
    """Rank actions by their worst-case welfare (higher is better)."""
    scores = matrix.welfare.min(axis=1)
    return _result("maximin", scores, argmax_set(scores))


def regret_matrix(matrix: WelfareMatrix) -> RegretMatrix:
    """Columnwise best welfare minus each entry; every column has a zero."""
    w = matrix.welfare
    regret = w.max(axis=0)[np.newaxis, :] - w
    regret.setflags(write=False)
    return RegretMatrix(regret)


def minimax_regret_rank(matrix: WelfareMatrix) -> CriterionResult:
    """Rank actions by their maximum regret over states (lower is better)."""
    scores = regret_matrix(matrix).regret.max(axis=1)
    return _result("minimax_regret", scores, argmin_set(scores))


def mmr_point_prediction(region: Interval) -> tuple[float, float]:
    """Minimax-regret point prediction of an interval-identified mean.

    Under square loss the regret of predicting q when the mean is m is
    (m - q)^2, so the worst case over the region is minimized at the
    midpoint, with maximum regret ((hi - lo) / 2)^2. The closed form is
    checked against a grid search in the test suite.
    """
    half = (region.hi - region.lo) / 2.0
    return region.midpoint, half * half


def discretize_interval_states(
    regions: Sequence[Interval],
    grid_points: int,
    action_labels: Optional[Sequence[str]] = None,
    welfare: Optional[Callable[[int, tuple[float, ...]], float]] = None,
) -> WelfareMatrix:
    """Bridge interval-identified states to a finite welfare matrix.

    States are the Cartesian grid over the given intervals, ``grid_points``
    per axis, enumerated in C (row-major) order and labeled ``s0, s1, ...``.
    ``welfare`` maps (action index, state tuple) to a real; the default rule
    is "welfare of action a is coordinate a of the state" (one action per
    interval), the treatment-choice reading, and is filled vectorized.

    Refuses to materialize more than ``MAX_GRID_STATES`` grid states.
    """
    regions = list(regions)
    if not regions:
        raise ValidationError("need at least one interval")
    if grid_points < 2:
        raise ValidationError(f"grid_points must be >= 2, got {grid_points}")
    k = len(regions)
    n_states = grid_points**k
    if n_states > MAX_GRID_STATES:
        raise ValidationError(
            f"grid would have {n_states} states, more than the "
            f"{MAX_GRID_STATES} cap; lower grid_points or the number of axes"
        )
    if action_labels is None:
        action_labels = [f"a{i}" for i in range(k)]
    grids = [np.linspace(r.lo, r.hi, grid_points) for r in regions]
    mesh = np.meshgrid(*grids, indexing="ij")
    states = np.stack([m.reshape(-1) for m in mesh], axis=1)  # (n_states, k)
    if welfare is None:
        if len(action_labels) != k:
            raise ValidationError(
                "the default own-coordinate welfare rule needs exactly one "
                "action per interval"
            )
        w = states.T.copy()
    else:
        w = np.empty((len(action_labels), n_states))
        for a in range(len(action_labels)):
            for s in range(n_states):
                w[a, s] = welfare(a, tuple(states[s]))
    state_labels = tuple(f"s{i}" for i in range(n_states))
    return WelfareMatrix(tuple(action_labels), state_labels, w)
