"""Brute-force product-grid kernels, compiled when available.

The compiled extension ``ambit._grid_cy`` and the numpy module
``ambit._grid_py`` implement the same enumeration contracts; whichever is
importable wins at import time (compiled preferred). Set ``AMBIT_PURE_GRID=1``
to force the numpy fallback, e.g. to compare backends or to run without a
compiler. ``BACKEND`` reports which one is active.

These kernels are verification machinery: they visit every state of a
discretized rectangular state space so that the closed-form treatment-choice
criteria can be checked against something that does not share their algebra.
``benchmarks/bench_grid.py`` compares the two backends.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .criteria import CriterionResult, argmax_set, argmin_set
from .identification import Interval

from . import _grid_py

if os.environ.get("AMBIT_PURE_GRID", "") == "1":
    _impl = _grid_py
    BACKEND = "numpy"
else:
    try:
        from . import _grid_cy as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _grid_py
        BACKEND = "numpy"


def max_regret_by_enumeration(grids: np.ndarray) -> np.ndarray:
    """Per-action maximum regret over the full grid of joint states."""
    return _impl.max_regret_by_enumeration(grids)


def dominance_envelope_by_enumeration(grids: np.ndarray) -> np.ndarray:
    """Min/max welfare gap per ordered action pair over all joint states."""
    return _impl.dominance_envelope_by_enumeration(grids)


def interval_grids(regions: Sequence[Interval], grid_points: int) -> np.ndarray:
    """(k, g) array of evenly spaced candidate means, endpoints included."""
    if grid_points < 2:
        raise ValueError(f"grid_points must be >= 2, got {grid_points}")
    return np.stack([np.linspace(r.lo, r.hi, grid_points) for r in regions])


def rect_grid_criteria(
    regions: Sequence[Interval], grid_points: int
) -> tuple[CriterionResult, CriterionResult]:
    """Minimax-regret and maximin results by exhaustive grid enumeration.

    Welfare of choosing action a in a joint state is the state's a-th
    coordinate. The regret sweep visits every joint state; the worst case of
    an action's own coordinate over the product grid is its row minimum, so
    maximin scores are the row minima of the grid.
    """
    grids = interval_grids(regions, grid_points)
    mmr_scores = max_regret_by_enumeration(grids)
    maximin_scores = grids.min(axis=1)
    mmr_opt = argmin_set(mmr_scores)
    mm_opt = argmax_set(maximin_scores)
    mmr = CriterionResult("minimax_regret", mmr_scores, mmr_opt, min(mmr_opt))
    mm = CriterionResult("maximin", maximin_scores, mm_opt, min(mm_opt))
    return mmr, mm


def grid_dominance_pairs(
    regions: Sequence[Interval], grid_points: int
) -> list[tuple[int, int]]:
    """(dominated, dominator) pairs by exhaustive grid enumeration.

    Action a weakly dominates b on the grid iff its welfare gap over b is
    nonnegative in every joint state and positive in some state.
    """
    env = dominance_envelope_by_enumeration(interval_grids(regions, grid_points))
    k = env.shape[0]
    pairs = []
    for b in range(k):
        for a in range(k):
            if a != b and env[a, b, 0] >= 0.0 and env[a, b, 1] > 0.0:
                pairs.append((b, a))
    return pairs
