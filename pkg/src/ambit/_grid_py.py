"""Numpy fallback for the product-grid enumeration kernels.

Same contracts as the compiled twin in ``_grid_cy``: the state space is the
Cartesian product of the rows of ``grids`` (one row of candidate mean values
per action), welfare of action a in a joint state is the state's a-th
coordinate, and every one of the g**k states is visited. No closed forms are
used; these functions exist to check closed forms.

Enumeration is chunked along the first axis to bound memory.
"""

from __future__ import annotations

import numpy as np


def _broadcast_rows(grids: np.ndarray) -> list[np.ndarray]:
    # Row a reshaped to vary along axis a-1 of the (k-1)-dim chunk.
    k, g = grids.shape
    rows = []
    for a in range(1, k):
        shape = [1] * (k - 1)
        shape[a - 1] = g
        rows.append(grids[a].reshape(shape))
    return rows


def max_regret_by_enumeration(grids: np.ndarray) -> np.ndarray:
    """Per-action maximum regret over the full grid of joint states.

    grids: (k, g) float array. Returns a (k,) array where entry a is
    max over states s of (max_b s[b]) - s[a].
    """
    grids = np.ascontiguousarray(grids, dtype=float)
    k, g = grids.shape
    if k == 1:
        return np.zeros(1)
    rows = _broadcast_rows(grids)
    rmax = np.full(k, -np.inf)
    for i0 in range(g):
        m0 = grids[0, i0]
        best = np.full([g] * (k - 1), m0)
        for row in rows:
            np.maximum(best, row, out=best)
        rmax[0] = max(rmax[0], float((best - m0).max()))
        for a in range(1, k):
            rmax[a] = max(rmax[a], float((best - rows[a - 1]).max()))
    return rmax


def dominance_envelope_by_enumeration(grids: np.ndarray) -> np.ndarray:
    """Min and max of w(a,s) - w(b,s) over all joint states, per ordered pair.

    Returns a (k, k, 2) array with [..., 0] the minimum gap and [..., 1] the
    maximum gap. Action a weakly dominates b on the grid iff the minimum gap
    is >= 0 and the maximum gap is > 0.
    """
    grids = np.ascontiguousarray(grids, dtype=float)
    k, g = grids.shape
    env = np.zeros((k, k, 2))
    if k == 1:
        return env
    env[..., 0] = np.inf
    env[..., 1] = -np.inf
    rows = _broadcast_rows(grids)

    def coord(a: int, i0: int):
        return grids[0, i0] if a == 0 else rows[a - 1]

    for i0 in range(g):
        for a in range(k):
            for b in range(k):
                if a == b:
                    env[a, b] = 0.0
                    continue
                diff = coord(a, i0) - coord(b, i0)
                diff = np.atleast_1d(diff)
                env[a, b, 0] = min(env[a, b, 0], float(diff.min()))
                env[a, b, 1] = max(env[a, b, 1], float(diff.max()))
    return env
