"""Incremental Medoid Silhouette optimization.

The key pieces:

* ``swap_delta``: the O(1) change in one point's Medoid Silhouette for a
  candidate swap, from the cached nearest/second/third medoid distances.
* ``removal_losses``: per-medoid accumulators of the change in the
  silhouette sum if that medoid were deleted (points falling back to
  their next-nearest medoids).
* ``find_best_swap``: one O((n-k) n) pass that combines removal losses,
  the shared gain of adding each candidate, and correction terms for
  points whose nearest or second-nearest medoid is replaced.
* ``fastmsc``: steepest descent on these accumulators; returns results
  identical to the naive pammedsil under the shared tie-break rules.
* ``fastermsc``: eager first-descent variant that applies every
  improving swap immediately while cycling over candidates.

All delta values are gains in the unnormalized silhouette sum; division
by n happens only at reporting boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    ClusteringResult,
    NeighborCache,
    NeighborRecord,
    check_matrix,
    check_medoids,
    nearest_three_all,
    safe_ratio,
    safe_ratio_arr,
)
from .naive import DEFAULT_MAX_ITER, EPS_GAIN, SwapCandidate


@dataclass
class OptimizerState:
    """Mutable per-run state: medoids, neighbor cache, removal losses,
    and the running unnormalized silhouette sum."""

    matrix: np.ndarray
    medoids: np.ndarray
    cache: NeighborCache
    removal_loss: np.ndarray
    ams_sum: float
    swaps: int = 0
    iterations: int = 0
    inner_visits: int = 0
    # per-point ratio vectors shared by every candidate scan of an iteration
    r12: np.ndarray = field(default=None, repr=False)
    r13: np.ndarray = field(default=None, repr=False)
    r23: np.ndarray = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.medoids)


def swap_delta(rec: NeighborRecord, mi: int, d_oj: float) -> float:
    """Change in one point's Medoid Silhouette when medoid position mi
    is swapped for a candidate at distance d_oj from the point.

    Three-way case analysis on whether the replaced medoid is the
    point's nearest, second nearest, or neither, with sub-cases on d_oj
    against the cached d1/d2/d3. Exactly zero in the far-far case.
    """
    d1, d2, d3 = rec.d1, rec.d2, rec.d3
    old = safe_ratio(d1, d2)
    if mi == rec.n1:
        if d_oj < d2:
            return old - safe_ratio(d_oj, d2)
        if d_oj < d3:
            return old - safe_ratio(d2, d_oj)
        return old - safe_ratio(d2, d3)
    if mi == rec.n2:
        if d_oj < d1:
            return old - safe_ratio(d_oj, d1)
        if d_oj < d3:
            return old - safe_ratio(d1, d_oj)
        return old - safe_ratio(d1, d3)
    if d_oj < d1:
        return old - safe_ratio(d_oj, d1)
    if d_oj < d2:
        return old - safe_ratio(d1, d_oj)
    return 0.0


def removal_losses(cache: NeighborCache, k: int) -> np.ndarray:
    """Per-medoid change in the silhouette sum if that medoid were
    removed, accumulated in one pass over the points."""
    r12 = safe_ratio_arr(cache.d1, cache.d2)
    r23 = safe_ratio_arr(cache.d2, cache.d3)
    r13 = safe_ratio_arr(cache.d1, cache.d3)
    loss = np.bincount(cache.n1, weights=r12 - r23, minlength=k)
    loss += np.bincount(cache.n2, weights=r12 - r13, minlength=k)
    return loss


def make_state(matrix: np.ndarray, medoids) -> OptimizerState:
    """Build a consistent OptimizerState for a validated input."""
    matrix = check_matrix(matrix)
    medoids = check_medoids(medoids, len(matrix)).copy()
    state = OptimizerState(
        matrix=matrix,
        medoids=medoids,
        cache=nearest_three_all(matrix, medoids),
        removal_loss=np.zeros(len(medoids)),
        ams_sum=0.0,
    )
    _refresh_derived(state)
    s = np.where(state.cache.d2 > 0, 1.0 - state.r12, 1.0)
    state.ams_sum = float(s.sum())
    return state


def _refresh_derived(state: OptimizerState) -> None:
    c = state.cache
    state.r12 = safe_ratio_arr(c.d1, c.d2)
    state.r23 = safe_ratio_arr(c.d2, c.d3)
    state.r13 = safe_ratio_arr(c.d1, c.d3)
    state.removal_loss = np.bincount(c.n1, weights=state.r12 - state.r23,
                                     minlength=state.k)
    state.removal_loss += np.bincount(c.n2, weights=state.r12 - state.r13,
                                      minlength=state.k)


def candidate_totals(state: OptimizerState, j: int) -> tuple[np.ndarray, float]:
    """Accumulated swap gains for replacing each medoid with point j.

    Returns (per-medoid accumulators seeded with the removal losses plus
    correction terms, shared addition gain). The total gain for a swap
    at position i is acc[i] + shared, and equals the sum of swap_delta
    over all points.
    """
    c = state.cache
    doj = state.matrix[j]
    near = np.nonzero(doj < c.d3)[0]
    acc = state.removal_loss.copy()
    shared = 0.0
    state.inner_visits += len(state.matrix)
    if len(near) == 0:
        return acc, shared

    dv = doj[near]
    d1 = c.d1[near]
    d2 = c.d2[near]
    r12 = state.r12[near]
    r23 = state.r23[near]
    r13 = state.r13[near]

    case1 = dv < d1
    case2 = ~case1 & (dv < d2)
    case3 = ~(case1 | case2)

    cn1 = np.empty(len(near))
    cn2 = np.empty(len(near))

    if case1.any():
        i1 = case1
        shared += float((r12[i1] - dv[i1] / d1[i1]).sum())
        cn1[i1] = dv[i1] / d1[i1] + r23[i1] - (d1[i1] + dv[i1]) / d2[i1]
        cn2[i1] = r13[i1] - r12[i1]
    if case2.any():
        i2 = case2
        rv = safe_ratio_arr(d1[i2], dv[i2])
        shared += float((r12[i2] - rv).sum())
        cn1[i2] = rv + r23[i2] - (d1[i2] + dv[i2]) / d2[i2]
        cn2[i2] = r13[i2] - r12[i2]
    if case3.any():
        i3 = case3
        cn1[i3] = r23[i3] - safe_ratio_arr(d2[i3], dv[i3])
        cn2[i3] = r13[i3] - safe_ratio_arr(d1[i3], dv[i3])

    acc += np.bincount(c.n1[near], weights=cn1, minlength=state.k)
    acc += np.bincount(c.n2[near], weights=cn2, minlength=state.k)
    return acc, shared


def find_best_swap(state: OptimizerState) -> SwapCandidate | None:
    """Best strictly-improving swap over all non-medoid candidates, or
    None when no candidate gains more than the improvement epsilon.

    For each candidate the best medoid position is the argmax of the
    per-medoid accumulators (the shared addition gain is constant across
    positions); ties break toward the lower position, and the earliest
    candidate wins among equal totals.
    """
    n = len(state.matrix)
    is_medoid = np.zeros(n, dtype=bool)
    is_medoid[state.medoids] = True
    best: SwapCandidate | None = None
    for j in range(n):
        if is_medoid[j]:
            continue
        acc, shared = candidate_totals(state, j)
        i = int(np.argmax(acc))
        total = float(acc[i]) + shared
        if best is None or total > best.gain:
            best = SwapCandidate(i, j, total)
    if best is None or best.gain <= EPS_GAIN:
        return None
    return best


def update_caches_after_swap(state: OptimizerState, swapped_position: int,
                             old_medoid: int) -> None:
    """Refresh the neighbor cache after medoids[swapped_position] was
    replaced (the new medoid is already in place).

    Points keep their record untouched when neither the replaced nor the
    new medoid can enter their three nearest; all others rescan the full
    medoid set. Removal losses are rebuilt afterward.
    """
    c = state.cache
    new_medoid = int(state.medoids[swapped_position])
    dnew = state.matrix[new_medoid]
    dold = state.matrix[old_medoid]
    need = (c.n1 == swapped_position) | (c.n2 == swapped_position)
    need |= (dold <= c.d3) | (dnew <= c.d3)
    idx = np.nonzero(need)[0]
    if len(idx):
        _rescan(state, idx)
    _refresh_derived(state)


def _rescan(state: OptimizerState, idx: np.ndarray) -> None:
    """Recompute the neighbor records of the points in idx."""
    c = state.cache
    d = state.matrix[np.ix_(idx, state.medoids)]
    order = np.argsort(d, axis=1, kind="stable")
    rows = np.arange(len(idx))
    c.n1[idx] = order[:, 0]
    c.n2[idx] = order[:, 1]
    c.d1[idx] = d[rows, order[:, 0]]
    c.d2[idx] = d[rows, order[:, 1]]
    if state.k > 2:
        c.d3[idx] = d[rows, order[:, 2]]
    else:
        c.d3[idx] = np.inf


def _apply_swap(state: OptimizerState, position: int, replacement: int,
                gain: float) -> None:
    old = int(state.medoids[position])
    state.medoids[position] = replacement
    update_caches_after_swap(state, position, old)
    state.ams_sum += gain
    state.swaps += 1


def _result(state: OptimizerState, converged: bool) -> ClusteringResult:
    return ClusteringResult(
        medoids=state.medoids,
        labels=state.cache.n1.copy(),
        ams=state.ams_sum / len(state.matrix),
        asw=None,
        swaps=state.swaps,
        iterations=state.iterations,
        converged=converged,
    )


def fastmsc(matrix, medoids, max_iter: int = DEFAULT_MAX_ITER) -> ClusteringResult:
    """Steepest-descent AMS optimization with incremental swap gains.

    Applies find_best_swap until no strictly-improving swap remains,
    refreshing caches after each swap. From the same starting medoids it
    returns the identical medoid set and AMS as pammedsil.
    """
    state = make_state(matrix, medoids)
    converged = False
    for _ in range(max_iter):
        state.iterations += 1
        cand = find_best_swap(state)
        if cand is None:
            converged = True
            break
        _apply_swap(state, cand.medoid_position, cand.replacement, cand.gain)
    return _result(state, converged)


def fastermsc(matrix, medoids, max_iter: int = DEFAULT_MAX_ITER) -> ClusteringResult:
    """Eager first-descent AMS optimization.

    Cycles over candidates in index order (wrapping) and immediately
    applies any swap whose best per-medoid total is strictly positive;
    terminates when a full cycle returns to the last-swapped candidate
    without an improvement. max_iter counts full passes over the data.
    """
    state = make_state(matrix, medoids)
    converged = _fastermsc_state(state, max_iter)
    return _result(state, converged)


def _fastermsc_state(state: OptimizerState, max_iter: int) -> bool:
    """Run eager swapping on an existing (warm) state. Returns True on
    convergence, False when the pass budget ran out."""
    n = len(state.matrix)
    is_medoid = np.zeros(n, dtype=bool)
    is_medoid[state.medoids] = True
    x_last = -1
    j = 0
    visited = 0  # positions visited since the last swap (or start)
    steps = 0
    state.iterations += 1
    while True:
        if j == x_last or visited >= n:
            return True
        if steps and steps % n == 0:
            state.iterations += 1
            if steps // n >= max_iter:
                return False
        if not is_medoid[j]:
            acc, shared = candidate_totals(state, j)
            i = int(np.argmax(acc))
            total = float(acc[i]) + shared
            if total > EPS_GAIN:
                is_medoid[state.medoids[i]] = False
                is_medoid[j] = True
                _apply_swap(state, i, j, total)
                x_last = j
                visited = 0
        j = (j + 1) % n
        visited += 1
        steps += 1
