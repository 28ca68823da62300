"""Automatic cluster-count selection via a descending-k sweep.

Starting from k_max random medoids, each k is optimized with the eager
incremental optimizer, then the medoid whose removal loses the least
silhouette (the maximal removal-loss accumulator) is deleted and the
warm state carries over to k-1. The k with the highest AMS wins; ties
go to the smaller k.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import ClusteringResult, MedoidError, check_matrix, init_random
from .fastmsc import OptimizerState, _fastermsc_state, _refresh_derived, _rescan, make_state
from .naive import DEFAULT_MAX_ITER


@dataclass
class KResult:
    k: int
    ams: float
    medoids: np.ndarray


@dataclass
class SweepResult:
    per_k: dict[int, KResult]
    best_k: int
    best: ClusteringResult


def default_k_max(n: int) -> int:
    return min(math.isqrt(n - 1) + 1 + 10, n - 1)


def remove_medoid(state: OptimizerState, position: int) -> None:
    """Delete a medoid in place, keeping the neighbor cache warm.

    Only points that had the removed medoid among their three nearest
    are rescanned; the rest just remap their cached positions. Removal
    losses and the silhouette sum are rebuilt afterward. Requires k >= 3
    so the result still has two medoids.
    """
    if state.k < 3:
        raise MedoidError("cannot remove a medoid below k = 2")
    c = state.cache
    removed = int(state.medoids[position])
    drem = state.matrix[removed]
    state.medoids = np.delete(state.medoids, position)

    need = (c.n1 == position) | (c.n2 == position) | (drem <= c.d3)
    keep = ~need
    c.n1[keep] -= (c.n1[keep] > position).astype(c.n1.dtype)
    c.n2[keep] -= (c.n2[keep] > position).astype(c.n2.dtype)
    if state.k == 2:
        c.d3[keep] = np.inf
    idx = np.nonzero(need)[0]
    if len(idx):
        _rescan(state, idx)

    _refresh_derived(state)
    s = np.where(c.d2 > 0, 1.0 - state.r12, 1.0)
    state.ams_sum = float(s.sum())


def dynmsc(
    matrix,
    k_max: int | None = None,
    k_min: int = 2,
    seed: int = 0,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SweepResult:
    """Descending-k sweep with warm-started eager optimization.

    Returns per-k results for every k in [k_min, k_max] and the
    argmax-AMS choice (ties toward smaller k).
    """
    matrix = check_matrix(matrix)
    n = len(matrix)
    if k_max is None:
        k_max = default_k_max(n)
    if not 2 <= k_min <= k_max < n:
        raise MedoidError(f"need 2 <= k_min <= k_max < n, got "
                          f"k_min={k_min}, k_max={k_max}, n={n}")

    state = make_state(matrix, init_random(n, k_max, seed))
    per_k: dict[int, KResult] = {}
    for k in range(k_max, k_min - 1, -1):
        _fastermsc_state(state, max_iter)
        per_k[k] = KResult(k=k, ams=state.ams_sum / n, medoids=state.medoids.copy())
        if k > k_min:
            drop = int(np.argmax(state.removal_loss))
            remove_medoid(state, drop)

    best_k = k_min
    for k in sorted(per_k):
        if per_k[k].ams > per_k[best_k].ams:
            best_k = k

    from .core import nearest_three_all

    chosen = per_k[best_k]
    labels = nearest_three_all(matrix, chosen.medoids).n1
    best = ClusteringResult(
        medoids=chosen.medoids,
        labels=labels,
        ams=chosen.ams,
        asw=None,
        swaps=state.swaps,
        iterations=state.iterations,
        converged=True,
    )
    return SweepResult(per_k=per_k, best_k=best_k, best=best)


def sweep_to_json(sweep: SweepResult) -> str:
    """JSON serialization: {"best_k": ..., "per_k": [{"k", "ams", "medoids"}]}."""
    payload = {
        "best_k": sweep.best_k,
        "per_k": [
            {"k": k, "ams": sweep.per_k[k].ams,
             "medoids": [int(m) for m in sweep.per_k[k].medoids]}
            for k in sorted(sweep.per_k)
        ],
    }
    return json.dumps(payload)


def sweep_to_csv(sweep: SweepResult) -> str:
    """CSV serialization with header k,ams, one row per swept k."""
    lines = ["k,ams"]
    lines.extend(f"{k},{sweep.per_k[k].ams!r}" for k in sorted(sweep.per_k))
    return "\n".join(lines) + "\n"
