"""Reference steepest-descent optimizers with full re-evaluation.

PAMSIL optimizes the full Silhouette (ASW), PAMMEDSIL the Medoid
Silhouette (AMS). Both evaluate every (medoid, non-medoid) exchange by
recomputing the quality from scratch and apply the single best
strictly-improving swap per iteration. They exist to be slow and
obviously correct; the incremental optimizers are verified against them.

Candidates are enumerated with medoid positions ascending, then
non-medoid indices ascending, and the first candidate among equal gains
wins, so runs are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import ClusteringResult, check_matrix, check_medoids, nearest_three_all
from .silhouette import ams, silhouette

# minimum gain for a swap to count as a strict improvement; avoids
# cycling on floating-point ties
EPS_GAIN = 1e-12

DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class SwapCandidate:
    medoid_position: int
    replacement: int
    gain: float


def _ams_sum(matrix: np.ndarray, medoids: np.ndarray) -> float:
    """Unnormalized sum of Medoid Silhouette values."""
    d = matrix[:, medoids]
    part = np.partition(d, 1, axis=1)
    d1, d2 = part[:, 0], part[:, 1]
    s = np.where(d2 > 0, 1.0 - d1 / np.where(d2 > 0, d2, 1.0), 1.0)
    return float(s.sum())


def _asw_sum(matrix: np.ndarray, medoids: np.ndarray) -> float:
    """Unnormalized sum of full Silhouette values under nearest-medoid
    assignment (ties toward the lower medoid position)."""
    labels = np.argmin(matrix[:, medoids], axis=1)
    return float(silhouette(matrix, labels).per_point.sum())


def _steepest_descent(
    matrix: np.ndarray,
    medoids,
    max_iter: int,
    quality_sum: Callable[[np.ndarray, np.ndarray], float],
) -> ClusteringResult:
    matrix = check_matrix(matrix)
    n = len(matrix)
    medoids = check_medoids(medoids, n).copy()
    k = len(medoids)

    current = quality_sum(matrix, medoids)
    swaps = 0
    iterations = 0
    converged = False
    for _ in range(max_iter):
        iterations += 1
        is_medoid = np.zeros(n, dtype=bool)
        is_medoid[medoids] = True
        best = current
        best_swap = None
        trial = medoids.copy()
        for i in range(k):
            saved = trial[i]
            for j in range(n):
                if is_medoid[j]:
                    continue
                trial[i] = j
                q = quality_sum(matrix, trial)
                if q > best:
                    best = q
                    best_swap = (i, j)
            trial[i] = saved
        if best_swap is None or best - current <= EPS_GAIN:
            converged = True
            break
        medoids[best_swap[0]] = best_swap[1]
        current = best
        swaps += 1

    labels = nearest_three_all(matrix, medoids).n1
    return ClusteringResult(
        medoids=medoids,
        labels=labels,
        ams=ams(matrix, medoids),
        asw=None,
        swaps=swaps,
        iterations=iterations,
        converged=converged,
    )


def pamsil(matrix, medoids, max_iter: int = DEFAULT_MAX_ITER) -> ClusteringResult:
    """Steepest-descent swap optimization of the full Silhouette (ASW).

    O(k (n-k) n^2) per iteration. The optimized ASW is reported in
    `asw`; `ams` holds the AMS of the final medoids for comparability.
    """
    result = _steepest_descent(matrix, medoids, max_iter, _asw_sum)
    result.asw = _asw_sum(matrix, result.medoids) / len(result.labels)
    return result


def pammedsil(matrix, medoids, max_iter: int = DEFAULT_MAX_ITER) -> ClusteringResult:
    """Steepest-descent swap optimization of the Medoid Silhouette (AMS).

    Identical control flow to pamsil but evaluating the AMS, which only
    needs distances to medoids: O(k^2 (n-k) n) per iteration.
    """
    return _steepest_descent(matrix, medoids, max_iter, _ams_sum)
