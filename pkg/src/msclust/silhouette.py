"""Silhouette evaluation: full Silhouette (ASW), simplified Silhouette,
and Medoid Silhouette (AMS), plus silhouette-plot data export.

The full Silhouette is the O(n^2) oracle the faster medoid-based
variants are compared against; no subsampling is done.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import check_medoids, nearest_three_all, safe_ratio_arr


@dataclass
class SilhouetteReport:
    per_point: np.ndarray
    mean: float


def _report(per_point: np.ndarray) -> SilhouetteReport:
    return SilhouetteReport(per_point, float(per_point.mean()))


def silhouette(matrix: np.ndarray, labels) -> SilhouetteReport:
    """Full Silhouette of a labeling.

    s_i = (b_i - a_i) / max(a_i, b_i), where a_i is the mean distance to
    the point's own cluster (excluding itself) and b_i the smallest mean
    distance to another cluster. Points in singleton clusters get s_i = 0.
    """
    labels = np.asarray(labels)
    n = len(matrix)
    if len(labels) != n:
        raise ValueError("labels length does not match matrix size")
    _, idx = np.unique(labels, return_inverse=True)
    ncl = idx.max() + 1
    if ncl < 2:
        raise ValueError("need at least 2 clusters")
    counts = np.bincount(idx, minlength=ncl)
    # per-point sums of distances to each cluster, one matrix pass per cluster
    sums = np.empty((n, ncl))
    for c in range(ncl):
        sums[:, c] = matrix[:, idx == c].sum(axis=1)

    rows = np.arange(n)
    own_count = counts[idx]
    a = np.where(own_count > 1, sums[rows, idx] / np.maximum(own_count - 1, 1), 0.0)
    means = sums / counts  # mean distance to each cluster
    means[rows, idx] = np.inf  # exclude own cluster from b
    b = means.min(axis=1)

    denom = np.maximum(a, b)
    s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    s = np.where(own_count == 1, 0.0, s)
    return _report(s)


def simplified_silhouette(matrix: np.ndarray, medoids) -> SilhouetteReport:
    """Simplified (medoid-based) Silhouette with nearest-medoid assignment.

    s'_i = (b' - a') / max(a', b') with a' the distance to the nearest
    medoid and b' to the closest other medoid. With this assignment
    a' <= b', so the values coincide with the Medoid Silhouette,
    including s' = 1 when a' = b' = 0.
    """
    medoids = check_medoids(medoids, len(matrix))
    cache = nearest_three_all(matrix, medoids)
    a, b = cache.d1, cache.d2
    denom = np.maximum(a, b)
    s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 1.0)
    return _report(s)


def medoid_silhouette(matrix: np.ndarray, medoids) -> SilhouetteReport:
    """Medoid Silhouette: s~_i = 1 - d1/d2, with s~ = 1 when d1 = d2 = 0.

    The mean is the Average Medoid Silhouette (AMS).
    """
    medoids = check_medoids(medoids, len(matrix))
    cache = nearest_three_all(matrix, medoids)
    s = np.where(cache.d2 > 0, 1.0 - safe_ratio_arr(cache.d1, cache.d2), 1.0)
    return _report(s)


def ams(matrix: np.ndarray, medoids) -> float:
    """Average Medoid Silhouette of a medoid set."""
    return medoid_silhouette(matrix, medoids).mean


def silhouette_plot_data(report: SilhouetteReport, labels) -> list[tuple[int, int, float]]:
    """Rows (label, point index, width), grouped by label ascending and
    sorted by descending width within each group; ready for plotting."""
    labels = np.asarray(labels)
    if len(labels) != len(report.per_point):
        raise ValueError("labels and report lengths differ")
    rows = []
    for o in range(len(labels)):
        rows.append((int(labels[o]), o, float(report.per_point[o])))
    rows.sort(key=lambda r: (r[0], -r[2], r[1]))
    return rows


def plot_data_csv(rows: list[tuple[int, int, float]]) -> str:
    """Serialize plot rows to CSV with header label,point,width."""
    lines = ["label,point,width"]
    lines.extend(f"{lab},{pt},{w!r}" for lab, pt, w in rows)
    return "\n".join(lines) + "\n"
