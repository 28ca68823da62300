"""Dissimilarity matrices, nearest-medoid queries, and initialization.

All optimizers in this package operate on a dense symmetric n x n
dissimilarity matrix with zero diagonal. Metric axioms are not required;
the triangle inequality may fail.

Tie-breaking convention used throughout the package: the lowest point
index / lowest medoid position wins. This keeps every algorithm
deterministic, which the cross-algorithm equivalence tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

METRICS = ("euclidean", "sq-euclidean", "manhattan")

_SCIPY_METRIC = {
    "euclidean": "euclidean",
    "sq-euclidean": "sqeuclidean",
    "manhattan": "cityblock",
}


class MatrixError(ValueError):
    """The dissimilarity matrix violates a structural invariant."""


class MedoidError(ValueError):
    """Invalid medoid set (wrong size, duplicates, out of range)."""


class InputError(ValueError):
    """Malformed input file (bad row, ragged data, non-numeric token)."""


def safe_ratio(a: float, b: float) -> float:
    """a / b if b > 0 else 0.

    Wherever ratios appear in the Medoid Silhouette formulas, a <= b
    holds, so b == 0 forces a == 0 and the 0 result matches the
    convention that a point with zero distance to two medoids has a
    perfect silhouette. b may be +inf (the d3 sentinel for k == 2), in
    which case the ratio is 0 as well.
    """
    return a / b if b > 0 else 0.0


def safe_ratio_arr(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized safe_ratio."""
    b = np.asarray(b, dtype=float)
    out = np.divide(a, np.where(b > 0, b, 1.0))
    return np.where(b > 0, out, 0.0)


def check_matrix(values) -> np.ndarray:
    """Validate and return a dissimilarity matrix as a float64 array.

    Raises MatrixError unless the matrix is square, finite, non-negative,
    exactly symmetric, and zero on the diagonal.
    """
    m = np.asarray(values, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise MatrixError("matrix contains non-finite values")
    if np.any(m < 0):
        raise MatrixError("matrix contains negative dissimilarities")
    if not np.array_equal(m, m.T):
        raise MatrixError("matrix is not symmetric")
    if np.any(np.diag(m) != 0):
        raise MatrixError("matrix diagonal is not zero")
    return m


def check_medoids(medoids, n: int) -> np.ndarray:
    """Validate a medoid set: k distinct indices in [0, n), 2 <= k < n."""
    m = np.asarray(medoids, dtype=np.intp)
    if m.ndim != 1:
        raise MedoidError("medoids must be a flat index list")
    k = len(m)
    if not 2 <= k < n:
        raise MedoidError(f"need 2 <= k < n, got k={k}, n={n}")
    if len(np.unique(m)) != k:
        raise MedoidError("medoid indices must be distinct")
    if np.any(m < 0) or np.any(m >= n):
        raise MedoidError("medoid index out of range")
    return m


def build_matrix(points, metric: str = "euclidean") -> np.ndarray:
    """Pairwise dissimilarity matrix from a list of numeric vectors.

    The result is exactly symmetric (computed on the condensed upper
    triangle and mirrored).
    """
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, choose from {METRICS}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2:
        raise InputError("points must be a list of same-length vectors")
    if len(pts) < 3:
        raise InputError(f"need at least 3 points, got {len(pts)}")
    if not np.all(np.isfinite(pts)):
        raise InputError("points contain non-finite coordinates")
    return squareform(pdist(pts, metric=_SCIPY_METRIC[metric]))


@dataclass(frozen=True)
class NeighborRecord:
    """Identities of a point's two nearest medoids and its three
    smallest medoid distances. d3 is +inf when k == 2."""

    n1: int
    n2: int
    d1: float
    d2: float
    d3: float


@dataclass
class NeighborCache:
    """Per-point NeighborRecord fields as parallel arrays."""

    n1: np.ndarray
    n2: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray

    def record(self, o: int) -> NeighborRecord:
        return NeighborRecord(
            int(self.n1[o]), int(self.n2[o]),
            float(self.d1[o]), float(self.d2[o]), float(self.d3[o]),
        )


def nearest_three(matrix: np.ndarray, medoids, o: int) -> NeighborRecord:
    """The <= 3 smallest distances from point o to the medoids, with
    the positions of the two nearest. Ties go to the lower position."""
    medoids = np.asarray(medoids, dtype=np.intp)
    dists = matrix[o, medoids]
    order = np.argsort(dists, kind="stable")
    d3 = float(dists[order[2]]) if len(medoids) > 2 else np.inf
    return NeighborRecord(
        int(order[0]), int(order[1]),
        float(dists[order[0]]), float(dists[order[1]]), d3,
    )


def nearest_three_all(matrix: np.ndarray, medoids) -> NeighborCache:
    """Vectorized nearest_three for every point."""
    medoids = np.asarray(medoids, dtype=np.intp)
    n = len(matrix)
    d = matrix[:, medoids]
    order = np.argsort(d, axis=1, kind="stable")
    rows = np.arange(n)
    n1 = order[:, 0]
    n2 = order[:, 1]
    d1 = d[rows, n1]
    d2 = d[rows, n2]
    if len(medoids) > 2:
        d3 = d[rows, order[:, 2]]
    else:
        d3 = np.full(n, np.inf)
    return NeighborCache(n1, n2, d1, d2, d3)


def init_random(n: int, k: int, seed: int) -> np.ndarray:
    """k distinct indices sampled uniformly without replacement.

    Deterministic for a fixed seed; uses numpy's PCG64 generator so
    results reproduce across builds.
    """
    if not 2 <= k < n:
        raise MedoidError(f"need 2 <= k < n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    return np.asarray(rng.choice(n, size=k, replace=False), dtype=np.intp)


def init_build(matrix: np.ndarray, k: int) -> np.ndarray:
    """Greedy BUILD initialization.

    The first medoid minimizes the total distance to all points; each
    subsequent medoid maximizes the summed reduction
    max(0, d(o, nearest chosen) - d(o, candidate)). Ties break toward
    the lower index.
    """
    n = len(matrix)
    if not 2 <= k < n:
        raise MedoidError(f"need 2 <= k < n, got k={k}, n={n}")
    chosen = [int(np.argmin(matrix.sum(axis=0)))]
    dn = matrix[:, chosen[0]].copy()
    for _ in range(1, k):
        reduction = np.maximum(0.0, dn[:, None] - matrix).sum(axis=0)
        reduction[chosen] = -np.inf
        c = int(np.argmax(reduction))
        chosen.append(c)
        np.minimum(dn, matrix[:, c], out=dn)
    return np.asarray(chosen, dtype=np.intp)


@dataclass
class ClusteringResult:
    """Outcome of one optimizer run.

    `ams` is always the Average Medoid Silhouette of the final medoids;
    for the full-Silhouette optimizer the optimized quality is reported
    in `asw`. labels[o] is the position of o's nearest medoid.
    """

    medoids: np.ndarray
    labels: np.ndarray
    ams: float
    asw: float | None
    swaps: int
    iterations: int
    converged: bool


def _parse_csv_rows(path: str) -> list[list[float]]:
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            tokens = [t.strip() for t in line.split(",")]
            if not rows and width is None:
                # header row is optional, detected by a non-numeric first token
                try:
                    float(tokens[0])
                except ValueError:
                    continue
            try:
                row = [float(t) for t in tokens]
            except ValueError as exc:
                raise InputError(f"row {lineno}: non-numeric value ({exc})") from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise InputError(
                    f"row {lineno}: expected {width} columns, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise InputError("no data rows found")
    return rows


def load_points_csv(path: str) -> np.ndarray:
    """Points CSV: one vector per row, optional header."""
    return np.asarray(_parse_csv_rows(path), dtype=float)


def load_matrix_csv(path: str) -> np.ndarray:
    """Matrix CSV: n rows of n comma-separated floats, optional header.

    The parsed matrix is validated against the dissimilarity-matrix
    invariants (MatrixError on violation).
    """
    return check_matrix(_parse_csv_rows(path))
