"""Medoid Silhouette clustering with fast swap-based optimization and
automatic cluster-count selection."""

from .core import (
    ClusteringResult,
    InputError,
    MatrixError,
    MedoidError,
    NeighborCache,
    NeighborRecord,
    build_matrix,
    check_matrix,
    check_medoids,
    init_build,
    init_random,
    load_matrix_csv,
    load_points_csv,
    nearest_three,
    nearest_three_all,
    safe_ratio,
)
from .dynmsc import SweepResult, dynmsc, remove_medoid
from .extval import ari, nmi
from .fastmsc import (
    OptimizerState,
    fastermsc,
    fastmsc,
    find_best_swap,
    make_state,
    removal_losses,
    swap_delta,
    update_caches_after_swap,
)
from .naive import SwapCandidate, pammedsil, pamsil
from .oracle import axiom_suite, exhaustive_best_medoids, recompute_delta
from .silhouette import (
    SilhouetteReport,
    ams,
    medoid_silhouette,
    silhouette,
    silhouette_plot_data,
    simplified_silhouette,
)

__version__ = "0.1.0"

__all__ = [
    "ClusteringResult",
    "InputError",
    "MatrixError",
    "MedoidError",
    "NeighborCache",
    "NeighborRecord",
    "OptimizerState",
    "SilhouetteReport",
    "SwapCandidate",
    "SweepResult",
    "ams",
    "ari",
    "axiom_suite",
    "build_matrix",
    "check_matrix",
    "check_medoids",
    "dynmsc",
    "exhaustive_best_medoids",
    "fastermsc",
    "fastmsc",
    "find_best_swap",
    "init_build",
    "init_random",
    "load_matrix_csv",
    "load_points_csv",
    "make_state",
    "medoid_silhouette",
    "nearest_three",
    "nearest_three_all",
    "nmi",
    "pammedsil",
    "pamsil",
    "recompute_delta",
    "removal_losses",
    "remove_medoid",
    "safe_ratio",
    "silhouette",
    "silhouette_plot_data",
    "simplified_silhouette",
    "swap_delta",
    "update_caches_after_swap",
]
