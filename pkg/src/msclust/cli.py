"""Command-line front end.

Verbs:
  cluster  run one algorithm at a fixed k on a matrix or points file
  sweep    descending-k cluster-count selection
  bench    timing grid over (n, k, algorithm) cells on synthetic data
  eval     ARI/NMI between two label files

Exit codes: 0 success, 1 invalid configuration, 2 unreadable or
malformed input, 3 dissimilarity-matrix invariant violation.
Env var MSC_THREADS caps the worker pool used for restarts.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .dynmsc import default_k_max, dynmsc, sweep_to_csv, sweep_to_json
from .core import (
    InputError,
    MatrixError,
    MedoidError,
    METRICS,
    build_matrix,
    init_build,
    init_random,
    load_matrix_csv,
    load_points_csv,
    nearest_three_all,
)
from .extval import ari, nmi
from .fastmsc import fastermsc, fastmsc
from .naive import pammedsil, pamsil
from .silhouette import medoid_silhouette, plot_data_csv, silhouette, silhouette_plot_data

ALGORITHMS = {
    "pamsil": pamsil,
    "pammedsil": pammedsil,
    "fastmsc": fastmsc,
    "fastermsc": fastermsc,
}

EXIT_BAD_CONFIG = 1
EXIT_BAD_INPUT = 2
EXIT_BAD_MATRIX = 3


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(EXIT_BAD_CONFIG, f"{self.prog}: error: {message}\n")


def _load_matrix(args) -> np.ndarray:
    if args.kind == "matrix":
        return load_matrix_csv(args.input)
    points = load_points_csv(args.input)
    return build_matrix(points, metric=args.metric)


def _worker_pool_size() -> int:
    try:
        return max(1, int(os.environ.get("MSC_THREADS", "1")))
    except ValueError:
        return 1


def _run_once(matrix: np.ndarray, args, seed: int):
    n = len(matrix)
    if args.shuffle:
        rng = np.random.default_rng(seed)
        perm = rng.permutation(n)
        work = matrix[np.ix_(perm, perm)]
    else:
        perm = None
        work = matrix

    if args.init == "build":
        m0 = init_build(work, args.k)
    else:
        m0 = init_random(n, args.k, seed)
    result = ALGORITHMS[args.algorithm](work, m0, max_iter=args.max_iter)

    if perm is not None:
        medoids = perm[result.medoids]
        result.medoids = medoids
        result.labels = nearest_three_all(matrix, medoids).n1
    return result


def _quality(result, algorithm: str) -> float:
    return result.asw if algorithm == "pamsil" else result.ams


def cmd_cluster(args) -> int:
    matrix = _load_matrix(args)
    n = len(matrix)
    if not 2 <= args.k < n:
        raise ConfigError(f"need 2 <= k < n, got k={args.k}, n={n}")

    seeds = [args.seed + r for r in range(args.restarts)]
    started = time.perf_counter()
    workers = _worker_pool_size()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _run_once(matrix, args, s), seeds))
    else:
        results = [_run_once(matrix, args, s) for s in seeds]
    best = max(results, key=lambda r: _quality(r, args.algorithm))
    seconds = time.perf_counter() - started

    asw = best.asw
    if args.asw and asw is None:
        asw = silhouette(matrix, best.labels).mean

    payload = {
        "algorithm": args.algorithm,
        "k": args.k,
        "ams": best.ams,
    }
    if asw is not None:
        payload["asw"] = asw
    payload.update({
        "medoids": [int(m) for m in best.medoids],
        "labels": [int(l) for l in best.labels],
        "swaps": best.swaps,
        "iterations": best.iterations,
        "seconds": seconds,
    })

    if args.plot_data:
        report = medoid_silhouette(matrix, best.medoids)
        rows = silhouette_plot_data(report, best.labels)
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write(plot_data_csv(rows))

    if args.format == "csv":
        lines = ["point,label"]
        lines.extend(f"{o},{int(l)}" for o, l in enumerate(best.labels))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload) + "\n"
    _emit(text, args.output)
    return 0


def cmd_sweep(args) -> int:
    matrix = _load_matrix(args)
    n = len(matrix)
    k_max = args.k_max if args.k_max is not None else default_k_max(n)
    sweep = dynmsc(matrix, k_max=k_max, k_min=args.k_min,
                   seed=args.seed, max_iter=args.max_iter)
    if args.format == "csv":
        text = sweep_to_csv(sweep)
    else:
        text = sweep_to_json(sweep) + "\n"
    _emit(text, args.output)
    return 0


def cmd_bench(args) -> int:
    sizes = _parse_int_list(args.sizes, "sizes")
    ks = _parse_int_list(args.ks, "ks")
    algos = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {a!r}")
    if not sizes or not ks or not algos:
        raise ConfigError("sizes, ks, and algorithms must be non-empty")

    lines = ["algo,n,k,seconds,swaps,iters"]
    for n in sizes:
        rng = np.random.default_rng(args.seed + n)
        matrix = build_matrix(rng.random((n, 2)))
        for k in ks:
            if k >= n:
                raise ConfigError(f"bench cell k={k} >= n={n}")
            m0 = init_random(n, k, args.seed)
            for algo in algos:
                fn = ALGORITHMS[algo]
                fn(matrix, m0, max_iter=args.max_iter)  # warmup
                times = []
                result = None
                timed_out = False
                for _ in range(args.repeats):
                    t0 = time.perf_counter()
                    result = fn(matrix, m0, max_iter=args.max_iter)
                    elapsed = time.perf_counter() - t0
                    times.append(elapsed)
                    if args.timeout and elapsed > args.timeout:
                        timed_out = True
                        break
                if timed_out:
                    lines.append(f"{algo},{n},{k},timeout,,")
                else:
                    med = statistics.median(times)
                    lines.append(f"{algo},{n},{k},{med!r},"
                                 f"{result.swaps},{result.iterations}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_eval(args) -> int:
    a = _load_labels(args.labels_a)
    b = _load_labels(args.labels_b)
    payload = {"ari": ari(a, b), "nmi": nmi(a, b)}
    _emit(json.dumps(payload) + "\n", args.output)
    return 0


def _load_labels(path: str) -> list[str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            labels = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        raise InputError(str(exc)) from None
    if not labels:
        raise InputError(f"no labels in {path}")
    return labels


def _parse_int_list(text: str, name: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ConfigError(f"{name} must be comma-separated integers") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_input_args(p: _Parser) -> None:
    p.add_argument("--input", required=True, help="input CSV file")
    p.add_argument("--kind", choices=("matrix", "points"), default="points",
                   help="matrix: n x n dissimilarities; points: one vector per row")
    p.add_argument("--metric", choices=METRICS, default="euclidean",
                   help="metric for points input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> _Parser:
    parser = _Parser(prog="msclust", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster at a fixed k")
    _add_input_args(p)
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="fastermsc")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--init", choices=("random", "build"), default="random")
    p.add_argument("--restarts", type=int, default=10,
                   help="restarts with seeds seed..seed+restarts-1; best kept")
    p.add_argument("--shuffle", action="store_true",
                   help="seeded shuffle of the point order before clustering")
    p.add_argument("--asw", action="store_true",
                   help="also report the full Silhouette (O(n^2))")
    p.add_argument("--plot-data", help="write silhouette-plot CSV here")
    p.set_defaults(fn=cmd_cluster)

    p = sub.add_parser("sweep", help="choose k automatically")
    _add_input_args(p)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=None)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("bench", help="timing grid on synthetic data")
    p.add_argument("--sizes", required=True, help="comma-separated n values")
    p.add_argument("--ks", required=True, help="comma-separated k values")
    p.add_argument("--algorithms", default="pammedsil,fastmsc")
    p.add_argument("--repeats", type=int, default=3,
                   help="timed repetitions per cell (median reported)")
    p.add_argument("--timeout", type=float, default=0.0,
                   help="per-run budget in seconds; exceeded cells are "
                        "marked timeout and the grid continues")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("eval", help="ARI/NMI between two label files")
    p.add_argument("--labels-a", required=True)
    p.add_argument("--labels-b", required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(fn=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, MedoidError) as exc:
        print(f"msclust: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except MatrixError as exc:
        print(f"msclust: matrix invariant violation: {exc}", file=sys.stderr)
        return EXIT_BAD_MATRIX
    except (InputError, OSError) as exc:
        print(f"msclust: bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
