"""Command-line entry point: data ingestion, configuration and run orchestration.

Subcommands:
    gen            write a synthetic dataset (rings or vmf suite) as CSV
    cluster        run kpk / kernel_kmeans / power_kmeans with restarts
    cluster-multi  run the multi-kernel engine over a kernel bank
    eval           NMI/ARI between two label files
    bench          matched-seed benchmark suites with a summary table

Configs and reports are JSON with a schema_version field; unknown config
keys are rejected. Exit code is 0 on success, nonzero with a machine-readable
error object on stderr otherwise.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baselines import kernel_kmeans, power_kmeans
from .cluster import AnnealSchedule, run_kpk
from .datagen import Dataset, RingsConfig, VmfConfig, gen_rings, gen_vmf_sphere
from .kernels import KernelSpec, bandwidth_heuristic, default_kernel_bank, gram_matrix, normalize_gram
from .metrics import ari, nmi
from .multi_kernel import run_mkpk

SCHEMA_VERSION = 1

ALGORITHMS = ("kpk", "mkpk", "kernel_kmeans", "power_kmeans")

_INIT_ALIASES = {
    "random": "random_points",
    "random_points": "random_points",
    "kpp": "kernel_kpp",
    "kernel_kpp": "kernel_kpp",
}

_CONFIG_KEYS = {
    "schema_version",
    "algorithm",
    "k",
    "kernel",
    "kernel_bank",
    "schedule",
    "lambda",
    "init",
    "restarts",
    "master_seed",
    "tol",
    "max_iter",
    "standardize",
}

_SCHEDULE_KEYS = {"s0", "eta", "period", "s_cap"}


@dataclass
class RunConfig:
    """Everything needed to reproduce a run group, JSON round-trippable."""

    algorithm: str = "kpk"
    k: int = 2
    kernel: dict | None = None  # KernelSpec dict; sigma may be the string "auto"
    kernel_bank: str | list | None = None  # "default" or a list of kernel dicts
    schedule: AnnealSchedule = field(default_factory=AnnealSchedule)
    lam: float = 1.0
    init: str = "random_points"
    restarts: int = 1
    master_seed: int = 0
    tol: float = 1e-8
    max_iter: int = 500
    standardize: bool = True

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.init not in _INIT_ALIASES:
            raise ValueError(f"unknown init strategy {self.init!r}")
        self.init = _INIT_ALIASES[self.init]
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.kernel is not None:
            _validate_kernel_dict(self.kernel)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "algorithm": self.algorithm,
            "k": self.k,
            "kernel": self.kernel,
            "kernel_bank": self.kernel_bank,
            "schedule": {
                "s0": self.schedule.s0,
                "eta": self.schedule.eta,
                "period": self.schedule.period,
                "s_cap": self.schedule.s_cap,
            },
            "lambda": self.lam,
            "init": self.init,
            "restarts": self.restarts,
            "master_seed": self.master_seed,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "standardize": self.standardize,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        unknown = set(d) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        version = d.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported config schema_version {version!r}")
        sched = d.get("schedule", {})
        unknown_sched = set(sched) - _SCHEDULE_KEYS
        if unknown_sched:
            raise ValueError(f"unknown schedule keys: {sorted(unknown_sched)}")
        defaults = AnnealSchedule()
        schedule = AnnealSchedule(
            s0=sched.get("s0", defaults.s0),
            eta=sched.get("eta", defaults.eta),
            period=sched.get("period", defaults.period),
            s_cap=sched.get("s_cap", defaults.s_cap),
        )
        return cls(
            algorithm=d.get("algorithm", "kpk"),
            k=d.get("k", 2),
            kernel=d.get("kernel"),
            kernel_bank=d.get("kernel_bank"),
            schedule=schedule,
            lam=d.get("lambda", 1.0),
            init=d.get("init", "random_points"),
            restarts=d.get("restarts", 1),
            master_seed=d.get("master_seed", 0),
            tol=d.get("tol", 1e-8),
            max_iter=d.get("max_iter", 500),
            standardize=d.get("standardize", True),
        )


def _validate_kernel_dict(d: dict) -> None:
    if not isinstance(d, dict):
        raise ValueError("kernel must be a dict with a 'kind' key")
    if d.get("sigma") == "auto":
        probe = dict(d)
        probe["sigma"] = 1.0
        KernelSpec.from_dict(probe)
    else:
        KernelSpec.from_dict(d)


def _resolve_kernel(d: dict, X: np.ndarray) -> KernelSpec:
    d = dict(d)
    if d.get("sigma") == "auto":
        d["sigma"] = bandwidth_heuristic(X)
    return KernelSpec.from_dict(d)


def load_csv(path, has_header: bool = False, label_column: int | None = None, delimiter: str = ",") -> Dataset:
    """Read a rectangular numeric CSV; optionally peel off a label column.

    Label values may be non-numeric and are integer-encoded by first
    appearance. Ragged rows and non-numeric feature cells are reported with
    their line/column position.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh, delimiter=delimiter) if row]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: empty file")
    width = len(rows[0])
    offset = 2 if has_header else 1
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: ragged row at line {i + offset} (expected {width} cells, got {len(row)})")
    if label_column is not None:
        label_idx = label_column % width
        raw_labels = [row[label_idx] for row in rows]
        seen: dict[str, int] = {}
        labels = np.array([seen.setdefault(v, len(seen)) for v in raw_labels], dtype=np.int64)
        feature_cols = [j for j in range(width) if j != label_idx]
    else:
        labels = None
        feature_cols = list(range(width))
    if not feature_cols:
        raise ValueError(f"{path}: no feature columns left after removing the label column")
    X = np.empty((len(rows), len(feature_cols)))
    for i, row in enumerate(rows):
        for out_j, j in enumerate(feature_cols):
            try:
                X[i, out_j] = float(row[j])
            except ValueError:
                raise ValueError(
                    f"{path}: non-numeric feature cell {row[j]!r} at line {i + offset}, column {j + 1}"
                ) from None
    return Dataset(X=X, labels=labels)


def write_csv(path, dataset: Dataset, header: bool = True) -> None:
    """Write features plus a trailing 'label' column (if labels are present)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        p = dataset.X.shape[1]
        if header:
            cols = [f"x{j}" for j in range(p)]
            if dataset.labels is not None:
                cols.append("label")
            writer.writerow(cols)
        for i in range(dataset.X.shape[0]):
            row = [repr(v) for v in dataset.X[i]]
            if dataset.labels is not None:
                row.append(int(dataset.labels[i]))
            writer.writerow(row)


def standardize(X: np.ndarray) -> np.ndarray:
    """Center and scale columns; constant columns are centered only."""
    X = np.asarray(X, dtype=np.float64)
    mean = X.mean(axis=0)
    sd = X.std(axis=0)
    sd = np.where(sd == 0.0, 1.0, sd)
    return (X - mean) / sd


def _prepare_features(config: RunConfig, data: Dataset) -> np.ndarray:
    uses_arc = False
    if config.kernel is not None and config.kernel.get("kind") == "gaussian_arc":
        uses_arc = True
    if isinstance(config.kernel_bank, list):
        uses_arc = uses_arc or any(d.get("kind") == "gaussian_arc" for d in config.kernel_bank)
    if config.standardize and uses_arc:
        warnings.warn("gaussian_arc kernel requires unit-norm rows; standardization disabled")
        return np.asarray(data.X, dtype=np.float64)
    if config.standardize:
        return standardize(data.X)
    return np.asarray(data.X, dtype=np.float64)


def _resolve_bank(config: RunConfig, X: np.ndarray) -> list[KernelSpec]:
    bank = config.kernel_bank
    if bank is None or bank == "default":
        return default_kernel_bank(X)
    if isinstance(bank, list):
        return [_resolve_kernel(d, X) for d in bank]
    raise ValueError(f"kernel_bank must be 'default' or a list of kernel dicts, got {bank!r}")


def _single_restart(algorithm, payload, seed):
    """One seeded run; returns the per-restart report entry."""
    t0 = time.perf_counter()
    if algorithm == "kpk":
        res = run_kpk(
            payload["gram"], payload["k"], payload["schedule"], payload["init"],
            seed, payload["tol"], payload["max_iter"],
        )
    elif algorithm == "kernel_kmeans":
        res = kernel_kmeans(payload["gram"], payload["k"], payload["init"], seed, payload["max_iter"])
    elif algorithm == "power_kmeans":
        res = power_kmeans(
            payload["X"], payload["k"], payload["schedule"], payload["init"],
            seed, payload["tol"], payload["max_iter"],
        )
    elif algorithm == "mkpk":
        res = run_mkpk(
            payload["grams"], payload["k"], payload["lam"], payload["schedule"],
            payload["init"], seed, payload["tol"], payload["max_iter"],
        )
    else:  # pragma: no cover - validated upstream
        raise ValueError(f"unknown algorithm {algorithm!r}")
    elapsed = time.perf_counter() - t0
    entry = {
        "seed": seed,
        "labels": [int(v) for v in res.labels],
        "final_objective": float(res.objective_trace[-1]) if res.objective_trace.size else None,
        "iterations": int(res.iterations),
        "s_final": float(res.s_trace[-1]) if res.s_trace.size else None,
        "n_reseeds": len(res.reseeds),
        "wall_time_s": elapsed,
    }
    if algorithm == "mkpk":
        entry["alpha"] = [float(v) for v in res.alpha_final]
    return entry


def _restart_task(args):
    algorithm, payload, seed = args
    return _single_restart(algorithm, payload, seed)


def run_command(config: RunConfig, data: Dataset, workers: int = 1) -> dict:
    """Execute ``restarts`` seeded runs and assemble the report.

    Restart r uses seed master_seed + r, so matched initializations across
    algorithms come from matching configs. When ground-truth labels are
    present the report carries per-restart and aggregate NMI/ARI.
    """
    X = _prepare_features(config, data)
    n = X.shape[0]
    if config.k > n:
        raise ValueError(f"k={config.k} exceeds the number of points n={n}")

    payload = {
        "k": config.k,
        "schedule": config.schedule,
        "init": config.init,
        "tol": config.tol,
        "max_iter": config.max_iter,
    }
    if config.algorithm in ("kpk", "kernel_kmeans"):
        if config.kernel is None:
            raise ValueError(f"{config.algorithm} requires a kernel spec")
        spec = _resolve_kernel(config.kernel, X)
        payload["gram"] = gram_matrix(spec, X)
    elif config.algorithm == "power_kmeans":
        payload["X"] = X
    else:  # mkpk
        specs = _resolve_bank(config, X)
        payload["grams"] = [normalize_gram(gram_matrix(spec, X)) for spec in specs]
        payload["lam"] = config.lam

    seeds = [config.master_seed + r for r in range(config.restarts)]
    if workers > 1:
        tasks = [(config.algorithm, payload, seed) for seed in seeds]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(_restart_task, tasks))
    else:
        entries = [_single_restart(config.algorithm, payload, seed) for seed in seeds]
    for r, entry in enumerate(entries):
        entry["restart_index"] = r

    report = {
        "schema_version": SCHEMA_VERSION,
        "config": config.to_dict(),
        "n": n,
        "p": int(X.shape[1]),
        "restarts": entries,
    }
    if data.labels is not None:
        truth = np.asarray(data.labels)
        nmis = [nmi(truth, np.asarray(e["labels"])) for e in entries]
        aris = [ari(truth, np.asarray(e["labels"])) for e in entries]
        report["metrics"] = {
            "nmi": _metric_summary(nmis),
            "ari": _metric_summary(aris),
        }
    return report


def _metric_summary(values) -> dict:
    arr = np.asarray(values, dtype=np.float64)
    return {
        "per_restart": [float(v) for v in arr],
        "mean": float(arr.mean()),
        "min": float(arr.min()),
        "max": float(arr.max()),
    }


# --- benchmark suites ------------------------------------------------------

BENCH_SUITES = ("rings", "vmf")


def bench_command(suite: str, overrides: dict | None = None) -> dict:
    """Matched-seed comparison of kpk against the baselines on a suite.

    rings: one rings dataset, Gaussian kernel with sigma = 1, no
    standardization (the geometry is the signal).
    vmf: ``datasets`` hypersphere datasets, arc-cosine Gaussian kernel with
    sigma = 1, scores averaged over datasets x restarts.
    Each entry of the report carries raw per-run scores for external
    statistical analysis.
    """
    overrides = dict(overrides or {})
    if suite not in BENCH_SUITES:
        raise ValueError(f"unknown bench suite {suite!r}; expected one of {BENCH_SUITES}")
    restarts = int(overrides.pop("restarts", 20 if suite == "rings" else 5))
    master_seed = int(overrides.pop("master_seed", 0))
    if suite == "rings":
        cfg_fields = {k: overrides.pop(k) for k in ("k", "n_per", "radius_step", "noise_sd") if k in overrides}
        data_seed = int(overrides.pop("data_seed", 0))
        n_datasets = 1
        datasets = [gen_rings(RingsConfig(rng_seed=data_seed, **cfg_fields))]
        kernel = {"kind": "gaussian", "sigma": 1.0}
        k = datasets[0].labels.max() + 1
        algorithms = ("kpk", "kernel_kmeans", "power_kmeans")
    else:
        cfg_fields = {k: overrides.pop(k) for k in ("k", "n", "dim", "kappa") if k in overrides}
        data_seed = int(overrides.pop("data_seed", 0))
        n_datasets = int(overrides.pop("datasets", 5))
        datasets = [gen_vmf_sphere(VmfConfig(rng_seed=data_seed + d, **cfg_fields)) for d in range(n_datasets)]
        kernel = {"kind": "gaussian_arc", "sigma": 1.0}
        k = max(int(ds.labels.max()) + 1 for ds in datasets)
        algorithms = ("kpk", "kernel_kmeans", "power_kmeans")
    if overrides:
        raise ValueError(f"unknown bench overrides: {sorted(overrides)}")

    rows = {}
    for algorithm in algorithms:
        per_run = []
        for d, dataset in enumerate(datasets):
            config = RunConfig(
                algorithm=algorithm,
                k=int(k),
                kernel=None if algorithm == "power_kmeans" else kernel,
                restarts=restarts,
                master_seed=master_seed + 10_000 * d,
                standardize=False,
            )
            report = run_command(config, dataset)
            for e, nmi_v, ari_v in zip(
                report["restarts"],
                report["metrics"]["nmi"]["per_restart"],
                report["metrics"]["ari"]["per_restart"],
            ):
                per_run.append(
                    {"dataset": d, "restart": e["restart_index"], "seed": e["seed"], "nmi": nmi_v, "ari": ari_v}
                )
        nmis = np.array([r["nmi"] for r in per_run])
        aris = np.array([r["ari"] for r in per_run])
        rows[algorithm] = {
            "nmi_mean": float(nmis.mean()),
            "nmi_sd": float(nmis.std(ddof=1)) if nmis.size > 1 else 0.0,
            "ari_mean": float(aris.mean()),
            "ari_sd": float(aris.std(ddof=1)) if aris.size > 1 else 0.0,
            "per_run": per_run,
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "params": {
            "restarts": restarts,
            "master_seed": master_seed,
            "data_seed": data_seed,
            "datasets": n_datasets,
            **cfg_fields,
        },
        "kernel": kernel,
        "algorithms": rows,
    }


def format_bench_table(report: dict) -> str:
    lines = [f"suite: {report['suite']}"]
    lines.append(f"{'algorithm':<16}{'NMI mean':>10}{'NMI sd':>10}{'ARI mean':>10}{'ARI sd':>10}")
    for name, row in report["algorithms"].items():
        lines.append(
            f"{name:<16}{row['nmi_mean']:>10.4f}{row['nmi_sd']:>10.4f}{row['ari_mean']:>10.4f}{row['ari_sd']:>10.4f}"
        )
    return "\n".join(lines)


# --- argument parsing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kpkmeans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic dataset as CSV")
    p_gen.add_argument("--suite", choices=("rings", "vmf"), required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--k", type=int, default=None)
    p_gen.add_argument("--n-per", type=int, default=None, help="points per ring (rings)")
    p_gen.add_argument("--radius-step", type=float, default=None, help="ring spacing (rings)")
    p_gen.add_argument("--noise-sd", type=float, default=None, help="radial noise (rings)")
    p_gen.add_argument("--n", type=int, default=None, help="total points (vmf)")
    p_gen.add_argument("--dim", type=int, default=None, help="ambient dimension (vmf)")
    p_gen.add_argument("--kappa", type=float, default=None, help="concentration (vmf)")

    for name in ("cluster", "cluster-multi"):
        p = sub.add_parser(name, help=f"run {'MKPK' if name == 'cluster-multi' else 'a clusterer'} on a CSV")
        p.add_argument("--config", default=None, help="JSON config file; flags override it")
        p.add_argument("--data", required=True)
        p.add_argument("--header", action="store_true", help="CSV has a header row")
        p.add_argument("--labels-col", type=int, default=None, help="ground-truth label column index")
        p.add_argument("--delimiter", default=",")
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--s0", type=float, default=None)
        p.add_argument("--eta", type=float, default=None)
        p.add_argument("--period", type=int, default=None)
        p.add_argument("--s-cap", type=float, default=None)
        p.add_argument("--init", choices=sorted(_INIT_ALIASES), default=None)
        p.add_argument("--restarts", type=int, default=None)
        p.add_argument("--seed", type=int, default=None, help="master seed")
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--max-iter", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out", default=None, help="report path (default: stdout)")
        p.add_argument("--no-standardize", action="store_true")
        if name == "cluster":
            p.add_argument("--algorithm", choices=("kpk", "kernel_kmeans", "power_kmeans"), default=None)
            p.add_argument("--kernel", choices=("linear", "gaussian", "gaussian_arc", "polynomial", "cosine"), default=None)
            p.add_argument("--sigma", default=None, help="bandwidth, or 'auto' for the pairwise heuristic")
            p.add_argument("--degree", type=int, default=None)
            p.add_argument("--coef", type=float, default=None)
        else:
            p.add_argument("--kernel-bank", default=None, help="'default' or a JSON file with a list of kernel specs")
            p.add_argument("--lambda", dest="lam", type=float, default=None)

    p_eval = sub.add_parser("eval", help="NMI/ARI between two label files")
    p_eval.add_argument("--pred", required=True, help="predicted labels, one per line")
    p_eval.add_argument("--true", dest="truth", required=True, help="reference labels, one per line")
    p_eval.add_argument("--header", action="store_true")
    p_eval.add_argument("--nmi-variant", choices=("sqrt", "max", "arithmetic"), default="sqrt")
    p_eval.add_argument("--out", default=None)

    p_bench = sub.add_parser("bench", help="run a benchmark suite")
    p_bench.add_argument("--suite", choices=BENCH_SUITES, required=True)
    p_bench.add_argument("--restarts", type=int, default=None)
    p_bench.add_argument("--seed", type=int, default=None, help="master seed")
    p_bench.add_argument("--data-seed", type=int, default=None)
    p_bench.add_argument("--datasets", type=int, default=None, help="number of datasets (vmf)")
    p_bench.add_argument("--k", type=int, default=None)
    p_bench.add_argument("--out", default=None)

    return parser


def _read_labels_file(path, has_header: bool) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if has_header and lines:
        lines = lines[1:]
    if not lines:
        raise ValueError(f"{path}: empty label file")
    seen: dict[str, int] = {}
    return np.array([seen.setdefault(v, len(seen)) for v in lines], dtype=np.int64)


def _config_from_args(args) -> RunConfig:
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            config = RunConfig.from_dict(json.load(fh))
    else:
        config = RunConfig(algorithm="mkpk" if args.command == "cluster-multi" else "kpk", k=2)

    if args.command == "cluster-multi":
        config.algorithm = "mkpk"
        if args.kernel_bank is not None:
            if args.kernel_bank == "default":
                config.kernel_bank = "default"
            else:
                with open(args.kernel_bank, encoding="utf-8") as fh:
                    config.kernel_bank = json.load(fh)
        elif config.kernel_bank is None:
            config.kernel_bank = "default"
        if args.lam is not None:
            config.lam = args.lam
    else:
        if args.algorithm is not None:
            config.algorithm = args.algorithm
        if args.kernel is not None:
            kernel: dict = {"kind": args.kernel}
            if args.sigma is not None:
                kernel["sigma"] = "auto" if args.sigma == "auto" else float(args.sigma)
            if args.degree is not None:
                kernel["degree"] = args.degree
            if args.coef is not None:
                kernel["coef"] = args.coef
            _validate_kernel_dict(kernel)
            config.kernel = kernel
        if config.algorithm in ("kpk", "kernel_kmeans") and config.kernel is None:
            raise ValueError(f"{config.algorithm} requires --kernel (or a config with one)")

    if args.k is not None:
        config.k = args.k
    sched = {
        "s0": args.s0 if args.s0 is not None else config.schedule.s0,
        "eta": args.eta if args.eta is not None else config.schedule.eta,
        "period": args.period if args.period is not None else config.schedule.period,
        "s_cap": args.s_cap if args.s_cap is not None else config.schedule.s_cap,
    }
    config.schedule = AnnealSchedule(**sched)
    if args.init is not None:
        config.init = _INIT_ALIASES[args.init]
    if args.restarts is not None:
        config.restarts = args.restarts
    if args.seed is not None:
        config.master_seed = args.seed
    if args.tol is not None:
        config.tol = args.tol
    if args.max_iter is not None:
        config.max_iter = args.max_iter
    if args.no_standardize:
        config.standardize = False
    # re-validate after overrides
    return RunConfig.from_dict(config.to_dict())


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            if args.suite == "rings":
                fields = {"rng_seed": args.seed}
                if args.k is not None:
                    fields["k"] = args.k
                if args.n_per is not None:
                    fields["n_per"] = args.n_per
                if args.radius_step is not None:
                    fields["radius_step"] = args.radius_step
                if args.noise_sd is not None:
                    fields["noise_sd"] = args.noise_sd
                dataset = gen_rings(RingsConfig(**fields))
            else:
                fields = {"rng_seed": args.seed}
                if args.k is not None:
                    fields["k"] = args.k
                if args.n is not None:
                    fields["n"] = args.n
                if args.dim is not None:
                    fields["dim"] = args.dim
                if args.kappa is not None:
                    fields["kappa"] = args.kappa
                dataset = gen_vmf_sphere(VmfConfig(**fields))
            write_csv(args.out, dataset)
            print(f"wrote {dataset.n} x {dataset.p} dataset to {args.out}")
        elif args.command in ("cluster", "cluster-multi"):
            config = _config_from_args(args)
            dataset = load_csv(args.data, has_header=args.header, label_column=args.labels_col, delimiter=args.delimiter)
            report = run_command(config, dataset, workers=args.workers)
            _emit(report, args.out)
        elif args.command == "eval":
            pred = _read_labels_file(args.pred, args.header)
            truth = _read_labels_file(args.truth, args.header)
            result = {
                "schema_version": SCHEMA_VERSION,
                "n": int(pred.shape[0]),
                "nmi": nmi(truth, pred, variant=args.nmi_variant),
                "ari": ari(truth, pred),
            }
            _emit(result, args.out)
        elif args.command == "bench":
            overrides = {}
            if args.restarts is not None:
                overrides["restarts"] = args.restarts
            if args.seed is not None:
                overrides["master_seed"] = args.seed
            if args.data_seed is not None:
                overrides["data_seed"] = args.data_seed
            if args.datasets is not None:
                overrides["datasets"] = args.datasets
            if args.k is not None:
                overrides["k"] = args.k
            report = bench_command(args.suite, overrides)
            print(format_bench_table(report))
            if args.out is not None:
                _emit(report, args.out)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        error = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(error), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
