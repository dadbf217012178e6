"""Benchmark harness: sweep sketch sizes, repeat with derived seeds,
aggregate lower medians and emit CSV/JSON result tables.

The protocol mirrors the evaluation it reproduces: synthetic datasets are
regenerated per outer repetition, each method runs ``inner`` times per
matrix with its own derived seed, and the reported numbers are medians
over all completed repetitions.  Timing covers sketch construction plus
rank-k reconstruction only; dataset loading and the exact reference SVD
are excluded.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from statistics import median_low
from typing import Optional, Union

import numpy as np

from .datagen import SyntheticSpec, generate_synthetic
from .dataio import load_edge_list, load_matrix_market, load_svmlight
from .linalg import Matrix, as_dense
from .lowrank import approx_from_basis, best_rank_k, error_report
from .netrank import parse_sketcher_id
from .sketch import (
    SpfdConfig,
    dct_sketch,
    fd_sketch,
    norm_sampling_sketch,
    spemb_sketch,
    spfd_sketch,
)

__all__ = [
    "BenchConfig",
    "ResultRow",
    "run_benchmark",
    "emit_results",
    "load_config",
    "MEDIAN_NOTE",
    "EXACT_REFERENCE_CELL_CAP",
]

log = logging.getLogger(__name__)

# Above this many matrix cells the exact reference SVD is skipped and only
# timings are reported.
EXACT_REFERENCE_CELL_CAP = 5 * 10**7

MEDIAN_NOTE = (
    "medians use the lower-median convention (even repetition counts report "
    "the smaller central value) over completed repetitions only"
)

CSV_HEADER = ["method", "ell", "fro_ratio", "spec_ratio", "elapsed_seconds", "reps"]

_CONFIG_KEYS = {
    "schema_version",
    "dataset",
    "methods",
    "k",
    "ell_sweep",
    "repetitions",
    "seed",
    "output",
    "format",
}
_SYNTH_KEYS = {"type", "n", "d", "k", "zeta", "m"}
_FILE_KEYS = {"type", "path", "format"}


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark campaign: a dataset, methods, a sketch-size sweep and
    a repetition/seed policy."""

    dataset: Union[SyntheticSpec, tuple[str, str]]
    methods: tuple[str, ...]
    k: int
    ell_sweep: tuple[int, int, int]  # start, step, end (inclusive)
    repetitions: tuple[int, int] = (1, 1)  # outer (matrices), inner (runs)
    seed: int = 0
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        start, step, end = self.ell_sweep
        if start < self.k:
            raise ValueError(
                f"ell sweep must start at or above k (start={start}, k={self.k})"
            )
        if step < 1 or end < start:
            raise ValueError(f"invalid ell sweep {self.ell_sweep}")
        if self.repetitions[0] < 1 or self.repetitions[1] < 1:
            raise ValueError("repetition counts must be >= 1")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            parse_sketcher_id(m)
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown output format '{self.format}'")

    @property
    def ells(self) -> list[int]:
        start, step, end = self.ell_sweep
        return list(range(start, end + 1, step))


@dataclass(frozen=True)
class ResultRow:
    """Aggregated row: medians over completed repetitions."""

    method: str
    ell: int
    fro_ratio: Optional[float]
    spec_ratio: Optional[float]
    elapsed_seconds: float
    reps: int


def _parse_sweep(raw) -> tuple[int, int, int]:
    if isinstance(raw, str):
        parts = raw.split(":")
        if len(parts) != 3:
            raise ValueError(f"ell_sweep must look like 'start:step:end', got {raw!r}")
        return int(parts[0]), int(parts[1]), int(parts[2])
    if isinstance(raw, dict):
        extra = set(raw) - {"start", "step", "end"}
        if extra:
            raise ValueError(f"unknown ell_sweep keys {sorted(extra)}")
        return int(raw["start"]), int(raw["step"]), int(raw["end"])
    raise ValueError("ell_sweep must be a 'start:step:end' string or an object")


def load_config(path) -> BenchConfig:
    """Parse and validate a benchmark config JSON file.

    The schema is versioned and closed: unknown keys anywhere are rejected.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    if raw.get("schema_version") != 1:
        raise ValueError(f"{path}: schema_version must be 1")
    extra = set(raw) - _CONFIG_KEYS
    if extra:
        raise ValueError(f"{path}: unknown config keys {sorted(extra)}")
    ds = raw.get("dataset")
    if not isinstance(ds, dict) or "type" not in ds:
        raise ValueError(f"{path}: dataset must be an object with a 'type'")
    if ds["type"] == "synthetic":
        extra = set(ds) - _SYNTH_KEYS
        if extra:
            raise ValueError(f"{path}: unknown dataset keys {sorted(extra)}")
        kwargs = {"n": int(ds["n"]), "d": int(ds["d"]),
                  "k": int(ds.get("k", raw["k"]))}
        if "zeta" in ds:
            # explicit null disables the noise term; absent keeps the default
            kwargs["zeta"] = None if ds["zeta"] is None else float(ds["zeta"])
        if ds.get("m") is not None:
            kwargs["m"] = int(ds["m"])
        dataset: Union[SyntheticSpec, tuple[str, str]] = SyntheticSpec(**kwargs)
    elif ds["type"] == "file":
        extra = set(ds) - _FILE_KEYS
        if extra:
            raise ValueError(f"{path}: unknown dataset keys {sorted(extra)}")
        if ds.get("format") not in ("svmlight", "matrixmarket", "edges"):
            raise ValueError(f"{path}: unknown dataset format {ds.get('format')!r}")
        dataset = (str(ds["path"]), str(ds["format"]))
    else:
        raise ValueError(f"{path}: unknown dataset type {ds['type']!r}")
    reps = raw.get("repetitions", {"outer": 1, "inner": 1})
    if set(reps) - {"outer", "inner"}:
        raise ValueError(f"{path}: unknown repetition keys")
    return BenchConfig(
        dataset=dataset,
        methods=tuple(raw["methods"]),
        k=int(raw["k"]),
        ell_sweep=_parse_sweep(raw["ell_sweep"]),
        repetitions=(int(reps.get("outer", 1)), int(reps.get("inner", 1))),
        seed=int(raw.get("seed", 0)),
        output=raw.get("output"),
        format=raw.get("format", "csv"),
    )


def load_dataset_file(path: str, fmt: str) -> Matrix:
    if fmt == "svmlight":
        return load_svmlight(path)
    if fmt == "matrixmarket":
        return load_matrix_market(path)
    if fmt == "edges":
        return load_edge_list(path)
    raise ValueError(f"unknown dataset format '{fmt}'")


def derive_seed(base: int, matrix_idx: int, rep_idx: int, method: str, ell: int) -> int:
    """Deterministic per-repetition seed from the campaign base seed."""
    tag = zlib.crc32(method.encode("utf-8"))
    ss = np.random.SeedSequence((base, matrix_idx, rep_idx, tag, ell))
    return int(ss.generate_state(1)[0])


def run_method(a: Matrix, method: str, ell: int, k: int, seed: int):
    """One timed repetition: sketch, then rank-k reconstruction factors.

    Returns ``(factors, elapsed_seconds)`` where the clock covers exactly
    the sketch and the reconstruction.
    """
    kind, q = parse_sketcher_id(method)
    t0 = time.perf_counter()
    if kind == "fd":
        out = fd_sketch(a, ell)
    elif kind == "spemb":
        out = spemb_sketch(a, ell, np.random.default_rng(seed))
    elif kind == "normsamp":
        out = norm_sampling_sketch(a, ell, np.random.default_rng(seed))
    elif kind == "dct":
        out = dct_sketch(a, ell, np.random.default_rng(seed))
    else:
        out = spfd_sketch(a, SpfdConfig(ell=ell, q=q, seed=seed))
    factors = approx_from_basis(a, out.basis, k)
    return factors, time.perf_counter() - t0


def _worker_count() -> int:
    raw = os.environ.get("SKETCHLAB_THREADS", "")
    if raw.strip():
        count = int(raw)
        if count < 1:
            raise ValueError("SKETCHLAB_THREADS must be >= 1")
        return count
    return os.cpu_count() or 1


def _exact_reference(a: Matrix, k: int):
    n, d = a.shape
    if n * d > EXACT_REFERENCE_CELL_CAP:
        log.warning(
            "matrix %s exceeds %d cells; skipping exact reference, "
            "error ratios will be omitted",
            (n, d),
            EXACT_REFERENCE_CELL_CAP,
        )
        return None
    return best_rank_k(as_dense(a), k)


def run_benchmark(cfg: BenchConfig) -> list[ResultRow]:
    """Execute the full campaign and return aggregated rows sorted by
    ``(method, ell)``."""
    outer, inner = cfg.repetitions
    results: dict[tuple[str, int], list[tuple[float, float, float]]] = {
        (m, ell): [] for m in cfg.methods for ell in cfg.ells
    }
    failures: dict[tuple[str, int], int] = {key: 0 for key in results}

    synthetic = isinstance(cfg.dataset, SyntheticSpec)
    if not synthetic:
        # File datasets are fixed: load once, reference once; outer
        # repetitions only rerun the randomized methods.
        file_matrix = load_dataset_file(*cfg.dataset)
        file_exact = _exact_reference(file_matrix, cfg.k)

    for matrix_idx in range(outer):
        if synthetic:
            spec = cfg.dataset
            matrix_seed = derive_seed(cfg.seed, matrix_idx, 0, "dataset", 0)
            a: Matrix = generate_synthetic(
                SyntheticSpec(
                    n=spec.n, d=spec.d, k=spec.k, zeta=spec.zeta, m=spec.m,
                    seed=matrix_seed,
                )
            )
            exact = _exact_reference(a, cfg.k)
        else:
            a = file_matrix
            exact = file_exact

        def one(task):
            method, ell, rep = task
            seed = derive_seed(cfg.seed, matrix_idx, rep, method, ell)
            factors, elapsed = run_method(a, method, ell, cfg.k, seed)
            if exact is None:
                return method, ell, (None, None, elapsed)
            report = error_report(a, factors, exact, elapsed)
            return method, ell, (report.fro_ratio, report.spec_ratio, elapsed)

        tasks = [
            (method, ell, rep)
            for method in cfg.methods
            for ell in cfg.ells
            for rep in range(inner)
        ]
        with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            for task, outcome in zip(tasks, pool.map(_guard(one), tasks)):
                method, ell = task[0], task[1]
                if outcome is None:
                    failures[(method, ell)] += 1
                else:
                    results[(outcome[0], outcome[1])].append(outcome[2])

    rows = []
    for method in sorted(cfg.methods):
        for ell in cfg.ells:
            runs = results[(method, ell)]
            failed = failures[(method, ell)]
            if failed:
                log.warning(
                    "%s ell=%d: %d of %d repetitions failed",
                    method, ell, failed, failed + len(runs),
                )
            if not runs:
                continue
            fro = [r[0] for r in runs]
            spec = [r[1] for r in runs]
            rows.append(
                ResultRow(
                    method=method,
                    ell=ell,
                    fro_ratio=None if fro[0] is None else median_low(fro),
                    spec_ratio=None if spec[0] is None else median_low(spec),
                    elapsed_seconds=median_low(r[2] for r in runs),
                    reps=len(runs),
                )
            )
    return rows


def _guard(fn):
    def wrapped(task):
        try:
            return fn(task)
        except Exception:
            log.exception("repetition %s failed", task)
            return None

    return wrapped


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return "nan"
    return f"{value:.10g}"


def emit_results(rows: list[ResultRow], path, fmt: str = "csv") -> None:
    """Write rows as CSV (with a convention note as a comment line) or as a
    JSON array; identical inputs produce identical bytes."""
    path = Path(path)
    try:
        if fmt == "csv":
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(f"# {MEDIAN_NOTE}\n")
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(CSV_HEADER)
                for row in rows:
                    writer.writerow(
                        [
                            row.method,
                            row.ell,
                            _fmt(row.fro_ratio),
                            _fmt(row.spec_ratio),
                            _fmt(row.elapsed_seconds),
                            row.reps,
                        ]
                    )
        elif fmt == "json":
            payload = [
                {
                    "method": row.method,
                    "ell": row.ell,
                    "fro_ratio": None
                    if row.fro_ratio is None
                    else float(_fmt(row.fro_ratio)),
                    "spec_ratio": None
                    if row.spec_ratio is None
                    else float(_fmt(row.spec_ratio)),
                    "elapsed_seconds": float(_fmt(row.elapsed_seconds)),
                    "reps": row.reps,
                }
                for row in rows
            ]
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
        else:
            raise ValueError(f"unknown output format '{fmt}'")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
