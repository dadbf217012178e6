"""File formats: svmlight sparse rows, MatrixMarket, edge lists.

Loaders never drop data silently: malformed content raises with the
offending line number, and duplicate handling (summing coordinate entries,
collapsing repeated edges) is explicit.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import scipy.io
import scipy.sparse as sparse

from .linalg import Matrix, as_csr, as_dense

log = logging.getLogger(__name__)

__all__ = [
    "load_svmlight",
    "save_svmlight",
    "load_matrix_market",
    "save_matrix_market",
    "load_edge_list",
]

PathLike = Union[str, Path]


def load_svmlight(path: PathLike, n_cols: Optional[int] = None) -> sparse.csr_matrix:
    """Load the feature matrix of an svmlight/libsvm file as CSR.

    Lines look like ``label idx:val idx:val ...`` with 1-indexed, strictly
    increasing feature ids.  Labels are discarded.  The column count is the
    largest feature id seen unless ``n_cols`` overrides it.  Index 0 or
    non-increasing ids raise with the line number.
    """
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    max_col = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                raise ValueError(f"{path}:{lineno}: malformed line '{line}'")
            parts = line.split()
            prev = 0
            for token in parts[1:]:
                try:
                    idx_str, val_str = token.split(":", 1)
                    idx = int(idx_str)
                    val = float(val_str)
                except ValueError as exc:
                    raise ValueError(
                        f"{path}:{lineno}: malformed feature '{token}'"
                    ) from exc
                if idx == 0:
                    raise ValueError(
                        f"{path}:{lineno}: feature ids are 1-indexed, got 0"
                    )
                if idx < 0:
                    raise ValueError(f"{path}:{lineno}: negative feature id {idx}")
                if idx <= prev:
                    raise ValueError(
                        f"{path}:{lineno}: feature ids must be strictly "
                        f"increasing, got {idx} after {prev}"
                    )
                prev = idx
                indices.append(idx - 1)
                data.append(val)
                max_col = max(max_col, idx)
            indptr.append(len(data))
    n_rows = len(indptr) - 1
    if n_rows == 0:
        raise ValueError(f"{path}: empty file")
    if n_cols is None:
        n_cols = max_col
    elif n_cols < max_col:
        raise ValueError(
            f"{path}: n_cols={n_cols} is smaller than the largest feature id "
            f"{max_col}"
        )
    if n_cols == 0:
        raise ValueError(f"{path}: no features found and no n_cols override")
    return as_csr(
        sparse.csr_matrix(
            (np.asarray(data), np.asarray(indices, dtype=np.int64), indptr),
            shape=(n_rows, n_cols),
        )
    )


def save_svmlight(path: PathLike, a: Matrix) -> None:
    """Write a matrix in svmlight format with all labels set to 0."""
    a = as_csr(a)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i in range(a.shape[0]):
            row = a.indices[a.indptr[i] : a.indptr[i + 1]]
            vals = a.data[a.indptr[i] : a.indptr[i + 1]]
            feats = " ".join(f"{j + 1}:{v:.17g}" for j, v in zip(row, vals))
            fh.write(f"0 {feats}".rstrip() + "\n")


def load_matrix_market(path: PathLike) -> Matrix:
    """Read a real general MatrixMarket file.

    Coordinate files come back as canonical CSR with duplicate entries
    summed; array files come back dense.  Complex or pattern qualifiers are
    rejected explicitly.
    """
    with open(path, "rb") as fh:
        header = fh.readline().decode("latin1").strip().lower()
    fields = header.split()
    if len(fields) < 5 or not fields[0].startswith("%%matrixmarket"):
        raise ValueError(f"{path}: not a MatrixMarket file")
    _, obj, fmt, field, symmetry = fields[:5]
    if obj != "matrix":
        raise ValueError(f"{path}: unsupported object '{obj}'")
    if field not in ("real", "integer"):
        raise ValueError(f"{path}: unsupported field '{field}' (real only)")
    if symmetry != "general":
        raise ValueError(f"{path}: unsupported symmetry '{symmetry}'")
    loaded = scipy.io.mmread(path)
    if sparse.issparse(loaded):
        parsed = loaded.nnz
        out = as_csr(loaded)
        if parsed != out.nnz:
            log.info(
                "%s: %d coordinate entries collapsed (duplicates summed, "
                "explicit zeros dropped); %d stored",
                path, parsed - out.nnz, out.nnz,
            )
        return out
    return as_dense(loaded)


def save_matrix_market(path: PathLike, a: Matrix) -> None:
    """Write a matrix in MatrixMarket format (coordinate for sparse input,
    array for dense), at full float64 round-trip precision."""
    if sparse.issparse(a):
        scipy.io.mmwrite(str(path), as_csr(a), precision=17)
    else:
        scipy.io.mmwrite(str(path), as_dense(a), precision=17)


def load_edge_list(path: PathLike, one_indexed: bool = True) -> sparse.csr_matrix:
    """Read a directed edge list into a square 0/1 adjacency matrix.

    One ``src dst`` pair per line, ``#`` comment lines skipped, duplicate
    edges collapsed to a single 1, self loops kept.  Node count is the
    largest id (plus one when zero-indexed).
    """
    srcs: list[int] = []
    dsts: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(
                    f"{path}:{lineno}: expected 'src dst', got {len(parts)} tokens"
                )
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(
                    f"{path}:{lineno}: non-integer node id in '{line}'"
                ) from exc
            if i < 0 or j < 0:
                raise ValueError(f"{path}:{lineno}: negative node id")
            if one_indexed and (i == 0 or j == 0):
                raise ValueError(
                    f"{path}:{lineno}: node id 0 in a one-indexed edge list"
                )
            srcs.append(i)
            dsts.append(j)
    if not srcs:
        raise ValueError(f"{path}: no edges found")
    offset = 1 if one_indexed else 0
    row = np.asarray(srcs) - offset
    col = np.asarray(dsts) - offset
    n = int(max(row.max(), col.max())) + 1
    adj = sparse.csr_matrix(
        (np.ones(len(row)), (row, col)), shape=(n, n)
    )
    # repeated edges sum up during conversion; clip back to 0/1
    adj.data[:] = 1.0
    if adj.nnz != len(row):
        log.info(
            "%s: %d duplicate edges collapsed; %d unique edges kept",
            path, len(row) - adj.nnz, adj.nnz,
        )
    return as_csr(adj)
