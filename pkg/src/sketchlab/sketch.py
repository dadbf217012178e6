"""The five sketching algorithms.

Each sketcher maps an ``n x d`` matrix to a small ``ell x d`` sketch ``B``
and (where the algorithm defines one) a ``d x ell`` orthonormal basis ``V``
for the sketch's row space:

``spemb_sketch``
    sparse subspace embedding (CountSketch): one random +-1 per input row,
    rows accumulated into ``ell`` buckets in O(nnz) time.
``fd_sketch``
    frequent directions: deterministic streaming pass that repeatedly
    decomposes a ``2*ell``-row buffer and shrinks all squared singular
    values by the (ell+1)-th one.
``spfd_sketch``
    block sparse embedding feeding frequent directions: the input is
    zero-padded, row-permuted, compressed block-by-block with independent
    sparse embeddings, and the resulting ``q*ell`` rows are run through the
    frequent-directions loop (q-1 shrink iterations).
``norm_sampling_sketch``
    i.i.d. row sampling proportional to squared row norms, rescaled to be
    unbiased.
``dct_sketch``
    signed, subsampled orthonormal type-II discrete cosine transform.

All sketchers are pure functions of ``(matrix, parameters, seed)`` and are
bit-reproducible for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
import scipy.fft

from .linalg import (
    Matrix,
    is_sparse,
    pad_rows,
    permute_rows,
    random_permutation,
    row_norms,
    svd,
    thin_qr,
)

__all__ = [
    "SpEmbSpec",
    "SketchOutput",
    "SpfdConfig",
    "spemb_apply",
    "spemb_sketch",
    "fd_sketch",
    "spfd_intermediate",
    "spfd_sketch",
    "norm_sampling_sketch",
    "dct_sketch",
]

RngLike = Union[int, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    """Accept either a seed or an existing ``numpy.random.Generator``."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True)
class SpEmbSpec:
    """One sparse-embedding draw: a bucket map and a sign per input row.

    The implied ``n_out x n_in`` operator has exactly one nonzero (+-1) per
    column; applying it sums signed input rows into buckets.
    """

    n_in: int
    n_out: int
    h: np.ndarray
    signs: np.ndarray

    def __post_init__(self):
        if self.h.shape != (self.n_in,) or self.signs.shape != (self.n_in,):
            raise ValueError("bucket map and signs must have one entry per input row")
        if self.h.size and (self.h.min() < 0 or self.h.max() >= self.n_out):
            raise ValueError("bucket indices out of range")
        if not np.isin(self.signs, (-1.0, 1.0)).all():
            raise ValueError("signs must be +-1")

    @classmethod
    def draw(cls, n_in: int, n_out: int, rng: np.random.Generator) -> "SpEmbSpec":
        """Draw a spec; the stream order (buckets, then signs) is fixed so
        that seeded runs are reproducible across callers."""
        h = rng.integers(0, n_out, size=n_in)
        signs = np.where(rng.random(n_in) < 0.5, 1.0, -1.0)
        return cls(n_in=n_in, n_out=n_out, h=h, signs=signs)


@dataclass(frozen=True)
class SketchOutput:
    """Sketch ``B`` (ell x d), optional row-space basis ``V`` (d x ell) and
    the per-iteration shrinkage amounts of the frequent-directions pass."""

    sketch: np.ndarray
    basis: Optional[np.ndarray]
    deltas: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def delta_total(self) -> float:
        return float(self.deltas.sum())


@dataclass(frozen=True)
class SpfdConfig:
    """Parameters of the block-embedded frequent-directions sketcher."""

    ell: int
    q: int
    seed: int = 0

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.q < 1:
            raise ValueError("q must be >= 1")


def spemb_apply(a: Matrix, spec: SpEmbSpec) -> np.ndarray:
    """Accumulate signed rows of ``a`` into the spec's buckets.

    Runs in O(nnz) by streaming the nonzeros; no embedding matrix is
    materialised.  Within one bucket rows are accumulated in input order.
    """
    if spec.n_in != a.shape[0]:
        raise ValueError(
            f"spec expects {spec.n_in} input rows, matrix has {a.shape[0]}"
        )
    d = a.shape[1]
    out = np.zeros((spec.n_out, d))
    if is_sparse(a):
        a = a.tocsr()
        per_row = np.diff(a.indptr)
        rows = np.repeat(np.arange(a.shape[0]), per_row)
        np.add.at(out, (spec.h[rows], a.indices), spec.signs[rows] * a.data)
        return out
    # Stable sort groups rows by bucket while keeping input order inside
    # each group, so a single reduceat performs all accumulations.
    order = np.argsort(spec.h, kind="stable")
    hs = spec.h[order]
    starts = np.flatnonzero(np.r_[True, hs[1:] != hs[:-1]])
    scaled = spec.signs[order, None] * a[order]
    out[hs[starts]] = np.add.reduceat(scaled, starts, axis=0)
    return out


def _basis_from_sketch(b: np.ndarray) -> np.ndarray:
    q, _ = thin_qr(b.T)
    return q


def spemb_sketch(a: Matrix, ell: int, rng: RngLike) -> SketchOutput:
    """Sparse-embedding sketch with a freshly drawn spec; basis via QR."""
    _check_ell(a, ell)
    rng = as_generator(rng)
    spec = SpEmbSpec.draw(a.shape[0], ell, rng)
    b = spemb_apply(a, spec)
    return SketchOutput(sketch=b, basis=_basis_from_sketch(b))


def _check_ell(a: Matrix, ell: int) -> None:
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if ell > a.shape[1]:
        raise ValueError(
            f"ell={ell} exceeds the column count {a.shape[1]}; no orthonormal "
            "d x ell basis exists"
        )


def _dense_block(a: Matrix, start: int, stop: int) -> np.ndarray:
    if is_sparse(a):
        return a[start:stop].toarray()
    return a[start:stop]


def _fd_rounds(a: Matrix, ell: int) -> SketchOutput:
    """Frequent-directions buffer loop shared by ``fd_sketch`` and the
    block-embedded variant (which feeds it the intermediate sketch)."""
    a = pad_rows(a, ell)
    n, d = a.shape
    blocks = n // ell
    buf = np.zeros((2 * ell, d))
    buf[:ell] = _dense_block(a, 0, ell)
    deltas: list[float] = []

    def shrink_round():
        res = svd(buf)
        delta = float(res.sigma[ell] ** 2) if res.sigma.size > ell else 0.0
        shrunk = np.sqrt(np.maximum(res.sigma**2 - delta, 0.0))
        buf[:] = 0.0
        buf[: res.sigma.size] = shrunk[:, None] * res.vt
        deltas.append(delta)
        return res

    res = None
    for i in range(1, blocks):
        buf[ell:] = _dense_block(a, i * ell, (i + 1) * ell)
        res = shrink_round()
    if res is None:
        # Fewer rows than ell: the loop never runs, so perform the single
        # decomposition round here to define the basis (the shrink is a
        # no-op up to roundoff because the buffer rank is at most ell).
        res = shrink_round()
    return SketchOutput(
        sketch=buf[:ell].copy(),
        basis=np.ascontiguousarray(res.vt[:ell].T),
        deltas=np.asarray(deltas),
    )


def fd_sketch(a: Matrix, ell: int) -> SketchOutput:
    """Deterministic frequent-directions sketch (no randomness involved)."""
    _check_ell(a, ell)
    return _fd_rounds(a, ell)


def spfd_intermediate(a: Matrix, cfg: SpfdConfig) -> np.ndarray:
    """The ``q*ell x d`` stack of per-block sparse embeddings of the padded,
    row-permuted input.

    This is the intermediate sketch that the frequent-directions stage of
    ``spfd_sketch`` consumes; it is exposed separately because several
    statistical guarantees (norm preservation in expectation, subspace
    embedding) are statements about this operator alone.

    The seed discipline is fixed: the row permutation is drawn first, then
    the q block specs in block order.
    """
    rng = np.random.default_rng(cfg.seed)
    a = pad_rows(a, cfg.q)
    n, d = a.shape
    per_block = n // cfg.q
    perm = random_permutation(n, rng)
    pa = permute_rows(a, perm)
    specs = [SpEmbSpec.draw(per_block, cfg.ell, rng) for _ in range(cfg.q)]
    out = np.empty((cfg.q * cfg.ell, d))
    for j, spec in enumerate(specs):
        block = pa[j * per_block : (j + 1) * per_block]
        out[j * cfg.ell : (j + 1) * cfg.ell] = spemb_apply(block, spec)
    return out


def spfd_sketch(a: Matrix, cfg: SpfdConfig) -> SketchOutput:
    """Block sparse embedding followed by frequent directions.

    With ``q == 1`` no shrink iterations happen and the basis is built
    directly from the (single-block) embedded sketch via QR, making the
    sketcher coincide with ``spemb_sketch`` of the permuted input.
    """
    _check_ell(a, cfg.ell)
    inter = spfd_intermediate(a, cfg)
    if cfg.q == 1:
        return SketchOutput(sketch=inter, basis=_basis_from_sketch(inter))
    return _fd_rounds(inter, cfg.ell)


def norm_sampling_sketch(a: Matrix, ell: int, rng: RngLike) -> SketchOutput:
    """Sample ``ell`` rows i.i.d. with probability proportional to their
    squared norm, each rescaled by ``1/sqrt(ell * p_i)`` for unbiasedness."""
    _check_ell(a, ell)
    rng = as_generator(rng)
    norms_sq = row_norms(a) ** 2
    total = norms_sq.sum()
    if total <= 0.0:
        raise ValueError("norm sampling is undefined for an all-zero matrix")
    p = norms_sq / total
    idx = rng.choice(a.shape[0], size=ell, replace=True, p=p)
    picked = a[idx].toarray() if is_sparse(a) else a[idx]
    b = picked / np.sqrt(ell * p[idx])[:, None]
    return SketchOutput(sketch=b, basis=_basis_from_sketch(b))


def _dct_rows(row_idx: np.ndarray, n: int) -> np.ndarray:
    """Selected rows of the n x n orthonormal type-II DCT matrix."""
    j = np.arange(n)
    f = np.sqrt(2.0 / n) * np.cos(
        np.pi * (2.0 * j[None, :] + 1.0) * row_idx[:, None] / (2.0 * n)
    )
    f[row_idx == 0] /= np.sqrt(2.0)
    return f


def dct_sketch(a: Matrix, ell: int, rng: RngLike) -> SketchOutput:
    """Subsampled randomized discrete cosine transform sketch.

    The sketch is ``sqrt(n/ell)`` times ``ell`` uniformly-without-replacement
    selected rows of the orthonormal DCT-II of the sign-flipped input.  Dense
    inputs go through the O(n log n) fast transform; sparse inputs multiply
    the selected transform rows against the matrix to respect sparsity.
    """
    _check_ell(a, ell)
    n = a.shape[0]
    if ell > n:
        raise ValueError(f"ell={ell} exceeds the row count {n}")
    rng = as_generator(rng)
    signs = np.where(rng.random(n) < 0.5, 1.0, -1.0)
    rows = rng.choice(n, size=ell, replace=False)
    scale = np.sqrt(n / ell)
    if is_sparse(a):
        m = _dct_rows(rows, n) * signs[None, :]
        b = scale * (m @ a)
        b = np.asarray(b)
    else:
        y = scipy.fft.dct(signs[:, None] * a, type=2, axis=0, norm="ortho")
        b = scale * y[rows]
    return SketchOutput(sketch=b, basis=_basis_from_sketch(b))
