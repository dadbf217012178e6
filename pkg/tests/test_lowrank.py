import numpy as np
import pytest
import scipy.sparse as sparse

from sketchlab.datagen import SyntheticSpec, generate_synthetic
from sketchlab.linalg import fro_norm, svd, thin_qr
from sketchlab.lowrank import (
    ErrorReport,
    LowRankFactors,
    approx_from_basis,
    approx_svd,
    best_rank_k,
    error_report,
    residual_spectral_norm,
)
from sketchlab.sketch import fd_sketch, spemb_sketch

from oracles import best_in_rowspace_oracle


def random_dense(n, d, seed):
    return np.random.default_rng(seed).standard_normal((n, d))


def materialise(f: LowRankFactors) -> np.ndarray:
    return f.left @ f.right_basis.T


class TestBestRankK:
    def test_diagonal(self):
        f = best_rank_k(np.diag([3.0, 2.0, 1.0]), 2)
        assert np.allclose(materialise(f), np.diag([3.0, 2.0, 0.0]), atol=1e-12)

    def test_exact_rank_recovered(self):
        rng = np.random.default_rng(0)
        a = rng.standard_normal((9, 4)) @ rng.standard_normal((4, 7))
        f = best_rank_k(a, 4)
        assert fro_norm(a - materialise(f)) <= 1e-8 * fro_norm(a)

    def test_residual_matches_tail_spectrum(self):
        a = random_dense(10, 6, seed=1)
        f = best_rank_k(a, 3)
        resid = fro_norm(a - materialise(f)) ** 2
        tail = np.sum(svd(a).sigma[3:] ** 2)
        assert np.isclose(resid, tail, rtol=1e-8)

    def test_k_bounds(self):
        with pytest.raises(ValueError):
            best_rank_k(random_dense(4, 3, seed=2), 0)
        with pytest.raises(ValueError):
            best_rank_k(random_dense(4, 3, seed=2), 4)

    def test_orthonormal_right_basis(self):
        f = best_rank_k(random_dense(8, 5, seed=3), 2)
        assert np.abs(f.right_basis.T @ f.right_basis - np.eye(2)).max() <= 1e-10


class TestApproxFromBasis:
    def test_exact_singular_basis_gives_best(self):
        a = random_dense(9, 5, seed=4)
        k = 2
        v = svd(a).vt[:k].T
        f = approx_from_basis(a, v, k)
        best = best_rank_k(a, k)
        assert fro_norm(materialise(f) - materialise(best)) <= 1e-8 * fro_norm(a)

    def test_full_rowspace_recovers_exactly(self):
        rng = np.random.default_rng(5)
        a = rng.standard_normal((10, 3)) @ rng.standard_normal((3, 8))
        v = svd(a).vt[:3].T
        f = approx_from_basis(a, v, 3)
        assert fro_norm(a - materialise(f)) <= 1e-8 * fro_norm(a)

    def test_matches_brute_force_projection(self):
        # best rank-k within the row space of a (full-rank) sketch
        for seed in range(5):
            a = random_dense(8, 5, seed=seed + 10)
            b = random_dense(3, 5, seed=seed + 40)
            v, _ = thin_qr(b.T)
            f = approx_from_basis(a, v, 2)
            ref = best_in_rowspace_oracle(a, b, 2)
            assert np.isclose(
                fro_norm(a - materialise(f)) ** 2,
                fro_norm(a - ref) ** 2,
                rtol=1e-8,
                atol=1e-10,
            )

    def test_rotation_invariance(self):
        a = random_dense(10, 6, seed=16)
        out = spemb_sketch(a, 4, rng=17)
        rot, _ = thin_qr(random_dense(4, 4, seed=18))
        f1 = approx_from_basis(a, out.basis, 2)
        f2 = approx_from_basis(a, out.basis @ rot, 2)
        assert fro_norm(materialise(f1) - materialise(f2)) <= 1e-8 * fro_norm(a)

    def test_sparse_input(self):
        rng = np.random.default_rng(19)
        a = sparse.csr_matrix(np.where(rng.random((12, 6)) < 0.4,
                                       rng.standard_normal((12, 6)), 0.0))
        out = fd_sketch(a, 3)
        f = approx_from_basis(a, out.basis, 2)
        assert f.left.shape == (12, 2)

    def test_rejections(self):
        a = random_dense(6, 4, seed=20)
        v = svd(a).vt[:2].T
        with pytest.raises(ValueError):
            approx_from_basis(a, v, 3)  # k > ell
        with pytest.raises(ValueError):
            approx_from_basis(a, v * 1.5, 2)  # not orthonormal


class TestApproxSvd:
    def test_full_basis_reconstructs(self):
        a = random_dense(7, 5, seed=21)
        v = svd(a).vt.T
        res = approx_svd(a, v)
        recon = (res.u * res.sigma) @ res.v.T
        assert fro_norm(recon - a) <= 1e-8 * fro_norm(a)

    def test_orthonormal_outputs(self):
        a = random_dense(12, 6, seed=22)
        out = fd_sketch(a, 3)
        res = approx_svd(a, out.basis)
        assert np.abs(res.u.T @ res.u - np.eye(3)).max() <= 1e-10
        assert np.abs(res.v.T @ res.v - np.eye(3)).max() <= 1e-10

    def test_matches_dense_projection_oracle(self):
        a = random_dense(12, 12, seed=23)
        out = fd_sketch(a, 6)
        res = approx_svd(a, out.basis)
        proj = a @ out.basis @ out.basis.T
        ref_sigma = np.linalg.svd(proj, compute_uv=False)
        assert np.abs(res.sigma - ref_sigma[:6]).max() <= 1e-8 * ref_sigma[0]
        recon = (res.u * res.sigma) @ res.v.T
        assert fro_norm(recon - proj) <= 1e-8 * fro_norm(a)

    def test_interlacing_under_projection(self):
        a = random_dense(15, 8, seed=24)
        out = spemb_sketch(a, 4, rng=25)
        res = approx_svd(a, out.basis)
        full = svd(a).sigma
        assert (res.sigma <= full[:4] + 1e-8 * full[0]).all()


class TestResidualSpectralNorm:
    def test_against_dense_norm(self):
        a = random_dense(30, 12, seed=26)
        f = best_rank_k(a, 3)
        est = residual_spectral_norm(a, f)
        ref = np.linalg.norm(a - materialise(f), 2)
        assert abs(est - ref) <= 1e-4 * ref

    def test_zero_residual(self):
        rng = np.random.default_rng(27)
        a = rng.standard_normal((8, 3)) @ rng.standard_normal((3, 5))
        f = best_rank_k(a, 3)
        est = residual_spectral_norm(a, f)
        assert est <= 1e-10 * fro_norm(a)


class TestErrorReport:
    def test_identical_factors_ratio_one(self):
        a = random_dense(20, 8, seed=28)
        f = best_rank_k(a, 3)
        rep = error_report(a, f, f, elapsed_seconds=0.5)
        assert rep.fro_ratio == pytest.approx(1.0, abs=1e-8)
        assert rep.spec_ratio == pytest.approx(1.0, abs=1e-8)
        assert rep.elapsed_seconds == 0.5

    def test_zero_approximation_ratio(self):
        a = random_dense(10, 5, seed=29)
        exact = best_rank_k(a, 2)
        zero = LowRankFactors(
            left=np.zeros((10, 2)), right_basis=np.eye(5)[:, :2], k=2
        )
        rep = error_report(a, zero, exact, 0.0)
        expected = fro_norm(a) / fro_norm(a - materialise(exact))
        assert rep.fro_ratio == pytest.approx(expected, rel=1e-8)

    def test_rank_k_input_degenerate_ratio_is_one(self):
        rng = np.random.default_rng(30)
        a = rng.standard_normal((30, 4)) @ rng.standard_normal((4, 10))
        exact = best_rank_k(a, 4)
        out = fd_sketch(a, 6)
        approx = approx_from_basis(a, out.basis, 4)
        rep = error_report(a, approx, exact, 0.0)
        assert rep.fro_ratio == 1.0
        assert rep.spec_ratio == 1.0

    def test_rank_k_input_not_recovered_is_error(self):
        rng = np.random.default_rng(31)
        a = rng.standard_normal((10, 2)) @ rng.standard_normal((2, 6))
        exact = best_rank_k(a, 2)
        bad = LowRankFactors(
            left=np.zeros((10, 2)), right_basis=np.eye(6)[:, :2], k=2
        )
        with pytest.raises(ValueError, match="not recovered"):
            error_report(a, bad, exact, 0.0)

    def test_fd_meets_deterministic_bound(self):
        # shrink-based guarantee: ratio^2 <= 1 + k/(ell-k) on signal+noise data
        spec = SyntheticSpec(n=2000, d=200, k=10, zeta=10.0, seed=32)
        a = generate_synthetic(spec)
        out = fd_sketch(a, 100)
        approx = approx_from_basis(a, out.basis, 10)
        exact = best_rank_k(a, 10)
        rep = error_report(a, approx, exact, 0.0)
        assert 1.0 - 1e-8 <= rep.fro_ratio <= 1.0 + 10 / (100 - 10)
        assert rep.spec_ratio >= 1.0 - 1e-8

    def test_floor_enforced_in_constructor(self):
        with pytest.raises(ValueError, match="below 1"):
            ErrorReport(fro_ratio=0.5, spec_ratio=1.0, elapsed_seconds=0.0)
        with pytest.raises(ValueError, match="finite"):
            ErrorReport(fro_ratio=np.inf, spec_ratio=1.0, elapsed_seconds=0.0)

    def test_mismatched_ranks_rejected(self):
        a = random_dense(6, 4, seed=33)
        with pytest.raises(ValueError):
            error_report(a, best_rank_k(a, 2), best_rank_k(a, 3), 0.0)
