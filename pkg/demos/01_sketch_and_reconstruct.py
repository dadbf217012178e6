"""Sketch a matrix five ways and compare the rank-k reconstructions.

We draw a 2000 x 200 signal-plus-noise matrix whose useful content lives in
a 10-dimensional subspace, compress it to a small ell x d sketch with each
sketcher, rebuild a rank-10 approximation from the sketch's row-space basis
and measure how far each one lands from the optimal truncated SVD.

Ratios of 1.0 would be perfect; the frequent-directions family should sit
well below the purely randomized sketchers at this sketch size.
"""

import time

from sketchlab import (
    SpfdConfig,
    SyntheticSpec,
    approx_from_basis,
    best_rank_k,
    dct_sketch,
    error_report,
    fd_sketch,
    generate_synthetic,
    norm_sampling_sketch,
    spemb_sketch,
    spfd_sketch,
)

N, D, K, ELL, SEED = 2000, 200, 10, 60, 0

print(__doc__)
a = generate_synthetic(SyntheticSpec(n=N, d=D, k=K, zeta=10.0, seed=SEED))
exact = best_rank_k(a, K)

sketchers = {
    "normsamp": lambda: norm_sampling_sketch(a, ELL, rng=SEED),
    "dct": lambda: dct_sketch(a, ELL, rng=SEED),
    "spemb": lambda: spemb_sketch(a, ELL, rng=SEED),
    "fd": lambda: fd_sketch(a, ELL),
    "spfd10": lambda: spfd_sketch(a, SpfdConfig(ell=ELL, q=10, seed=SEED)),
    "spfd50": lambda: spfd_sketch(a, SpfdConfig(ell=ELL, q=50, seed=SEED)),
}

print(f"matrix {N}x{D}, signal rank {K}, sketch size ell={ELL}\n")
print(f"{'method':>10} {'fro_ratio':>10} {'spec_ratio':>11} {'seconds':>8}")
for name, run in sketchers.items():
    t0 = time.perf_counter()
    out = run()
    factors = approx_from_basis(a, out.basis, K)
    elapsed = time.perf_counter() - t0
    rep = error_report(a, factors, exact, elapsed)
    print(f"{name:>10} {rep.fro_ratio:>10.4f} {rep.spec_ratio:>11.4f} "
          f"{rep.elapsed_seconds:>8.3f}")

# The sketch basis is all we keep: ELL vectors of length D instead of the
# full matrix, a compression factor of N / ELL.
print(f"\nstored basis: {D}x{ELL} floats, compression {N / ELL:.0f}x on rows")
