"""Rank hubs and authorities of a directed graph three ways.

A hub points at important nodes; an authority is pointed at by important
hubs.  We compare the classic alternating power iteration (dominant
eigenvector only), the matrix-exponential scores (all spectral information,
dense SVD) and the sketched approximation of the latter, which touches only
k + p singular triplets and scales to graphs where the dense route is
hopeless.
"""

import numpy as np
import scipy.sparse as sparse

from sketchlab import (
    expm_scores_exact,
    expm_scores_sketched,
    hits,
    ranking_overlap,
)

# A two-tier random digraph: the first 12 nodes form a dense core that the
# 188 others mostly point into, plus sparse background links.
rng = np.random.default_rng(11)
n, core = 200, 12
adj = (rng.random((n, n)) < 0.01).astype(float)
adj[:, :core] += (rng.random((n, core)) < 0.25)
adj = (adj > 0).astype(float)
np.fill_diagonal(adj, 0.0)
adj = sparse.csr_matrix(adj)

print(__doc__)
print(f"graph: {n} nodes, {adj.nnz} edges\n")

power = hits(adj, rng=0)
exact = expm_scores_exact(adj)
rows = [("hits", power), ("expm", exact)]
for method in ("normsamp", "spemb", "fd", "spfd10"):
    rows.append((method, expm_scores_sketched(adj, method, k=10, p=5, rng=1)))

print(f"{'method':>10} {'top-5 authorities':>28} {'overlap@10':>11} "
      f"{'seconds':>8}")
for name, res in rows:
    overlap = ranking_overlap(res, exact, 10, "authorities")
    tops = ",".join(f"{i:3d}" for i in res.top_authorities[:5])
    print(f"{name:>10} {tops:>28} {overlap:>11} {res.elapsed_seconds:>8.4f}")

print("\nThe sketched scores keep the exponential method's rankings at a")
print("fraction of its cost; the frequent-directions variants track the")
print("exact top-10 most closely.")
