"""Independent brute-force checks.  Nothing here imports the solvers it checks.

``norm_by_vertices`` enumerates every candidate vertex of the Lipschitz ball
LP: with f(0) = 0 fixed, choose n - 1 of the equations f_i - f_j = d(i, j)
(ordered pairs i != j, base point included), keep the nonsingular feasible
solutions, and take the best objective.
"""
from itertools import combinations

import numpy as np

FEAS_TOL = 1e-9


def norm_by_vertices(dist, weights):
    """``dist``: n x n array-like, ``weights``: length-n sequence (index 0 ignored)."""
    D = np.asarray([[float(x) for x in row] for row in dist])
    n = D.shape[0]
    a = np.asarray([float(x) for x in weights])[1:]
    if n == 1 or not a.any():
        return 0.0
    k = n - 1
    eqs = [(i, j) for i in range(n) for j in range(n) if i != j]
    rows = np.zeros((len(eqs), k))
    rhs = np.zeros(len(eqs))
    for e, (i, j) in enumerate(eqs):
        if i:
            rows[e, i - 1] += 1
        if j:
            rows[e, j - 1] -= 1
        rhs[e] = D[i, j]
    picks = np.array(list(combinations(range(len(eqs)), k)))
    M = rows[picks]
    y = rhs[picks]
    ok = np.abs(np.linalg.det(M)) > 0.5   # integer-valued determinants
    F = np.linalg.solve(M[ok], y[ok][..., None])[..., 0]
    full = np.concatenate([np.zeros((F.shape[0], 1)), F], axis=1)
    diff = np.abs(full[:, :, None] - full[:, None, :])
    feasible = (diff <= D[None] + FEAS_TOL).all(axis=(1, 2))
    return float((F[feasible] @ a).max())


def lipschitz_bruteforce(values, dist):
    n = len(values)
    return max((abs(values[i] - values[j]) / dist[i][j]
                for i in range(n) for j in range(n) if i != j), default=0)
