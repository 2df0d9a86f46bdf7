"""Minimum-norm convex combination of a finite family of vectors."""
from __future__ import annotations

import numpy as np


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1} (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, len(v) + 1)
    rho = np.count_nonzero(u - css / ind > 0)
    theta = css[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _support_solve(G: np.ndarray, support: np.ndarray):
    # stationary point of 1/2 a'Ga on the affine hull of the support
    k = len(support)
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = G[np.ix_(support, support)]
    K[:k, k] = 1.0
    K[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    sol = np.linalg.lstsq(K, rhs, rcond=None)[0]
    return sol[:k]


def min_norm_weights(F: np.ndarray, max_iters: int = 10_000, polish_every: int = 25) -> np.ndarray:
    """Weights on the probability simplex minimizing ||sum_i a_i F[i]||_2^2 / 2.

    Accelerated projected gradient (FISTA with adaptive restart) from uniform
    weights.  Every ``polish_every`` steps the current support is solved
    exactly; the polished point is kept when it is feasible and no worse, and
    the loop ends as soon as it satisfies the simplex KKT conditions.
    """
    m = F.shape[0]
    if m == 1:
        return np.ones(1)
    G = F @ F.T
    L = float(np.linalg.eigvalsh(G)[-1])
    if L <= 0.0:
        return np.full(m, 1.0 / m)
    scale = float(np.max(np.diag(G)))
    step = 1.0 / L

    def obj(a):
        return 0.5 * float(a @ G @ a)

    def kkt_ok(a):
        g = G @ a
        lam = float(a @ g)
        return bool(np.all(g >= lam - 1e-13 * scale))

    x = np.full(m, 1.0 / m)
    if kkt_ok(x):
        return x
    best, best_val = x, obj(x)
    y, t = x.copy(), 1.0
    for it in range(1, max_iters + 1):
        x_new = project_simplex(y - step * (G @ y))
        val = obj(x_new)
        if val > obj(x):
            # adaptive restart
            y, t = x.copy(), 1.0
            continue
        t_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = x_new + ((t - 1.0) / t_new) * (x_new - x)
        x, t = x_new, t_new
        if val < best_val:
            best, best_val = x, val
        if best_val <= 1e-32 * scale:
            break
        if it % polish_every == 0:
            support = np.flatnonzero(x > 0)
            a_s = _support_solve(G, support)
            if np.all(a_s > 0):
                cand = np.zeros(m)
                cand[support] = a_s / a_s.sum()
                if obj(cand) <= best_val:
                    best, best_val = cand, obj(cand)
                    x, y, t = cand, cand.copy(), 1.0
                    if kkt_ok(cand):
                        break
    return best
