"""Generation-quality metrics: discrete optimal transport, Frechet distance
between Gaussian moment pairs, and maximum mean discrepancy."""

import numpy as np
from scipy import linalg, optimize, sparse


def wasserstein_distance(p_d, p_g, cost):
    """Optimal-transport distance between two discrete distributions.

    ``cost[i, j]`` is the ground distance between atom i of ``p_d`` and atom
    j of ``p_g``; solved exactly as the transport LP on the coupling matrix.
    """
    p_d = np.asarray(p_d, dtype=float)
    p_g = np.asarray(p_g, dtype=float)
    cost = np.asarray(cost, dtype=float)
    n, m = p_d.size, p_g.size
    if cost.shape != (n, m):
        raise ValueError(f"cost must be {n}x{m}, got {cost.shape}")
    if np.any(cost < 0):
        raise ValueError("cost matrix must be non-negative")
    if np.any(p_d < -1e-12) or np.any(p_g < -1e-12):
        raise ValueError("distributions must be non-negative")
    if abs(p_d.sum() - p_g.sum()) > 1e-9:
        raise ValueError("marginals do not carry equal mass")

    a_rows = []
    b = []
    for i in range(n):
        row = sparse.coo_matrix(
            (np.ones(m), (np.zeros(m), i * m + np.arange(m))), shape=(1, n * m))
        a_rows.append(row)
        b.append(p_d[i])
    for j in range(m):
        row = sparse.coo_matrix(
            (np.ones(n), (np.zeros(n), np.arange(n) * m + j)), shape=(1, n * m))
        a_rows.append(row)
        b.append(p_g[j])
    res = optimize.linprog(cost.reshape(-1), A_eq=sparse.vstack(a_rows),
                           b_eq=np.asarray(b), bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def empirical_wasserstein(x, y):
    """Transport distance between two sample clouds with uniform weights."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    cost = np.linalg.norm(x[:, None, :] - y[None, :, :], axis=2)
    return wasserstein_distance(np.full(len(x), 1.0 / len(x)),
                                np.full(len(y), 1.0 / len(y)), cost)


def _as_cov(s):
    s = np.atleast_2d(np.asarray(s, dtype=float))
    if s.shape[0] != s.shape[1]:
        raise ValueError("covariance must be square")
    eig = np.linalg.eigvalsh((s + s.T) / 2.0)
    if eig.min() < -1e-8 * max(1.0, abs(eig).max()):
        raise ValueError("covariance is not positive semi-definite")
    return s


def fid(mu_x, cov_x, mu_g, cov_g):
    """Frechet distance between two Gaussian moment pairs."""
    mu_x = np.atleast_1d(np.asarray(mu_x, dtype=float))
    mu_g = np.atleast_1d(np.asarray(mu_g, dtype=float))
    cov_x = _as_cov(cov_x)
    cov_g = _as_cov(cov_g)
    diff = float(((mu_x - mu_g) ** 2).sum())
    cross = linalg.sqrtm(cov_x @ cov_g)
    if np.iscomplexobj(cross):
        cross = cross.real
    return float(diff + np.trace(cov_x) + np.trace(cov_g) - 2.0 * np.trace(cross))


def rbf_kernel(gamma=1.0):
    def k(a, b):
        a = np.atleast_2d(a)
        b = np.atleast_2d(b)
        d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
        return np.exp(-gamma * d2)

    return k


def linear_kernel(a, b):
    return np.atleast_2d(a) @ np.atleast_2d(b).T


def median_bandwidth_kernel(x, y):
    """RBF kernel with the median-pairwise-distance bandwidth heuristic."""
    joint = np.vstack([np.atleast_2d(x), np.atleast_2d(y)])
    d2 = ((joint[:, None, :] - joint[None, :, :]) ** 2).sum(axis=2)
    med = np.median(d2[d2 > 0]) if np.any(d2 > 0) else 1.0
    return rbf_kernel(1.0 / med)


def mmd2(x, y, kernel, biased=False):
    """Squared maximum mean discrepancy between two sample sets."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    y = np.atleast_2d(np.asarray(y, dtype=float))
    n, m = len(x), len(y)
    kxx = kernel(x, x)
    kyy = kernel(y, y)
    kxy = kernel(x, y)
    if biased:
        return float(kxx.mean() - 2.0 * kxy.mean() + kyy.mean())
    if n < 2 or m < 2:
        raise ValueError("the unbiased estimator needs at least two samples per set")
    sxx = (kxx.sum() - np.trace(kxx)) / (n * (n - 1))
    syy = (kyy.sum() - np.trace(kyy)) / (m * (m - 1))
    return float(sxx - 2.0 * kxy.mean() + syy)
