"""Renewable scenario reduction: k-means++ clustering, validity indices,
cluster-count selection and joint PV x WT scenario sets."""

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .accel import USING_NUMBA, maybe_jit

LLOYD_MAX_ITER = 300
PROB_TOL = 1e-9


class DegenerateClusteringError(ValueError):
    """Raised when coincident cluster centers make an index undefined."""


@dataclass
class Clustering:
    labels: np.ndarray
    centers: np.ndarray
    probabilities: np.ndarray
    wcss_path: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def k(self):
        return self.centers.shape[0]


@dataclass
class ScenarioSet:
    n_s: int
    pv: np.ndarray
    wt: np.ndarray
    p0: np.ndarray
    meta: dict = field(default_factory=dict)

    def validate(self):
        if self.pv.shape != (self.n_s, 24) or self.wt.shape != (self.n_s, 24):
            raise ValueError("scenario availability matrices must be n_s x 24")
        if np.any(self.pv < 0) or np.any(self.wt < 0):
            raise ValueError("availabilities must be non-negative")
        if abs(self.p0.sum() - 1.0) > PROB_TOL or np.any(self.p0 < 0):
            raise ValueError("p0 must be a probability vector")
        return self


def _check_samples(samples):
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 24:
        raise ValueError("sample matrix must have 24 hourly columns")
    if samples.shape[0] < 1:
        raise ValueError("sample matrix needs at least one row")
    if np.any(samples < 0):
        raise ValueError("power samples must be non-negative")
    return samples


# -- hot kernels ---------------------------------------------------------

if USING_NUMBA:

    @maybe_jit
    def _assign(samples, centers):
        n = samples.shape[0]
        k = centers.shape[0]
        gram = samples @ centers.T
        cn = np.empty(k)
        for c in range(k):
            cn[c] = np.dot(centers[c], centers[c])
        labels = np.zeros(n, dtype=np.int64)
        sq = np.zeros(n)
        for i in range(n):
            best = np.inf
            arg = 0
            for c in range(k):
                val = cn[c] - 2.0 * gram[i, c]
                if val < best:
                    best = val
                    arg = c
            labels[i] = arg
            sn = np.dot(samples[i], samples[i])
            sq[i] = max(sn + best, 0.0)
        return labels, sq

    @maybe_jit
    def _pairwise_sq(x):
        n, d = x.shape
        out = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                acc = 0.0
                for t in range(d):
                    diff = x[i, t] - x[j, t]
                    acc += diff * diff
                out[i, j] = acc
                out[j, i] = acc
        return out

else:

    def _assign(samples, centers):
        d2 = ((samples[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1)
        return labels, d2[np.arange(samples.shape[0]), labels]

    def _pairwise_sq(x):
        sq = (x * x).sum(axis=1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
        np.fill_diagonal(d2, 0.0)
        return np.maximum(d2, 0.0)


# -- clustering ----------------------------------------------------------

def _seed_centers(samples, k, rng):
    """k-means++ seeding: distance-squared proportional center choice."""
    n = samples.shape[0]
    centers = np.empty((k, samples.shape[1]))
    first = int(rng.integers(n))
    centers[0] = samples[first]
    d2 = ((samples - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = samples[idx]
        d2 = np.minimum(d2, ((samples - centers[c]) ** 2).sum(axis=1))
    return centers


def kmeans_cluster(samples, k, seed=0):
    """Cluster daily profiles with k-means++ and Lloyd iterations.

    Probabilities are cluster member fractions; the within-cluster
    sum-of-squares trace is kept for the monotonicity check.
    """
    samples = _check_samples(samples)
    n = samples.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= rows, got k={k}, rows={n}")
    rng = np.random.default_rng(seed)
    centers = _seed_centers(samples, k, rng)
    labels = np.full(n, -1, dtype=np.int64)
    wcss_path = []
    for _ in range(LLOYD_MAX_ITER):
        new_labels, sq = _assign(samples, centers)
        wcss_path.append(float(sq.sum()))
        for c in range(k):
            members = new_labels == c
            if members.any():
                centers[c] = samples[members].mean(axis=0)
            else:
                # re-seed an emptied cluster at the farthest sample
                far = int(np.argmax(sq))
                centers[c] = samples[far]
                new_labels[far] = c
                sq[far] = 0.0
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    counts = np.bincount(labels, minlength=k).astype(float)
    return Clustering(labels, centers, counts / n, np.asarray(wcss_path))


def davies_bouldin(samples, clustering):
    """Mean over clusters of the worst (S_i + S_j) / d(C_i, C_j) ratio."""
    samples = _check_samples(samples)
    k = clustering.k
    if k < 2:
        raise ValueError("davies_bouldin needs at least two clusters")
    centers = clustering.centers
    spread = np.zeros(k)
    for c in range(k):
        members = samples[clustering.labels == c]
        if members.size:
            spread[c] = np.linalg.norm(members - centers[c], axis=1).mean()
    total = 0.0
    for i in range(k):
        worst = 0.0
        for j in range(k):
            if i == j:
                continue
            dij = np.linalg.norm(centers[i] - centers[j])
            if dij <= 0:
                raise DegenerateClusteringError(
                    f"clusters {i} and {j} have coincident centers")
            worst = max(worst, (spread[i] + spread[j]) / dij)
        total += worst
    return total / k


def silhouette(samples, clustering):
    """Mean silhouette value; singleton-cluster samples contribute zero."""
    samples = _check_samples(samples)
    k = clustering.k
    if k < 2:
        raise ValueError("silhouette needs at least two clusters")
    labels = clustering.labels
    n = samples.shape[0]
    dist = np.sqrt(_pairwise_sq(samples))
    counts = np.bincount(labels, minlength=k)
    # per-sample summed distance to each cluster
    sums = np.zeros((n, k))
    for c in range(k):
        sums[:, c] = dist[:, labels == c].sum(axis=1)
    values = np.zeros(n)
    for i in range(n):
        c = labels[i]
        if counts[c] <= 1:
            continue
        a = sums[i, c] / (counts[c] - 1)
        b = np.inf
        for other in range(k):
            if other == c or counts[other] == 0:
                continue
            b = min(b, sums[i, other] / counts[other])
        m = max(a, b)
        values[i] = 0.0 if m == 0 else (b - a) / m
    return float(values.mean())


@dataclass
class ClusterCountSelection:
    k: int
    table: list  # rows of (k, dbi, sc)
    clusterings: dict


def select_from_table(table):
    """Selection rule over (k, dbi, sc) rows: max SC, then min DBI, then
    smaller k."""
    return min(table, key=lambda row: (-row[2], row[1], row[0]))[0]


def select_cluster_count(samples, k_min, k_max, seed=0):
    """Cluster at every k in range and apply the selection rule."""
    samples = _check_samples(samples)
    n = samples.shape[0]
    if not 2 <= k_min <= k_max <= n:
        raise ValueError(f"need 2 <= k_min <= k_max <= rows, got "
                         f"[{k_min}, {k_max}] with rows={n}")
    table = []
    clusterings = {}
    for k in range(k_min, k_max + 1):
        clus = kmeans_cluster(samples, k, seed)
        clusterings[k] = clus
        table.append((k, davies_bouldin(samples, clus), silhouette(samples, clus)))
    return ClusterCountSelection(select_from_table(table), table, clusterings)


def build_scenario_set(pv_clustering, wt_clustering):
    """Joint scenarios as the independent PV x WT product, PV-major order."""
    pv_c, wt_c = pv_clustering, wt_clustering
    n_s = pv_c.k * wt_c.k
    pv = np.repeat(pv_c.centers, wt_c.k, axis=0)
    wt = np.tile(wt_c.centers, (pv_c.k, 1))
    p0 = np.outer(pv_c.probabilities, wt_c.probabilities).reshape(-1)
    return ScenarioSet(n_s, np.clip(pv, 0.0, None), np.clip(wt, 0.0, None),
                       p0).validate()


# -- file formats ----------------------------------------------------------

SAMPLE_HEADER = ["day"] + [f"h{h:02d}" for h in range(24)]


def load_samples_csv(path):
    """Read the `day,h00..h23` daily-profile CSV into a sample matrix."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != SAMPLE_HEADER:
            raise ValueError(f"{path}: expected header {','.join(SAMPLE_HEADER)}")
        for ln, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 25:
                raise ValueError(f"{path}: row {ln}: expected 25 fields, got {len(row)}")
            try:
                rows.append([float(v) for v in row[1:]])
            except ValueError as exc:
                raise ValueError(f"{path}: row {ln}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: no sample rows")
    return _check_samples(np.asarray(rows))


def save_samples_csv(path, samples, day_labels=None):
    samples = np.asarray(samples, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SAMPLE_HEADER)
        for i, row in enumerate(samples):
            label = day_labels[i] if day_labels is not None else i
            writer.writerow([label] + [f"{v:.9f}" for v in row])


def save_scenarios_json(path, scenarios):
    payload = {
        "n_s": scenarios.n_s,
        "p0": [float(v) for v in scenarios.p0],
        "pv": [[float(v) for v in row] for row in scenarios.pv],
        "wt": [[float(v) for v in row] for row in scenarios.wt],
        "meta": scenarios.meta,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def load_scenarios_json(path):
    with open(path) as fh:
        payload = json.load(fh)
    return ScenarioSet(
        int(payload["n_s"]),
        np.asarray(payload["pv"], dtype=float),
        np.asarray(payload["wt"], dtype=float),
        np.asarray(payload["p0"], dtype=float),
        payload.get("meta", {}),
    ).validate()
