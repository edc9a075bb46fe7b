"""Normalized spectral clustering and silhouette-based choice of the cluster count."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
from scipy.spatial.distance import pdist, squareform
from sklearn.cluster import KMeans

from .errors import DegenerateInputError, InvalidArgumentError

__all__ = [
    "AffinityMatrix",
    "ClusteringResult",
    "affinity",
    "normalized_laplacian",
    "spectral_embed",
    "kmeans",
    "silhouette",
    "select_cluster_count",
]


@dataclass(frozen=True)
class AffinityMatrix:
    entries: np.ndarray
    sigma: float
    labels: tuple = ()


@dataclass(frozen=True)
class ClusteringResult:
    assignments: np.ndarray
    c: int
    silhouettes: np.ndarray
    average_silhouette: float
    silhouette_by_c: dict
    embedding: np.ndarray
    sigma: float
    eigenvalues: np.ndarray = field(default_factory=lambda: np.empty(0))
    assignments_by_c: dict = field(default_factory=dict)

    def to_dict(self, labels: Optional[Sequence[str]] = None) -> dict:
        out = {
            "c": int(self.c),
            "average_silhouette": float(self.average_silhouette),
            "silhouette_by_c": {str(c): float(s) for c, s in self.silhouette_by_c.items()},
            "sigma": float(self.sigma),
            "silhouettes": [float(s) for s in self.silhouettes],
            "assignments": [int(a) for a in self.assignments],
        }
        if labels is not None:
            out["clusters"] = {
                str(lab): int(a) for lab, a in zip(labels, self.assignments)
            }
        return out


def _points(matrix) -> np.ndarray:
    pts = getattr(matrix, "points", matrix)
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2:
        raise InvalidArgumentError("points must form a 2-D array (one row per object)")
    return pts


def affinity(matrix, sigma: Union[str, float] = "auto") -> AffinityMatrix:
    """Gaussian affinity ``exp(-|f_i - f_j|^2 / (2 sigma^2))`` with zero diagonal.

    ``sigma="auto"`` takes the median of the nonzero pairwise distances,
    ``sigma="rms"`` their root mean square. Accepts a FeatureMatrix or an
    (n, d) array of points.
    """
    pts = _points(matrix)
    n = pts.shape[0]
    if n < 2:
        raise InvalidArgumentError("affinity needs at least two points")
    dist = squareform(pdist(pts))
    if sigma in ("auto", "rms"):
        nz = dist[np.triu_indices(n, 1)]
        nz = nz[nz > 0]
        if nz.size == 0:
            raise DegenerateInputError("all pairwise distances are zero")
        sigma = float(np.median(nz)) if sigma == "auto" else float(np.sqrt(np.mean(nz**2)))
    sigma = float(sigma)
    if not sigma > 0:
        raise InvalidArgumentError("sigma must be positive")
    a = np.exp(-(dist**2) / (2.0 * sigma**2))
    np.fill_diagonal(a, 0.0)
    return AffinityMatrix(a, sigma, tuple(getattr(matrix, "labels", ())))


def normalized_laplacian(A: AffinityMatrix) -> np.ndarray:
    """``D^{-1/2} A D^{-1/2}`` with D the row sums of A."""
    a = A.entries
    deg = a.sum(axis=1)
    if np.any(deg <= 0):
        i = int(np.flatnonzero(deg <= 0)[0])
        who = A.labels[i] if i < len(A.labels) else f"index {i}"
        raise DegenerateInputError(f"series {who} is isolated (zero affinity to all others)")
    inv = 1.0 / np.sqrt(deg)
    L = inv[:, None] * a * inv[None, :]
    return (L + L.T) / 2.0


def _eig_top(L: np.ndarray, c: int):
    vals, vecs = np.linalg.eigh(L)
    order = np.argsort(-vals, kind="stable")[:c]
    X = vecs[:, order]
    # sign: largest-magnitude entry of each eigenvector positive
    idx = np.argmax(np.abs(X), axis=0)
    signs = np.sign(X[idx, np.arange(X.shape[1])])
    signs[signs == 0] = 1.0
    return vals[order], X * signs


def spectral_embed(A: AffinityMatrix, c: int, return_eigenvalues: bool = False):
    """Row-normalized matrix of the top-``c`` eigenvectors of the normalized Laplacian."""
    n = A.entries.shape[0]
    if not 1 <= c <= n:
        raise InvalidArgumentError(f"cluster count {c} outside 1..{n}")
    vals, X = _eig_top(normalized_laplacian(A), c)
    norms = np.linalg.norm(X, axis=1)
    if np.any(norms == 0):
        raise DegenerateInputError("an embedding row has zero norm")
    U = X / norms[:, None]
    return (U, vals) if return_eigenvalues else U


def _canonical(labels: np.ndarray) -> np.ndarray:
    """Relabel clusters by order of first appearance."""
    _, first = np.unique(labels, return_index=True)
    ranks = np.empty(first.size, dtype=int)
    ranks[np.argsort(first)] = np.arange(first.size)
    return ranks[np.unique(labels, return_inverse=True)[1]]


def kmeans(points, c: int, restarts: int = 20, seed: int = 0) -> np.ndarray:
    """Best-of-``restarts`` k-means with k-means++ seeding; labels in first-seen order."""
    pts = _points(points)
    n = pts.shape[0]
    if not 1 <= c <= n:
        raise InvalidArgumentError(f"need 1 <= c <= n, got c={c}, n={n}")
    if c == 1:
        return np.zeros(n, dtype=int)
    with warnings.catch_warnings():
        # duplicate points make sklearn warn about fewer distinct clusters
        warnings.simplefilter("ignore")
        km = KMeans(n_clusters=c, init="k-means++", n_init=restarts, random_state=seed, algorithm="lloyd")
        labels = km.fit_predict(pts)
    return _canonical(labels)


def silhouette(assignments, distances):
    """Per-object silhouette values and their mean.

    ``a(i)`` is the mean distance to the other members of i's cluster,
    ``b(i)`` the smallest mean distance to another cluster, and
    ``s(i) = (b - a) / max(a, b)``. Members of singleton clusters get 0.
    """
    lab = np.asarray(assignments)
    d = np.asarray(distances, dtype=float)
    n = lab.size
    if d.shape != (n, n):
        raise InvalidArgumentError("distance matrix shape does not match assignments")
    ids, inv = np.unique(lab, return_inverse=True)
    if ids.size < 2:
        raise InvalidArgumentError("silhouette needs at least two clusters")
    onehot = np.zeros((n, ids.size))
    onehot[np.arange(n), inv] = 1.0
    counts = onehot.sum(axis=0)
    sums = d @ onehot  # sum of distances from i to each cluster
    own = counts[inv]
    s = np.zeros(n)
    multi = own > 1
    a = np.zeros(n)
    a[multi] = sums[multi, inv[multi]] / (own[multi] - 1)
    means = sums / counts[None, :]
    means[np.arange(n), inv] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    ok = multi & (denom > 0)
    s[ok] = (b[ok] - a[ok]) / denom[ok]
    return s, float(s.mean())


def select_cluster_count(matrix, c_range: Sequence[int] = (2, 15), config=None) -> ClusteringResult:
    """Cluster for every candidate count and keep the one with the largest mean silhouette.

    Silhouettes are measured with Euclidean distances between the feature
    vectors, not in the spectral embedding. Ties go to the smaller count.
    """
    pts = _points(matrix)
    n = pts.shape[0]
    c_min, c_max = int(c_range[0]), int(c_range[1])
    if not 2 <= c_min <= c_max:
        raise InvalidArgumentError(f"invalid cluster range {c_range!r}")
    if c_max > max(2, n - 1) or c_min > n:
        raise InvalidArgumentError(f"cluster range {c_range!r} exceeds n - 1 = {n - 1}")
    sigma = getattr(config, "sigma", "auto") if config is not None else "auto"
    restarts = getattr(config, "restarts", 20) if config is not None else 20
    seed = getattr(config, "seed", 0) if config is not None else 0

    A = affinity(matrix, sigma)
    L = normalized_laplacian(A)
    vals_all, X_all = _eig_top(L, c_max)
    dist = squareform(pdist(pts))

    best = None
    curve, by_c = {}, {}
    for c in range(c_min, c_max + 1):
        X = X_all[:, :c]
        norms = np.linalg.norm(X, axis=1)
        if np.any(norms == 0):
            raise DegenerateInputError("an embedding row has zero norm")
        U = X / norms[:, None]
        lab = kmeans(U, c, restarts, seed)
        if np.unique(lab).size < 2:
            s, avg = np.zeros(n), 0.0
        else:
            s, avg = silhouette(lab, dist)
        curve[c] = avg
        by_c[c] = lab
        if best is None or avg > best[0]:
            best = (avg, c, lab, s, U)
    avg, c, lab, s, U = best
    return ClusteringResult(
        assignments=lab,
        c=c,
        silhouettes=s,
        average_silhouette=avg,
        silhouette_by_c=curve,
        embedding=U,
        sigma=A.sigma,
        eigenvalues=vals_all,
        assignments_by_c=by_c,
    )
