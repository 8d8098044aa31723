"""Reference clusterers: Lloyd-style kernel k-means and explicit power k-means.

``kernel_kmeans`` is the classic hard-assignment algorithm evaluated through
the Gram matrix. ``power_kmeans`` runs the same annealed power-mean scheme as
the kernel engine but with centroids materialized in the input space; with a
linear kernel the two follow the same trajectory, which makes this module the
independent reference for the kernel-trick implementation.
"""

from __future__ import annotations

import numpy as np

from .cluster import (
    AnnealSchedule,
    ClusterResult,
    _run_anneal_loop,
    centroid_distances,
    init_weights,
    kpp_indices,
    reseed_dead_columns,
)
from .kernels import _feature_matrix, gram_array
from .power_mean import row_power_mean_weights


def _euclid_sqdists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    x2 = np.einsum("ij,ij->i", X, X)[:, None]
    c2 = np.einsum("ij,ij->i", C, C)[None, :]
    return np.maximum(x2 + c2 - 2.0 * (X @ C.T), 0.0)


def _indicator(labels: np.ndarray, k: int) -> np.ndarray:
    W = np.zeros((labels.shape[0], k))
    W[np.arange(labels.shape[0]), labels] = 1.0
    return W


def kernel_kmeans(
    gram,
    k: int,
    init: str = "random_points",
    rng_seed: int = 0,
    max_iter: int = 500,
) -> ClusterResult:
    """Hard kernel k-means (Lloyd iterations through the Gram matrix).

    Alternates assignment of every point to its nearest implicit centroid
    (three-term Gram expansion with cluster-indicator weights) and centroid
    redefinition as cluster means, until assignments stop changing. The
    traced objective sum_i min_j d(i, j) is non-increasing. Clusters that
    empty out are re-seeded at the farthest point from any live centroid.
    """
    K = gram_array(gram)
    W = init_weights(K, k, init, rng_seed)
    labels = None
    trace: list[float] = []
    reseeds: list[int] = []
    iterations = 0
    for m in range(1, max_iter + 1):
        iterations = m
        D = centroid_distances(K, W)
        new_labels = np.argmin(D, axis=1)
        trace.append(float(D.min(axis=1).sum()))
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        counts = np.bincount(labels, minlength=k)
        if np.any(counts == 0):
            reseeds.append(m)
            labels = _reseed_empty_labels(labels, counts, D)
        W = _indicator(labels, k)
    return ClusterResult(
        labels=labels,
        W_final=W,
        objective_trace=np.asarray(trace),
        s_trace=np.zeros(0),
        iterations=iterations,
        seed=rng_seed,
        reseeds=reseeds,
    )


def _reseed_empty_labels(labels: np.ndarray, counts: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Move the farthest-from-everything points into empty clusters."""
    labels = labels.copy()
    while True:
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels
        alive = np.flatnonzero(counts > 0)
        mind = D[:, alive].min(axis=1)
        # never steal a point that is alone in its cluster
        movable = counts[labels] > 1
        candidates = np.flatnonzero(movable)
        pick = candidates[np.argmax(mind[candidates])]
        counts[labels[pick]] -= 1
        labels[pick] = empty[0]
        counts[empty[0]] += 1


def power_kmeans(
    data,
    k: int,
    schedule: AnnealSchedule | None = None,
    init: str = "random_points",
    rng_seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 500,
    record_centroids: bool = False,
) -> ClusterResult:
    """Annealed power k-means with explicit centroids in the input space.

    Identical loop structure to the kernel engine (distances, power-mean
    weight rows, column normalization, annealing), but centroids are
    materialized as the weighted means W.T @ X, so the run equals the
    linear-kernel run up to floating-point noise. When ``record_centroids``
    is set the per-iteration centroid history is attached to the result as
    ``centroid_trace``.
    """
    X = _feature_matrix(data)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if schedule is None:
        schedule = AnnealSchedule()
    rng = np.random.default_rng(rng_seed)
    if init == "random_points":
        idx = rng.choice(n, size=k, replace=False)
    elif init == "kernel_kpp":
        idx = kpp_indices(lambda c: np.einsum("ij,ij->i", X - X[c], X - X[c]), n, k, rng)
    else:
        raise ValueError(f"unknown init strategy {init!r}")

    state = {"C": X[idx].copy(), "W": None}
    centroid_trace: list[np.ndarray] = []

    def compute_distances():
        if record_centroids:
            centroid_trace.append(state["C"].copy())
        return _euclid_sqdists(X, state["C"])

    def apply_update(D, s):
        W_raw = row_power_mean_weights(D, s)
        reseeded = reseed_dead_columns(W_raw, D)
        W = W_raw / W_raw.sum(axis=0)
        state["W"] = W
        state["C"] = W.T @ X
        return reseeded

    labels, trace, s_trace, iterations, reseeds = _run_anneal_loop(
        compute_distances, apply_update, schedule, tol, max_iter
    )
    result = ClusterResult(
        labels=labels,
        W_final=state["W"] if state["W"] is not None else _indicator(labels, k),
        objective_trace=trace,
        s_trace=s_trace,
        iterations=iterations,
        seed=rng_seed,
        reseeds=reseeds,
    )
    result.centroids = state["C"]
    if record_centroids:
        result.centroid_trace = centroid_trace
    return result
