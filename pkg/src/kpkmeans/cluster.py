"""Kernel power k-means: annealed clustering with implicit kernel-space centroids.

Each centroid is represented only by a column of nonnegative weights over the
data points (a convex combination of mapped points). Squared feature-space
distances to these implicit centroids are evaluated through the Gram matrix,
so the algorithm never materializes feature vectors:

    |phi(x_i0) - theta_j|^2 = K(i0,i0) + (w_j' K w_j) / (sum w_j)^2
                              - 2 (K w_j)_i0 / (sum w_j)

One iteration computes these distances, replaces each weight row with the
power-mean gradient weights of that row, and periodically multiplies the
power-mean order s by eta > 1, driving s toward -inf so that the smoothed
objective sum_i M_s(distances_i) anneals into the hard min-distance
objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import gram_array
from .power_mean import (
    EXPONENT_CAP,
    row_power_mean_weights,
    row_power_means,
)

INIT_STRATEGIES = ("random_points", "kernel_kpp")


class EmptyClusterError(RuntimeError):
    """A centroid's weight column has zero mass, so it is undefined."""


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric schedule s -> s * eta applied every ``period`` iterations.

    Annealing freezes once |s| reaches ``s_cap``; past that point the weights
    are numerically hard assignments and further sharpening is pointless.
    """

    s0: float = -1.0
    eta: float = 1.04
    period: int = 5
    s_cap: float = EXPONENT_CAP

    def __post_init__(self):
        if not np.isfinite(self.s0) or self.s0 >= 0:
            raise ValueError("s0 must be finite and negative")
        if not np.isfinite(self.eta) or self.eta <= 1.0:
            raise ValueError("eta must be > 1")
        if int(self.period) < 1 or self.period != int(self.period):
            raise ValueError("period must be a positive integer")
        if not np.isfinite(self.s_cap) or self.s_cap <= 0:
            raise ValueError("s_cap must be positive")

    def advance(self, s: float) -> float:
        """One annealing step; returns s unchanged once |s| >= s_cap."""
        if abs(s) >= self.s_cap:
            return s
        nxt = s * self.eta
        return -self.s_cap if abs(nxt) >= self.s_cap else nxt


@dataclass
class ClusterResult:
    """Outcome of a single clustering run.

    ``objective_trace[m]`` is the smoothed objective evaluated at the start of
    iteration m+1 with the order recorded in ``s_trace[m]``; ``reseeds`` lists
    the iterations at which a dead centroid was re-seeded.
    """

    labels: np.ndarray
    W_final: np.ndarray
    objective_trace: np.ndarray
    s_trace: np.ndarray
    iterations: int
    seed: int
    reseeds: list[int] = field(default_factory=list)


def kpp_indices(sqdist_to, n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """++-style seeding: first index uniform, then proportional to the current
    minimum squared distance to the chosen set.

    ``sqdist_to(c)`` must return the length-n vector of squared distances to
    point c in whatever space the caller works in.
    """
    chosen = [int(rng.integers(n))]
    mind = np.asarray(sqdist_to(chosen[0]), dtype=np.float64)
    for _ in range(1, k):
        total = mind.sum()
        if total <= 0.0:
            remaining = np.setdiff1d(np.arange(n), np.asarray(chosen))
            nxt = int(rng.choice(remaining))
        else:
            nxt = int(rng.choice(n, p=mind / total))
        chosen.append(nxt)
        mind = np.minimum(mind, sqdist_to(nxt))
    return np.asarray(chosen)


def init_weights(gram, k: int, strategy: str = "random_points", rng_seed: int = 0) -> np.ndarray:
    """Initial weight matrix: one-hot columns selecting k distinct data points.

    ``random_points`` draws the indices uniformly without replacement;
    ``kernel_kpp`` applies ++ seeding with squared distances read off the
    Gram matrix, d2(i, c) = K(i,i) + K(c,c) - 2 K(i,c).
    """
    K = gram_array(gram)
    n = K.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(rng_seed)
    if strategy == "random_points":
        idx = rng.choice(n, size=k, replace=False)
    elif strategy == "kernel_kpp":
        diag = np.diag(K)
        idx = kpp_indices(lambda c: np.maximum(diag + diag[c] - 2.0 * K[:, c], 0.0), n, k, rng)
    else:
        raise ValueError(f"unknown init strategy {strategy!r}; expected one of {INIT_STRATEGIES}")
    W = np.zeros((n, k))
    W[idx, np.arange(k)] = 1.0
    return W


def centroid_distances(gram, W_prev) -> np.ndarray:
    """Squared distances from every point to every implicit centroid.

    Column j of ``W_prev`` defines centroid j as the weight-proportional
    combination of mapped points; only the weight ratios matter, so scaling a
    column leaves the result unchanged. Entries are clamped at 0 to absorb
    rounding.
    """
    K = gram_array(gram)
    W = np.asarray(W_prev, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] != K.shape[0]:
        raise ValueError(f"weight matrix shape {W.shape} does not match n={K.shape[0]}")
    col = W.sum(axis=0)
    if np.any(col <= 0.0):
        dead = np.flatnonzero(col <= 0.0)
        raise EmptyClusterError(f"weight columns {dead.tolist()} have no mass")
    Wn = W / col
    cross = K @ Wn
    quad = np.einsum("ij,ij->j", Wn, cross)
    D = np.diag(K)[:, None] + quad[None, :] - 2.0 * cross
    return np.maximum(D, 0.0)


def update_weights(D, s: float) -> np.ndarray:
    """Power-mean gradient weights of every distance row, column-normalized.

    Normalizing columns to sum 1 is harmless (distances depend only on
    column ratios) and prevents underflow as s grows very negative.
    """
    if not np.isfinite(s) or s >= 0:
        raise ValueError(f"weight update requires s < 0, got {s!r}")
    W = row_power_mean_weights(np.maximum(np.asarray(D, dtype=np.float64), 0.0), s)
    col = W.sum(axis=0)
    if np.any(col == 0.0):
        dead = np.flatnonzero(col == 0.0)
        raise EmptyClusterError(f"weight columns {dead.tolist()} underflowed to zero")
    return W / col


def objective_value(D, s: float) -> float:
    """Smoothed clustering objective: sum over points of M_s(distance row)."""
    return float(row_power_means(np.maximum(np.asarray(D, dtype=np.float64), 0.0), s).sum())


def _relative_change(curr: float, prev: float) -> float:
    return abs(curr - prev) / max(1.0, abs(prev))


def reseed_dead_columns(W_raw, D) -> bool:
    """Re-seed zero-mass weight columns at the points farthest from any live
    centroid (one-hot), in place. Returns True if anything was re-seeded."""
    col = W_raw.sum(axis=0)
    dead = np.flatnonzero(col == 0.0)
    if dead.size == 0:
        return False
    alive = np.flatnonzero(col > 0.0)
    mind = D[:, alive].min(axis=1) if alive.size else D.min(axis=1)
    order = np.argsort(-mind, kind="stable")
    used = 0
    for j in dead:
        pick = order[used]
        used += 1
        W_raw[:, j] = 0.0
        W_raw[pick, j] = 1.0
    return True


def _run_anneal_loop(compute_distances, apply_update, schedule, tol, max_iter):
    """Shared driver for the annealed MM loop.

    Per iteration: distances for the current state, objective at the current
    s, convergence check, state update, then an annealing step every
    ``period`` iterations. Annealing runs unconditionally until |s| hits
    s_cap; only once s is frozen is the tolerance-based convergence test
    applied (relative objective change against the previous iteration at the
    same s). Objective plateaus during the annealing phase are transient --
    the next sharpening of s moves the iterate again -- so stopping on them
    would freeze the run in a smoothed, unresolved state. Set ``s_cap`` to
    ``abs(s0)`` for a fixed-s run with plain tolerance-based termination.
    Returns (labels, objective_trace, s_trace, iterations, reseed_iterations).
    """
    s = schedule.s0
    trace: list[float] = []
    s_trace: list[float] = []
    reseeds: list[int] = []
    prev_obj = None
    prev_s = None
    D = None
    iterations = 0
    for m in range(1, max_iter + 1):
        iterations = m
        D = compute_distances()
        obj = objective_value(D, s)
        trace.append(obj)
        s_trace.append(s)
        frozen = abs(s) >= schedule.s_cap
        if frozen and prev_s == s and _relative_change(obj, prev_obj) < tol:
            break
        prev_obj, prev_s = obj, s
        if apply_update(D, s):
            reseeds.append(m)
        if m % schedule.period == 0:
            s = schedule.advance(s)
    labels = np.argmin(D, axis=1)
    return labels, np.asarray(trace), np.asarray(s_trace), iterations, reseeds


def run_kpk(
    gram,
    k: int,
    schedule: AnnealSchedule | None = None,
    init: str = "random_points",
    rng_seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 500,
) -> ClusterResult:
    """Kernel power k-means.

    Iterates implicit-centroid distance computation, power-mean weight
    updates, and annealing of s every ``schedule.period`` iterations until
    |s| reaches ``schedule.s_cap``; once s is frozen the run terminates when
    the relative objective change between consecutive iterations drops below
    ``tol`` (or at ``max_iter``, whichever comes first). With the stock
    schedule, freezing takes about 1470 iterations, so give ``max_iter``
    headroom (or lower ``s_cap``) when full convergence is wanted. Labels are
    the row-wise argmin of the final distance matrix (ties go to the lowest
    cluster index). Dead centroids are re-seeded at the point farthest from
    any live centroid and logged in the result.
    """
    K = gram_array(gram)
    if schedule is None:
        schedule = AnnealSchedule()
    state = {"W": init_weights(K, k, init, rng_seed)}

    def compute_distances():
        return centroid_distances(K, state["W"])

    def apply_update(D, s):
        W_raw = row_power_mean_weights(D, s)
        reseeded = reseed_dead_columns(W_raw, D)
        state["W"] = W_raw / W_raw.sum(axis=0)
        return reseeded

    labels, trace, s_trace, iterations, reseeds = _run_anneal_loop(
        compute_distances, apply_update, schedule, tol, max_iter
    )
    return ClusterResult(
        labels=labels,
        W_final=state["W"],
        objective_trace=trace,
        s_trace=s_trace,
        iterations=iterations,
        seed=rng_seed,
        reseeds=reseeds,
    )
