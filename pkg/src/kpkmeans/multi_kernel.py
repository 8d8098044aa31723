"""Multi-kernel power k-means: annealed clustering over a convex kernel mix.

Each of the L kernels carries its own implicit centroids (shared weight
matrix W), and a simplex vector alpha mixes the per-kernel squared distances:

    d(i, j) = sum_l alpha_l * d_l(i, j)

The mixed distances drive the same power-mean weight update as the
single-kernel engine, and alpha itself is refreshed in closed form as a
softmax of the negative per-kernel aggregate losses scaled by 1/lambda, the
exact minimizer of the entropy-penalized objective

    sum_i M_s(mixed distance row i) + lambda * sum_l alpha_l log alpha_l

in alpha. Both updates decrease that objective at fixed s, and annealing s
preserves monotonicity of the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cluster import (
    AnnealSchedule,
    ClusterResult,
    _relative_change,
    centroid_distances,
    init_weights,
    objective_value,
    reseed_dead_columns,
)
from .kernels import check_simplex, combine_grams, gram_array
from .power_mean import row_power_mean_weights


@dataclass
class MultiKernelResult(ClusterResult):
    """ClusterResult plus the kernel-weight trajectory."""

    alpha_final: np.ndarray = None
    alpha_trace: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))


def per_kernel_distances(grams, W_prev) -> list[np.ndarray]:
    """Implicit-centroid squared distances under each kernel with shared W."""
    return [centroid_distances(g, W_prev) for g in grams]


def combined_distances(D_list, alpha) -> np.ndarray:
    """Entrywise mix sum_l alpha_l D_l of per-kernel distance matrices."""
    if len(D_list) == 0:
        raise ValueError("need at least one distance matrix")
    alpha = check_simplex(alpha, len(D_list))
    out = np.zeros_like(np.asarray(D_list[0], dtype=np.float64))
    for a, D in zip(alpha, D_list):
        out += a * np.asarray(D, dtype=np.float64)
    return out


def update_weights_multi(D_list, alpha, s: float) -> np.ndarray:
    """Single-kernel weight update applied to the mixed distances."""
    from .cluster import update_weights

    return update_weights(combined_distances(D_list, alpha), s)


def update_alpha(D_list, W, lam: float) -> np.ndarray:
    """Closed-form kernel weights: softmax of -aggregate_loss / lambda.

    The aggregate loss of kernel l is sum_{i,j} w_ij * D_l(i,j). Max
    subtraction keeps the exponentials in range; adding a constant to every
    loss leaves the result unchanged.
    """
    if not np.isfinite(lam) or lam <= 0:
        raise ValueError("lambda must be positive")
    W = np.asarray(W, dtype=np.float64)
    if np.any(W < 0):
        raise ValueError("weight matrix must be nonnegative")
    losses = np.array([float((W * D).sum()) for D in D_list])
    if not np.all(np.isfinite(losses)):
        raise ValueError("non-finite per-kernel aggregate loss")
    a = -losses / lam
    a -= a.max()
    e = np.exp(a)
    return e / e.sum()


def _entropy_term(alpha: np.ndarray) -> float:
    """sum_l alpha_l log alpha_l with the convention 0 * log 0 = 0."""
    pos = alpha[alpha > 0.0]
    return float((pos * np.log(pos)).sum())


def penalized_objective(D_list, alpha, s: float, lam: float) -> float:
    """Mixed-distance power-mean objective plus the entropy penalty."""
    alpha = check_simplex(alpha, len(D_list))
    if not np.isfinite(lam) or lam <= 0:
        raise ValueError("lambda must be positive")
    return objective_value(combined_distances(D_list, alpha), s) + lam * _entropy_term(alpha)


def run_mkpk(
    grams,
    k: int,
    lam: float = 1.0,
    schedule: AnnealSchedule | None = None,
    init: str = "random_points",
    rng_seed: int = 0,
    tol: float = 1e-8,
    max_iter: int = 500,
    alpha0=None,
) -> MultiKernelResult:
    """Multi-kernel power k-means over normalized Gram matrices.

    Per iteration: per-kernel distances from the previous W, weight update on
    the alpha-mixed distances, closed-form alpha update, then an annealing
    step every ``period`` iterations. Terminates on the entropy-penalized
    objective under the same rules as the single-kernel engine (tolerance
    checked once s is frozen at s_cap; see ``run_kpk``). With the default
    lambda = 1 the kernels are assumed [0,1]-rescaled (see ``normalize_gram``);
    for raw kernels scale lambda with the loss magnitude, which grows like
    n * k.
    """
    Ks = [gram_array(g) for g in grams]
    if len(Ks) == 0:
        raise ValueError("need at least one Gram matrix")
    n = Ks[0].shape[0]
    if any(K.shape != (n, n) for K in Ks):
        raise ValueError("all Gram matrices must share the same shape")
    if not np.isfinite(lam) or lam <= 0:
        raise ValueError("lambda must be positive")
    if schedule is None:
        schedule = AnnealSchedule()
    L = len(Ks)
    alpha = np.full(L, 1.0 / L) if alpha0 is None else check_simplex(alpha0, L)

    W = init_weights(combine_grams(Ks, alpha), k, init, rng_seed)

    s = schedule.s0
    trace: list[float] = []
    s_trace: list[float] = []
    alpha_trace: list[np.ndarray] = []
    reseeds: list[int] = []
    prev_obj = None
    prev_s = None
    D_mixed = None
    iterations = 0
    for m in range(1, max_iter + 1):
        iterations = m
        D_list = per_kernel_distances(Ks, W)
        D_mixed = combined_distances(D_list, alpha)
        obj = objective_value(D_mixed, s) + lam * _entropy_term(alpha)
        trace.append(obj)
        s_trace.append(s)
        alpha_trace.append(alpha.copy())
        frozen = abs(s) >= schedule.s_cap
        if frozen and prev_s == s and _relative_change(obj, prev_obj) < tol:
            break
        prev_obj, prev_s = obj, s
        W_raw = row_power_mean_weights(D_mixed, s)
        if reseed_dead_columns(W_raw, D_mixed):
            reseeds.append(m)
        W = W_raw / W_raw.sum(axis=0)
        alpha = update_alpha(D_list, W, lam)
        if m % schedule.period == 0:
            s = schedule.advance(s)
    labels = np.argmin(D_mixed, axis=1)
    return MultiKernelResult(
        labels=labels,
        W_final=W,
        objective_trace=np.asarray(trace),
        s_trace=np.asarray(s_trace),
        iterations=iterations,
        seed=rng_seed,
        reseeds=reseeds,
        alpha_final=alpha,
        alpha_trace=np.asarray(alpha_trace),
    )
