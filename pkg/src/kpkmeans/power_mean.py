"""Numerically stable power means and their gradient weights.

The power mean of order ``s`` of a positive vector ``y`` of length ``k`` is

    M_s(y) = ((1/k) * sum_j y_j**s) ** (1/s)

It interpolates between ``min(y)`` (s -> -inf), the harmonic mean (s = -1)
and the arithmetic mean (s = 1), and satisfies M_s(y) <= M_t(y) for s <= t.
Annealed clustering drives ``s`` to values like -1e4, where naive powering
overflows, so every quantity here is evaluated in log space after factoring
out the row minimum: the shifted exponents ``s * log(y_j / min(y))`` are all
nonpositive and the computation cannot overflow for any ``s <= 1``.

Orders ``s > 1`` (convex regime) and ``s = 0`` (geometric mean) are not
supported.
"""

from __future__ import annotations

import numpy as np

# Squared distances below this floor are clamped before any power is taken;
# y_j = 0 with s < 1 would otherwise make y_j**(s-1) undefined.
DISTANCE_FLOOR = 1e-12

# Annealing freezes once |s| reaches this value; beyond it the gradient
# weights are numerically indistinguishable from hard assignment.
EXPONENT_CAP = 1e5


def _check_exponent(s) -> float:
    s = float(s)
    if not np.isfinite(s):
        raise ValueError(f"power-mean exponent must be finite, got {s!r}")
    if s == 0.0:
        raise ValueError("power-mean exponent s = 0 (geometric mean) is not supported")
    if s > 1.0:
        raise ValueError(f"power-mean exponent must satisfy s <= 1, got {s!r}")
    return s


def _as_rows(y) -> np.ndarray:
    Y = np.asarray(y, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[None, :]
    if Y.ndim != 2 or Y.shape[1] == 0:
        raise ValueError("expected a nonempty vector, or matrix of row vectors")
    if not np.all(np.isfinite(Y)):
        raise ValueError("input contains non-finite entries")
    if np.any(Y < 0.0):
        raise ValueError("input contains negative entries")
    return np.maximum(Y, DISTANCE_FLOOR)


def _log_stats(Y: np.ndarray, s: float):
    """Per-row min-factored logs: (log min, r, logsumexp(s*r)).

    r = log(Y) - log(min) is nonnegative, so for s < 0 the exponents s*r are
    nonpositive and exp cannot overflow; for s in (0, 1] the usual
    max-subtraction handles wide dynamic ranges.
    """
    logy = np.log(Y)
    logmin = logy.min(axis=1, keepdims=True)
    r = logy - logmin
    a = s * r
    amax = a.max(axis=1, keepdims=True)
    lse = amax + np.log(np.exp(a - amax).sum(axis=1, keepdims=True))
    return logmin, r, lse


def row_power_means(D, s) -> np.ndarray:
    """Power mean of order ``s`` of every row of ``D``.

    Rows are clamped at DISTANCE_FLOOR before evaluation. The result of each
    row lies in [min(row), max(row)].
    """
    s = _check_exponent(s)
    Y = _as_rows(D)
    k = Y.shape[1]
    logmin, _, lse = _log_stats(Y, s)
    return np.exp(logmin[:, 0] + (lse[:, 0] - np.log(k)) / s)


def row_power_mean_weights(D, s) -> np.ndarray:
    """Gradient weights w_j = dM_s/dy_j for every row of ``D``.

    For a single row,

        w_j = (1/k) * y_j**(s-1) / ((1/k) * sum_l y_l**s) ** (1 - 1/s)

    M_s is homogeneous of degree 1, so the weights satisfy the Euler identity
    sum_j w_j * y_j = M_s(y) and are themselves homogeneous of degree 0
    (rescaling y leaves them unchanged).
    """
    s = _check_exponent(s)
    Y = _as_rows(D)
    k = Y.shape[1]
    _, r, lse = _log_stats(Y, s)
    # log w_j = -log k + (s-1) r_j + (1/s - 1)(lse - log k); the log-min terms
    # cancel exactly, which is what makes the weights scale invariant.
    logw = -np.log(k) + (s - 1.0) * r + (1.0 / s - 1.0) * (lse - np.log(k))
    return np.exp(logw)


def power_mean(y, s) -> float:
    """M_s(y) for a single vector of squared distances."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError("power_mean expects a 1-D vector; see row_power_means")
    return float(row_power_means(y, s)[0])


def power_mean_weights(y, s) -> np.ndarray:
    """Gradient weights of M_s at a single vector ``y``."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError("power_mean_weights expects a 1-D vector; see row_power_mean_weights")
    return row_power_mean_weights(y, s)[0]
