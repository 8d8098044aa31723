"""Partition-agreement metrics: contingency tables, NMI and ARI."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

NMI_VARIANTS = ("sqrt", "max", "arithmetic")


@dataclass
class ContingencyTable:
    """Joint counts of two labelings over their distinct values."""

    counts: np.ndarray
    row_totals: np.ndarray
    col_totals: np.ndarray
    n: int
    a_values: np.ndarray
    b_values: np.ndarray


def _encode(labels) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise ValueError("labels must be a 1-D sequence")
    values, codes = np.unique(arr, return_inverse=True)
    return values, codes


def contingency(a, b) -> ContingencyTable:
    """counts[u, v] = number of i with a_i = u-th value of a, b_i = v-th of b."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"labelings must be equal-length 1-D sequences, got {a.shape} vs {b.shape}")
    if a.shape[0] == 0:
        raise ValueError("labelings must be nonempty")
    a_values, ai = _encode(a)
    b_values, bi = _encode(b)
    r, c = a_values.size, b_values.size
    counts = np.bincount(ai * c + bi, minlength=r * c).reshape(r, c)
    return ContingencyTable(
        counts=counts,
        row_totals=counts.sum(axis=1),
        col_totals=counts.sum(axis=0),
        n=int(counts.sum()),
        a_values=a_values,
        b_values=b_values,
    )


def nmi(a, b, variant: str = "sqrt") -> float:
    """Normalized mutual information, natural logs, 0 log 0 = 0.

    ``variant`` selects the normalizer: geometric mean of the entropies
    (default), their max, or their arithmetic mean. Two single-cluster
    partitions are degenerate and score 0 (with a warning), as does any pair
    with a zero normalizer.
    """
    if variant not in NMI_VARIANTS:
        raise ValueError(f"unknown NMI variant {variant!r}; expected one of {NMI_VARIANTS}")
    table = contingency(a, b)
    n = table.n
    if table.counts.shape == (1, 1):
        warnings.warn("both partitions are single-cluster; NMI is degenerate, returning 0")
        return 0.0
    pa = table.row_totals / n
    pb = table.col_totals / n
    pj = table.counts / n
    nz = pj > 0
    mi = float((pj[nz] * (np.log(pj[nz]) - np.log(np.outer(pa, pb)[nz]))).sum())
    ha = float(-(pa[pa > 0] * np.log(pa[pa > 0])).sum())
    hb = float(-(pb[pb > 0] * np.log(pb[pb > 0])).sum())
    if variant == "sqrt":
        denom = np.sqrt(ha * hb)
    elif variant == "max":
        denom = max(ha, hb)
    else:
        denom = 0.5 * (ha + hb)
    if denom == 0.0:
        return 0.0
    return float(np.clip(mi / denom, 0.0, 1.0))


def ari(a, b) -> float:
    """Adjusted Rand index via pair counts on the contingency table.

    (Index - Expected) / (Max - Expected) with Index = sum C(n_uv, 2),
    Expected = sum C(a_u, 2) * sum C(b_v, 2) / C(n, 2) and
    Max = (sum C(a_u, 2) + sum C(b_v, 2)) / 2. Degenerate tables with
    Max = Expected score 0 by convention.
    """
    table = contingency(a, b)
    n = table.n
    if n < 2:
        raise ValueError("ARI requires at least two points")

    def comb2(x):
        x = x.astype(np.int64)
        return (x * (x - 1)) // 2

    index = int(comb2(table.counts).sum())
    sum_a = int(comb2(table.row_totals).sum())
    sum_b = int(comb2(table.col_totals).sum())
    total_pairs = n * (n - 1) // 2
    expected = sum_a * sum_b / total_pairs
    maximum = 0.5 * (sum_a + sum_b)
    if maximum == expected:
        return 0.0
    return float((index - expected) / (maximum - expected))
