"""Kernel evaluation, Gram matrices, normalization and bandwidth selection."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

KERNEL_KINDS = ("linear", "gaussian", "gaussian_arc", "polynomial", "cosine")

# Bandwidth multipliers / polynomial parameters of the stock multi-kernel
# bank: 7 Gaussians centered on the pairwise-distance heuristic, 4 low-order
# polynomials, and one cosine kernel.
BANK_GAUSSIAN_FACTORS = (0.01, 0.05, 0.1, 1.0, 10.0, 50.0, 100.0)
BANK_POLYNOMIAL_PARAMS = ((2, 0.0), (4, 0.0), (2, 1.0), (4, 1.0))


@dataclass(frozen=True)
class KernelSpec:
    """A kernel function identified by kind plus its parameters.

    kinds:
        linear        K(x, y) = x.y
        gaussian      K(x, y) = exp(-|x - y|^2 / (2 sigma^2))
        gaussian_arc  K(x, y) = exp(-arccos(x.y) / (2 sigma^2)), unit-norm inputs
        polynomial    K(x, y) = (x.y + coef) ** degree
        cosine        K(x, y) = x.y / (|x| |y|)
    """

    kind: str
    sigma: float | None = None
    degree: int | None = None
    coef: float | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")
        if self.kind in ("gaussian", "gaussian_arc"):
            if self.sigma is None or not np.isfinite(self.sigma) or self.sigma <= 0:
                raise ValueError(f"{self.kind} kernel requires sigma > 0")
            if self.degree is not None or self.coef is not None:
                raise ValueError(f"{self.kind} kernel takes only sigma")
        elif self.kind == "polynomial":
            if self.degree is None or int(self.degree) < 1 or self.degree != int(self.degree):
                raise ValueError("polynomial kernel requires a positive integer degree")
            object.__setattr__(self, "degree", int(self.degree))
            coef = 0.0 if self.coef is None else float(self.coef)
            if not np.isfinite(coef) or coef < 0:
                raise ValueError("polynomial kernel requires coef >= 0")
            object.__setattr__(self, "coef", coef)
            if self.sigma is not None:
                raise ValueError("polynomial kernel takes degree and coef, not sigma")
        else:  # linear, cosine
            if self.sigma is not None or self.degree is not None or self.coef is not None:
                raise ValueError(f"{self.kind} kernel takes no parameters")

    @classmethod
    def linear(cls) -> "KernelSpec":
        return cls("linear")

    @classmethod
    def gaussian(cls, sigma: float) -> "KernelSpec":
        return cls("gaussian", sigma=float(sigma))

    @classmethod
    def gaussian_arc(cls, sigma: float) -> "KernelSpec":
        return cls("gaussian_arc", sigma=float(sigma))

    @classmethod
    def polynomial(cls, degree: int, coef: float = 0.0) -> "KernelSpec":
        return cls("polynomial", degree=degree, coef=coef)

    @classmethod
    def cosine(cls) -> "KernelSpec":
        return cls("cosine")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.sigma is not None:
            d["sigma"] = self.sigma
        if self.degree is not None:
            d["degree"] = self.degree
        if self.coef is not None:
            d["coef"] = self.coef
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "KernelSpec":
        unknown = set(d) - {"kind", "sigma", "degree", "coef"}
        if unknown:
            raise ValueError(f"unknown kernel spec keys: {sorted(unknown)}")
        if "kind" not in d:
            raise ValueError("kernel spec requires a 'kind'")
        return cls(d["kind"], sigma=d.get("sigma"), degree=d.get("degree"), coef=d.get("coef"))


@dataclass
class GramMatrix:
    """An n-by-n kernel matrix plus the spec that produced it.

    Treated as immutable once built; runs share it read-only.
    """

    K: np.ndarray
    spec: KernelSpec | None = None
    normalized: bool = False

    @property
    def n(self) -> int:
        return self.K.shape[0]


def gram_array(gram) -> np.ndarray:
    """Accept a GramMatrix or a bare square ndarray; return the ndarray."""
    K = gram.K if isinstance(gram, GramMatrix) else np.asarray(gram, dtype=np.float64)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"Gram matrix must be square, got shape {K.shape}")
    return K


def _feature_matrix(data) -> np.ndarray:
    """Accept a Dataset-like object (with .X) or a bare (n, p) array."""
    X = getattr(data, "X", data)
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1:
        raise ValueError("data must be a nonempty (n, p) matrix")
    if not np.all(np.isfinite(X)):
        raise ValueError("data contains non-finite entries")
    return X


def _pairwise_sq_dists(X: np.ndarray) -> np.ndarray:
    sq = np.einsum("ij,ij->i", X, X)
    D2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    np.fill_diagonal(D2, 0.0)
    return np.maximum(D2, 0.0)


def gram_matrix(spec: KernelSpec, data) -> GramMatrix:
    """Evaluate the kernel on all pairs of rows of ``data``.

    The result is computed once and meant to be cached by callers; every
    downstream distance computation is a lookup into it.
    """
    X = _feature_matrix(data)
    if spec.kind == "linear":
        K = X @ X.T
    elif spec.kind == "gaussian":
        K = np.exp(-_pairwise_sq_dists(X) / (2.0 * spec.sigma**2))
        np.fill_diagonal(K, 1.0)
    elif spec.kind == "gaussian_arc":
        norms = np.linalg.norm(X, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-8):
            raise ValueError("gaussian_arc kernel requires unit-norm rows (within 1e-8)")
        G = np.clip(X @ X.T, -1.0, 1.0)
        ang = np.arccos(G)
        np.fill_diagonal(ang, 0.0)
        K = np.exp(-ang / (2.0 * spec.sigma**2))
    elif spec.kind == "polynomial":
        K = (X @ X.T + spec.coef) ** spec.degree
    elif spec.kind == "cosine":
        norms = np.linalg.norm(X, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("cosine kernel is undefined for zero rows")
        K = (X @ X.T) / np.outer(norms, norms)
    else:  # pragma: no cover - guarded by KernelSpec
        raise ValueError(f"unknown kernel kind {spec.kind!r}")
    # X @ X.T is not guaranteed bitwise symmetric; enforce it.
    K = 0.5 * (K + K.T)
    return GramMatrix(K=K, spec=spec, normalized=False)


def cosine_normalize(K) -> np.ndarray:
    """K(i,j) / sqrt(K(i,i) K(j,j)); the resulting diagonal is 1."""
    K = gram_array(K)
    d = np.diag(K)
    if np.any(d <= 0):
        raise ValueError("cosine normalization requires a strictly positive diagonal")
    inv = 1.0 / np.sqrt(d)
    return K * inv[:, None] * inv[None, :]


def normalize_gram(gram) -> GramMatrix:
    """Cosine-normalize, then affinely rescale all entries onto [0, 1].

    The affine stage shifts and scales every entry identically, so induced
    squared feature distances K(i,i)+K(j,j)-2K(i,j) keep their sign pattern
    (they are multiplied by the positive scale factor). If the cosine stage
    yields a constant matrix the rescale is skipped with a warning.
    """
    K = cosine_normalize(gram)
    lo, hi = K.min(), K.max()
    if hi > lo:
        K = (K - lo) / (hi - lo)
    else:
        warnings.warn("constant Gram matrix after cosine normalization; [0,1] rescale skipped")
    spec = gram.spec if isinstance(gram, GramMatrix) else None
    return GramMatrix(K=K, spec=spec, normalized=True)


def combine_grams(grams, alpha) -> GramMatrix:
    """Entrywise convex combination sum_l alpha_l K_l of Gram matrices."""
    Ks = [gram_array(g) for g in grams]
    if len(Ks) == 0:
        raise ValueError("need at least one Gram matrix")
    n = Ks[0].shape[0]
    if any(K.shape != (n, n) for K in Ks):
        raise ValueError("all Gram matrices must share the same shape")
    alpha = check_simplex(alpha, len(Ks))
    K = np.zeros((n, n))
    for a, Kl in zip(alpha, Ks):
        K += a * Kl
    normalized = all(isinstance(g, GramMatrix) and g.normalized for g in grams)
    return GramMatrix(K=K, spec=None, normalized=normalized)


def check_simplex(alpha, length: int | None = None) -> np.ndarray:
    """Validate nonnegative weights summing to 1 (within 1e-12)."""
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.ndim != 1:
        raise ValueError("kernel weights must be a 1-D vector")
    if length is not None and alpha.shape[0] != length:
        raise ValueError(f"expected {length} kernel weights, got {alpha.shape[0]}")
    if not np.all(np.isfinite(alpha)) or np.any(alpha < 0):
        raise ValueError("kernel weights must be finite and nonnegative")
    if abs(alpha.sum() - 1.0) > 1e-12:
        raise ValueError(f"kernel weights must sum to 1, got {alpha.sum()!r}")
    return alpha


def bandwidth_heuristic(data) -> float:
    """Root mean squared pairwise distance, sqrt(sum_{i != j} |x_i-x_j|^2 / (n(n-1)))."""
    X = _feature_matrix(data)
    n = X.shape[0]
    if n < 2:
        raise ValueError("bandwidth heuristic needs at least two points")
    mean_sq = _pairwise_sq_dists(X).sum() / (n * (n - 1))
    if mean_sq <= 0:
        raise ValueError("all points identical; bandwidth heuristic is zero")
    return float(np.sqrt(mean_sq))


def default_kernel_bank(data) -> list[KernelSpec]:
    """The stock 12-kernel bank for multi-kernel runs.

    7 Gaussians at multiples of the bandwidth heuristic, 4 polynomial kernels
    and one cosine kernel. Override via config when a different bank is
    needed.
    """
    sigma = bandwidth_heuristic(data)
    bank = [KernelSpec.gaussian(t * sigma) for t in BANK_GAUSSIAN_FACTORS]
    bank += [KernelSpec.polynomial(d, c) for d, c in BANK_POLYNOMIAL_PARAMS]
    bank.append(KernelSpec.cosine())
    return bank
