"""Synthetic datasets: concentric noisy rings and von Mises-Fisher clusters.

Both generators are deterministic given their seed: the same config always
produces bitwise-identical data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Dataset:
    """A row-major feature matrix with optional integer ground-truth labels."""

    X: np.ndarray
    labels: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class RingsConfig:
    """Concentric rings in the plane; ring j has radius (j+1) * radius_step."""

    k: int = 10
    n_per: int = 100
    radius_step: float = 1.0
    noise_sd: float = 0.1
    rng_seed: int = 0

    def __post_init__(self):
        if self.k < 1 or self.n_per < 1:
            raise ValueError("k and n_per must be at least 1")
        if self.radius_step <= 0:
            raise ValueError("radius_step must be positive")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be nonnegative")


@dataclass(frozen=True)
class VmfConfig:
    """k von Mises-Fisher clusters on the unit sphere in R^dim."""

    k: int = 10
    n: int = 500
    dim: int = 20
    kappa: float = 30.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("k and n must be at least 1")
        if self.dim < 2:
            raise ValueError("dim must be at least 2")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")


def gen_rings(cfg: RingsConfig) -> Dataset:
    """Points at uniform angles with radius ~ Normal(ring radius, noise_sd)."""
    rng = np.random.default_rng(cfg.rng_seed)
    points = []
    labels = []
    for j in range(cfg.k):
        theta = rng.uniform(0.0, 2.0 * np.pi, size=cfg.n_per)
        radius = rng.normal((j + 1) * cfg.radius_step, cfg.noise_sd, size=cfg.n_per)
        points.append(np.column_stack([radius * np.cos(theta), radius * np.sin(theta)]))
        labels.append(np.full(cfg.n_per, j, dtype=np.int64))
    return Dataset(X=np.concatenate(points), labels=np.concatenate(labels))


def sample_vmf(mu, kappa: float, rng: np.random.Generator) -> np.ndarray:
    """One von Mises-Fisher draw with mean direction mu and concentration kappa.

    Uses the tangent-normal decomposition with Wood's rejection sampler for
    the cosine against mu (Wood, 1994): the envelope parameter is

        b = (d - 1) / (2 kappa + sqrt(4 kappa^2 + (d - 1)^2))

    which equals (-2 kappa + sqrt(4 kappa^2 + (d-1)^2)) / (d - 1) but avoids
    the cancellation of the difference form at large kappa.
    """
    mu = np.asarray(mu, dtype=np.float64)
    if mu.ndim != 1 or mu.size < 2:
        raise ValueError("mu must be a vector of dimension >= 2")
    if abs(np.linalg.norm(mu) - 1.0) > 1e-10:
        raise ValueError("mu must be unit-norm (within 1e-10)")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    d = mu.size
    m = d - 1
    b = m / (2.0 * kappa + np.sqrt(4.0 * kappa**2 + m**2))
    x0 = (1.0 - b) / (1.0 + b)
    c = kappa * x0 + m * np.log(1.0 - x0**2)
    while True:
        z = rng.beta(m / 2.0, m / 2.0)
        w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z)
        u = rng.uniform()
        if kappa * w + m * np.log(1.0 - x0 * w) - c >= np.log(u):
            break
    # uniform direction in the tangent space at mu
    while True:
        v = rng.standard_normal(d)
        v -= mu * (mu @ v)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            v /= norm
            break
    x = v * np.sqrt(max(1.0 - w * w, 0.0)) + w * mu
    return x / np.linalg.norm(x)


def gen_vmf_sphere(cfg: VmfConfig) -> Dataset:
    """Cluster centers uniform on the sphere, labels uniform, points ~ vMF."""
    rng = np.random.default_rng(cfg.rng_seed)
    mus = rng.standard_normal((cfg.k, cfg.dim))
    mus /= np.linalg.norm(mus, axis=1, keepdims=True)
    labels = rng.integers(0, cfg.k, size=cfg.n)
    X = np.empty((cfg.n, cfg.dim))
    for i in range(cfg.n):
        X[i] = sample_vmf(mus[labels[i]], cfg.kappa, rng)
    return Dataset(X=X, labels=labels.astype(np.int64))
