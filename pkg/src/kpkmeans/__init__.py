"""kpkmeans: annealed kernel clustering via power means.

Kernel power k-means drives the order s of a power mean of squared
feature-space distances toward -inf while performing closed-form
majorization-minimization updates on implicit (kernel-trick) centroids, so
the smoothed objectives anneal into the kernel k-means objective with far
fewer poor local minima along the way. A multi-kernel variant learns simplex
weights over a bank of Gram matrices with an entropy penalty.
"""

from .baselines import kernel_kmeans, power_kmeans
from .cluster import (
    AnnealSchedule,
    ClusterResult,
    EmptyClusterError,
    centroid_distances,
    init_weights,
    objective_value,
    run_kpk,
    update_weights,
)
from .datagen import Dataset, RingsConfig, VmfConfig, gen_rings, gen_vmf_sphere, sample_vmf
from .kernels import (
    GramMatrix,
    KernelSpec,
    bandwidth_heuristic,
    combine_grams,
    cosine_normalize,
    default_kernel_bank,
    gram_matrix,
    normalize_gram,
)
from .metrics import ContingencyTable, ari, contingency, nmi
from .multi_kernel import (
    MultiKernelResult,
    combined_distances,
    penalized_objective,
    per_kernel_distances,
    run_mkpk,
    update_alpha,
    update_weights_multi,
)
from .power_mean import (
    DISTANCE_FLOOR,
    EXPONENT_CAP,
    power_mean,
    power_mean_weights,
    row_power_mean_weights,
    row_power_means,
)

__version__ = "0.1.0"

__all__ = [
    "AnnealSchedule",
    "ClusterResult",
    "ContingencyTable",
    "Dataset",
    "DISTANCE_FLOOR",
    "EmptyClusterError",
    "EXPONENT_CAP",
    "GramMatrix",
    "KernelSpec",
    "MultiKernelResult",
    "RingsConfig",
    "VmfConfig",
    "ari",
    "bandwidth_heuristic",
    "centroid_distances",
    "combine_grams",
    "combined_distances",
    "contingency",
    "cosine_normalize",
    "default_kernel_bank",
    "gen_rings",
    "gen_vmf_sphere",
    "gram_matrix",
    "init_weights",
    "kernel_kmeans",
    "nmi",
    "normalize_gram",
    "objective_value",
    "penalized_objective",
    "per_kernel_distances",
    "power_kmeans",
    "power_mean",
    "power_mean_weights",
    "row_power_mean_weights",
    "row_power_means",
    "run_kpk",
    "run_mkpk",
    "sample_vmf",
    "update_alpha",
    "update_weights",
    "update_weights_multi",
]
