"""Radon partitions of Gaussian point clouds and their polytopes.

Three layers:

  * exact/numeric conic intrinsic volumes v_k(m, n) of partition cones and
    the induced probabilities that a fixed partition of N Gaussian points in
    R^d is a Radon partition (`volumes`, backed by the g-function evaluator
    in `gfun`);
  * Radon polytopes of explicit configurations: minimal partitions, face
    lattice, tolerance and Reay detection (`geometry`);
  * seeded Monte Carlo cross-validation of the analytic values
    (`montecarlo`).
"""

from .gfun import GEvaluator, cn_intrinsic, g_derivative, g_eval
from .geometry import (
    FaceLattice,
    PointConfig,
    ReayTriple,
    circle_points,
    export_lattice,
    face_lattice,
    find_reay,
    has_reay_partition,
    is_radon,
    is_tolerant,
    line_points,
    load_points_csv,
    minimal_partitions,
    moment_curve_points,
    pentagon_center_points,
    sample_subspace,
    subspace_from_points,
    tolerant_partitions,
)
from .montecarlo import (
    Estimate,
    GaussianStream,
    compare_samplers,
    estimate_partition_probability,
    estimate_reay_probability,
    estimate_tolerance_probability,
    sample_gaussian_points,
)
from .partitions import (
    Partition,
    SignedVector,
    WeightTable,
    brute_force_weight,
    cone_contains,
    face_contains,
    intersect,
    make_partition,
    subcollection_weight,
)
from .volumes import (
    VkRequest,
    balanced_probe,
    check_gauss_bonnet,
    check_symmetry,
    radon_probability,
    v0_exact,
    vk,
    vk_value,
)

__version__ = "0.1.0"
