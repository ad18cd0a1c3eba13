"""Approximated standard and structured pseudospectra of small dense
matrices via Wilkinson rank-one perturbations and their structure
projections, with an SVD-grid oracle and random-perturbation baselines."""

from .approx import (
    PointCloud,
    SweepConfig,
    abscissa_lower_bound,
    coalescence_gap,
    coverage_comparison,
    directed_coverage_distance,
    first_order_trajectories,
    radius_lower_bound,
    random_cloud,
    subcloud,
    sweep_wilkinson,
)
from .numkernel import (
    Eigensystem,
    eig_pairs,
    hamiltonian_phase_normalize,
    sigma_min,
    symplectic_j,
    tridiag_toeplitz,
    tridiag_toeplitz_reference,
)
from .oracle import (
    GridField,
    abscissa_grid,
    cloud_inclusion_check,
    contains,
    grid_field,
)
from .sensitivity import (
    SensitivityReport,
    WilkinsonPerturbation,
    analyze,
    coalescence_estimate,
    cond_standard,
    cond_structured,
    disk_radius,
    wilkinson,
)
from .structures import (
    StructurePattern,
    full,
    hamiltonian,
    hankel,
    is_member,
    normalized_projection,
    project,
    random_member,
    random_rank_one,
    toeplitz,
    toeplitz_support_of,
)

__version__ = "0.1.0"
