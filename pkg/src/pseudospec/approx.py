"""Sweep engines, random-perturbation baselines, first-order trajectories,
and pseudospectral abscissa/radius lower bounds.

The Wilkinson sweep perturbs A by e^{i theta_k} * eps * W for the two most
sensitive eigenvalues' (projected) Wilkinson directions W and a uniform angle
grid theta_k = 2 pi (k-1) / K, and collects the full spectra.  The random
baseline does the same with seeded unit-norm rank-one (or structured random)
perturbations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSpectrum, VanishingOverlap
from .numkernel import Eigensystem
from .sensitivity import coalescence_estimate, wilkinson
from .structures import (
    FULL,
    StructurePattern,
    normalized_projection,
    random_member,
    random_rank_one,
)

WILKINSON_SWEEP = "wilkinson_sweep"
RANDOM_BASELINE = "random_baseline"
TRAJECTORY = "trajectory"

DEFAULT_ANGLES = 1000
COALESCENCE_FACTOR = 0.1


@dataclass(frozen=True)
class SweepConfig:
    """Configuration shared by the sweep and baseline engines.

    ``epsilon`` of None means "use the coalescence estimate for the pattern";
    ``pair_override`` bypasses the most-sensitive-pair selection.
    """

    pattern: StructurePattern
    epsilon: float | None = None
    angles: int = DEFAULT_ANGLES
    pair_override: tuple | None = None

    def __post_init__(self):
        if self.angles < 1:
            raise ValueError("angle count must be at least 1")
        if self.epsilon is not None and self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class PointCloud:
    """Tagged complex points: eigenvalues of perturbed matrices.

    Provenance arrays run parallel to ``points``: the source eigenvalue index
    (or -1 where not applicable), the angle index k, and the sample index.
    """

    points: np.ndarray
    source_eigen: np.ndarray
    angle_index: np.ndarray
    sample_index: np.ndarray
    epsilon: float
    pattern: StructurePattern
    kind: str
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.points.shape[0]


def resolve_pair_and_epsilon(sys: Eigensystem, cfg: SweepConfig):
    """Most sensitive pair and default epsilon for a sweep configuration."""
    eps_est, pair_est = coalescence_estimate(sys, cfg.pattern)
    pair = cfg.pair_override if cfg.pair_override is not None else pair_est
    eps = cfg.epsilon if cfg.epsilon is not None else eps_est
    if len(pair) != 2 or pair[0] == pair[1]:
        raise DegenerateSpectrum(f"invalid eigenvalue pair {pair}")
    return tuple(int(i) for i in pair), float(eps)


def _sorted_spectrum(B: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvals(B)
    return w[np.lexsort((w.imag, w.real))]


def sweep_wilkinson(A: np.ndarray, sys: Eigensystem, cfg: SweepConfig) -> PointCloud:
    """Angle sweep of (projected) Wilkinson perturbations.

    For each selected eigenvalue and each angle theta_k the full spectrum of
    A + e^{i theta_k} * eps * W is recorded, giving 2 * K * n points.
    """
    A = np.asarray(A, dtype=complex)
    pair, eps = resolve_pair_and_epsilon(sys, cfg)
    n = sys.dim
    K = cfg.angles
    thetas = 2.0 * np.pi * np.arange(K) / K

    points, src, ang, smp = [], [], [], []
    for i in pair:
        W = wilkinson(sys, i, cfg.pattern).projected
        for k, theta in enumerate(thetas):
            w = _sorted_spectrum(A + eps * np.exp(1j * theta) * W)
            points.append(w)
            src.append(np.full(n, i))
            ang.append(np.full(n, k))
            smp.append(np.zeros(n, dtype=int))

    return PointCloud(
        points=np.concatenate(points),
        source_eigen=np.concatenate(src),
        angle_index=np.concatenate(ang),
        sample_index=np.concatenate(smp),
        epsilon=eps,
        pattern=cfg.pattern,
        kind=WILKINSON_SWEEP,
        meta={"pair": pair, "angles": K},
    )


def random_cloud(
    A: np.ndarray, cfg: SweepConfig, samples: int, seed: int
) -> PointCloud:
    """Baseline cloud from seeded random unit-norm perturbations.

    Rank-one random matrices for the full pattern, projected random members
    for structured patterns; n * K * samples points.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    A = np.asarray(A, dtype=complex)
    if cfg.epsilon is None:
        raise ValueError("random_cloud requires an explicit epsilon")
    eps = cfg.epsilon
    n = A.shape[0]
    K = cfg.angles
    thetas = 2.0 * np.pi * np.arange(K) / K
    rng = np.random.default_rng(seed)

    points, src, ang, smp = [], [], [], []
    for s in range(samples):
        if cfg.pattern.kind == FULL:
            E = random_rank_one(n, rng)
        else:
            E = random_member(cfg.pattern, rng)
        for k, theta in enumerate(thetas):
            w = _sorted_spectrum(A + eps * np.exp(1j * theta) * E)
            points.append(w)
            src.append(np.full(n, -1))
            ang.append(np.full(n, k))
            smp.append(np.full(n, s))

    return PointCloud(
        points=np.concatenate(points),
        source_eigen=np.concatenate(src),
        angle_index=np.concatenate(ang),
        sample_index=np.concatenate(smp),
        epsilon=eps,
        pattern=cfg.pattern,
        kind=RANDOM_BASELINE,
        seed=seed,
        meta={"samples": samples, "angles": K},
    )


def first_order_trajectories(
    sys: Eigensystem,
    E: np.ndarray,
    eps_grid,
    S: StructurePattern,
) -> PointCloud:
    """Straight-line first-order pseudo-eigenvalue trajectories.

    For every eigenvalue, lambda_i(eps) ~ lambda_i + eps * (y^H E x)/(y^H x)
    along the given eps grid; for structured patterns the projected direction
    E|_S^ is traced as well.  angle_index tags the variant: 0 for E itself,
    1 for the projection.
    """
    eps_grid = np.asarray(eps_grid, dtype=float)
    E = np.asarray(E, dtype=complex)
    variants = [(0, E)]
    if S.kind != FULL:
        variants.append((1, normalized_projection(E, S)))

    points, src, ang, smp = [], [], [], []
    for tag, direction in variants:
        for i in range(sys.dim):
            o = sys.overlaps[i]
            if abs(o) <= 1e-14:
                raise VanishingOverlap(f"eigenvalue {i} is numerically defective")
            slope = np.vdot(sys.lefts[:, i], direction @ sys.rights[:, i]) / o
            traj = sys.eigenvalues[i] + eps_grid * slope
            points.append(traj)
            src.append(np.full(eps_grid.size, i))
            ang.append(np.full(eps_grid.size, tag))
            smp.append(np.arange(eps_grid.size))

    return PointCloud(
        points=np.concatenate(points),
        source_eigen=np.concatenate(src),
        angle_index=np.concatenate(ang),
        sample_index=np.concatenate(smp),
        epsilon=float(eps_grid.max(initial=0.0)),
        pattern=S,
        kind=TRAJECTORY,
        meta={"steps": int(eps_grid.size)},
    )


def _all_ones_direction(n: int, S: StructurePattern) -> np.ndarray:
    ones = np.ones((n, n), dtype=complex)
    if S.kind == FULL:
        return ones / n
    return normalized_projection(ones, S)


def abscissa_lower_bound(
    A: np.ndarray, sys: Eigensystem, epsilon: float, S: StructurePattern
) -> float:
    """max Re of the spectrum of A + eps * E for the unit-norm all-ones
    direction (projected onto S when structured); a lower bound for the
    (structured) eps-pseudospectral abscissa."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    A = np.asarray(A, dtype=complex)
    E = _all_ones_direction(A.shape[0], S)
    return float(np.max(np.linalg.eigvals(A + epsilon * E).real))


def radius_lower_bound(
    A: np.ndarray, sys: Eigensystem, epsilon: float, S: StructurePattern
) -> float:
    """As :func:`abscissa_lower_bound` with max |lambda| in place of max Re."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    A = np.asarray(A, dtype=complex)
    E = _all_ones_direction(A.shape[0], S)
    return float(np.max(np.abs(np.linalg.eigvals(A + epsilon * E))))


def subcloud(cloud: PointCloud, sys: Eigensystem, i: int) -> np.ndarray:
    """Points of a sweep cloud matched to the component of eigenvalue i.

    Each swept spectrum (one block of n points) is matched one-to-one to the
    unperturbed eigenvalues by minimal total distance; the sub-cloud collects,
    over every block of the cloud, the point assigned to lambda_i.
    """
    from scipy.optimize import linear_sum_assignment

    n = sys.dim
    if len(cloud) % n != 0:
        raise DegenerateSpectrum("cloud size is not a multiple of the dimension")
    z = cloud.points
    out = []
    for start in range(0, len(cloud), n):
        block = z[start : start + n]
        cost = np.abs(block[:, None] - sys.eigenvalues[None, :])
        rows, cols = linear_sum_assignment(cost)
        out.append(block[rows[cols == i][0]])
    return np.asarray(out)


def coalescence_gap(cloud: PointCloud, sys: Eigensystem, pair: tuple) -> float:
    """Minimum distance between the two per-eigenvalue sub-clouds.

    Values below ``COALESCENCE_FACTOR * epsilon`` indicate that the two
    pseudospectrum components have (nearly) coalesced.
    """
    a = subcloud(cloud, sys, pair[0])
    b = subcloud(cloud, sys, pair[1])
    if a.size == 0 or b.size == 0:
        raise DegenerateSpectrum("empty sub-cloud; pair does not match sweep")
    return float(np.min(np.abs(a[:, None] - b[None, :])))


def coverage_comparison(
    sweep: PointCloud,
    baseline: PointCloud,
    sys: Eigensystem,
    pair: tuple,
    radius_factor: float = 0.3,
):
    """Directed coverage distances near the first-order tangency point.

    Both clouds are restricted to a disk of radius
    ``radius_factor * |lambda_i - lambda_j|`` around the point where the two
    Wilkinson disks touch; returns ``(sweep_to_baseline, baseline_to_sweep)``.
    A baseline that under-covers the coalescence region shows
    ``sweep_to_baseline > baseline_to_sweep``.
    """
    from .sensitivity import cond_standard

    li = sys.eigenvalues[pair[0]]
    lj = sys.eigenvalues[pair[1]]
    ki = cond_standard(sys, pair[0])
    kj = cond_standard(sys, pair[1])
    pinch = li + (lj - li) * (ki / (ki + kj))
    radius = radius_factor * abs(li - lj)
    near_sweep = sweep.points[np.abs(sweep.points - pinch) < radius]
    near_base = baseline.points[np.abs(baseline.points - pinch) < radius]
    if near_sweep.size == 0 or near_base.size == 0:
        raise DegenerateSpectrum("no cloud points near the tangency point")
    return (
        directed_coverage_distance(near_sweep, near_base),
        directed_coverage_distance(near_base, near_sweep),
    )


def directed_coverage_distance(xs: np.ndarray, ys: np.ndarray) -> float:
    """max over points of xs of the distance to the nearest point of ys."""
    xs = np.asarray(xs).ravel()
    ys = np.asarray(ys).ravel()
    best = 0.0
    chunk = max(1, 2_000_000 // max(ys.size, 1))
    for start in range(0, xs.size, chunk):
        d = np.abs(xs[start : start + chunk, None] - ys[None, :]).min(axis=1)
        best = max(best, float(d.max()))
    return best
