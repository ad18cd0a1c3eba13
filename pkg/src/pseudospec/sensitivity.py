"""Condition numbers, Wilkinson perturbations, disks, and the coalescence
estimates of the (structured) distance from defectivity.

kappa(lambda) = 1/|y^H x| and kappa^S(lambda) = ||(y x^H)|_S||_F / |y^H x|.
The coalescence estimate is the smallest t at which two (structured)
Wilkinson disks of radius kappa * t become tangent:

    eps = min_{i<j} |lambda_i - lambda_j| / (kappa(lambda_i) + kappa(lambda_j)).

Structured condition numbers and Wilkinson directions are computed over the
complex structure subspace (the setting of their maximality statements); for
Hamiltonian patterns the eigen-triple is first rephased so Im(y^H J x) = 0,
which maximizes the projection norm over unimodular rescalings.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateSpectrum, VanishingOverlap
from .numkernel import Eigensystem, hamiltonian_phase_normalize
from .structures import (
    FULL,
    HAMILTONIAN,
    StructurePattern,
    normalized_projection,
    project,
)

OVERLAP_TOL = 1e-14
PAIR_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class WilkinsonPerturbation:
    """Unit-norm worst-case perturbation direction for one eigenvalue.

    ``base`` is y x^H (rank one, unit Frobenius norm); ``projected`` is its
    normalized structure projection (equal to ``base`` for the full pattern).
    """

    base: np.ndarray
    projected: np.ndarray
    eigen_index: int
    pattern: StructurePattern


@dataclass(frozen=True)
class SensitivityReport:
    kappas: np.ndarray
    kappas_structured: np.ndarray
    epsilon: float
    epsilon_structured: float
    pair: tuple
    pair_structured: tuple
    pattern: StructurePattern


def _complex_pattern(S: StructurePattern) -> StructurePattern:
    return replace(S, real=False) if S.real else S


def _triple(sys: Eigensystem, i: int, S: StructurePattern):
    """Eigen-triple (x, y, overlap), Hamiltonian-rephased when required."""
    if S.kind == HAMILTONIAN:
        sys = hamiltonian_phase_normalize(sys, S.n_half)
    x = sys.rights[:, i]
    y = sys.lefts[:, i]
    o = sys.overlaps[i]
    if abs(o) <= OVERLAP_TOL:
        raise VanishingOverlap(f"eigenvalue {i} is numerically defective")
    return x, y, o


def cond_standard(sys: Eigensystem, i: int) -> float:
    """kappa(lambda_i) = 1 / |y_i^H x_i|."""
    o = sys.overlaps[i]
    if abs(o) <= OVERLAP_TOL:
        raise VanishingOverlap(f"eigenvalue {i} is numerically defective")
    return 1.0 / abs(o)


def cond_structured(sys: Eigensystem, i: int, S: StructurePattern) -> float:
    """kappa^S(lambda_i) = ||(y_i x_i^H)|_S||_F / |y_i^H x_i|."""
    if S.kind == FULL:
        return cond_standard(sys, i)
    S = _complex_pattern(S)
    x, y, o = _triple(sys, i, S)
    W = np.outer(y, np.conj(x))
    return float(np.linalg.norm(project(W, S)) / abs(o))


def wilkinson(sys: Eigensystem, i: int, S: StructurePattern) -> WilkinsonPerturbation:
    """Wilkinson perturbation y x^H and its normalized structure projection."""
    S = _complex_pattern(S)
    x, y, _ = _triple(sys, i, S)
    base = np.outer(y, np.conj(x))
    if S.kind == FULL:
        projected = base / np.linalg.norm(base)
    else:
        projected = normalized_projection(base, S)
    return WilkinsonPerturbation(base=base, projected=projected, eigen_index=i, pattern=S)


def disk_radius(sys: Eigensystem, i: int, t: float, S: StructurePattern) -> float:
    """Radius kappa^(S)(lambda_i) * t of the (structured) Wilkinson disk."""
    if t < 0:
        raise ValueError("radius parameter t must be nonnegative")
    kappa = cond_standard(sys, i) if S.kind == FULL else cond_structured(sys, i, S)
    return kappa * t


def coalescence_estimate(sys: Eigensystem, S: StructurePattern):
    """Disk-tangency estimate of the (structured) distance from defectivity.

    Returns ``(epsilon, (i, j))`` minimizing
    |lambda_i - lambda_j| / (kappa(lambda_i) + kappa(lambda_j)) over pairs
    i < j, with kappa replaced by kappa^S for structured patterns.  Ties
    within ``PAIR_TIE_RTOL`` go to the lexicographically smallest pair.
    Eigenvalues with kappa^S = 0 are first-order immune to structured
    perturbations and are excluded from the minimization.
    """
    n = sys.dim
    if n < 2:
        raise DegenerateSpectrum("need at least two eigenvalues")

    if S.kind == FULL:
        kappas = np.array([cond_standard(sys, i) for i in range(n)])
    else:
        kappas = np.array([cond_structured(sys, i, S) for i in range(n)])

    active = np.flatnonzero(kappas > 0.0)
    if active.size < n:
        warnings.warn(
            "eigenvalues with zero structured condition number excluded "
            f"from pair minimization: {sorted(set(range(n)) - set(active))}",
            stacklevel=2,
        )
    if active.size < 2:
        raise DegenerateSpectrum("fewer than two eigenvalues with positive kappa")

    best = np.inf
    best_pair = None
    for a in range(active.size):
        for b in range(a + 1, active.size):
            i, j = int(active[a]), int(active[b])
            value = abs(sys.eigenvalues[i] - sys.eigenvalues[j]) / (kappas[i] + kappas[j])
            if value < best * (1.0 - PAIR_TIE_RTOL):
                best = value
                best_pair = (i, j)
    return float(best), best_pair


def analyze(sys: Eigensystem, S: StructurePattern) -> SensitivityReport:
    """Full per-eigenvalue sensitivity report for one structure pattern."""
    n = sys.dim
    kappas = np.array([cond_standard(sys, i) for i in range(n)])
    eps, pair = coalescence_estimate(sys, StructurePattern(FULL, S.dim))
    if S.kind == FULL:
        kappas_s = kappas.copy()
        eps_s, pair_s = eps, pair
    else:
        kappas_s = np.array([cond_structured(sys, i, S) for i in range(n)])
        eps_s, pair_s = coalescence_estimate(sys, S)
    return SensitivityReport(
        kappas=kappas,
        kappas_structured=kappas_s,
        epsilon=eps,
        epsilon_structured=eps_s,
        pair=pair,
        pair_structured=pair_s,
        pattern=S,
    )
