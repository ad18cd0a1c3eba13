"""Structure patterns, membership tests, nearest-matrix projections, and
random structured/unstructured perturbation generators.

Supported patterns: full (no constraint), Toeplitz with a diagonal support
set, Hankel with an antidiagonal support set, and Hamiltonian (2n x 2n
matrices Q with QJ Hermitian).  Toeplitz/Hankel are complex-linear subspaces;
Hamiltonian is only real-linear, which is why its projection involves a
conjugate transpose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ZeroProjection
from .numkernel import symplectic_j

MEMBERSHIP_RTOL = 1e-12
NORM_RTOL = 1e-14

FULL = "full"
TOEPLITZ = "toeplitz"
HANKEL = "hankel"
HAMILTONIAN = "hamiltonian"


@dataclass(frozen=True)
class StructurePattern:
    """The perturbation set S.

    ``support`` holds diagonal offsets (Toeplitz) or antidiagonal offsets
    (Hankel) in [-(dim-1), dim-1]; ``n_half`` is the Hamiltonian
    half-dimension; ``real`` restricts random members to real matrices
    (real Hamiltonian / real Toeplitz perturbations of a real matrix).
    """

    kind: str
    dim: int
    support: frozenset | None = None
    n_half: int | None = None
    real: bool = False

    def __post_init__(self):
        if self.kind not in (FULL, TOEPLITZ, HANKEL, HAMILTONIAN):
            raise DimensionMismatch(f"unknown structure kind {self.kind!r}")
        if self.dim < 2:
            raise DimensionMismatch("pattern dimension must be at least 2")
        if self.kind in (TOEPLITZ, HANKEL):
            if not self.support:
                raise DimensionMismatch(f"{self.kind} pattern needs a support set")
            if any(abs(k) > self.dim - 1 for k in self.support):
                raise DimensionMismatch("support offsets out of range")
        if self.kind == HAMILTONIAN:
            if self.n_half is None or self.dim != 2 * self.n_half:
                raise DimensionMismatch("Hamiltonian pattern needs dim = 2 * n_half")


def full(dim: int) -> StructurePattern:
    return StructurePattern(FULL, dim)


def toeplitz(dim: int, support, real: bool = False) -> StructurePattern:
    return StructurePattern(TOEPLITZ, dim, support=frozenset(int(k) for k in support), real=real)


def hankel(dim: int, support, real: bool = False) -> StructurePattern:
    return StructurePattern(HANKEL, dim, support=frozenset(int(k) for k in support), real=real)


def hamiltonian(n_half: int, real: bool = False) -> StructurePattern:
    return StructurePattern(HAMILTONIAN, 2 * n_half, n_half=n_half, real=real)


def toeplitz_support_of(A: np.ndarray, rtol: float = MEMBERSHIP_RTOL) -> frozenset:
    """Offsets of the diagonals of A holding any non-negligible entry."""
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    thresh = rtol * max(np.linalg.norm(A), 1e-300)
    return frozenset(
        k
        for k in range(-(n - 1), n)
        if np.abs(np.diagonal(A, k)).max() > thresh
    )


def _check_dim(M: np.ndarray, S: StructurePattern) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] != S.dim:
        raise DimensionMismatch(
            f"matrix shape {M.shape} incompatible with pattern dim {S.dim}"
        )
    return M


def _project_banded(M: np.ndarray, support, antidiagonal: bool) -> np.ndarray:
    # Antidiagonals of M are diagonals of fliplr(M); offset k maps so that
    # k = n - 1 - (i + j), i.e. the main antidiagonal has offset 0.
    work = M[:, ::-1] if antidiagonal else M
    out = np.zeros_like(work)
    for k in support:
        d = np.diagonal(work, k)
        rows = np.arange(d.shape[0]) + (0 if k >= 0 else -k)
        cols = rows + k
        out[rows, cols] = d.mean()
    return out[:, ::-1] if antidiagonal else out


def project(M: np.ndarray, S: StructurePattern) -> np.ndarray:
    """Frobenius-nearest member of S.

    Toeplitz/Hankel: each supported (anti)diagonal is replaced by its
    arithmetic mean, everything else is zeroed.  Hamiltonian:
    (M + J M^H J) / 2, restricted to the real part first when the pattern is
    real.  Full: M itself.
    """
    M = _check_dim(M, S)
    if S.kind == FULL:
        return M.real.copy() if S.real else M.copy()
    if S.kind in (TOEPLITZ, HANKEL):
        if S.real:
            M = M.real.astype(complex)
        return _project_banded(M, S.support, antidiagonal=(S.kind == HANKEL))
    # Hamiltonian
    if S.real:
        M = M.real.astype(complex)
    J = symplectic_j(S.n_half)
    return 0.5 * (M + J @ M.conj().T @ J)


def is_member(M: np.ndarray, S: StructurePattern) -> bool:
    """True iff M lies in S to within ``MEMBERSHIP_RTOL * ||M||_F``."""
    M = _check_dim(M, S)
    tol = MEMBERSHIP_RTOL * max(np.linalg.norm(M), 1e-300)
    return bool(np.linalg.norm(M - project(M, S)) <= tol)


def normalized_projection(M: np.ndarray, S: StructurePattern) -> np.ndarray:
    """Unit-Frobenius-norm member of S parallel to the projection of M."""
    M = _check_dim(M, S)
    P = project(M, S)
    norm = np.linalg.norm(P)
    if norm <= NORM_RTOL * max(np.linalg.norm(M), 1e-300):
        raise ZeroProjection("matrix is numerically orthogonal to the structure")
    return P / norm


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_member(S: StructurePattern, seed) -> np.ndarray:
    """Unit-norm member of S: seeded Gaussian draw, project, renormalize."""
    rng = _as_rng(seed)
    n = S.dim
    if S.real:
        G = rng.standard_normal((n, n)).astype(complex)
    else:
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    P = project(G, S)
    norm = np.linalg.norm(P)
    if norm <= NORM_RTOL * max(np.linalg.norm(G), 1e-300):
        raise ZeroProjection("random draw projected to zero")
    return P / norm


def random_rank_one(dim: int, seed) -> np.ndarray:
    """Unit-Frobenius-norm rank-one matrix u v^H from a seeded stream."""
    if dim < 2:
        raise DimensionMismatch("dim must be at least 2")
    rng = _as_rng(seed)
    u = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    E = np.outer(u, np.conj(v))
    return E / (np.linalg.norm(u) * np.linalg.norm(v))
