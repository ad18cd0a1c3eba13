"""Dense eigenvalue/eigenvector and singular-value kernels.

Everything downstream (condition numbers, sweeps, grid oracle) consumes the
matched eigen-triples produced here.  Conventions:

* eigenvalues sorted lexicographically by (Re, Im);
* right/left eigenvectors stored as columns, unit 2-norm;
* left eigenvector phases fixed so that y_i^H x_i is real and positive.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import (
    DefectiveInput,
    DimensionMismatch,
    NonConvergence,
    ZeroOffdiagonal,
)

TOL_EIG = 1e-10
GAP_TOL_FACTOR = 1e-8


@dataclass(frozen=True)
class Eigensystem:
    """Matched triples (lambda_i, x_i, y_i) with unit eigenvectors.

    ``rights[:, i]`` and ``lefts[:, i]`` are the right and left eigenvectors
    of ``eigenvalues[i]``; ``overlaps[i] = y_i^H x_i``.
    """

    eigenvalues: np.ndarray
    rights: np.ndarray
    lefts: np.ndarray
    overlaps: np.ndarray
    min_gap: float

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _validate_square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 2:
        raise DimensionMismatch("matrix dimension must be at least 2")
    if not np.all(np.isfinite(A)):
        raise DimensionMismatch("matrix entries must be finite")
    return A


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-modulus component is real positive."""
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    if abs(pivot) == 0.0:
        return v
    return v * (np.conj(pivot) / abs(pivot))


def _min_pairwise_gap(w: np.ndarray) -> float:
    diff = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def eig_pairs(A: np.ndarray) -> Eigensystem:
    """Compute the full eigensystem of A with matched left eigenvectors.

    Left eigenvectors are computed as right eigenvectors of A^H and paired to
    the right eigenvectors by nearest conjugate eigenvalue.  Raises
    DefectiveInput when the minimal eigenvalue gap falls below
    ``GAP_TOL_FACTOR * ||A||_F`` and NonConvergence when the residual contract
    ``||A x - lambda x|| <= TOL_EIG * ||A||_F`` is not met.
    """
    A = _validate_square(A)
    n = A.shape[0]
    norm_a = np.linalg.norm(A)

    try:
        w, vr = np.linalg.eig(A)
        wl, vl = np.linalg.eig(A.conj().T)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc

    # quantize the real-part key so roundoff cannot flip the order of
    # eigenvalues with equal real parts (e.g. conjugate pairs)
    quantum = 1e-10 * max(norm_a, 1e-300)
    order = np.lexsort((w.real, w.imag, np.round(w.real / quantum)))
    w = w[order]
    vr = vr[:, order]

    gap = _min_pairwise_gap(w)
    if gap <= GAP_TOL_FACTOR * max(norm_a, 1e-300):
        raise DefectiveInput(
            f"minimum eigenvalue gap {gap:.3e} below threshold; "
            "eigenvalues too close to treat as simple"
        )

    # A^H y = conj(lambda) y; match left vectors by nearest conjugate eigenvalue.
    cost = np.abs(np.conj(wl)[None, :] - w[:, None])
    rows, cols = linear_sum_assignment(cost)
    lefts = vl[:, cols[np.argsort(rows)]]

    rights = np.empty_like(vr)
    overlaps = np.empty(n, dtype=complex)
    for i in range(n):
        x = _canonical_phase(vr[:, i] / np.linalg.norm(vr[:, i]))
        y = lefts[:, i] / np.linalg.norm(lefts[:, i])
        o = np.vdot(y, x)
        if abs(o) > 0.0:
            # y -> e^{i arg(o)} y makes y^H x real positive.
            y = y * (o / abs(o))
        rights[:, i] = x
        lefts[:, i] = y
        overlaps[i] = np.vdot(y, x)

    res_r = np.linalg.norm(A @ rights - rights * w[None, :], axis=0)
    res_l = np.linalg.norm(A.conj().T @ lefts - lefts * np.conj(w)[None, :], axis=0)
    tol = TOL_EIG * max(norm_a, 1e-300)
    if res_r.max() > tol or res_l.max() > tol:
        raise NonConvergence(
            f"eigenvector residual {max(res_r.max(), res_l.max()):.3e} exceeds "
            f"{tol:.3e}"
        )

    return Eigensystem(
        eigenvalues=w,
        rights=rights,
        lefts=lefts,
        overlaps=overlaps,
        min_gap=gap,
    )


def symplectic_j(n_half: int) -> np.ndarray:
    """The fundamental 2n x 2n matrix [[0, I], [-I, 0]]."""
    J = np.zeros((2 * n_half, 2 * n_half))
    J[:n_half, n_half:] = np.eye(n_half)
    J[n_half:, :n_half] = -np.eye(n_half)
    return J


def hamiltonian_phase_normalize(sys: Eigensystem, n_half: int) -> Eigensystem:
    """Rephase each eigen-triple so that Im(y^H J x) = 0.

    The rotation multiplies y by a unimodular factor, which preserves
    ``||y|| = 1`` and ``|y^H x|``.  Pairs with y^H J x = 0 are left unchanged.
    """
    if sys.dim != 2 * n_half:
        raise DimensionMismatch(
            f"eigensystem dimension {sys.dim} != 2 * {n_half}"
        )
    J = symplectic_j(n_half)
    lefts = sys.lefts.copy()
    overlaps = sys.overlaps.copy()
    for i in range(sys.dim):
        c = np.vdot(lefts[:, i], J @ sys.rights[:, i])
        if abs(c) > 0.0:
            # y -> e^{i arg(c)} y sends y^H J x to |c| (real, nonnegative).
            phase = c / abs(c)
            lefts[:, i] = lefts[:, i] * phase
            overlaps[i] = np.vdot(lefts[:, i], sys.rights[:, i])
    return replace(sys, lefts=lefts, overlaps=overlaps)


def sigma_min(A: np.ndarray, z: complex) -> float:
    """Smallest singular value of A - z I."""
    A = _validate_square(A)
    B = A - z * np.eye(A.shape[0])
    try:
        s = np.linalg.svd(B, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
    return float(s[-1])


def sigma_min_batch(A: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """sigma_min(A - z I) for every z in a flat array, via stacked SVDs."""
    A = _validate_square(A)
    zs = np.asarray(zs, dtype=complex).ravel()
    n = A.shape[0]
    out = np.empty(zs.shape[0])
    eye = np.eye(n)
    # Chunked so the stacked workspace stays modest for large grids.
    chunk = max(1, 2_000_000 // (n * n))
    for start in range(0, zs.shape[0], chunk):
        zc = zs[start : start + chunk]
        stack = A[None, :, :] - zc[:, None, None] * eye[None, :, :]
        try:
            s = np.linalg.svd(stack, compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NonConvergence(str(exc)) from exc
        out[start : start + chunk] = s[:, -1]
    return out


def tridiag_toeplitz(n: int, sub: complex, diag: complex, sup: complex) -> np.ndarray:
    """Assemble the n x n tridiagonal Toeplitz matrix."""
    A = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    A[idx + 1, idx] = sub
    A[idx, idx] = diag
    A[n - 1, n - 1] = diag
    A[idx, idx + 1] = sup
    return A


def tridiag_toeplitz_reference(
    n: int, sub: complex, diag: complex, sup: complex
) -> Eigensystem:
    """Closed-form eigensystem of a tridiagonal Toeplitz matrix.

    lambda_k = diag + 2 sqrt(sub * sup) cos(k pi / (n + 1)), with right
    eigenvector components (sub/sup)^{j/2} sin(j k pi / (n + 1)).  Used as an
    independent oracle against :func:`eig_pairs`.
    """
    if n < 2:
        raise DimensionMismatch("n must be at least 2")
    if sub == 0 or sup == 0:
        raise ZeroOffdiagonal("closed form requires nonzero off-diagonals")

    k = np.arange(1, n + 1)
    root = np.sqrt(complex(sub) * complex(sup))
    w = diag + 2.0 * root * np.cos(k * np.pi / (n + 1))

    j = np.arange(1, n + 1)
    ratio_r = (complex(sub) / complex(sup)) ** (j / 2.0)
    ratio_l = (np.conj(complex(sup)) / np.conj(complex(sub))) ** (j / 2.0)
    sines = np.sin(np.outer(j, k) * np.pi / (n + 1))
    rights = ratio_r[:, None] * sines
    lefts = ratio_l[:, None] * sines

    order = np.lexsort((w.imag, w.real))
    w = w[order]
    rights = rights[:, order]
    lefts = lefts[:, order]

    overlaps = np.empty(n, dtype=complex)
    for i in range(n):
        x = _canonical_phase(rights[:, i] / np.linalg.norm(rights[:, i]))
        y = lefts[:, i] / np.linalg.norm(lefts[:, i])
        o = np.vdot(y, x)
        if abs(o) > 0.0:
            y = y * (o / abs(o))
        rights[:, i] = x
        lefts[:, i] = y
        overlaps[i] = np.vdot(y, x)

    return Eigensystem(
        eigenvalues=w,
        rights=rights,
        lefts=lefts,
        overlaps=overlaps,
        min_gap=_min_pairwise_gap(w),
    )
