import numpy as np
import pytest

from pseudospec import (
    full,
    hamiltonian,
    hankel,
    is_member,
    normalized_projection,
    project,
    random_member,
    random_rank_one,
    symplectic_j,
    toeplitz,
    toeplitz_support_of,
    tridiag_toeplitz,
)
from pseudospec.errors import DimensionMismatch, ZeroProjection

RNG = np.random.default_rng(2024)


def random_matrix(n, real=False):
    if real:
        return RNG.standard_normal((n, n)).astype(complex)
    return RNG.standard_normal((n, n)) + 1j * RNG.standard_normal((n, n))


ALL_PATTERNS = [
    toeplitz(6, {-1, 0, 1}),
    toeplitz(5, {-2, 0, 3}),
    hankel(6, {-1, 0, 2}),
    hamiltonian(3),
    hamiltonian(3, real=True),
    full(4),
]


class TestMembership:
    def test_tridiagonal_toeplitz_is_member(self):
        A = tridiag_toeplitz(5, 2.0, 1.0, 3.0)
        assert is_member(A, toeplitz(5, {-1, 0, 1}))

    def test_non_toeplitz_diagonal(self):
        assert not is_member(np.array([[1.0, 2.0], [3.0, 4.0]]), toeplitz(2, {-1, 0, 1}))

    def test_hamiltonian_block_characterization(self):
        rng = np.random.default_rng(7)
        K = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        L = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        L = L + L.conj().T
        M = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        M = M + M.conj().T
        Q = np.block([[K, M], [L, -K.conj().T]])
        assert is_member(Q, hamiltonian(3))

    def test_hamiltonian_iff_qj_hermitian(self):
        J = symplectic_j(3)
        for _ in range(20):
            Q = random_matrix(6)
            lhs = is_member(Q, hamiltonian(3))
            QJ = Q @ J
            rhs = np.linalg.norm(QJ - QJ.conj().T) <= 1e-12 * np.linalg.norm(Q)
            assert lhs == rhs

    def test_zero_matrix_always_member(self):
        for S in ALL_PATTERNS:
            assert is_member(np.zeros((S.dim, S.dim)), S)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            is_member(np.eye(3), toeplitz(4, {0}))


class TestProject:
    def test_toeplitz_diagonal_mean(self):
        P = project(np.array([[1.0, 2.0], [3.0, 4.0]]), toeplitz(2, {-1, 0, 1}))
        np.testing.assert_allclose(P, [[2.5, 2.0], [3.0, 2.5]])

    def test_hamiltonian_hand_value(self):
        M = np.array([[1 + 1j, 2.0], [3.0, 4.0]])
        P = project(M, hamiltonian(1))
        np.testing.assert_allclose(
            P, [[(-3 + 1j) / 2, 2.0], [3.0, (3 + 1j) / 2]], atol=1e-15
        )

    def test_hankel_antidiagonal_mean(self):
        # main antidiagonal of [[1,2],[3,4]] is {2,3}; corner antidiagonals {1},{4}
        P = project(np.array([[1.0, 2.0], [3.0, 4.0]]), hankel(2, {-1, 0, 1}))
        np.testing.assert_allclose(P, [[1.0, 2.5], [2.5, 4.0]])

    @pytest.mark.parametrize("S", ALL_PATTERNS, ids=str)
    def test_idempotent(self, S):
        for _ in range(5):
            M = random_matrix(S.dim)
            P = project(M, S)
            np.testing.assert_allclose(
                project(P, S), P, atol=1e-14 * np.linalg.norm(M)
            )

    @pytest.mark.parametrize("S", ALL_PATTERNS, ids=str)
    def test_member_is_fixed_point(self, S):
        seed = abs(hash(str(S))) % 2**32
        B = random_member(S, seed)
        np.testing.assert_allclose(project(B, S), B, atol=1e-13)

    @pytest.mark.parametrize("S", ALL_PATTERNS, ids=str)
    def test_optimality_and_orthogonality(self, S):
        M = random_matrix(S.dim, real=S.real)
        P = project(M, S)
        dist = np.linalg.norm(M - P)
        for k in range(30):
            B = random_member(S, 1000 + k)
            assert dist <= np.linalg.norm(M - B) + 1e-12
            inner = np.real(np.vdot(B, M - P))
            assert abs(inner) <= 1e-10 * np.linalg.norm(M) * np.linalg.norm(B)

    @pytest.mark.parametrize("S", ALL_PATTERNS, ids=str)
    def test_real_linearity_and_contraction(self, S):
        M, N = random_matrix(S.dim), random_matrix(S.dim)
        a, b = 1.7, -0.3
        np.testing.assert_allclose(
            project(a * M + b * N, S),
            a * project(M, S) + b * project(N, S),
            atol=1e-12,
        )
        assert np.linalg.norm(project(M, S)) <= np.linalg.norm(M) + 1e-12

    def test_complex_linearity_toeplitz_hankel_full(self):
        for S in (toeplitz(5, {-1, 0, 2}), hankel(5, {0, 1}), full(5)):
            M = random_matrix(5)
            c = 0.4 - 1.1j
            np.testing.assert_allclose(
                project(c * M, S), c * project(M, S), atol=1e-12
            )


class TestNormalizedProjection:
    def test_member_rescaled(self):
        S = toeplitz(3, {-1, 0, 1})
        B = 2.0 * random_member(S, 5)
        np.testing.assert_allclose(normalized_projection(B, S), B / 2.0, atol=1e-13)

    def test_zero_projection_raises(self):
        with pytest.raises(ZeroProjection):
            normalized_projection(np.array([[0.0, 1.0], [0.0, 0.0]]), toeplitz(2, {0}))

    def test_unit_norm(self):
        for S in ALL_PATTERNS:
            P = normalized_projection(random_matrix(S.dim), S)
            assert np.linalg.norm(P) == pytest.approx(1.0, abs=1e-12)


class TestRandomGenerators:
    @pytest.mark.parametrize("S", ALL_PATTERNS, ids=str)
    def test_random_member_contract(self, S):
        E = random_member(S, 99)
        assert is_member(E, S)
        assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
        if S.real:
            assert np.all(E.imag == 0)
        np.testing.assert_array_equal(E, random_member(S, 99))

    def test_random_rank_one_contract(self):
        E = random_rank_one(5, 42)
        s = np.linalg.svd(E, compute_uv=False)
        assert s[1] <= 1e-12
        assert np.linalg.norm(E) == pytest.approx(1.0, abs=1e-12)
        assert s[0] == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_array_equal(E, random_rank_one(5, 42))


def test_toeplitz_support_inference():
    A = tridiag_toeplitz(6, 1.0, 0.0, 2.0)
    assert toeplitz_support_of(A) == frozenset({-1, 1})
    A[0, 0] = 3.0  # no longer constant but the diagonal is now nonzero
    assert toeplitz_support_of(A) == frozenset({-1, 0, 1})
