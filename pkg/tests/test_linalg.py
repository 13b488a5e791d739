"""Dense linear-algebra kernel: pseudoinverse, eigendecomposition, matrix
exponential / logarithm."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koopid import BranchCutError, eig, expm, logm, lstsq_fit, pinv
from koopid.linalg import matrix_rank


def random_matrix(seed: int, m: int, n: int) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal((m, n))


class TestPinv:
    @given(seed=st.integers(0, 50), m=st.integers(1, 8), n=st.integers(1, 8))
    @settings(max_examples=40, deadline=None)
    def test_moore_penrose_identities(self, seed, m, n):
        a = random_matrix(seed, m, n)
        p = pinv(a)
        assert np.allclose(a @ p @ a, a, atol=1e-9)
        assert np.allclose(p @ a @ p, p, atol=1e-9)
        assert np.allclose((a @ p).T.conj(), a @ p, atol=1e-9)
        assert np.allclose((p @ a).T.conj(), p @ a, atol=1e-9)

    def test_rank_deficient_truncation(self):
        # rank-1 matrix: pinv must not blow up and identities must still hold
        a = np.outer([1.0, 2.0, 3.0], [4.0, 5.0])
        p = pinv(a)
        assert np.allclose(a @ p @ a, a, atol=1e-9)
        assert matrix_rank(a) == 1

    @given(seed=st.integers(0, 20), c=st.floats(0.1, 10.0))
    @settings(max_examples=20, deadline=None)
    def test_pinv_scaling(self, seed, c):
        a = random_matrix(seed, 5, 3)
        assert np.allclose(pinv(c * a), pinv(a) / c, atol=1e-10 * np.linalg.norm(pinv(a)))

    def test_orthogonal_matrix_pinv_is_transpose(self):
        theta = 0.3
        q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        assert np.allclose(pinv(q), q.T, atol=1e-12)


class TestLstsq:
    def test_exact_recovery(self):
        # consistent overdetermined system: recovers the generating matrix
        rng = np.random.default_rng(3)
        x1 = rng.standard_normal((20, 4))
        u_true = rng.standard_normal((4, 4))
        u_fit = lstsq_fit(x1, x1 @ u_true)
        assert np.allclose(u_fit, u_true, atol=1e-10)

    def test_minimum_norm_solution(self):
        # underdetermined in rank: solution must be the minimum-norm one
        x1 = np.array([[1.0, 0.0], [1.0, 0.0]])  # rank 1
        x2 = np.array([[2.0, 0.0], [2.0, 0.0]])
        u = lstsq_fit(x1, x2)
        assert np.allclose(x1 @ u, x2, atol=1e-12)
        assert np.allclose(u[1], 0.0, atol=1e-12)  # no component in the null direction


class TestEig:
    @given(seed=st.integers(0, 50), n=st.integers(2, 8))
    @settings(max_examples=30, deadline=None)
    def test_eigen_residuals(self, seed, n):
        a = random_matrix(seed, n, n)
        dec = eig(a)
        for i in range(n):
            lam = dec.eigenvalues[i]
            v = dec.right_eigenvectors[:, i]
            assert np.linalg.norm(a @ v - lam * v) <= 1e-8 * max(1.0, np.linalg.norm(a))

    def test_known_spectrum(self):
        a = np.diag([3.0, -1.0, 0.5])
        dec = eig(a)
        assert np.allclose(sorted(dec.eigenvalues.real), [-1.0, 0.5, 3.0], atol=1e-12)


class TestExpmLogm:
    @given(seed=st.integers(0, 50), n=st.integers(2, 6))
    @settings(max_examples=30, deadline=None)
    def test_logm_of_expm_roundtrip(self, seed, n):
        # scaled random generator: expm(a) stays well away from the branch cut
        a = 0.3 * random_matrix(seed, n, n)
        b = logm(expm(a))
        assert np.allclose(b, a, atol=1e-8)

    def test_expm_of_logm_roundtrip(self):
        rng = np.random.default_rng(7)
        a = np.eye(4) + 0.2 * rng.standard_normal((4, 4))
        assert np.allclose(expm(logm(a)), a, atol=1e-8)

    def test_logm_diagonal_oracle(self):
        a = np.diag([1.0, 2.0, 0.5])
        assert np.allclose(logm(a), np.diag(np.log([1.0, 2.0, 0.5])), atol=1e-12)

    def test_negative_real_eigenvalue_raises(self):
        with pytest.raises(BranchCutError):
            logm(np.diag([1.0, -2.0]))

    def test_singular_matrix_raises(self):
        with pytest.raises(BranchCutError):
            logm(np.diag([1.0, 0.0]))

    def test_complex_pair_uses_principal_branch(self):
        # rotation by 90 degrees: eigenvalues +-i, log = +-i pi/2
        r = np.array([[0.0, -1.0], [1.0, 0.0]])
        b = logm(r)
        assert np.allclose(b, np.array([[0.0, -np.pi / 2], [np.pi / 2, 0.0]]), atol=1e-10)
