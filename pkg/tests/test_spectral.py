import numpy as np
import pytest

from cstarnorms import spectral
from cstarnorms.errors import NoConvergence, NotHermitian, NotPositive, SingularPower
from cstarnorms.spectral import (hermitian_eig, matrix_power, operator_norm,
                                 range_projection, trace_norm)
from conftest import random_hermitian

import oracles


class TestHermitianEig:
    def test_pauli_x(self):
        dec = hermitian_eig([[0, 1], [1, 0]])
        assert dec.eigenvalues == pytest.approx([-1.0, 1.0], abs=1e-14)

    def test_diagonal_sorted_with_permuted_identity_vectors(self):
        dec = hermitian_eig(np.diag([4.0, 1.0]))
        assert dec.eigenvalues == pytest.approx([1.0, 4.0])
        assert np.abs(np.abs(dec.eigenvectors) - np.array([[0, 1], [1, 0]])).max() < 1e-14

    def test_random_reconstruction(self, rng):
        for _ in range(30):
            m = random_hermitian(5, rng)
            dec = hermitian_eig(m)
            scale = max(1.0, oracles.operator_norm(m))
            assert oracles.operator_norm(dec.reconstruct() - m) <= 1e-10 * scale

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig([[0, 1], [0, 0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            hermitian_eig([[np.nan, 0], [0, 1]])

    def test_sweep_budget_exhaustion(self, monkeypatch):
        monkeypatch.setattr(spectral, "SWEEP_FACTOR", 0)
        with pytest.raises(NoConvergence):
            hermitian_eig([[1.0, 0.5], [0.5, 2.0]])

    def test_deterministic(self, rng):
        m = random_hermitian(6, rng)
        d1 = hermitian_eig(m)
        d2 = hermitian_eig(m)
        assert d1.eigenvalues.tobytes() == d2.eigenvalues.tobytes()
        assert d1.eigenvectors.tobytes() == d2.eigenvectors.tobytes()


class TestMatrixPower:
    def test_diagonal_half(self):
        assert matrix_power(np.diag([4.0, 1.0]), 0.5) == pytest.approx(np.diag([2.0, 1.0]))

    def test_diagonal_inverse(self):
        assert matrix_power(np.diag([4.0, 1.0]), -1.0) == pytest.approx(np.diag([0.25, 1.0]))

    def test_kernel_case(self):
        assert matrix_power(np.diag([2.0, 0.0]), 0.5) == pytest.approx(
            np.diag([np.sqrt(2.0), 0.0]))
        with pytest.raises(SingularPower):
            matrix_power(np.diag([2.0, 0.0]), -1.0)

    def test_zero_exponent_gives_identity(self, rng):
        a = random_hermitian(4, rng)
        a = a @ a.conj().T + 0.5 * np.eye(4)
        assert matrix_power(a, 0.0) == pytest.approx(np.eye(4), abs=1e-10)

    def test_power_law(self, rng):
        for _ in range(20):
            a = random_hermitian(4, rng)
            a = a @ a.conj().T + 0.3 * np.eye(4)
            alpha, beta = rng.uniform(-2, 2, 2)
            lhs = matrix_power(a, alpha + beta)
            rhs = matrix_power(a, alpha) @ matrix_power(a, beta)
            assert oracles.operator_norm(lhs - rhs) <= 1e-9 * max(1.0, oracles.operator_norm(lhs))

    def test_not_positive(self):
        with pytest.raises(NotPositive):
            matrix_power(np.diag([1.0, -1.0]), 0.5)
        with pytest.raises(NotPositive):
            matrix_power([[0, 1], [0, 0]], 0.5)


class TestNorms:
    def test_operator_norm_examples(self):
        assert operator_norm(np.diag([4.0, 1.0])) == 4.0
        assert operator_norm(np.zeros((3, 3))) == 0.0
        # singular values of [[0,3],[0,0]]: gram is diag(0,9), largest root 3
        assert operator_norm([[0.0, 3.0], [0.0, 0.0]]) == pytest.approx(3.0, abs=1e-12)

    def test_trace_norm_examples(self):
        assert trace_norm(np.diag([4.0, -1.0])) == 5.0
        assert trace_norm([[0, 1], [1, 0]]) == pytest.approx(2.0, abs=1e-12)

    def test_trace_norm_hermitian_matches_eigenvalue_oracle(self, rng):
        for _ in range(20):
            m = random_hermitian(4, rng)
            assert trace_norm(m) == pytest.approx(
                np.abs(oracles.eigvalsh(m)).sum(), abs=1e-10)

    def test_nonhermitian_norms_match_svd_oracle(self, rng):
        for _ in range(20):
            m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            assert operator_norm(m) == pytest.approx(oracles.operator_norm(m), rel=1e-10)
            assert trace_norm(m) == pytest.approx(oracles.trace_norm(m), rel=1e-10)

    def test_norm_consistency(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 7))
            m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            op = operator_norm(m)
            tr = trace_norm(m)
            assert op <= tr + 1e-10
            assert tr <= n * op + 1e-10


class TestRangeProjection:
    def test_spectral_diag(self):
        assert range_projection(np.diag([2.0, 0.0])) == pytest.approx(np.diag([1.0, 0.0]))

    def test_limit_diag(self):
        eps = 1e-6
        p = range_projection(np.diag([2.0, 0.0]), method="limit", epsilon=eps)
        assert p == pytest.approx(np.diag([2.0 / (2.0 + eps), 0.0]), abs=1e-15)
        assert oracles.operator_norm(p - np.diag([1.0, 0.0])) <= 5e-7

    def test_limit_identity(self):
        eps = 0.25
        p = range_projection(np.eye(3), method="limit", epsilon=eps)
        assert p == pytest.approx(np.eye(3) / (1.0 + eps))

    def test_projection_property(self, rng):
        for _ in range(10):
            m = random_hermitian(5, rng)
            a = m @ m.conj().T
            p = range_projection(a)
            assert oracles.operator_norm(p @ p - p) <= 1e-10
            assert oracles.operator_norm(p - p.conj().T) <= 1e-10

    def test_limit_monotone_and_rate(self, rng):
        # one kernel direction; error should shrink like eps/(eps + lmin')
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        lam = np.array([1.5, 0.7, 0.2, 0.0])
        a = (q * lam) @ q.conj().T
        a = (a + a.conj().T) / 2.0
        p = range_projection(a)
        prev = np.inf
        for eps in (1e-1, 1e-3, 1e-5, 1e-7):
            err = oracles.operator_norm(range_projection(a, "limit", eps) - p)
            assert err <= eps / (eps + 0.2) + 1e-10
            assert err <= prev + 1e-12
            prev = err

    def test_errors(self):
        with pytest.raises(NotPositive):
            range_projection(np.diag([1.0, -2.0]))
        with pytest.raises(ValueError):
            range_projection(np.eye(2), method="limit")
        with pytest.raises(ValueError):
            range_projection(np.eye(2), method="nope")
