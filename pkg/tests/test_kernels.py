import os
import subprocess
import sys
import textwrap

import numpy as np
import pytest

from cstarnorms import _kernels
from conftest import random_hermitian

import oracles


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        m = np.ascontiguousarray(random_hermitian(n, rng, scale=10.0 ** rng.integers(-3, 4)))
        w, v, sweeps = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
        assert sweeps >= 0
        scale = max(1.0, np.abs(m).max())
        worst = max(worst, np.abs(w - oracles.eigvalsh(m)).max() / scale)
    assert worst < 1e-12


def test_jacobi_reconstruction_and_unitarity():
    rng = np.random.default_rng(1)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        m = np.ascontiguousarray(random_hermitian(n, rng))
        w, v, _ = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
        assert np.all(np.diff(w) >= 0)
        rec = (v * w) @ v.conj().T
        scale = max(1.0, oracles.operator_norm(m))
        assert oracles.operator_norm(rec - m) <= 1e-10 * scale
        assert np.abs(v.conj().T @ v - np.eye(n)).max() <= 1e-10 * scale


def test_jacobi_deterministic_bits():
    rng = np.random.default_rng(2)
    m = np.ascontiguousarray(random_hermitian(6, rng))
    w1, v1, s1 = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
    w2, v2, s2 = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
    assert s1 == s2
    assert w1.tobytes() == w2.tobytes()
    assert v1.tobytes() == v2.tobytes()


def test_jacobi_zero_and_scalar():
    w, v, s = _kernels.jacobi_eig(np.zeros((3, 3), complex), 30, 1e-14)
    assert np.all(w == 0.0) and s == 0
    w, v, s = _kernels.jacobi_eig(np.array([[2.5 + 0j]]), 30, 1e-14)
    assert w[0] == 2.5 and v[0, 0] == 1.0


def test_psd_project_against_lapack_oracle():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 8))
        m = np.ascontiguousarray(random_hermitian(n, rng))
        got = _kernels.psd_project(m, 30, 1e-14)
        w, u = np.linalg.eigh(m)
        want = (u * np.maximum(w, 0.0)) @ u.conj().T
        assert np.abs(got - want).max() < 1e-12 * max(1.0, np.abs(m).max())
        assert oracles.eigvalsh(got)[0] > -1e-12


def test_dr_solve_anchor_matches_grid_oracle():
    # diag(4,1) weight against diag(1,-1): grid search certifies the value 5
    expected = oracles.grid_search_diagonal([4.0, 1.0], [1.0, -1.0])
    assert expected == pytest.approx(5.0, abs=1e-12)
    wa = np.array([4.0, 1.0])
    f = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    g, iters, ok = _kernels.dr_solve(wa, f, 1e-7, 50000, 10, 1.6, 30, 1e-14)
    assert ok
    value = float(np.dot([1.0, -1.0], wa)) + 2.0 * float((np.diag(g).real * wa).sum())
    assert value == pytest.approx(expected, rel=1e-7)


def test_dr_solve_positive_functional_needs_no_mass():
    # f >= 0: optimal G = 0, value = tr(f a)
    rng = np.random.default_rng(4)
    fpos = random_hermitian(3, rng)
    fpos = fpos @ fpos.conj().T
    wa = np.array([2.0, 1.0, 0.5])
    g, _, ok = _kernels.dr_solve(wa, np.ascontiguousarray(fpos), 1e-8, 50000, 10, 1.6, 30, 1e-14)
    assert ok
    assert float((np.diag(g).real * wa).sum()) < 1e-7


def test_pure_numpy_fallback_agrees():
    script = textwrap.dedent("""
        import numpy as np
        from cstarnorms import _kernels
        assert not _kernels.USING_NUMBA
        rng = np.random.default_rng(7)
        x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        m = np.ascontiguousarray((x + x.conj().T) / 2.0)
        w, v, s = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
        print(repr(w.tolist()))
    """)
    env = dict(os.environ, CSTARNORMS_PURE_NUMPY="1")
    out = subprocess.run([sys.executable, "-c", script], env=env,
                         capture_output=True, text=True, check=True)
    w_pure = np.array(eval(out.stdout.strip()))
    rng = np.random.default_rng(7)
    x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    m = np.ascontiguousarray((x + x.conj().T) / 2.0)
    w_here, _, _ = _kernels.jacobi_eig(m.copy(), 30, 1e-14)
    assert np.abs(w_pure - w_here).max() < 1e-12
