"""Hot numeric kernels: complex Jacobi eigensolver and the decomposition solver loop.

Each kernel is written as plain Python over numpy arrays and compiled with
numba's ``@njit`` when available.  Setting the environment variable
``CSTARNORMS_PURE_NUMPY=1`` (or running without numba installed) selects the
uncompiled numpy fallback; results agree to rounding, only speed differs.
``benchmarks/bench_kernels.py`` compares the two paths.
"""

import os

import numpy as np

PURE_NUMPY_ENV = "CSTARNORMS_PURE_NUMPY"


def _want_numba():
    if os.environ.get(PURE_NUMPY_ENV, "0") == "1":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = _want_numba()

if USING_NUMBA:
    from numba import njit as _njit

    def _compile(fn):
        return _njit(cache=True, nogil=True)(fn)
else:
    def _compile(fn):
        return fn


def _jacobi_eig_impl(h, sweep_factor, stop_rtol):
    """Cyclic Jacobi diagonalization of a Hermitian matrix, in place.

    ``h`` must be complex128, C-contiguous; it is destroyed.  Returns
    eigenvalues sorted ascending, the matching unitary eigenvector matrix,
    and the number of sweeps used (-1 if the sweep budget ran out before
    the off-diagonal Frobenius mass dropped below ``stop_rtol * ||h||_F``).
    """
    n = h.shape[0]
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0
    frob2 = 0.0
    for i in range(n):
        for j in range(n):
            frob2 += abs(h[i, j]) ** 2
    w = np.zeros(n, dtype=np.float64)
    if frob2 == 0.0 or n == 1:
        for i in range(n):
            w[i] = h[i, i].real
        order = np.argsort(w, kind="mergesort")
        return w[order], np.ascontiguousarray(v[:, order]), 0

    tol_off = stop_rtol * np.sqrt(frob2)
    skip = tol_off / (4.0 * n * n)
    max_sweeps = sweep_factor * n * n
    sweeps = -1
    for sweep in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += abs(h[p, q]) ** 2
        if np.sqrt(2.0 * off2) <= tol_off:
            sweeps = sweep
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                aabs = abs(apq)
                if aabs <= skip:
                    continue
                ph = apq / aabs
                phc = ph.conjugate()
                theta = (h[q, q].real - h[p, p].real) / (2.0 * aabs)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary 2x2 [[c, s], [-s*conj(ph), c*conj(ph)]] on columns (p, q)
                for j in range(n):
                    rp = h[p, j]
                    rq = h[q, j]
                    h[p, j] = c * rp - s * ph * rq
                    h[q, j] = s * rp + c * ph * rq
                for i in range(n):
                    cp = h[i, p]
                    cq = h[i, q]
                    h[i, p] = c * cp - s * phc * cq
                    h[i, q] = s * cp + c * phc * cq
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = complex(h[p, p].real, 0.0)
                h[q, q] = complex(h[q, q].real, 0.0)
                for i in range(n):
                    vp = v[i, p]
                    vq = v[i, q]
                    v[i, p] = c * vp - s * phc * vq
                    v[i, q] = s * vp + c * phc * vq
    for i in range(n):
        w[i] = h[i, i].real
    order = np.argsort(w, kind="mergesort")
    return w[order], np.ascontiguousarray(v[:, order]), sweeps


jacobi_eig = _compile(_jacobi_eig_impl)
jacobi_eig_py = _jacobi_eig_impl


def _psd_project_impl(m, sweep_factor, stop_rtol):
    """Nearest positive semidefinite matrix in Frobenius norm."""
    h = m.copy()
    w, v, _ = jacobi_eig(h, sweep_factor, stop_rtol)
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        wk = w[k]
        if wk <= 0.0:
            continue
        for i in range(n):
            vik = v[i, k] * wk
            for j in range(n):
                out[i, j] += vik * v[j, k].conjugate()
    return out


psd_project = _compile(_psd_project_impl)


def _min_eig_impl(m, sweep_factor, stop_rtol):
    h = m.copy()
    w, _, _ = jacobi_eig(h, sweep_factor, stop_rtol)
    return w[0]


min_eig = _compile(_min_eig_impl)


def _dr_solve_impl(wa, f, tol, max_iter, patience, relax, sweep_factor, stop_rtol):
    """Douglas-Rachford iteration for the per-block decomposition program.

    Minimizes 2*tr(diag(wa) G) over {G >= 0} ∩ {G >= -f}, with ``wa`` the
    strictly positive eigenvalues of the weight block, in whose eigenbasis
    ``f`` is expressed.  Returns (G, iterations, converged); G is polished
    to be feasible for both cones up to eigensolver rounding.
    """
    n = f.shape[0]
    gamma = 1.0 / (2.0 * wa.max())
    gw = 2.0 * gamma * wa
    # start at the Jordan negative part of f, feasible for both cones
    z = psd_project(-f, sweep_factor, stop_rtol)
    val = np.inf
    streak = 0
    fp_rel = 0.3 * tol
    val_rel = 0.1 * tol
    iters = 0
    converged = False
    for k in range(max_iter):
        iters = k + 1
        x = psd_project(z, sweep_factor, stop_rtol)
        t = 2.0 * x - z + f
        for i in range(n):
            t[i, i] -= gw[i]
        y = psd_project(t, sweep_factor, stop_rtol) - f
        new_val = 0.0
        for i in range(n):
            new_val += 2.0 * x[i, i].real * wa[i]
        fp2 = 0.0
        xn2 = 0.0
        for i in range(n):
            for j in range(n):
                fp2 += abs(y[i, j] - x[i, j]) ** 2
                xn2 += abs(x[i, j]) ** 2
        z += relax * (y - x)
        if (abs(val - new_val) < val_rel * max(1.0, abs(new_val))
                and np.sqrt(fp2) <= fp_rel * max(1.0, np.sqrt(xn2))):
            streak += 1
        else:
            streak = 0
        val = new_val
        if streak >= patience:
            converged = True
            break
    x = psd_project(z, sweep_factor, stop_rtol)
    # polish: exact PSD projection, then shift until G + f is PSD as well
    g = psd_project(x, sweep_factor, stop_rtol)
    d = min_eig(g + f, sweep_factor, stop_rtol)
    if d < 0.0:
        for i in range(n):
            g[i, i] -= d
    return g, iters, converged


dr_solve = _compile(_dr_solve_impl)
