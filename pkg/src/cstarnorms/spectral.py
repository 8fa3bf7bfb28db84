"""Dense Hermitian linear algebra: eigendecomposition, matrix functions, norms.

All spectral calculus in the package funnels through :func:`hermitian_eig`,
a cyclic Jacobi scheme with complex rotations (see ``_kernels``).  Norms of
non-Hermitian matrices are derived from the Hermitian solver applied to
``m* m``; a general SVD is deliberately not needed.
"""

import numpy as np

from . import _kernels
from .errors import NoConvergence, NotHermitian, NotPositive, SingularPower

# Relative tolerances; each is scaled by the input's magnitude before use.
HERM_RTOL = 1e-12    # Hermitian symmetry check, against max|entry|
EIG_RTOL = 1e-10     # eigendecomposition residuals, against max(1, ||.||_op)
RANK_RTOL = 1e-8     # eigenvalues below RANK_RTOL * lambda_max count as kernel
SWEEP_FACTOR = 30    # Jacobi sweep budget: SWEEP_FACTOR * dim**2
OFFDIAG_RTOL = 1e-14  # Jacobi stop: off-diagonal Frobenius mass vs ||m||_F


def as_complex_matrix(m):
    """Validate and normalize a square matrix to a C-contiguous complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise ValueError("empty matrix")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    return np.ascontiguousarray(a)


def is_hermitian_matrix(m, rtol=HERM_RTOL):
    m = np.asarray(m)
    scale = max(1.0, np.abs(m).max())
    return np.abs(m - m.conj().T).max() <= rtol * scale


class SpectralDecomposition:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""

    __slots__ = ("eigenvalues", "eigenvectors")

    def __init__(self, eigenvalues, eigenvectors):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    def reconstruct(self):
        """Return U diag(w) U*."""
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T

    def apply(self, fn):
        """Return U diag(fn(w)) U* for a scalar function of the spectrum."""
        u = self.eigenvectors
        return (u * fn(self.eigenvalues)) @ u.conj().T


def hermitian_eig(m):
    """Diagonalize a Hermitian matrix.

    Raises NotHermitian if the symmetry check fails and NoConvergence if the
    Jacobi sweep budget runs out.  Deterministic for identical input bits.
    """
    a = as_complex_matrix(m)
    if not is_hermitian_matrix(a):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    a = np.ascontiguousarray((a + a.conj().T) / 2.0)
    w, v, sweeps = _kernels.jacobi_eig(a, SWEEP_FACTOR, OFFDIAG_RTOL)
    if sweeps < 0:
        raise NoConvergence(
            f"Jacobi sweep budget {SWEEP_FACTOR}*{a.shape[0]}**2 exhausted")
    return SpectralDecomposition(w, v)


def operator_norm(m):
    """Largest singular value; equals max |eigenvalue| for Hermitian input."""
    a = as_complex_matrix(m)
    if is_hermitian_matrix(a):
        w = hermitian_eig(a).eigenvalues
        return float(np.abs(w).max())
    gram = a.conj().T @ a
    w = hermitian_eig(gram).eigenvalues
    return float(np.sqrt(max(w[-1], 0.0)))


def trace_norm(m):
    """Sum of singular values; sum of |eigenvalues| for Hermitian input."""
    a = as_complex_matrix(m)
    if is_hermitian_matrix(a):
        w = hermitian_eig(a).eigenvalues
        return float(np.abs(w).sum())
    gram = a.conj().T @ a
    w = hermitian_eig(gram).eigenvalues
    return float(np.sqrt(np.maximum(w, 0.0)).sum())


def _positive_eig(a, what):
    """Eigensystem of a positive semidefinite matrix, spectrum clamped to >= 0."""
    if not is_hermitian_matrix(a):
        raise NotPositive(f"{what}: matrix is not Hermitian")
    dec = hermitian_eig(a)
    w = dec.eigenvalues
    lmax = max(float(np.abs(w).max()), 0.0)
    tol = EIG_RTOL * max(1.0, lmax)
    if w[0] < -tol:
        raise NotPositive(f"{what}: smallest eigenvalue {w[0]:.3e} below -{tol:.3e}")
    return np.maximum(w, 0.0), dec.eigenvectors


def matrix_power(a, alpha, rank_tol=None):
    """Spectral power U diag(w**alpha) U* of a positive semidefinite matrix.

    For alpha <= 0 the matrix must be invertible: every eigenvalue above
    ``rank_tol`` (default RANK_RTOL * lambda_max).
    """
    a = as_complex_matrix(a)
    w, u = _positive_eig(a, "matrix_power")
    if rank_tol is None:
        rank_tol = RANK_RTOL * float(w[-1])
    if alpha <= 0.0 and w[0] <= rank_tol:
        raise SingularPower(
            f"exponent {alpha} needs an invertible matrix; lambda_min={w[0]:.3e}")
    return (u * np.power(w, alpha)) @ u.conj().T


def range_projection(a, method="spectral", epsilon=None, rank_tol=None):
    """Orthogonal projection onto the range of a positive semidefinite matrix.

    ``method="spectral"`` sums eigenprojections of eigenvalues above
    ``rank_tol``.  ``method="limit"`` evaluates a(epsilon + a)^{-1}, which is
    not exactly a projection; it approaches the spectral one at rate
    epsilon / (epsilon + lambda'_min) as epsilon decreases.
    """
    a = as_complex_matrix(a)
    w, u = _positive_eig(a, "range_projection")
    if rank_tol is None:
        rank_tol = RANK_RTOL * float(w[-1])
    if method == "spectral":
        mask = (w > rank_tol).astype(float)
        return (u * mask) @ u.conj().T
    if method == "limit":
        if epsilon is None or not epsilon > 0.0:
            raise ValueError("limit method needs epsilon > 0")
        return (u * (w / (epsilon + w))) @ u.conj().T
    raise ValueError(f"unknown method {method!r}")
