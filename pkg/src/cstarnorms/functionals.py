"""Hermitian functionals on the algebra, represented by trace-pairing matrices.

A functional f acts as f(x) = sum_k tr(rep_k x_k).  In finite dimensions
this identification is exhaustive: the dual norm is the blockwise trace norm
of the representation, positivity of f is positive semidefiniteness of every
rep block, and the Jordan decomposition is the spectral split of the
representation into its positive and negative parts.
"""

import warnings

import numpy as np

from . import spectral
from .algebra import BlockStructure, Element, _check_same_structure
from .errors import IndexOutOfRange, NotHermitian, NotUnitVector, StructureMismatch


class HermitianFunctional:
    """Hermitian linear functional, stored as one Hermitian matrix per block."""

    __slots__ = ("structure", "rep", "_eig", "_flags")

    def __init__(self, structure, rep):
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        rep = [spectral.as_complex_matrix(r).copy() for r in rep]
        if len(rep) != structure.num_blocks:
            raise StructureMismatch(
                f"expected {structure.num_blocks} rep blocks, got {len(rep)}")
        for k, (r, d) in enumerate(zip(rep, structure.block_dims)):
            if r.shape != (d, d):
                raise StructureMismatch(f"rep block {k} has shape {r.shape}, expected ({d}, {d})")
            if not spectral.is_hermitian_matrix(r):
                raise NotHermitian(f"rep block {k} is not Hermitian")
        rep = [np.ascontiguousarray((r + r.conj().T) / 2.0) for r in rep]
        for r in rep:
            r.setflags(write=False)
        self.structure = structure
        self.rep = tuple(rep)
        self._eig = {}
        self._flags = {}

    @classmethod
    def zero(cls, structure):
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        return cls(structure, [np.zeros((d, d), complex) for d in structure.block_dims])

    @classmethod
    def from_diagonals(cls, structure, values):
        return cls.from_element(Element.from_diagonals(structure, values))

    @classmethod
    def from_element(cls, x):
        """Reinterpret a Hermitian element as a trace-pairing representation."""
        return cls(x.structure, list(x.blocks))

    def block_eig(self, k):
        dec = self._eig.get(k)
        if dec is None:
            dec = spectral.hermitian_eig(self.rep[k])
            self._eig[k] = dec
        return dec

    @property
    def is_positive(self):
        flag = self._flags.get("positive")
        if flag is None:
            flag = True
            for k in range(self.structure.num_blocks):
                w = self.block_eig(k).eigenvalues
                tol = spectral.EIG_RTOL * max(1.0, float(np.abs(w).max()))
                if w[0] < -tol:
                    flag = False
                    break
            self._flags["positive"] = flag
        return flag

    def __call__(self, x):
        return pair(self, x)

    def __add__(self, other):
        _check_same_structure(self, other)
        return HermitianFunctional(self.structure,
                                   [a + b for a, b in zip(self.rep, other.rep)])

    def __sub__(self, other):
        _check_same_structure(self, other)
        return HermitianFunctional(self.structure,
                                   [a - b for a, b in zip(self.rep, other.rep)])

    def __mul__(self, scalar):
        s = float(scalar)  # Hermitian part is a real vector space
        return HermitianFunctional(self.structure, [s * r for r in self.rep])

    __rmul__ = __mul__

    def __neg__(self):
        return HermitianFunctional(self.structure, [-r for r in self.rep])

    def norm(self):
        return functional_norm(self)

    def as_element(self):
        return Element(self.structure, list(self.rep))

    def __repr__(self):
        return f"HermitianFunctional(structure={self.structure.block_dims})"


def pair(f, x):
    """Evaluate f(x) = sum_k tr(rep_k x_k); real for Hermitian x."""
    _check_same_structure(f, x)
    total = 0.0 + 0.0j
    for r, b in zip(f.rep, x.blocks):
        total += np.trace(r @ b)
    if not x.is_hermitian:
        warnings.warn("pairing with a non-Hermitian element; returning the real part",
                      stacklevel=2)
    return float(total.real)


def functional_norm(f):
    """Dual norm: blockwise trace norm of the representation."""
    total = 0.0
    for k in range(f.structure.num_blocks):
        total += float(np.abs(f.block_eig(k).eigenvalues).sum())
    return total


def jordan_decompose(f):
    """Split f = f_plus - f_minus into positive parts with orthogonal supports."""
    plus = []
    minus = []
    for k in range(f.structure.num_blocks):
        dec = f.block_eig(k)
        plus.append(dec.apply(lambda w: np.maximum(w, 0.0)))
        minus.append(dec.apply(lambda w: np.maximum(-w, 0.0)))
    return (HermitianFunctional(f.structure, plus),
            HermitianFunctional(f.structure, minus))


def compress(f, g):
    """Compressed functional with representation g* rep g per block."""
    _check_same_structure(f, g)
    rep = [b.conj().T @ r @ b for r, b in zip(f.rep, g.blocks)]
    return HermitianFunctional(f.structure, rep)


def rank_one(structure, block_index, v):
    """Unit-norm positive functional v v* supported on a single block."""
    if not isinstance(structure, BlockStructure):
        structure = BlockStructure(structure)
    if not 0 <= block_index < structure.num_blocks:
        raise IndexOutOfRange(
            f"block index {block_index} outside 0..{structure.num_blocks - 1}")
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    d = structure.block_dims[block_index]
    if v.shape != (d,):
        raise ValueError(f"vector has length {v.shape[0]}, block dim is {d}")
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-12:
        raise NotUnitVector(f"|v| = {nrm!r}, expected 1 within 1e-12")
    rep = [np.zeros((dd, dd), complex) for dd in structure.block_dims]
    rep[block_index] = np.outer(v, v.conj())
    return HermitianFunctional(structure, rep)


def random_functional(structure, rng, normalize=True):
    """Gaussian Hermitian functional; normalized to unit dual norm by default."""
    if not isinstance(structure, BlockStructure):
        structure = BlockStructure(structure)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    rep = []
    for d in structure.block_dims:
        x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        rep.append((x + x.conj().T) / 2.0)
    f = HermitianFunctional(structure, rep)
    if normalize:
        nrm = functional_norm(f)
        if nrm > 0.0:
            f = (1.0 / nrm) * f
    return f
