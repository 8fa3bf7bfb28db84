"""Finite-dimensional C*-algebras as direct sums of full matrix blocks.

An algebra is described by its block dimensions; an element is a tuple of
complex matrices, one per block.  Elements are immutable: the underlying
arrays are copied on construction and marked read-only, so classification
predicates and spectral data can be cached safely.
"""

import numpy as np

from . import spectral
from .errors import NotPositive, SingularPower, StructureMismatch
from .spectral import EIG_RTOL, RANK_RTOL


class BlockStructure:
    """Block dimensions of the algebra ⊕_k M_{n_k}(C)."""

    __slots__ = ("block_dims",)

    def __init__(self, block_dims):
        dims = tuple(int(d) for d in block_dims)
        if not dims:
            raise ValueError("at least one block is required")
        if any(d < 1 for d in dims):
            raise ValueError(f"block dims must be >= 1, got {dims}")
        self.block_dims = dims

    @property
    def num_blocks(self):
        return len(self.block_dims)

    @property
    def matrix_dim(self):
        """Total matrix side length: sum of block dims."""
        return sum(self.block_dims)

    @property
    def coordinate_dim(self):
        """Linear dimension of the algebra: sum of squared block dims."""
        return sum(d * d for d in self.block_dims)

    def __eq__(self, other):
        return isinstance(other, BlockStructure) and self.block_dims == other.block_dims

    def __hash__(self):
        return hash(self.block_dims)

    def __repr__(self):
        return f"BlockStructure{self.block_dims}"


def _check_same_structure(a, b):
    if a.structure != b.structure:
        raise StructureMismatch(f"{a.structure} vs {b.structure}")


class Element:
    """Block-diagonal element of the algebra, immutable after construction."""

    __slots__ = ("structure", "blocks", "_eig", "_flags")

    def __init__(self, structure, blocks):
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        blocks = [spectral.as_complex_matrix(b).copy() for b in blocks]
        if len(blocks) != structure.num_blocks:
            raise StructureMismatch(
                f"expected {structure.num_blocks} blocks, got {len(blocks)}")
        for k, (b, d) in enumerate(zip(blocks, structure.block_dims)):
            if b.shape != (d, d):
                raise StructureMismatch(f"block {k} has shape {b.shape}, expected ({d}, {d})")
            b.setflags(write=False)
        self.structure = structure
        self.blocks = tuple(blocks)
        self._eig = {}
        self._flags = {}

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, structure):
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        return cls(structure, [np.eye(d, dtype=complex) for d in structure.block_dims])

    @classmethod
    def zero(cls, structure):
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        return cls(structure, [np.zeros((d, d), complex) for d in structure.block_dims])

    @classmethod
    def from_diagonals(cls, structure, values):
        """Element with the given diagonal entries, consumed block by block."""
        if not isinstance(structure, BlockStructure):
            structure = BlockStructure(structure)
        values = list(values)
        if len(values) != structure.matrix_dim:
            raise ValueError(
                f"need {structure.matrix_dim} diagonal values, got {len(values)}")
        blocks = []
        pos = 0
        for d in structure.block_dims:
            blocks.append(np.diag(np.asarray(values[pos:pos + d], dtype=complex)))
            pos += d
        return cls(structure, blocks)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        _check_same_structure(self, other)
        return Element(self.structure,
                       [x + y for x, y in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        _check_same_structure(self, other)
        return Element(self.structure,
                       [x - y for x, y in zip(self.blocks, other.blocks)])

    def __mul__(self, other):
        if isinstance(other, Element):
            _check_same_structure(self, other)
            return Element(self.structure,
                           [x @ y for x, y in zip(self.blocks, other.blocks)])
        return Element(self.structure, [complex(other) * b for b in self.blocks])

    def __rmul__(self, other):
        return Element(self.structure, [complex(other) * b for b in self.blocks])

    def __neg__(self):
        return Element(self.structure, [-b for b in self.blocks])

    def adjoint(self):
        return Element(self.structure, [b.conj().T for b in self.blocks])

    # -- spectral data ------------------------------------------------

    def block_eig(self, k):
        """Cached eigendecomposition of block k (Hermitian blocks only)."""
        dec = self._eig.get(k)
        if dec is None:
            dec = spectral.hermitian_eig(self.blocks[k])
            self._eig[k] = dec
        return dec

    def eigenvalues(self):
        """All eigenvalues across blocks, ascending (Hermitian elements only)."""
        w = np.concatenate([self.block_eig(k).eigenvalues
                            for k in range(self.structure.num_blocks)])
        return np.sort(w)

    def operator_norm(self):
        return max(spectral.operator_norm(b) for b in self.blocks)

    def rank_tol(self):
        """Global kernel threshold RANK_RTOL * lambda_max over all blocks."""
        if not self.is_hermitian:
            raise NotPositive("rank threshold defined for Hermitian elements")
        lmax = max(float(np.abs(self.block_eig(k).eigenvalues).max())
                   for k in range(self.structure.num_blocks))
        return RANK_RTOL * lmax

    # -- predicates (cached; elements are immutable) --------------------

    @property
    def is_hermitian(self):
        flag = self._flags.get("hermitian")
        if flag is None:
            flag = all(spectral.is_hermitian_matrix(b) for b in self.blocks)
            self._flags["hermitian"] = flag
        return flag

    @property
    def is_positive(self):
        flag = self._flags.get("positive")
        if flag is None:
            if not self.is_hermitian:
                flag = False
            else:
                flag = True
                for k, b in enumerate(self.blocks):
                    w = self.block_eig(k).eigenvalues
                    tol = EIG_RTOL * max(1.0, float(np.abs(w).max()))
                    if w[0] < -tol:
                        flag = False
                        break
            self._flags["positive"] = flag
        return flag

    @property
    def is_projection(self):
        flag = self._flags.get("projection")
        if flag is None:
            flag = self.is_hermitian
            if flag:
                for b in self.blocks:
                    tol = EIG_RTOL * max(1.0, spectral.operator_norm(b))
                    if np.abs(b @ b - b).max() > tol:
                        flag = False
                        break
            self._flags["projection"] = flag
        return flag

    @property
    def is_invertible(self):
        flag = self._flags.get("invertible")
        if flag is None:
            smin = np.inf
            smax = 0.0
            for k, b in enumerate(self.blocks):
                if self.is_hermitian:
                    s = np.abs(self.block_eig(k).eigenvalues)
                else:
                    gram = spectral.hermitian_eig(b.conj().T @ b).eigenvalues
                    s = np.sqrt(np.maximum(gram, 0.0))
                smin = min(smin, float(s.min()))
                smax = max(smax, float(s.max()))
            flag = smin > RANK_RTOL * smax
            self._flags["invertible"] = flag
        return flag

    # -- operations -----------------------------------------------------

    def power(self, alpha):
        """Blockwise spectral power; alpha <= 0 requires global invertibility."""
        if not self.is_positive:
            raise NotPositive("power requires a positive element")
        lmin, lmax = self.spectral_bounds()
        tol = RANK_RTOL * lmax
        if alpha <= 0.0 and lmin <= tol:
            raise SingularPower(
                f"exponent {alpha} needs an invertible element; lambda_min={lmin:.3e}")
        blocks = []
        for k in range(self.structure.num_blocks):
            dec = self.block_eig(k)
            blocks.append(dec.apply(lambda w: np.power(np.maximum(w, 0.0), alpha)))
        return Element(self.structure, blocks)

    def spectral_bounds(self):
        """Global (lambda_min, lambda_max) over all blocks of a positive element."""
        if not self.is_positive:
            raise NotPositive("spectral_bounds requires a positive element")
        lmin = np.inf
        lmax = -np.inf
        for k in range(self.structure.num_blocks):
            w = self.block_eig(k).eigenvalues
            lmin = min(lmin, float(w[0]))
            lmax = max(lmax, float(w[-1]))
        return max(lmin, 0.0), max(lmax, 0.0)

    def __repr__(self):
        return f"Element(structure={self.structure.block_dims})"


# -- module-level operation surface -------------------------------------

def identity(structure):
    return Element.identity(structure)


def add(x, y):
    return x + y


def mul(x, y):
    return x * y


def scale(c, x):
    return c * x


def adjoint(x):
    return x.adjoint()


def element_power(a, alpha):
    return a.power(alpha)


def spectral_bounds(a):
    return a.spectral_bounds()


def range_projection(a, method="spectral", epsilon=None):
    """Blockwise range projection with the global kernel threshold."""
    if not a.is_positive:
        raise NotPositive("range_projection requires a positive element")
    tol = a.rank_tol()
    return Element(a.structure,
                   [spectral.range_projection(b, method=method, epsilon=epsilon, rank_tol=tol)
                    for b in a.blocks])


# -- JSON block format ----------------------------------------------------

def element_to_dict(x):
    """Serialize to the shared JSON block format."""
    blocks = []
    for b in x.blocks:
        blocks.append({
            "dim": b.shape[0],
            "re": b.real.tolist(),
            "im": b.imag.tolist(),
        })
    return {"blocks": blocks}


def element_from_dict(data):
    """Parse the shared JSON block format; "im" is optional and defaults to zero."""
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValueError('expected an object with a "blocks" array')
    raw = data["blocks"]
    if not isinstance(raw, list) or not raw:
        raise ValueError('"blocks" must be a nonempty array')
    dims = []
    blocks = []
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict) or "dim" not in entry or "re" not in entry:
            raise ValueError(f'block {k}: expected an object with "dim" and "re"')
        d = int(entry["dim"])
        re = np.asarray(entry["re"], dtype=np.float64)
        im = np.asarray(entry.get("im", np.zeros((d, d))), dtype=np.float64)
        if re.shape != (d, d) or im.shape != (d, d):
            raise ValueError(
                f'block {k}: "re"/"im" must be {d}x{d} arrays, got {re.shape} and {im.shape}')
        dims.append(d)
        blocks.append(re + 1j * im)
    return Element(BlockStructure(dims), blocks)
