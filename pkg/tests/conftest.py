import numpy as np
import pytest

from cstarnorms import BlockStructure, Element, HermitianFunctional


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(n, rng, scale=1.0):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (x + x.conj().T) / 2.0


def random_positive_element(dims, rng, lo=0.1, hi=4.0, kernel=0):
    """Haar-conjugated positive element with eigenvalues in [lo, hi]."""
    structure = BlockStructure(dims)
    eigs = rng.uniform(lo, hi, structure.matrix_dim)
    if kernel:
        eigs[rng.choice(structure.matrix_dim, kernel, replace=False)] = 0.0
    blocks = []
    pos = 0
    for d in structure.block_dims:
        z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, r = np.linalg.qr(z)
        q = q * (np.diag(r) / np.abs(np.diag(r))).conj()
        lam = eigs[pos:pos + d]
        pos += d
        b = (q * lam) @ q.conj().T
        blocks.append((b + b.conj().T) / 2.0)
    return Element(structure, blocks)


def random_functional_for(dims, rng, normalize=True):
    structure = BlockStructure(dims)
    rep = [random_hermitian(d, rng) for d in structure.block_dims]
    f = HermitianFunctional(structure, rep)
    if normalize:
        nrm = f.norm()
        if nrm > 0:
            f = (1.0 / nrm) * f
    return f
