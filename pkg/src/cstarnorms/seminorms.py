"""Weighted L1-type seminorms on the dual, by closed form and by optimization.

For a positive element a, the seminorm of a Hermitian functional f is

    r(a, f) = inf { f1(a) + f2(a)  :  f = f1 - f2,  f1, f2 positive }
            = trace norm of a^{1/2} rep(f) a^{1/2}.

Both routes are implemented: :func:`r_closed_form` evaluates the compressed
trace norm, and :func:`r_variational` minimizes over decompositions without
ever invoking the closed-form identity, so the two act as mutual oracles.
On top of them sit the norm-equivalence constants, the faithfulness test,
and the invertibility decision they certify.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels, spectral
from .algebra import range_projection
from .errors import (BadExponents, NoConvergence, NotInvertible, NotPositive,
                     StructureMismatch, ZeroElement)
from .functionals import (HermitianFunctional, pair, rank_one,
                          random_functional)
from .spectral import OFFDIAG_RTOL, RANK_RTOL, SWEEP_FACTOR

# Decomposition solver parameters.
MAX_ITERATIONS = 50_000
PATIENCE = 10          # consecutive stalled iterations before stopping
RELAXATION = 1.6       # Douglas-Rachford over-relaxation factor
RATIO_FLOOR = 1e-12    # denominators below this are excluded from ratio sampling


@dataclass
class DecompositionSolution:
    """Near-optimal decomposition f = f1 - f2 with its objective value."""
    value: float
    f1: HermitianFunctional
    f2: HermitianFunctional
    iterations: int
    residual: float


@dataclass
class EquivalenceConstants:
    """Tight constants c_lower * r_{a^alpha} <= r_{a^beta} <= c_upper * r_{a^alpha}.

    ``alpha = 0`` denotes the range-projection seminorm (the gamma -> 0 limit
    of the spectral powers).  The witnesses are rank-one functionals built
    from extreme eigenvectors; each attains its constant exactly.
    """
    alpha: float
    beta: float
    c_lower: float
    c_upper: float
    witness_lower: HermitianFunctional
    witness_upper: HermitianFunctional


@dataclass
class FaithfulnessResult:
    faithful: bool
    witness: Optional[HermitianFunctional]


@dataclass
class InvertibilityDecision:
    invertible: bool
    reconstructed_bounds: Optional[Tuple[float, float]]


def _require_positive(a, what):
    if not a.is_positive:
        raise NotPositive(f"{what} requires a positive element")


def r_closed_form(a, f):
    """Seminorm of f weighted by a: trace norm of a^{1/2} rep(f) a^{1/2}."""
    _require_positive(a, "r_closed_form")
    if a.structure != f.structure:
        raise StructureMismatch(f"{a.structure} vs {f.structure}")
    total = 0.0
    for k in range(a.structure.num_blocks):
        dec = a.block_eig(k)
        root = dec.apply(lambda w: np.sqrt(np.maximum(w, 0.0)))
        total += spectral.trace_norm(root @ f.rep[k] @ root)
    return total


def _min_eig(m):
    return _kernels.min_eig(np.ascontiguousarray(m), SWEEP_FACTOR, OFFDIAG_RTOL)


def _solve_block(w, u, f_block, kernel_cutoff, block_tol, block_index):
    """Decomposition program on one block, in the eigenbasis of the weight.

    Eigenvalues at or below ``kernel_cutoff`` form the kernel part, where the
    infimum need not be attained; after solving the range part the kernel
    receives the cheapest mass that makes the decomposition feasible.  If the
    objective overshoot from that mass would exceed the tolerance budget (the
    weight has eigenvalues just below the cutoff), retry keeping every
    strictly positive eigenvalue in the range part.
    """
    n = w.shape[0]
    keep = w > kernel_cutoff
    r = int(keep.sum())
    order = np.argsort(~keep, kind="stable")
    uo = np.ascontiguousarray(u[:, order])
    wo = w[order]
    ft = uo.conj().T @ f_block @ uo
    ft = np.ascontiguousarray((ft + ft.conj().T) / 2.0)
    if r == 0:
        # zero weight: the Jordan negative part is an exact optimum
        return _kernels.psd_project(-ft, SWEEP_FACTOR, OFFDIAG_RTOL), uo, 0

    grr, iters, converged = _kernels.dr_solve(
        wo[:r], np.ascontiguousarray(ft[:r, :r]), block_tol,
        MAX_ITERATIONS, PATIENCE, RELAXATION, SWEEP_FACTOR, OFFDIAG_RTOL)
    if not converged:
        raise NoConvergence(
            f"decomposition solver exhausted {MAX_ITERATIONS} iterations "
            f"on block {block_index}; consider relaxing tol")
    val_est = 2.0 * float(np.sum(np.diag(grr).real * wo[:r]))
    budget = 0.5 * block_tol * max(1.0, abs(val_est))

    gt = np.zeros((n, n), dtype=complex)
    gt[:r, :r] = grr
    deficit = _min_eig(ft + gt)
    if deficit >= 0.0:
        return gt, uo, iters

    # uniform shift: keeps both cones, costs 2*(-deficit)*tr(weight)
    shift_cost = 2.0 * (-deficit) * float(wo.sum())
    if shift_cost <= budget or r == n:
        # with no kernel part the solver polish leaves only a rounding-level
        # deficit, so the shift is always affordable
        gt += (-deficit) * np.eye(n)
        return gt, uo, iters

    # slack on the range block plus heavy mass on the kernel block
    delta = budget / (4.0 * float(wo[:r].sum()))
    frk = ft[:r, r:]
    fkk = ft[r:, r:]
    s = max(_min_eig(grr + ft[:r, :r]), 0.0) + delta
    nfrk = spectral.operator_norm(frk @ frk.conj().T) ** 0.5
    nfkk = spectral.operator_norm(fkk)
    mu = nfkk + (nfrk ** 2) / s
    overshoot = 2.0 * delta * float(wo[:r].sum()) + 2.0 * mu * float(wo[r:].sum())
    if overshoot > budget and kernel_cutoff > 0.0:
        return _solve_block(w, u, f_block, 0.0, block_tol, block_index)
    gt[:r, :r] += delta * np.eye(r)
    gt[r:, r:] += mu * np.eye(n - r)
    residue = _min_eig(ft + gt)
    if residue < 0.0:
        gt += (-residue) * np.eye(n)
    return gt, uo, iters


def r_variational(a, f, tol=1e-7):
    """Minimize f1(a) + f2(a) over decompositions f = f1 - f2 into positive parts.

    Writing f2 = G, the program is  min 2 tr(a G) + f(a)  over the cone
    intersection {G >= 0} ∩ {G >= -rep(f)}, solved per block by over-relaxed
    Douglas-Rachford alternating projections in the eigenbasis of a.  On the
    kernel of a the infimum need not be attained; the returned decomposition
    places explicit mass there so that it is feasible and its value is within
    ``tol * max(1, value)`` of the infimum.  Raises NoConvergence if any
    block exhausts the iteration budget.
    """
    _require_positive(a, "r_variational")
    if a.structure != f.structure:
        raise StructureMismatch(f"{a.structure} vs {f.structure}")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    nb = a.structure.num_blocks
    block_tol = tol / nb
    lmax_global = a.spectral_bounds()[1]
    rank_tol = RANK_RTOL * lmax_global
    g_blocks = []
    iterations = 0
    for k in range(nb):
        dec = a.block_eig(k)
        w = np.maximum(dec.eigenvalues, 0.0)
        u = dec.eigenvectors
        gt, uo, iters = _solve_block(w, u, f.rep[k], rank_tol, block_tol, k)
        iterations = max(iterations, iters)
        gk = uo @ gt @ uo.conj().T
        g_blocks.append((gk + gk.conj().T) / 2.0)
    f2 = HermitianFunctional(a.structure, g_blocks)
    f1 = f + f2
    value = pair(f1, a) + pair(f2, a)
    residual = 0.0
    for k in range(nb):
        diff = f.rep[k] - f1.rep[k] + f2.rep[k]
        residual += float((np.abs(diff) ** 2).sum())
    return DecompositionSolution(value=value, f1=f1, f2=f2,
                                 iterations=iterations,
                                 residual=float(np.sqrt(residual)))


# -- norm-equivalence constants -------------------------------------------


def _extreme_eigvectors(a):
    """Global (lambda_min, block, vector) and (lambda_max, block, vector)."""
    lo = None
    hi = None
    for k in range(a.structure.num_blocks):
        dec = a.block_eig(k)
        w = dec.eigenvalues
        if lo is None or w[0] < lo[0]:
            lo = (float(w[0]), k, dec.eigenvectors[:, 0].copy())
        if hi is None or w[-1] > hi[0]:
            hi = (float(w[-1]), k, dec.eigenvectors[:, -1].copy())
    return lo, hi


def _unit_witness(a, which):
    val, k, v = which
    v = v / np.linalg.norm(v)
    return rank_one(a.structure, k, v)


def equivalence_constants(a, alpha, beta):
    """Tight constants between r_{a^alpha} and r_{a^beta} for invertible a.

    For d = beta - alpha the constants are lambda_min(a)^d and lambda_max(a)^d
    (ordered), attained by rank-one functionals on the extreme eigenvectors.
    """
    _require_positive(a, "equivalence_constants")
    lmin, lmax = a.spectral_bounds()
    if lmin <= RANK_RTOL * lmax:
        raise NotInvertible(f"lambda_min = {lmin:.3e} is below the rank threshold")
    lo, hi = _extreme_eigvectors(a)
    d = beta - alpha
    ratio_min_vec = lmin ** d
    ratio_max_vec = lmax ** d
    w_min = _unit_witness(a, lo)
    w_max = _unit_witness(a, hi)
    if ratio_min_vec <= ratio_max_vec:
        c_lower, c_upper = ratio_min_vec, ratio_max_vec
        witness_lower, witness_upper = w_min, w_max
    else:
        c_lower, c_upper = ratio_max_vec, ratio_min_vec
        witness_lower, witness_upper = w_max, w_min
    return EquivalenceConstants(alpha=float(alpha), beta=float(beta),
                                c_lower=float(c_lower), c_upper=float(c_upper),
                                witness_lower=witness_lower,
                                witness_upper=witness_upper)


def _ratio_samples(a, alpha, beta, trials, seed, extra=()):
    """Ratios r_{a^beta}(f) / r_{a^alpha}(f) over seeded random functionals."""
    a_alpha = a.power(alpha) if alpha != 1.0 else a
    a_beta = a.power(beta) if beta != 1.0 else a
    ratios = []
    skipped = 0
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        f = random_functional(a.structure, rng)
        den = r_closed_form(a_alpha, f)
        if den <= RATIO_FLOOR:
            skipped += 1
            continue
        ratios.append(r_closed_form(a_beta, f) / den)
    for f in extra:
        den = r_closed_form(a_alpha, f)
        if den <= RATIO_FLOOR:
            skipped += 1
            continue
        ratios.append(r_closed_form(a_beta, f) / den)
    return ratios, skipped


def empirical_ratio_bounds(a, alpha, beta, trials, seed, include_witnesses=False):
    """Monte Carlo (min, max) of the seminorm ratio between exponents.

    Functionals whose denominator seminorm falls below RATIO_FLOOR are
    excluded (on singular a the ratio is 0/0 on the kernel).  With
    ``include_witnesses`` the extreme-eigenvector functionals join the
    sample so the analytic constants are attained exactly.
    """
    _require_positive(a, "empirical_ratio_bounds")
    if trials < 1 and not include_witnesses:
        raise ValueError("trials must be >= 1")
    lmin, lmax = a.spectral_bounds()
    if lmax <= 0.0:
        raise ZeroElement("ratios undefined on the zero element")
    extra = ()
    if include_witnesses:
        lo, hi = _extreme_eigvectors(a)
        extra = (_unit_witness(a, lo), _unit_witness(a, hi))
    ratios, _ = _ratio_samples(a, alpha, beta, trials, seed, extra=extra)
    if not ratios:
        raise ZeroElement("no sampled functional had a usable denominator")
    return float(min(ratios)), float(max(ratios))


def faithfulness_check(a):
    """Decide whether the seminorm is a norm; produce a kernel witness if not.

    In finite dimensions the seminorm is faithful exactly when a is
    invertible.  A failing element yields a unit-norm positive functional
    supported on a kernel eigenvector, on which the seminorm vanishes.
    """
    _require_positive(a, "faithfulness_check")
    lmin, lmax = a.spectral_bounds()
    if lmin > RANK_RTOL * lmax:
        return FaithfulnessResult(faithful=True, witness=None)
    lo, _ = _extreme_eigvectors(a)
    return FaithfulnessResult(faithful=False, witness=_unit_witness(a, lo))


def decide_invertibility(a, alpha, beta, trials, seed, include_witnesses=False):
    """Invertibility decision through the seminorm-equivalence route.

    First the faithfulness criterion; then the sampled ratio of the two
    power seminorms.  A minimum ratio above the rank threshold certifies
    invertibility, and the extreme ratios reconstruct spectral bounds
    (m^{1/(beta-alpha)}, M^{1/(beta-alpha)}) that bracket the true ones
    from inside.
    """
    _require_positive(a, "decide_invertibility")
    if alpha <= 0.0 or beta <= 0.0 or alpha == beta:
        raise BadExponents(f"need distinct positive exponents, got ({alpha}, {beta})")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not faithfulness_check(a).faithful:
        return InvertibilityDecision(invertible=False, reconstructed_bounds=None)
    lo_exp, hi_exp = sorted((alpha, beta))
    d = hi_exp - lo_exp
    extra = ()
    if include_witnesses:
        lo, hi = _extreme_eigvectors(a)
        extra = (_unit_witness(a, lo), _unit_witness(a, hi))
    ratios, _ = _ratio_samples(a, lo_exp, hi_exp, trials, seed, extra=extra)
    if not ratios:
        return InvertibilityDecision(invertible=False, reconstructed_bounds=None)
    m = min(ratios)
    big = max(ratios)
    threshold = RANK_RTOL * a.operator_norm() ** d
    if m <= threshold:
        return InvertibilityDecision(invertible=False, reconstructed_bounds=None)
    return InvertibilityDecision(
        invertible=True,
        reconstructed_bounds=(float(m ** (1.0 / d)), float(big ** (1.0 / d))))


def compressed_equivalence_constants(a, gamma):
    """Constants relating r_{a^gamma} to the range-projection seminorm.

    With lambda'_min the smallest eigenvalue above the rank threshold and p
    the range projection of a:  (lambda'_min)^gamma * r_p <= r_{a^gamma}
    <= (lambda_max)^gamma * r_p.  Reported with ``alpha = 0`` standing for
    the projection side.  Raises ZeroElement when a = 0.
    """
    _require_positive(a, "compressed_equivalence_constants")
    if not gamma > 0.0:
        raise BadExponents(f"gamma must be positive, got {gamma}")
    lmin, lmax = a.spectral_bounds()
    if lmax <= 0.0:
        raise ZeroElement("both seminorms vanish identically on the zero element")
    rank_tol = RANK_RTOL * lmax
    lo_nz = None
    hi = None
    for k in range(a.structure.num_blocks):
        dec = a.block_eig(k)
        w = dec.eigenvalues
        for i in range(w.shape[0]):
            if w[i] > rank_tol and (lo_nz is None or w[i] < lo_nz[0]):
                lo_nz = (float(w[i]), k, dec.eigenvectors[:, i].copy())
        if hi is None or w[-1] > hi[0]:
            hi = (float(w[-1]), k, dec.eigenvectors[:, -1].copy())
    return EquivalenceConstants(alpha=0.0, beta=float(gamma),
                                c_lower=float(lo_nz[0] ** gamma),
                                c_upper=float(hi[0] ** gamma),
                                witness_lower=_unit_witness(a, lo_nz),
                                witness_upper=_unit_witness(a, hi))


def projection_seminorm(a, f):
    """Seminorm weighted by the range projection of a."""
    return r_closed_form(range_projection(a), f)
