"""Randomized theorem-verification harness with machine-readable reports.

Each checker draws seeded random elements and functionals, asserts one of
the toolkit's guaranteed inequalities or equivalences trial by trial, and
records violations as replayable failure entries.  Reports serialize to
JSON with a stable key order and fixed-precision numbers so identical
seeds produce byte-identical files.
"""

import hashlib
import io
import json
import time
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .algebra import BlockStructure, Element, range_projection, spectral_bounds
from .errors import BadSpec
from .functionals import functional_norm, pair, rank_one, random_functional
from .seminorms import (compressed_equivalence_constants, decide_invertibility,
                        empirical_ratio_bounds, equivalence_constants,
                        faithfulness_check, projection_seminorm, r_closed_form,
                        r_variational)
from .spectral import EIG_RTOL, RANK_RTOL, operator_norm

SCHEMA_VERSION = 1

DEFAULT_DIMS = ((2,), (3,), (4,), (1, 2), (2, 3))
DEFAULT_EXPONENT_GRID = ((1.0, 2.0), (0.5, 1.0), (1.0, 3.0), (2.0, 3.0))
DEFAULT_EPSILONS = (1e-1, 1e-2, 1e-3)
DEFAULT_RP_EPSILONS = (1e-2, 1e-4, 1e-6)


# -- seeded generators ------------------------------------------------------

@dataclass(frozen=True)
class UniformSpectrum:
    lo: float
    hi: float


@dataclass(frozen=True)
class FixedSpectrum:
    values: tuple


@dataclass(frozen=True)
class KernelSpectrum:
    """Uniform spectrum with ``rank_deficiency`` eigenvalues forced to zero."""
    rank_deficiency: int
    lo: float = 0.5
    hi: float = 2.0


@dataclass(frozen=True)
class GeneratorSpec:
    block_dims: tuple
    spectrum: object
    seed: int


def _sub_seed(*parts):
    """Deterministic integer seed derived from a tuple of integers."""
    return int(np.random.SeedSequence(tuple(int(p) for p in parts)).generate_state(1)[0])


def _haar_unitary(d, rng):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases.conjugate()


def generate_positive(spec):
    """Random positive element: Haar-conjugated blocks of the given spectrum."""
    structure = BlockStructure(spec.block_dims)
    total = structure.matrix_dim
    rng = np.random.default_rng(spec.seed)
    sp = spec.spectrum
    if isinstance(sp, UniformSpectrum):
        if sp.lo < 0 or sp.hi < sp.lo:
            raise BadSpec(f"uniform spectrum needs 0 <= lo <= hi, got ({sp.lo}, {sp.hi})")
        eigs = rng.uniform(sp.lo, sp.hi, total)
    elif isinstance(sp, FixedSpectrum):
        eigs = np.asarray(sp.values, dtype=float)
        if eigs.shape != (total,):
            raise BadSpec(f"fixed spectrum needs {total} eigenvalues, got {eigs.shape}")
        if np.any(eigs < 0):
            raise BadSpec("fixed spectrum must be nonnegative")
    elif isinstance(sp, KernelSpectrum):
        if not 0 <= sp.rank_deficiency < total:
            raise BadSpec(
                f"rank deficiency {sp.rank_deficiency} outside 0..{total - 1}")
        eigs = rng.uniform(sp.lo, sp.hi, total)
        zero_at = rng.choice(total, size=sp.rank_deficiency, replace=False)
        eigs[zero_at] = 0.0
    else:
        raise BadSpec(f"unknown spectrum kind {type(sp).__name__}")
    blocks = []
    pos = 0
    for d in structure.block_dims:
        u = _haar_unitary(d, rng)
        lam = eigs[pos:pos + d]
        pos += d
        b = (u * lam) @ u.conj().T
        blocks.append((b + b.conj().T) / 2.0)
    return Element(structure, blocks)


def _random_pair(dims, base_seed, trial, singular_every=4):
    """Seeded (element, functional) pair for trial-indexed sampling."""
    structure = BlockStructure(dims)
    if singular_every and structure.matrix_dim > 1 and trial % singular_every == singular_every - 1:
        spectrum = KernelSpectrum(rank_deficiency=1, lo=0.3, hi=4.0)
    else:
        spectrum = UniformSpectrum(0.3, 4.0)
    a = generate_positive(GeneratorSpec(tuple(dims), spectrum,
                                        _sub_seed(base_seed, trial, 11)))
    f = random_functional(structure, np.random.default_rng(_sub_seed(base_seed, trial, 13)))
    return a, f


# -- reports ---------------------------------------------------------------

def _digest(*arrays):
    h = hashlib.sha256()
    for arr in arrays:
        h.update(np.ascontiguousarray(arr).tobytes())
    return h.hexdigest()[:16]


def _digest_pair(a, f=None):
    arrays = list(a.blocks)
    if f is not None:
        arrays += list(f.rep)
    return _digest(*arrays)


def _round12(x):
    return float(f"{float(x):.11e}")


@dataclass
class VerificationReport:
    suite: str
    trials: int
    failures: List[dict] = field(default_factory=list)
    constants_table: List[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def add_failure(self, check_id, inputs, lhs, rhs, slack, seed, trial):
        self.failures.append({
            "check_id": check_id,
            "inputs": inputs,
            "lhs": _round12(lhs),
            "rhs": _round12(rhs),
            "slack": _round12(slack),
            "seed": int(seed),
            "trial": int(trial),
        })

    def add_constants_row(self, alpha, beta, analytic_c, analytic_upper,
                          empirical_min, empirical_max):
        self.constants_table.append({
            "alpha": _round12(alpha),
            "beta": _round12(beta),
            "analytic_c": _round12(analytic_c),
            "analytic_C": _round12(analytic_upper),
            "empirical_min": _round12(empirical_min),
            "empirical_max": _round12(empirical_max),
        })

    def merge(self, other):
        self.failures.extend(other.failures)
        self.constants_table.extend(other.constants_table)
        self.elapsed += other.elapsed
        return self

    def to_dict(self):
        # elapsed is intentionally not serialized: reports must be
        # byte-identical across reruns with the same seed and flags
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "constants_table": self.constants_table,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def constants_table_csv(report):
    """CSV export of the constants table only."""
    out = io.StringIO()
    cols = ("alpha", "beta", "analytic_c", "analytic_C", "empirical_min", "empirical_max")
    out.write(",".join(cols) + "\n")
    for row in report.constants_table:
        out.write(",".join(f"{row[c]:.11e}" for c in cols) + "\n")
    return out.getvalue()


# -- checkers ----------------------------------------------------------------

def check_closed_form(trials, dims=DEFAULT_DIMS, seed=0, tol=1e-5,
                      solver_tol=1e-7, closed_form_fn=None):
    """Variational solver against the closed form on seeded random pairs."""
    start = time.perf_counter()
    report = VerificationReport(suite="closed", trials=trials)
    cf_fn = closed_form_fn or r_closed_form
    for trial in range(trials):
        a, f = _random_pair(dims[trial % len(dims)], seed, trial)
        cf = cf_fn(a, f)
        sol = r_variational(a, f, tol=solver_tol)
        slack = tol * max(1.0, cf)
        if abs(sol.value - cf) > slack:
            report.add_failure("closed/oracle-equivalence", _digest_pair(a, f),
                               sol.value, cf, slack, seed, trial)
    report.elapsed = time.perf_counter() - start
    return report


def check_power_inequality(trials, dims=DEFAULT_DIMS,
                           exponent_grid=DEFAULT_EXPONENT_GRID, seed=0,
                           slack=1e-10):
    """r_{a^beta}(f) <= ||a^{beta-alpha}|| r_{a^alpha}(f) on seeded samples."""
    for alpha, beta in exponent_grid:
        if not 0.0 < alpha < beta:
            raise BadSpec(f"exponent grid needs 0 < alpha < beta, got ({alpha}, {beta})")
    start = time.perf_counter()
    report = VerificationReport(suite="power", trials=trials)
    for trial in range(trials):
        a, f = _random_pair(dims[trial % len(dims)], seed, trial)
        powers = {}
        for alpha, beta in exponent_grid:
            for expo in (alpha, beta, beta - alpha):
                if expo not in powers:
                    powers[expo] = a.power(expo)
            lhs = r_closed_form(powers[beta], f)
            rhs = powers[beta - alpha].operator_norm() * r_closed_form(powers[alpha], f)
            if lhs > rhs + slack:
                report.add_failure(f"power/({alpha},{beta})", _digest_pair(a, f),
                                   lhs, rhs, slack, seed, trial)
    report.elapsed = time.perf_counter() - start
    return report


def default_corpus_specs(seed=0, dims=DEFAULT_DIMS):
    """Mixed corpus of generator specs: half invertible, half rank-deficient."""
    specs = []
    idx = 0
    for block_dims in dims:
        total = sum(block_dims)
        specs.append(GeneratorSpec(block_dims, UniformSpectrum(0.5, 4.0),
                                   _sub_seed(seed, idx, 3)))
        idx += 1
        specs.append(GeneratorSpec(block_dims, UniformSpectrum(0.1, 1.0),
                                   _sub_seed(seed, idx, 3)))
        idx += 1
        if total > 1:
            specs.append(GeneratorSpec(block_dims, KernelSpectrum(1),
                                       _sub_seed(seed, idx, 3)))
            idx += 1
        if total > 2:
            specs.append(GeneratorSpec(block_dims, KernelSpectrum(2),
                                       _sub_seed(seed, idx, 3)))
            idx += 1
    specs.append(GeneratorSpec((2,), FixedSpectrum((4.0, 1.0)), _sub_seed(seed, idx, 3)))
    specs.append(GeneratorSpec((2,), FixedSpectrum((2.0, 0.0)), _sub_seed(seed, idx + 1, 3)))
    specs.append(GeneratorSpec((3,), FixedSpectrum((1.0, 1.0, 1.0)), _sub_seed(seed, idx + 2, 3)))
    specs.append(GeneratorSpec((1, 2), FixedSpectrum((0.0, 1.0, 2.0)), _sub_seed(seed, idx + 3, 3)))
    return specs


def check_invertibility_theorem(corpus_specs=None, seed=0, alpha=1.0, beta=2.0,
                                trials=50):
    """Equivalence loop: invertibility <=> faithfulness <=> ratio decision.

    Invertible corpus elements also get their analytic constants checked
    for witness attainment and Monte Carlo containment; singular ones get
    kernel-witness checks and the compressed equivalence with the
    range-projection seminorm.
    """
    start = time.perf_counter()
    if corpus_specs is None:
        corpus_specs = default_corpus_specs(seed)
    report = VerificationReport(suite="invert", trials=trials)
    for idx, spec in enumerate(corpus_specs):
        a = generate_positive(spec)
        digest = _digest_pair(a)
        truth = a.is_invertible
        fc = faithfulness_check(a)
        if fc.faithful != truth:
            report.add_failure("invert/faithfulness-vs-truth", digest,
                               float(fc.faithful), float(truth), 0.0, spec.seed, idx)
        decision = decide_invertibility(a, alpha, beta, trials=trials,
                                        seed=_sub_seed(seed, idx, 17),
                                        include_witnesses=True)
        if decision.invertible != truth:
            report.add_failure("invert/decision-vs-truth", digest,
                               float(decision.invertible), float(truth),
                               0.0, spec.seed, idx)
            continue
        lmin, lmax = spectral_bounds(a)
        if truth:
            eq = equivalence_constants(a, alpha, beta)
            for name, witness, constant in (("lower", eq.witness_lower, eq.c_lower),
                                            ("upper", eq.witness_upper, eq.c_upper)):
                num = r_closed_form(a.power(beta), witness)
                den = r_closed_form(a.power(alpha), witness)
                ratio = num / den
                slack = 1e-8 * constant
                if abs(ratio - constant) > slack:
                    report.add_failure(f"invert/witness-{name}", digest,
                                       ratio, constant, slack, spec.seed, idx)
            emp_min, emp_max = empirical_ratio_bounds(
                a, alpha, beta, trials=trials, seed=_sub_seed(seed, idx, 19))
            slack_lo = 1e-9 * eq.c_lower
            slack_hi = 1e-9 * eq.c_upper
            if emp_min < eq.c_lower - slack_lo or emp_max > eq.c_upper + slack_hi:
                report.add_failure("invert/empirical-containment", digest,
                                   emp_min, emp_max, eq.c_lower, spec.seed, idx)
            report.add_constants_row(alpha, beta, eq.c_lower, eq.c_upper,
                                     emp_min, emp_max)
            lo_rec, hi_rec = decision.reconstructed_bounds
            if lo_rec < lmin * (1.0 - 1e-8) or hi_rec > lmax * (1.0 + 1e-8):
                report.add_failure("invert/reconstructed-bounds", digest,
                                   lo_rec, hi_rec, lmin, spec.seed, idx)
        else:
            witness = fc.witness
            wnorm = functional_norm(witness)
            if abs(wnorm - 1.0) > 1e-8:
                report.add_failure("invert/witness-norm", digest,
                                   wnorm, 1.0, 1e-8, spec.seed, idx)
            r_at_witness = r_closed_form(a, witness)
            if r_at_witness > 1e-8:
                report.add_failure("invert/witness-seminorm", digest,
                                   r_at_witness, 0.0, 1e-8, spec.seed, idx)
            if pair(witness, a) > 1e-8:
                report.add_failure("invert/witness-pairing", digest,
                                   pair(witness, a), 0.0, 1e-8, spec.seed, idx)
            cec = compressed_equivalence_constants(a, 1.0)
            for sub in range(10):
                f = random_functional(a.structure,
                                      np.random.default_rng(_sub_seed(seed, idx, 23, sub)))
                rp_val = projection_seminorm(a, f)
                ra_val = r_closed_form(a, f)
                tol = 1e-8 * max(1.0, ra_val)
                if not (cec.c_lower * rp_val - tol <= ra_val <= cec.c_upper * rp_val + tol):
                    report.add_failure("invert/compressed-equivalence",
                                       _digest_pair(a, f), ra_val,
                                       cec.c_upper * rp_val, tol, spec.seed, idx)
    report.elapsed = time.perf_counter() - start
    return report


def check_range_projection_limit(a_specs=None, epsilon_grid=DEFAULT_RP_EPSILONS,
                                 seed=0):
    """Convergence of a(eps + a)^{-1} to the spectral range projection."""
    eps = tuple(float(e) for e in epsilon_grid)
    if any(e <= 0 for e in eps) or any(eps[i] <= eps[i + 1] for i in range(len(eps) - 1)):
        raise BadSpec("epsilon grid must be positive and strictly decreasing")
    if a_specs is None:
        a_specs = [
            GeneratorSpec((2,), FixedSpectrum((2.0, 0.0)), _sub_seed(seed, 0, 29)),
            GeneratorSpec((3,), UniformSpectrum(0.5, 3.0), _sub_seed(seed, 1, 29)),
            GeneratorSpec((4,), KernelSpectrum(1), _sub_seed(seed, 2, 29)),
            GeneratorSpec((1, 2), KernelSpectrum(1), _sub_seed(seed, 3, 29)),
            GeneratorSpec((2,), FixedSpectrum((0.0, 0.0)), _sub_seed(seed, 4, 29)),
        ]
    start = time.perf_counter()
    report = VerificationReport(suite="rp", trials=len(a_specs) * len(eps))
    for idx, spec in enumerate(a_specs):
        a = generate_positive(spec)
        digest = _digest_pair(a)
        p_spectral = range_projection(a, method="spectral")
        lmin, lmax = a.spectral_bounds()
        tau = EIG_RTOL * max(1.0, lmax)
        nonzero = [w for k in range(a.structure.num_blocks)
                   for w in a.block_eig(k).eigenvalues if w > RANK_RTOL * lmax]
        lmin_nz = min(nonzero) if nonzero else None
        prev_err = None
        for j, e in enumerate(eps):
            p_limit = range_projection(a, method="limit", epsilon=e)
            err = max(operator_norm(x - y)
                      for x, y in zip(p_limit.blocks, p_spectral.blocks))
            bound = (e / (e + lmin_nz) + tau) if lmin_nz is not None else tau
            if err > bound:
                report.add_failure("rp/rate-bound", digest, err, bound, tau,
                                   spec.seed, idx * len(eps) + j)
            if prev_err is not None and err > prev_err + tau:
                report.add_failure("rp/monotone", digest, err, prev_err, tau,
                                   spec.seed, idx * len(eps) + j)
            prev_err = err
    report.elapsed = time.perf_counter() - start
    return report


def blowup_study(epsilons=DEFAULT_EPSILONS):
    """Divergence of the equivalence constant as invertibility degrades.

    For a = diag(1, eps) the kernel-direction witness has
    ||f|| / r_a(f) = 1/eps exactly; the table records eps against the
    measured ratio.
    """
    eps = tuple(float(e) for e in epsilons)
    if any(e <= 0 for e in eps) or any(eps[i] <= eps[i + 1] for i in range(len(eps) - 1)):
        raise BadSpec("epsilons must be positive and strictly decreasing")
    start = time.perf_counter()
    report = VerificationReport(suite="blowup", trials=len(eps))
    structure = BlockStructure((2,))
    witness = rank_one(structure, 0, np.array([0.0, 1.0]))
    for j, e in enumerate(eps):
        a = Element.from_diagonals(structure, [1.0, e])
        ratio = functional_norm(witness) / r_closed_form(a, witness)
        expected = 1.0 / e
        slack = 1e-9 * expected
        if abs(ratio - expected) > slack:
            report.add_failure("blowup/witness-ratio", _digest_pair(a, witness),
                               ratio, expected, slack, 0, j)
        report.add_constants_row(0.0, 1.0, e, 1.0, 1.0 / ratio, 1.0 / ratio)
    report.elapsed = time.perf_counter() - start
    return report


# -- suite runner -----------------------------------------------------------

SUITES = ("closed", "power", "invert", "rp", "blowup")


def run_suites(suite="all", seed=0, trials=200, dims=DEFAULT_DIMS):
    """Run one named suite or all of them, merged into a single report."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in SUITES:
            raise BadSpec(f"unknown suite {name!r}; choose from {('all',) + SUITES}")
    merged = VerificationReport(suite=suite, trials=trials)
    for name in names:
        if name == "closed":
            merged.merge(check_closed_form(trials, dims=dims, seed=seed))
        elif name == "power":
            merged.merge(check_power_inequality(trials, dims=dims, seed=seed))
        elif name == "invert":
            merged.merge(check_invertibility_theorem(seed=seed,
                                                     trials=max(10, trials // 4)))
        elif name == "rp":
            merged.merge(check_range_projection_limit(seed=seed))
        elif name == "blowup":
            merged.merge(blowup_study())
    return merged
