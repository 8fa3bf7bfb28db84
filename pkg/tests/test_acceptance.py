"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
lines on the terminal.
"""

import time

import numpy as np

from cstarnorms import (Element, HermitianFunctional, decide_invertibility,
                        faithfulness_check, functional_norm, identity,
                        jordan_decompose, pair, r_closed_form, r_variational,
                        range_projection, rank_one, spectral_bounds)
from cstarnorms.cli import main as cli_main
from cstarnorms.spectral import operator_norm
from cstarnorms.verify import default_corpus_specs, generate_positive
from conftest import random_functional_for, random_positive_element


def _report(num, description, violations):
    status = "PASS" if not violations else "FAIL"
    print(f"[criterion {num}] {status} - {description}")
    assert not violations, f"criterion {num}: {violations[:5]}"


def test_criterion_1_oracle_equivalence():
    rng = np.random.default_rng(101)
    shapes = [(2,), (3,), (4,), (5,), (8,), (1, 2), (2, 3), (3, 4), (2, 2, 2), (4, 4)]
    violations = []
    start = time.perf_counter()
    for i in range(200):
        dims = shapes[i % len(shapes)]
        kernel = 1 if i % 3 == 2 else 0
        a = random_positive_element(dims, rng, lo=0.2, hi=4.0, kernel=kernel)
        f = random_functional_for(dims, rng)
        cf = r_closed_form(a, f)
        sol = r_variational(a, f, tol=1e-7)
        if abs(sol.value - cf) > 1e-5 * max(1.0, cf):
            violations.append((i, dims, cf, sol.value))
    elapsed = time.perf_counter() - start
    anchor_a = Element.from_diagonals((2,), [4.0, 1.0])
    anchor_f = HermitianFunctional.from_diagonals((2,), [1.0, -1.0])
    if r_closed_form(anchor_a, anchor_f) != 5.0:
        violations.append(("anchor-closed", r_closed_form(anchor_a, anchor_f)))
    anchor_var = r_variational(anchor_a, anchor_f, tol=1e-7).value
    if abs(anchor_var - 5.0) > 1e-7 * 5.0:
        violations.append(("anchor-variational", anchor_var))
    if elapsed >= 60.0:
        violations.append(("runtime", elapsed))
    _report(1, f"200 pairs, variational vs closed form within 1e-5 ({elapsed:.1f}s)",
            violations)


def test_criterion_2_identity_weight_reproduces_dual_norm():
    rng = np.random.default_rng(202)
    violations = []
    one = identity((2, 3))
    for i in range(100):
        f = random_functional_for((2, 3), rng, normalize=False)
        nrm = functional_norm(f)
        if abs(r_closed_form(one, f) - nrm) > 1e-10 * max(1.0, nrm):
            violations.append(("closed", i))
        fp, fm = jordan_decompose(f)
        jordan_value = pair(fp, one) + pair(fm, one)
        sol = r_variational(one, f, tol=1e-7)
        if abs(jordan_value - sol.value) > 1e-6 * max(1.0, sol.value):
            violations.append(("jordan-vs-variational", i, jordan_value, sol.value))
    _report(2, "identity weight: dual norm within 1e-10, Jordan optimal within 1e-6",
            violations)


def test_criterion_3_power_inequality():
    rng = np.random.default_rng(303)
    pairs = ((1.0, 2.0), (0.5, 1.0), (1.0, 3.0), (2.0, 3.0))
    shapes = [(2,), (3,), (4,), (1, 2), (2, 3)]
    violations = []
    for i in range(500):
        dims = shapes[i % len(shapes)]
        kernel = 1 if i % 4 == 3 else 0
        a = random_positive_element(dims, rng, lo=0.2, hi=4.0, kernel=kernel)
        f = random_functional_for(dims, rng)
        for alpha, beta in pairs:
            lhs = r_closed_form(a.power(beta), f)
            rhs = a.power(beta - alpha).operator_norm() * r_closed_form(a.power(alpha), f)
            if lhs > rhs + 1e-10:
                violations.append((i, alpha, beta, lhs, rhs))
    _report(3, "500 trials x 4 exponent pairs, zero violations at slack 1e-10",
            violations)


def test_criterion_4_tight_constants():
    from cstarnorms import empirical_ratio_bounds, equivalence_constants
    a = Element.from_diagonals((2,), [4.0, 1.0])
    violations = []
    eq = equivalence_constants(a, 1.0, 2.0)
    if (eq.c_lower, eq.c_upper) != (1.0, 4.0):
        violations.append(("analytic", eq.c_lower, eq.c_upper))
    a2 = a.power(2.0)
    for name, witness, constant in (("lower", eq.witness_lower, 1.0),
                                    ("upper", eq.witness_upper, 4.0)):
        ratio = r_closed_form(a2, witness) / r_closed_form(a, witness)
        if abs(ratio - constant) > 1e-8 * constant:
            violations.append((name, ratio))
    lo, hi = empirical_ratio_bounds(a, 1.0, 2.0, trials=500, seed=404)
    if not (1.0 - 1e-10 <= lo and hi <= 4.0 + 1e-10):
        violations.append(("containment", lo, hi))
    _report(4, "diag(4,1): constants (1,4), witnesses attain, 500 ratios inside",
            violations)


def test_criterion_5_main_theorem_loop():
    specs = default_corpus_specs(seed=55)
    violations = []
    n_singular = 0
    for idx, spec in enumerate(specs):
        a = generate_positive(spec)
        lmin, lmax = spectral_bounds(a)
        truth = a.is_invertible
        n_singular += not truth
        dec = decide_invertibility(a, 1.0, 2.0, trials=100, seed=1000 + idx)
        if dec.invertible != truth:
            violations.append(("decision", idx))
            continue
        if truth:
            lo, hi = dec.reconstructed_bounds
            if lo < lmin * (1.0 - 1e-8) or hi > lmax * (1.0 + 1e-8):
                violations.append(("bracket", idx, (lo, hi), (lmin, lmax)))
            wdec = decide_invertibility(a, 1.0, 2.0, trials=100, seed=1000 + idx,
                                        include_witnesses=True)
            wlo, whi = wdec.reconstructed_bounds
            if abs(wlo - lmin) > 1e-8 * lmin or abs(whi - lmax) > 1e-8 * lmax:
                violations.append(("witness-equality", idx, (wlo, whi), (lmin, lmax)))
    if len(specs) < 20:
        violations.append(("corpus-size", len(specs)))
    if n_singular < len(specs) // 3:
        violations.append(("too-few-singular", n_singular))
    _report(5, f"corpus of {len(specs)} ({n_singular} singular): decisions and "
               "bounds agree with spectral truth", violations)


def test_criterion_6_faithfulness_witnesses():
    rng = np.random.default_rng(606)
    violations = []
    for i in range(10):
        singular = random_positive_element((4,), rng, kernel=1 + i % 2)
        res = faithfulness_check(singular)
        if res.faithful or res.witness is None:
            violations.append(("should-fail", i))
            continue
        w = res.witness
        if not w.is_positive:
            violations.append(("witness-not-positive", i))
        if abs(functional_norm(w) - 1.0) > 1e-10:
            violations.append(("witness-norm", i))
        if r_closed_form(singular, w) > 1e-8:
            violations.append(("witness-seminorm", i, r_closed_form(singular, w)))
        invertible = random_positive_element((4,), rng, lo=0.3, hi=4.0)
        res2 = faithfulness_check(invertible)
        if not res2.faithful or res2.witness is not None:
            violations.append(("false-positive", i))
    _report(6, "kernel witnesses: unit norm, vanishing seminorm; none when invertible",
            violations)


def test_criterion_7_range_projection_limit():
    a = Element.from_diagonals((2,), [2.0, 0.0])
    p = range_projection(a)
    violations = []
    prev = np.inf
    for eps in (1e-2, 1e-4, 1e-6):
        lim = range_projection(a, method="limit", epsilon=eps)
        err = max(operator_norm(x - y) for x, y in zip(lim.blocks, p.blocks))
        predicted = eps / (eps + 2.0)
        if abs(err - predicted) > 1e-9:
            violations.append((eps, err, predicted))
        if err > prev:
            violations.append(("not-monotone", eps))
        prev = err
    _report(7, "diag(2,0): limit-method error equals eps/(eps+2) within 1e-9, monotone",
            violations)


def test_criterion_8_blowup_family():
    structure = (2,)
    witness = rank_one(structure, 0, np.array([0.0, 1.0]))
    violations = []
    for eps in (1e-1, 1e-2, 1e-3):
        a = Element.from_diagonals(structure, [1.0, eps])
        ratio = functional_norm(witness) / r_closed_form(a, witness)
        if abs(ratio - 1.0 / eps) > 1e-9 / eps:
            violations.append((eps, ratio))
    _report(8, "diag(1,eps): witness ratio ||f||/r(f) = 1/eps within 1e-9 relative",
            violations)


def test_criterion_9_determinism(tmp_path):
    p1 = tmp_path / "run1.json"
    p2 = tmp_path / "run2.json"
    args = ["verify", "--suite", "all", "--seed", "7", "--trials", "60"]
    rc1 = cli_main(args + ["--out", str(p1)])
    rc2 = cli_main(args + ["--out", str(p2)])
    violations = []
    if rc1 != 0 or rc2 != 0:
        violations.append(("exit-codes", rc1, rc2))
    if p1.read_bytes() != p2.read_bytes():
        violations.append(("reports-differ",))
    _report(9, "verify --suite all --seed 7 twice: byte-identical reports",
            violations)
