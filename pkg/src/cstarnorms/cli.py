"""Command-line interface: seminorm evaluation, constants, decisions, verify runs.

Exit codes: 0 success (or a clean "not invertible" verdict), 1 verification
failures, 2 input errors (malformed JSON, structure mismatches, bad flags).
"""

import argparse
import json
import sys

from .algebra import element_from_dict
from .errors import CstarnormsError
from .functionals import HermitianFunctional
from .seminorms import (decide_invertibility, empirical_ratio_bounds,
                        equivalence_constants, r_closed_form, r_variational)
from .verify import constants_table_csv, run_suites


def _fmt(x):
    return f"{float(x):.12g}"


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}") from exc


class _InputError(Exception):
    pass


def _load_element(path):
    try:
        return element_from_dict(_load_json(path))
    except (ValueError, CstarnormsError) as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _load_functional(path):
    try:
        return HermitianFunctional.from_element(element_from_dict(_load_json(path)))
    except (ValueError, CstarnormsError) as exc:
        raise _InputError(f"{path}: {exc}") from exc


def _cmd_norm(args):
    a = _load_element(args.algebra_file)
    f = _load_functional(args.functional_file)
    weight = a if args.alpha == 1.0 else a.power(args.alpha)
    if args.method == "closed":
        value = r_closed_form(weight, f)
    else:
        value = r_variational(weight, f, tol=args.tol).value
    print(_fmt(value))
    return 0


def _cmd_constants(args):
    a = _load_element(args.algebra_file)
    eq = equivalence_constants(a, args.alpha, args.beta)
    emp_min, emp_max = empirical_ratio_bounds(a, args.alpha, args.beta,
                                              trials=args.trials, seed=args.seed)
    print(f"alpha         {_fmt(eq.alpha)}")
    print(f"beta          {_fmt(eq.beta)}")
    print(f"analytic_c    {_fmt(eq.c_lower)}")
    print(f"analytic_C    {_fmt(eq.c_upper)}")
    print(f"empirical_min {_fmt(emp_min)}")
    print(f"empirical_max {_fmt(emp_max)}")
    return 0


def _cmd_decide(args):
    a = _load_element(args.algebra_file)
    decision = decide_invertibility(a, args.alpha, args.beta,
                                    trials=args.trials, seed=args.seed)
    if decision.invertible:
        lo, hi = decision.reconstructed_bounds
        print(f"invertible; reconstructed bounds ({_fmt(lo)}, {_fmt(hi)})")
    else:
        print("not invertible")
    return 0


def _cmd_verify(args):
    report = run_suites(suite=args.suite, seed=args.seed, trials=args.trials,
                        dims=_dims_for(args.max_dim))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(constants_table_csv(report))
    status = "PASS" if report.passed else "FAIL"
    print(f"suite={report.suite} trials={report.trials} "
          f"failures={len(report.failures)} elapsed={report.elapsed:.2f}s {status}")
    for failure in report.failures[:20]:
        print(f"  {failure['check_id']} trial={failure['trial']} "
              f"lhs={failure['lhs']} rhs={failure['rhs']}")
    return 0 if report.passed else 1


def _dims_for(max_dim):
    from .verify import DEFAULT_DIMS
    dims = tuple(d for d in DEFAULT_DIMS if max(d) <= max_dim)
    return dims or ((1,), (1, 1))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cstarnorms",
        description="Weighted L1-type seminorms on finite-dimensional "
                    "C*-algebras: evaluation, equivalence constants, and "
                    "randomized verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="evaluate the seminorm of a functional")
    p_norm.add_argument("--algebra-file", required=True)
    p_norm.add_argument("--functional-file", required=True)
    p_norm.add_argument("--alpha", type=float, default=1.0,
                        help="weight exponent (default 1)")
    p_norm.add_argument("--method", choices=("closed", "variational"),
                        default="closed")
    p_norm.add_argument("--tol", type=float, default=1e-7,
                        help="variational solver tolerance")
    p_norm.set_defaults(func=_cmd_norm)

    p_const = sub.add_parser("constants",
                             help="analytic and empirical equivalence constants")
    p_const.add_argument("--algebra-file", required=True)
    p_const.add_argument("--alpha", type=float, required=True)
    p_const.add_argument("--beta", type=float, required=True)
    p_const.add_argument("--trials", type=int, default=200)
    p_const.add_argument("--seed", type=int, default=0)
    p_const.set_defaults(func=_cmd_constants)

    p_decide = sub.add_parser("decide",
                              help="invertibility verdict via seminorm equivalence")
    p_decide.add_argument("--algebra-file", required=True)
    p_decide.add_argument("--alpha", type=float, default=1.0)
    p_decide.add_argument("--beta", type=float, default=2.0)
    p_decide.add_argument("--trials", type=int, default=200)
    p_decide.add_argument("--seed", type=int, default=0)
    p_decide.set_defaults(func=_cmd_decide)

    p_verify = sub.add_parser("verify", help="run the randomized checker suites")
    p_verify.add_argument("--suite", default="all",
                          choices=("all", "closed", "power", "invert", "rp", "blowup"))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--max-dim", type=int, default=4)
    p_verify.add_argument("--out", help="write the JSON report here")
    p_verify.add_argument("--csv", help="write the constants table as CSV here")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CstarnormsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
