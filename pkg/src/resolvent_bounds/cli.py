"""Command-line entry point.

Subcommands: ``verify``, ``basis-check``, ``bound-table``, ``oracle-compare``
and ``search``.  Exit codes: 0 success, 1 a proven inequality failed
numerically, 2 invalid input, 3 precision failure (modulus cap, uncertified
power bound, ill-conditioned constraints).
"""

import argparse
import logging
import math
import sys

from . import bounds
from . import function_space as fs
from . import malmquist as mq
from . import oracle
from . import reporting
from .errors import (
    BoundViolation,
    ConditioningError,
    DivergenceError,
    DomainError,
    InvalidInputError,
    PrecisionError,
)
from .search import FAMILIES, SearchConfig, search
from .spectrum import CIRCLE_TOL

EXIT_OK, EXIT_VIOLATION, EXIT_INVALID, EXIT_PRECISION = 0, 1, 2, 3

log = logging.getLogger("resolvent_bounds")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _u64(s):
    v = int(s)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {s}")
    return v


def _lambda(s):
    try:
        re, im = (float(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {s!r}") from None
    return complex(re, im)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--norm", choices=("1", "2", "inf"), default="2")
    p.add_argument("--modulus-cap", type=float, default=0.95)
    p.add_argument("--degree", type=int, default=fs.DEFAULT_DEGREE)
    p.add_argument("--quad-samples", type=int, default=fs.DEFAULT_SAMPLES)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="resolvent-bounds", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="verify the bound on a seeded batch")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--family", choices=FAMILIES, default="jordan")
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--lambda-grid", type=int, default=256)
    v.add_argument("--oracle-degree", type=int, default=256)
    v.add_argument("--no-proof-chain", action="store_true", help="skip Malmquist and oracle quantities")
    v.add_argument("--no-perf", action="store_true", help="omit timing blocks")

    b = sub.add_parser("basis-check", parents=[common], help="diagnose the Malmquist construction")
    b.add_argument("spectrum", help="JSON array of {re, im}")
    b.add_argument("--circle-points", type=int, default=16)

    t = sub.add_parser("bound-table", parents=[common], help="tabulate the closed-form bounds")
    t.add_argument("--n-min", type=int, default=1)
    t.add_argument("--n-max", type=int, default=10)
    t.add_argument("--C", type=float, default=1.0)

    o = sub.add_parser("oracle-compare", parents=[common], help="l1 oracle against the construction")
    o.add_argument("--spectrum", required=True)
    o.add_argument("--lambda", dest="lam", type=_lambda, default=complex(1.0))
    o.add_argument("--max-iters", type=int, default=20000)
    o.add_argument("--tol", type=float, default=1e-8)

    s = sub.add_parser("search", parents=[common], help="randomised extremal search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family", choices=FAMILIES, default="jordan")
    s.add_argument("--restarts", type=_positive_int, default=8)
    s.add_argument("--local-steps", type=int, default=4)
    s.add_argument("--lambda-grid", type=int, default=256)
    s.add_argument("--contraction", action="store_true", help="restrict to ||T||_2 <= 1")
    s.add_argument("--full-plane", action="store_true", help="also sample 1 < |lambda| <= 4")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args):
    if args.n < 1 or args.samples < 1:
        raise InvalidInputError("--n and --samples must be positive")
    reports = reporting.run_verification(
        n=args.n,
        family=args.family,
        samples=args.samples,
        seed=args.seed,
        norm_kind=args.norm,
        lambda_grid=args.lambda_grid,
        modulus_cap=args.modulus_cap,
        degree=args.degree,
        quad_samples=args.quad_samples,
        oracle_degree=args.oracle_degree,
        with_proof_chain=not args.no_proof_chain,
    )
    if args.format == "csv":
        _emit(reporting.reports_to_csv(reports), args.out)
    else:
        _emit(reporting.dumps([r.to_dict(perf=not args.no_perf) for r in reports]), args.out)
    if not all(r.passed for r in reports):
        return EXIT_VIOLATION
    if not all(r.power_certified for r in reports):
        return EXIT_PRECISION
    return EXIT_OK


def _cmd_basis_check(args):
    sigma = reporting.load_spectrum(args.spectrum, args.modulus_cap)
    diag = reporting.basis_check(sigma, args.degree, args.quad_samples, args.circle_points)
    lines = [
        f"n = {sigma.n}, degree = {args.degree}",
        f"gram deviation          {diag.gram_deviation:.3e}  (tol {reporting.GRAM_TOL:g})",
        f"interpolation residual  {diag.interpolation_residual:.3e}  (tol {reporting.INTERP_TOL:g})",
        f"reconstruction error    {diag.reconstruction_error:.3e}  (tol {reporting.RECON_TOL:g})",
    ]
    for name, v, bnd in zip(("e_1 term", "log-derivative term", "kernel term"), diag.term_norms, diag.term_bounds):
        lines.append(f"H1 norm of {name:<20s} {v:.6g} <= {bnd:.6g}")
    lines.append("PASS" if diag.passed else "FAIL")
    text = "\n".join(lines) + "\n"
    if args.out:
        _emit(reporting.dumps(diag.__dict__), args.out)
    sys.stdout.write(text)
    return EXIT_OK if diag.passed else EXIT_VIOLATION


def _cmd_bound_table(args):
    if args.n_min < 1 or args.n_max < args.n_min:
        raise InvalidInputError(f"bad n range [{args.n_min}, {args.n_max}]")
    if not args.C >= 1.0:
        raise InvalidInputError("--C must be >= 1")
    rows = bounds.bound_table(range(args.n_min, args.n_max + 1), args.C)
    if args.format == "csv":
        _emit(reporting.table_to_csv(rows), args.out)
    else:
        _emit(reporting.dumps(rows), args.out)
    return EXIT_OK


def _cmd_oracle_compare(args):
    sigma = reporting.load_spectrum(args.spectrum, args.modulus_cap)
    lam = args.lam
    if abs(lam) < 1.0 - CIRCLE_TOL:
        raise InvalidInputError(f"--lambda must satisfy |lambda| >= 1, got {lam}")
    problem = oracle.quotient_problem(sigma, lam, args.degree)
    sol = oracle.solve_quotient(problem, args.max_iters, args.tol)
    basis = mq.build_basis(sigma, max(args.degree, 256))
    proj = mq.project_kernel(basis, lam)
    cmp_ = oracle.compare_with_construction(problem, proj, sol)
    record = {
        "lambda": lam,
        "spectrum": list(sigma.points),
        "degree": args.degree,
        "oracle": cmp_.oracle,
        "construction": cmp_.construction,
        "gap": cmp_.gap,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "condition": sol.condition,
    }
    if args.format == "csv":
        keys = ("degree", "oracle", "construction", "gap", "residual", "iterations", "condition")
        _emit(reporting.table_to_csv([record], keys), args.out)
    else:
        _emit(reporting.dumps(record), args.out)
    return EXIT_OK if cmp_.gap >= -reporting.ORACLE_TOL else EXIT_VIOLATION


def _cmd_search(args):
    cfg = SearchConfig(
        n=args.n,
        family=args.family,
        norm_kind=args.norm,
        restarts=args.restarts,
        local_steps=args.local_steps,
        seed=args.seed,
        lambda_grid=args.lambda_grid,
        full_plane=args.full_plane,
        contraction=args.contraction,
    )
    rec = search(cfg)
    if args.format == "csv":
        rows = [{"restart": i, "best_ratio": v} for i, v in enumerate(rec.per_restart_bests)]
        _emit(reporting.table_to_csv(rows, ("restart", "best_ratio")), args.out)
    else:
        _emit(reporting.dumps(rec.to_dict()), args.out)
    if rec.uncertified and not rec.certified_C:
        return EXIT_PRECISION
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "basis-check": _cmd_basis_check,
    "bound-table": _cmd_bound_table,
    "oracle-compare": _cmd_oracle_compare,
    "search": _cmd_search,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.degree < 1 or args.quad_samples < 256 or args.quad_samples & (args.quad_samples - 1):
        log.error("--degree must be positive and --quad-samples a power of two >= 256")
        return EXIT_INVALID
    if not 0.0 < args.modulus_cap < 1.0:
        log.error("--modulus-cap must lie in (0, 1)")
        return EXIT_INVALID
    try:
        return _COMMANDS[args.command](args)
    except BoundViolation as exc:
        log.error("proven inequality violated: %s", exc)
        return EXIT_VIOLATION
    except (PrecisionError, ConditioningError, DivergenceError) as exc:
        log.error("precision failure: %s", exc)
        return EXIT_PRECISION
    except (InvalidInputError, DomainError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
