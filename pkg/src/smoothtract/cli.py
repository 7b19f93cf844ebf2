"""Command-line front end: ``smoothtract {plan,approx,count,tract,classcheck,fdstudy}``."""

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

from .approximate import DEFAULT_SPLIT, plan as make_plan
from . import tractability, verify
from .errors import (
    CertificateError,
    DomainError,
    MissingOracleError,
    ResourceLimitError,
    UnknownFunctionError,
)
from .funcspace import ClassCertificate, Domain, get_function

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_POWER = re.compile(r"^\s*([0-9.]+)\s*\^\s*([-+]?\d+)\s*$")


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Parse ``0.25``, ``1/16`` or ``2^-4``."""
    m = _POWER.match(text)
    try:
        if m:
            return float(m.group(1)) ** int(m.group(2))
        if "/" in text:
            return float(Fraction(text.strip()))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def parse_grid(text: str, integer: bool = False) -> list:
    """
    Parse a grid: comma lists, ``a..b`` integer ranges, and ``B^i..B^j`` power
    ranges stepping the exponent by one (``2^-1..2^-10`` has ten values).
    """
    values = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            mlo, mhi = _POWER.match(lo), _POWER.match(hi)
            if mlo and mhi and mlo.group(1) == mhi.group(1):
                base = float(mlo.group(1))
                a, b = int(mlo.group(2)), int(mhi.group(2))
                step = 1 if b >= a else -1
                values.extend(base**e for e in range(a, b + step, step))
            else:
                try:
                    a, b = int(lo), int(hi)
                except ValueError as exc:
                    raise argparse.ArgumentTypeError(f"bad range {part!r}") from exc
                step = 1 if b >= a else -1
                values.extend(range(a, b + step, step))
        elif part:
            values.append(parse_number(part))
    if not values:
        raise argparse.ArgumentTypeError(f"empty grid {text!r}")
    if integer:
        if any(float(v) != int(v) for v in values):
            raise argparse.ArgumentTypeError(f"grid {text!r} must contain integers")
        return [int(v) for v in values]
    return [float(v) for v in values]


def _int_grid(text):
    return parse_grid(text, integer=True)


def _alpha(text):
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad multi-index {text!r}") from exc


def resolve_seed(seed):
    if seed is not None:
        return seed
    env = os.environ.get("SMOOTHTRACT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise UsageError(f"SMOOTHTRACT_SEED must be an integer, got {env!r}") from exc


def _domain(args) -> Domain:
    return Domain.cube(args.d) if args.domain == "cube" else Domain.ball(args.d, args.radius)


def _emit(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_json(payload: dict, path):
    _emit(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n", path)


# -- subcommands ---------------------------------------------------------------------


def cmd_plan(args) -> int:
    domain = _domain(args)
    tag = args.cls or ("F1" if domain.kind == "cube" else "F2")
    cert = ClassCertificate(tag, args.c, "given on the command line", args.partial_growth)
    p = make_plan(domain, cert, args.eps, args.mode, args.split, args.precision, args.fd_budget)
    _emit_json({"command": "plan", "plan": p.to_dict()}, args.out)
    return EXIT_OK


def cmd_approx(args) -> int:
    if not 0 < args.eps < 1:
        raise UsageError(f"approx needs eps in (0, 1), got {args.eps}")
    f = get_function(args.function, args.d, args.domain, args.radius)
    tag = "F1" if args.domain == "cube" else "F2"
    cert = f.certificate(tag)
    if cert is None:
        raise CertificateError(f"{f.name} carries no {tag} certificate on the {args.domain}")
    if args.c is not None:
        cert = ClassCertificate(tag, args.c, cert.statement, cert.partial_growth)
    p = make_plan(f.domain, cert, args.eps, args.mode, args.split, args.precision, args.fd_budget)
    seed = resolve_seed(args.seed)
    model, est = verify.verify_plan(f, p, args.points, seed, args.threads, args.l1_samples)
    payload = {"command": "approx", "function": f.name, "plan": p.to_dict(), "verification": est.to_dict()}
    if args.include_model:
        payload["model"] = model.to_dict()
    _emit_json(payload, args.out)
    return EXIT_OK if est.passed else EXIT_FAIL


def cmd_count(args) -> int:
    grid = tractability.cost_grid(args.eps_grid, args.d_grid, args.domain, args.c)
    _emit(grid.to_csv(), args.out)
    return EXIT_OK


def cmd_tract(args) -> int:
    report = tractability.build_report(
        args.eps_grid,
        args.d_grid,
        args.domain,
        args.c,
        doublings=args.doublings,
        wt_d_values=args.wt_d_grid,
        curse_eps=args.curse_eps,
    )
    if args.csv:
        _emit(report.grid.to_csv(), args.csv)
    _emit_json({"command": "tract", "report": report.to_dict()}, args.out)
    return EXIT_OK


def cmd_classcheck(args) -> int:
    f = get_function(args.function, args.d, args.domain, args.radius)
    rep = verify.certificate_check(f, args.k_max, args.points, resolve_seed(args.seed), args.samples, args.nodes)
    _emit_json({"command": "classcheck", "report": rep.to_dict()}, args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_fdstudy(args) -> int:
    f = get_function(args.function, args.d, args.domain, args.radius)
    if len(args.alpha) != f.d:
        raise UsageError(f"multi-index {args.alpha} does not have {f.d} entries")
    rows = verify.fd_convergence(f, args.alpha, args.h_grid, args.precision)
    if args.format == "csv":
        lines = ["h,estimate,oracle,error,order\r\n"]
        for r in rows:
            order = "" if r.order is None else repr(r.order)
            lines.append(f"{r.h!r},{r.estimate!r},{r.oracle!r},{r.error!r},{order}\r\n")
        _emit("".join(lines), args.out)
    else:
        _emit_json(
            {"command": "fdstudy", "function": f.name, "alpha": list(args.alpha), "rows": [vars(r) for r in rows]},
            args.out,
        )
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------


def _add_domain(p, need_d=True):
    p.add_argument("--domain", choices=("cube", "ball"), default="cube")
    if need_d:
        p.add_argument("--d", type=int, required=True)
    p.add_argument("--radius", type=parse_number, default=None, help="ball radius (default: unit volume)")


def _add_out(p):
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_planning(p):
    p.add_argument("--eps", type=parse_number, required=True)
    p.add_argument("--mode", choices=("oracle", "samples"), default="oracle")
    p.add_argument("--split", type=float, default=DEFAULT_SPLIT)
    p.add_argument("--precision", default="auto", help="sample precision in bits, or 'auto'")
    p.add_argument(
        "--fd-budget", type=parse_number, default=None,
        help="samples mode: choose k for eps alone and allow this extra finite-difference error",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smoothtract", description="Taylor approximation and tractability experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="order, sample count and step for an error target")
    _add_domain(p)
    p.add_argument("--class", dest="cls", choices=("F1", "F2"), default=None)
    p.add_argument("--c", type=parse_number, default=1.0)
    p.add_argument("--partial-growth", type=parse_number, default=None)
    _add_planning(p)
    _add_out(p)
    p.set_defaults(run=cmd_plan)

    p = sub.add_parser("approx", help="build an approximant and verify its error")
    p.add_argument("--function", required=True)
    _add_domain(p)
    p.add_argument("--c", type=parse_number, default=None, help="override the certified growth constant")
    _add_planning(p)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--l1-samples", type=int, default=None)
    p.add_argument("--include-model", action="store_true")
    _add_out(p)
    p.set_defaults(run=cmd_approx)

    p = sub.add_parser("count", help="CSV of costs over an (eps, d) grid")
    p.add_argument("--domain", choices=("cube", "ball"), default="cube")
    p.add_argument("--c", type=parse_number, default=1.0)
    p.add_argument("--eps-grid", type=parse_grid, required=True)
    p.add_argument("--d-grid", type=_int_grid, required=True)
    _add_out(p)
    p.set_defaults(run=cmd_count)

    p = sub.add_parser("tract", help="tractability report (JSON) and cost grid (CSV)")
    p.add_argument("--domain", choices=("cube", "ball"), default="cube")
    p.add_argument("--c", type=parse_number, default=1.0)
    p.add_argument("--eps-grid", type=parse_grid, required=True)
    p.add_argument("--d-grid", type=_int_grid, required=True)
    p.add_argument("--wt-d-grid", type=_int_grid, default=None, help="diagonal eps = 1/d")
    p.add_argument("--doublings", type=int, default=3)
    p.add_argument("--curse-eps", type=parse_number, default=0.5)
    p.add_argument("--csv", default=None, help="also write the cost grid as CSV here")
    _add_out(p)
    p.set_defaults(run=cmd_tract)

    p = sub.add_parser("classcheck", help="estimate certified class quantities")
    p.add_argument("--function", required=True)
    _add_domain(p)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--samples", type=int, default=4000, help="sphere samples per radial node")
    p.add_argument("--nodes", type=int, default=16)
    p.add_argument("--seed", type=int, default=None)
    _add_out(p)
    p.set_defaults(run=cmd_classcheck)

    p = sub.add_parser("fdstudy", help="finite-difference convergence table")
    p.add_argument("--function", required=True)
    _add_domain(p)
    p.add_argument("--alpha", type=_alpha, required=True, help="comma-separated multi-index")
    p.add_argument("--h-grid", type=parse_grid, required=True)
    p.add_argument("--precision", type=int, default=53)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_out(p)
    p.set_defaults(run=cmd_fdstudy)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "precision", None) not in (None, "auto") and args.command != "fdstudy":
        try:
            args.precision = int(args.precision)
        except ValueError:
            parser.error(f"--precision must be an integer or 'auto', got {args.precision!r}")
    if getattr(args, "eps", None) is not None and not (args.eps > 0 and math.isfinite(args.eps)):
        parser.error("--eps must be positive")
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"smoothtract: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownFunctionError, CertificateError, DomainError, MissingOracleError, ValueError, ResourceLimitError) as exc:
        # infeasible steps and oversized models are requests that cannot be served
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"smoothtract: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
