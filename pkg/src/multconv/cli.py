"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 numeric failure (including a
failed check), 4 slowly-decreasing check inconclusive.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys

import numpy as np

from . import io
from .errors import MultconvError, NumericalError
from .euler import from_distribution, symbol, to_distribution, to_xd_form
from .geometry import mconv_hull, u_set, v_set
from .sdcheck import INCONCLUSIVE, PASS, SDConfig, slowly_decreasing_check
from .solver import BUILTIN_RHS, GridFunction, residual, solve
from .star import star
from .transfer import transfer_discrepancy
from .transforms import (
    cauchy_transform,
    hadamard_product,
    laurent_coefficients_at_infinity,
    moment_table,
    taylor_coefficients,
)

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_INCONCLUSIVE = 0, 2, 3, 4
TRANSFER_TOL = 1e-8


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise MultconvError(message)


def _read_json(path: str):
    if path == "-":
        return io.loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return io.loads(fh.read())
    except OSError as exc:
        raise MultconvError(f"cannot read {path}: {exc}") from exc


def _table_csv(table) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"alpha{j + 1}" for j in range(table.dim)] + ["value"])
    for alpha, v in table.coeffs.items():
        w.writerow(list(alpha) + [io.rat(v)])
    return buf.getvalue()


def _emit(payload, args, csv_text: str | None = None):
    if args.output == "csv" and csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(io.dumps(payload) + "\n")


def _parse_complex_vector(text: str) -> tuple:
    try:
        return tuple(complex(part.replace(" ", "").replace("i", "j")) for part in text.split(","))
    except ValueError as exc:
        raise MultconvError(f"cannot parse complex vector {text!r}") from exc


# -- subcommands ----------------------------------------------------------------

def cmd_star(args):
    T = io.dist_from_json(_read_json(args.left))
    S = io.dist_from_json(_read_json(args.right))
    R = star(T, S)
    if args.moments is None:
        _emit(io.dist_to_json(R), args)
    else:
        table = moment_table(R, args.moments)
        _emit({"distribution": io.dist_to_json(R), "moments": io.table_to_json(table)},
              args, _table_csv(table))
    return EXIT_OK


def cmd_moments(args):
    T = io.dist_from_json(_read_json(args.dist))
    table = moment_table(T, args.max)
    _emit(io.table_to_json(table), args, _table_csv(table))
    return EXIT_OK


def cmd_euler(args):
    obj = _read_json(args.op)
    P = from_distribution(io.dist_from_json(obj)) if args.from_dist else io.op_from_json(obj)
    out = {"operator": io.op_to_json(P)}
    if args.to_xd:
        out["xd"] = io.xd_to_json(to_xd_form(P), P.dim)
    if args.to_dist:
        out["distribution"] = io.dist_to_json(to_distribution(P))
    if args.symbol is not None:
        val = complex(symbol(P, _parse_complex_vector(args.symbol)))
        out["symbol"] = {"z": args.symbol, "re": val.real, "im": val.imag}
    _emit(out, args)
    return EXIT_OK


def cmd_cauchy(args):
    T = io.dist_from_json(_read_json(args.dist))
    F = cauchy_transform(T)
    table = (laurent_coefficients_at_infinity if args.laurent else taylor_coefficients)(F, args.degree)
    _emit({"transform": io.transform_to_json(F),
           "expansion": "laurent_at_infinity" if args.laurent else "taylor_at_origin",
           "coefficients": io.table_to_json(table)}, args, _table_csv(table))
    return EXIT_OK


def cmd_hadamard(args):
    A = io.table_from_json(_read_json(args.left))
    B = io.table_from_json(_read_json(args.right))
    table = hadamard_product(A, B)
    _emit(io.table_to_json(table), args, _table_csv(table))
    return EXIT_OK


def cmd_sdcheck(args):
    T = io.dist_from_json(_read_json(args.dist))
    cfg = SDConfig(a=args.a, b=args.b, c=args.c, x_max=args.xmax,
                   n_grid=args.grid, n_samples=args.samples)
    report = slowly_decreasing_check(T, cfg)
    payload = report.to_dict()
    if not args.verbose:
        payload.pop("samples")
    _emit(payload, args)
    if report.verdict == PASS:
        return EXIT_OK
    return EXIT_INCONCLUSIVE if report.verdict == INCONCLUSIVE else EXIT_NUMERIC


def cmd_transfer_check(args):
    T = io.dist_from_json(_read_json(args.left))
    S = io.dist_from_json(_read_json(args.right))
    gap = transfer_discrepancy(T, S, args.degree)
    ok = gap <= args.tol
    _emit({"max_relative_gap": gap, "tolerance": args.tol, "degree": args.degree, "ok": ok}, args)
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_vset(args):
    X = io.box_from_json(_read_json(args.x))
    Y = io.box_from_json(_read_json(args.y)) if args.y else None
    _emit(io.box_to_json(v_set(X, Y)), args)
    return EXIT_OK


def cmd_uset(args):
    inner = io.box_from_json(_read_json(args.inner))
    outer = io.box_from_json(_read_json(args.outer))
    _emit(io.box_to_json(u_set(inner, outer)), args)
    return EXIT_OK


def cmd_hull(args):
    X = io.pointset_from_json(_read_json(args.points))
    H = mconv_hull(X)
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{j + 1}" for j in range(H.dim)])
    for p in H.points:
        w.writerow([io.fmt_float(c) for c in p])
    _emit(io.pointset_to_json(H), args, buf.getvalue())
    return EXIT_OK


def _load_rhs(source: str, r: float, R: float, n: int):
    if source in BUILTIN_RHS:
        return BUILTIN_RHS[source]
    try:
        data = np.loadtxt(source, delimiter=",", ndmin=2, comments="#")
    except (OSError, ValueError) as exc:
        raise MultconvError(
            f"--rhs must be one of {sorted(BUILTIN_RHS)} or a CSV file of samples: {exc}") from exc
    values = data[:, -1]
    if len(values) != n:
        raise MultconvError(f"rhs file has {len(values)} samples, expected n = {n}")
    return GridFunction(r, R, values)


def cmd_solve(args):
    P = io.op_from_json(_read_json(args.op))
    r, R = args.interval
    f = _load_rhs(args.rhs, r, R, args.n)
    u = solve(P, f, (r, R), args.n)
    res = residual(P, u, f)
    if args.output == "json":
        _emit({"x": u.nodes.tolist(), "u": u.values.tolist(), "residual": res}, args)
    else:
        out = sys.stdout
        out.write("x,u\n")
        for x, v in zip(u.nodes, u.values):
            out.write(f"{io.fmt_float(x)},{io.fmt_float(v)}\n")
        out.write(f"# residual={io.fmt_float(res)}\n")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    p = _Parser(prog="multconv", description="Multiplicative convolution toolkit",
                formatter_class=fmt)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, output="json"):
        sp = sub.add_parser(name, help=help_text, formatter_class=fmt)
        sp.add_argument("--output", choices=["json", "csv"], default=output)
        sp.set_defaults(func=func)
        return sp

    sp = add("star", cmd_star, "multiplicative convolution of two distributions")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--moments", type=int, default=None, metavar="N",
                    help="also emit the multiplier table up to degree N")

    sp = add("moments", cmd_moments, "multiplier table of a distribution")
    sp.add_argument("dist")
    sp.add_argument("--max", type=int, default=8, help="maximal degree per coordinate")

    sp = add("euler", cmd_euler, "Euler operator conversions")
    sp.add_argument("op")
    sp.add_argument("--from-dist", action="store_true",
                    help="input is a distribution at (1,...,1) instead of an operator")
    sp.add_argument("--to-xd", action="store_true")
    sp.add_argument("--to-dist", action="store_true")
    sp.add_argument("--symbol", metavar="Z", default=None,
                    help="evaluate P(z); comma-separated complex coordinates")

    sp = add("cauchy", cmd_cauchy, "Cauchy transform and its coefficients")
    sp.add_argument("dist")
    sp.add_argument("--degree", type=int, default=10, help="maximal degree per coordinate")
    sp.add_argument("--laurent", action="store_true", help="expand at infinity instead")

    sp = add("hadamard", cmd_hadamard, "coefficientwise product of two series tables")
    sp.add_argument("left")
    sp.add_argument("right")

    d = SDConfig()
    sp = add("sdcheck", cmd_sdcheck, "slowly-decreasing check of the characteristic function")
    sp.add_argument("dist")
    sp.add_argument("--a", type=float, default=d.a, help="radius factor in a*log(2+|x|)")
    sp.add_argument("--b", type=float, default=d.b, help="omit to report the best b found")
    sp.add_argument("--c", type=float, default=d.c, help="omit for 2*(order+1)")
    sp.add_argument("--xmax", type=float, default=d.x_max, help="half-width of the x grid")
    sp.add_argument("--grid", type=int, default=d.n_grid, help="grid points per axis")
    sp.add_argument("--samples", type=int, default=d.n_samples, help="samples per ball")
    sp.add_argument("--verbose", action="store_true", help="include every sampled x")

    sp = add("transfer-check", cmd_transfer_check, "compare star with the Log/Exp transfer")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--degree", type=int, default=6, help="maximal total degree of test monomials")
    sp.add_argument("--tol", type=float, default=TRANSFER_TOL, help="relative tolerance")

    sp = add("vset", cmd_vset, "dilation set V(X, Y) of boxes")
    sp.add_argument("x")
    sp.add_argument("y", nargs="?", default=None, help="defaults to X")

    sp = add("uset", cmd_uset, "neighborhood U = V(closure(inner), outer)")
    sp.add_argument("inner")
    sp.add_argument("outer")

    sp = add("hull", cmd_hull, "multiplicatively convex hull of a point set")
    sp.add_argument("points")

    sp = add("solve", cmd_solve, "solve P(theta) u = f on an interval", output="csv")
    sp.add_argument("--op", required=True)
    sp.add_argument("--interval", type=float, nargs=2, required=True, metavar=("r", "R"))
    sp.add_argument("--n", type=int, default=1024, help="number of grid nodes")
    sp.add_argument("--rhs", default="one",
                    help=f"builtin name ({', '.join(sorted(BUILTIN_RHS))}) or CSV of samples")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except NumericalError as exc:
        print(f"multconv: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (MultconvError, ValueError, ZeroDivisionError) as exc:
        print(f"multconv: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
