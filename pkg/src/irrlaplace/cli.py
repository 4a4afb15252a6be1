"""Command-line front end: ``invert``, ``eval-ml``, ``fig``, ``verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import figures, roundtrip
from .errors import IrrLaplaceError
from .generalized_functions import format_gf, to_dict
from .inversion import Family, LaplaceExpr, invert
from .special_functions import DEFAULT_TOL, MLParams, ml_eval

SIGNS = {"plus": 1, "minus": -1}


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol", type=float, default=None, help="accuracy target")
    common.add_argument("--seed", type=int, default=42, help="random seed")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--t-min", type=float, default=None)
    sweep.add_argument("--t-max", type=float, default=figures.DEFAULT_T_MAX)
    sweep.add_argument("--points", type=int, default=figures.DEFAULT_POINTS)
    sweep.add_argument("--spacing", choices=("linear", "log"), default="linear")

    p = argparse.ArgumentParser(prog="irrlaplace",
                                description="Inverse Laplace transforms of irrational functions")
    sub = p.add_subparsers(dest="cmd", required=True)

    inv = sub.add_parser("invert", parents=[common], help="invert one expression")
    inv.add_argument("--family", choices=[f.value for f in Family], required=True)
    inv.add_argument("--q", type=float, required=True)
    inv.add_argument("--alpha", type=float, default=1.0)
    inv.add_argument("--lambda", dest="lam", type=float, default=1.0)
    inv.add_argument("--sign", choices=sorted(SIGNS), default="minus",
                     help="sign of lambda in the time domain")
    inv.add_argument("--mu", type=float, default=1.0)

    ml = sub.add_parser("eval-ml", parents=[common, sweep],
                        help="E_{alpha,beta} at one z or along sign*lambda*t**alpha")
    ml.add_argument("--alpha", type=float, required=True)
    ml.add_argument("--beta", type=float, default=1.0)
    ml.add_argument("--z", type=float, default=None)
    ml.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ml.add_argument("--sign", choices=sorted(SIGNS), default="minus")

    fig = sub.add_parser("fig", parents=[common, sweep], help="figure data as CSV")
    fig.add_argument("fig_id", type=int, choices=sorted(figures.BUILDERS))
    fig.add_argument("--q", type=_float_list, default=None, help="q values (figs 1, 3)")
    fig.add_argument("--alpha", type=_float_list, default=None, help="alpha values (fig 2)")
    fig.add_argument("--lambda", dest="lam", type=float, default=1.0)

    ver = sub.add_parser("verify", parents=[common], help="round-trip verification report")
    ver.add_argument("--cases", type=int, default=50)
    return p


def _sweep(args, parser) -> figures.SweepSpec:
    t_min = args.t_min if args.t_min is not None else args.t_max / args.points
    try:
        return figures.SweepSpec(t_min, args.t_max, args.points, args.spacing)
    except ValueError as exc:
        parser.error(str(exc))


def cmd_invert(args, parser) -> int:
    try:
        e = LaplaceExpr(Family(args.family), args.q, args.mu, args.alpha, SIGNS[args.sign], args.lam)
    except (IrrLaplaceError, ValueError) as exc:
        parser.error(str(exc))
    f = invert(e)
    text = format_gf(f) + "\n" + json.dumps(to_dict(f), ensure_ascii=False, indent=2) + "\n"
    emit(text, args.out)
    return 0


def cmd_eval_ml(args, parser) -> int:
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    if not args.alpha > 0:
        parser.error(f"alpha must be > 0, got {args.alpha}")
    if args.z is not None:
        r = ml_eval(MLParams(args.alpha, args.beta, args.z), tol)
        emit(write_csv(["z", "value", "abs_err"], [[args.z, r.value, r.abs_err]]), args.out)
        return 0
    sign = SIGNS[args.sign]
    rows = []
    for t in _sweep(args, parser).grid():
        z = sign * args.lam * float(t) ** args.alpha
        r = ml_eval(MLParams(args.alpha, args.beta, z), tol)
        rows.append([t, z, r.value, r.abs_err])
    emit(write_csv(["t", "z", "value", "abs_err"], rows), args.out)
    return 0


def cmd_fig(args, parser) -> int:
    sweep = _sweep(args, parser)
    tol = args.tol if args.tol is not None else DEFAULT_TOL
    if args.lam <= 0:
        parser.error(f"lambda must be > 0, got {args.lam}")
    if args.fig_id == 1:
        table = figures.fig1(sweep, args.q or figures.FIG1_Q)
    elif args.fig_id == 2:
        alphas = args.alpha or figures.FIG2_ALPHA
        if any(a <= 0 for a in alphas):
            parser.error("alpha values must be > 0")
        table = figures.fig2(sweep, alphas, args.lam, tol)
    else:
        qs = args.q or figures.FIG3_Q
        if any(q < 0 for q in qs):
            parser.error("q values must be >= 0")
        table = figures.fig3(sweep, qs, args.lam, tol)
    emit(write_csv(*table), args.out)
    return 0


def cmd_verify(args, parser) -> int:
    if args.cases < 1:
        parser.error(f"--cases must be >= 1, got {args.cases}")
    tol = args.tol if args.tol is not None else roundtrip.REL_TOL
    results, report = roundtrip.run(args.seed, args.cases, tol)
    emit(report, args.out)
    return 0 if all(r.passed(tol) for r in results) else 1


COMMANDS = {"invert": cmd_invert, "eval-ml": cmd_eval_ml, "fig": cmd_fig, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.cmd](args, parser)
    except OSError as exc:
        print(f"irrlaplace: {exc}", file=sys.stderr)
        return 1
    except IrrLaplaceError as exc:
        print(f"irrlaplace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
