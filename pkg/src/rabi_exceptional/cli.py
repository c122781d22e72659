"""``rabi`` command-line front end.

Exit codes: 0 success, 1 computation error (JSON error object on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bethe, constraints, figures, spectrum, wavefunction
from .errors import RabiError, VanishingA
from .model import ModelParams, exceptional_energy, validate_params

log = logging.getLogger("rabi_exceptional")


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _add_params(sub, g=False, eps=True):
    sub.add_argument("--omega", type=rational, default=Fraction(1))
    sub.add_argument("--delta", type=rational, required=True)
    if eps:
        sub.add_argument("--epsilon", type=rational, default=Fraction(0))
    if g:
        sel = sub.add_mutually_exclusive_group(required=True)
        sel.add_argument("--g", type=float, help="coupling (must lie on the exceptional surface)")
        sel.add_argument("--root-index", type=int, help="use the i-th exceptional coupling of level n (0-based)")


def _add_level(sub, branch=True):
    sub.add_argument("--n", type=int, required=True)
    if branch:
        sub.add_argument("--branch", choices=["plus", "minus"], default="plus")


def _add_output(sub, formats=("json",), default="json"):
    sub.add_argument("--format", choices=formats, default=default)
    sub.add_argument("--out", type=Path, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rabi", description="Exceptional spectrum of the driven Rabi model.")
    subs = ap.add_subparsers(dest="command", required=True)

    s = subs.add_parser("constraint", help="constraint polynomial Q_n and its exceptional couplings")
    _add_params(s)
    _add_level(s)
    s.add_argument("--verify", type=Path, help="compare against a previously written JSON result")
    _add_output(s)

    s = subs.add_parser("heun-check", help="tail of the Heun-coefficient recurrence at a coupling")
    _add_params(s, g=True)
    _add_level(s)
    _add_output(s)

    s = subs.add_parser("bethe", help="solve the algebraic equations for the roots z_i")
    _add_params(s, g=True)
    _add_level(s)
    _add_output(s)

    s = subs.add_parser("wavefn-check", help="Schroedinger residual of the product-form wavefunction")
    _add_params(s, g=True)
    _add_level(s)
    _add_output(s)

    s = subs.add_parser("spectrum", help="truncated-Fock levels over a coupling sweep")
    _add_params(s)
    s.add_argument("--g-min", type=float, default=0.0)
    s.add_argument("--g-max", type=float, default=1.2)
    s.add_argument("--steps", type=int, default=241)
    s.add_argument("--k", type=int, default=12)
    s.add_argument("--n-max", type=int, default=spectrum.DEFAULT_NMAX)
    _add_output(s, ("csv", "json", "svg"), "csv")

    s = subs.add_parser("crossings", help="coincidence of Q_n and Q'_{n+m} roots at epsilon = m omega/2")
    _add_params(s, eps=False)
    _add_level(s, branch=False)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--tolerance", type=float, default=1e-9)
    _add_output(s)

    s = subs.add_parser("interlace", help="check root interlacing of Q_1..Q_n")
    _add_params(s)
    _add_level(s)
    _add_output(s)

    s = subs.add_parser("figure", help="reproduce a figure preset (CSV sweep + SVG)")
    s.add_argument("--preset", choices=sorted(figures.PRESETS), required=True)
    s.add_argument("--n-max", type=int, default=spectrum.DEFAULT_NMAX)
    s.add_argument("--tolerance", type=float, default=1e-5)
    s.add_argument("--format", choices=["csv", "svg", "json"], default="csv")
    s.add_argument("--out", type=Path, help="output directory (default: current directory)")
    return ap


# --------------------------------------------------------------------------


def _params(args, g=0) -> ModelParams:
    eps = getattr(args, "epsilon", Fraction(0))
    return validate_params(ModelParams(args.omega, g, args.delta, eps))


def _coupling(args) -> float:
    if args.g is not None:
        return args.g
    report = constraints.exceptional_couplings(_params(args), args.n, args.branch)
    try:
        return report.couplings_g[args.root_index]
    except IndexError:
        raise RabiError(f"level {args.n} has only {report.counted} exceptional couplings")


def _cplx(z):
    return [[float(np.real(v)), float(np.imag(v))] for v in z]


def _emit(args, payload, text=None):
    body = text if text is not None else json.dumps(payload, indent=2) + "\n"
    if args.out:
        args.out.write_text(body)
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(body)


def cmd_constraint(args):
    p = _params(args)
    poly = constraints.constraint_poly(p, args.n, args.branch)
    report = constraints.exceptional_couplings(p, args.n, args.branch) if args.n >= 1 else None
    out = {
        "n": args.n,
        "branch": args.branch,
        "params": {"omega": str(p.omega), "delta": str(p.delta), "epsilon": str(p.epsilon)},
        "variable": "x = (2g)^2",
        "coeffs": poly.to_floats(),
        "coeffs_exact": [str(c) for c in poly.coeffs],
        "roots_x": report.roots_x if report else [],
        "g": report.couplings_g if report else [],
        "predicted": report.predicted if report else 0,
        "counted": report.counted if report else 0,
    }
    if args.verify:
        ref = json.loads(args.verify.read_text())
        same = ref.get("coeffs_exact") == out["coeffs_exact"] and ref.get("roots_x") == out["roots_x"]
        out["verified"] = same
        _emit(args, out)
        return 0 if same else 1
    _emit(args, out)
    return 0


def cmd_heun_check(args):
    g = _coupling(args)
    p = _params(args, g)
    out = {"n": args.n, "branch": args.branch, "g": g, "surface_residual": constraints.surface_residual(p, args.n, args.branch)}
    try:
        out["heun_tail"] = constraints.heun_tail(p, args.n, args.branch)
        out["applicable"] = True
    except VanishingA as exc:
        out["heun_tail"] = None
        out["applicable"] = False
        out["reason"] = str(exc)
    _emit(args, out)
    return 0


def cmd_bethe(args):
    g = _coupling(args)
    p = _params(args, g)
    rs = bethe.solve_bethe(p, args.n, args.branch)
    residual = 0.0 if rs.degenerate else float(np.max(np.abs(bethe.bethe_residual(rs, p, args.n, args.branch))))
    out = {
        "n": args.n,
        "branch": args.branch,
        "g": g,
        "energy": exceptional_energy(p.as_float(), args.n, args.branch),
        "roots": _cplx(rs.sorted()),
        "degenerate": rs.degenerate,
        "max_residual": residual,
        "constraint_residual": float(np.abs(bethe.constraint_residual(rs, p, args.n, args.branch))),
        "iterations": rs.iterations,
    }
    _emit(args, out)
    return 0


def cmd_wavefn_check(args):
    g = _coupling(args)
    p = _params(args, g)
    rs = bethe.solve_bethe(p, args.n, args.branch)
    w = wavefunction.WavefunctionPair(args.branch, args.n, rs, p)
    out = {
        "n": args.n,
        "branch": args.branch,
        "g": g,
        "energy": w.energy,
        "schrodinger_residual": wavefunction.schrodinger_residual(w),
    }
    _emit(args, out)
    return 0


def cmd_spectrum(args):
    p = _params(args)
    table = spectrum.sweep_levels(p, args.g_min, args.g_max, args.steps, args.k, args.n_max)
    if args.format == "csv":
        _emit(args, None, figures.table_to_csv(table))
    elif args.format == "svg":
        preset = figures.Preset("custom", p.delta, p.epsilon, p.omega)
        _emit(args, None, figures.table_to_svg(preset, table, []))
    else:
        _emit(args, {"n_max": table.n_max, "g": table.g_grid.tolist(), "levels": table.levels.tolist()})
    return 0


def cmd_crossings(args):
    dev = constraints.crossing_coincidence(args.omega, args.delta, args.n, args.m)
    exact = constraints.coincidence_divides(args.omega, args.delta, args.n, args.m)
    out = {"n": args.n, "m": args.m, "epsilon": str(args.m * args.omega / 2), "max_deviation": dev, "exact_divisibility": exact}
    _emit(args, out)
    return 0 if dev <= args.tolerance else 1


def cmd_interlace(args):
    ok = constraints.verify_interlacing(_params(args), args.n, args.branch)
    _emit(args, {"n": args.n, "branch": args.branch, "interlacing": ok})
    return 0 if ok else 1


def cmd_figure(args):
    preset, table, points = figures.run_preset(args.preset, n_max=args.n_max)
    csv_text = figures.table_to_csv(table)
    g, levels = figures.read_csv(csv_text)
    checks = figures.check_figure(g, levels, points, preset.crossing, args.tolerance)
    outdir = args.out or Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"{preset.name}.csv").write_text(csv_text)
    (outdir / f"{preset.name}_points.csv").write_text(figures.points_to_csv(points))
    (outdir / f"{preset.name}.svg").write_text(figures.table_to_svg(preset, table, points))
    summary = {"preset": preset.name, "points": checks, "ok": all(c["ok"] for c in checks)}
    (outdir / f"{preset.name}_check.json").write_text(json.dumps(summary, indent=2) + "\n")
    log.info("wrote %s/%s.{csv,svg}", outdir, preset.name)
    if args.format == "json":
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    return 0 if summary["ok"] else 1


COMMANDS = {
    "constraint": cmd_constraint,
    "heun-check": cmd_heun_check,
    "bethe": cmd_bethe,
    "wavefn-check": cmd_wavefn_check,
    "spectrum": cmd_spectrum,
    "crossings": cmd_crossings,
    "interlace": cmd_interlace,
    "figure": cmd_figure,
}


def _setup_logging():
    level = os.environ.get("RABI_LOG", "info").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), stream=sys.stderr, format="%(levelname)s %(message)s")


def run(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except RabiError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1


def main():
    sys.exit(run())
