"""Command-line front end.

Subcommands: ``constants``, ``root``, ``gamma``, ``sweep``, ``fit`` and
``selftest``. Exit codes: 0 success, 1 selftest failure, 2 usage error,
3 solver failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from . import dispersion as disp
from . import selftest
from .constants import PUBLISHED_VALUES, gamma_asymptotic, solve_constants
from .errors import (
    BubbleResError,
    ConvergenceError,
    DomainError,
    InsufficientPointsError,
    PrecisionError,
    RegimeError,
)
from .gamma import fit_ab, gamma
from .scaled import expansion_seed, solve_mode

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

CSV_FIELDS = [
    "eps", "we", "l_opt", "zeta", "eta",
    "log10_gamma_z", "log10_gamma_lambda", "log10_gamma_asym", "ratio", "method",
]
LOG10 = math.log(10.0)
RATIO_LOG_MIN = -300.0


def fmt(v):
    """17-significant-digit text for floats, plain text otherwise."""
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _positive(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return v


def _count(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return v


def _order(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"mode index must be >= 2: {text!r}")
    return v


def build_parser():
    p = argparse.ArgumentParser(
        prog="bubbleres",
        description="Shape-mode resonances of a gas bubble and their minimal decay rate.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="Asymptotic constants B, A0 and the optimiser expansion.")
    c.add_argument("--json", action="store_true", help="Emit JSON.")

    r = sub.add_parser("root", help="Resonance of one shape mode.")
    r.add_argument("--l", type=_order, required=True, help="Mode index l >= 2.")
    r.add_argument("--eps", type=_positive, required=True, help="Mach number.")
    r.add_argument("--we", type=_positive, default=1.0, help="Weber number (default 1).")
    r.add_argument("--method", choices=["direct", "scaled", "auto"], default="auto")
    r.add_argument("--json", action="store_true", help="Emit JSON.")

    g = sub.add_parser("gamma", help="Minimal decay rate over all modes.")
    g.add_argument("--eps", type=_positive, required=True)
    g.add_argument("--we", type=_positive, default=1.0)
    g.add_argument("--json", action="store_true")

    s = sub.add_parser("sweep", help="Decay rate over an eps grid, written as CSV or JSON.")
    s.add_argument("--eps-min", type=_positive, required=True)
    s.add_argument("--eps-max", type=_positive, required=True)
    s.add_argument("--steps", type=_count, required=True)
    s.add_argument("--we", type=_positive, default=1.0)
    s.add_argument("--out", required=True, help="Output path, or - for standard output.")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--meta", action="store_true", help="Prepend provenance comment lines.")
    s.add_argument("--jobs", type=_count, default=None, help="Worker processes (default: CPU count).")

    f = sub.add_parser("fit", help="Fit B and log A from a sweep file.")
    f.add_argument("--in", dest="path", required=True, help="CSV or JSON written by sweep.")
    f.add_argument("--json", action="store_true")

    t = sub.add_parser("selftest", help="Run built-in invariant checks.")
    t.add_argument("module", nargs="?", choices=sorted(selftest.CHECKS), help="Restrict to one module.")
    return p


def _print_json(obj, out):
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


def _cmd_constants(args, out):
    k = solve_constants().as_dict()
    if args.json:
        _print_json({**k, "paper_reference": PUBLISHED_VALUES}, out)
        return EXIT_OK
    for name, value in k.items():
        out.write(f"{name:<8} {fmt(value):<24} (published {PUBLISHED_VALUES[name]:.5g})\n")
    return EXIT_OK


def _root_record(args):
    p = disp.PhysicalParams(args.l, args.eps, args.we)
    regime = disp.regime_of(p)
    if args.method in ("direct", "auto"):
        try:
            try:
                seed = disp.default_seed(p)
            except RegimeError:
                seed = expansion_seed(args.l, p.eps_eff)
            root = disp.find_root(p, seed)
            return {
                "l": p.l, "eps": p.eps, "we": p.we, "regime": regime, "method": "direct",
                "x": root.z.real, "im_z": root.z.imag, "log_neg_im_z": math.log(-root.z.imag),
                "residual": root.residual, "iterations": root.iterations,
            }
        except (PrecisionError, RegimeError):
            if args.method == "direct":
                raise
    s = solve_mode(args.l, p.eps_eff)
    return {
        "l": p.l, "eps": p.eps, "we": p.we, "regime": regime, "method": "scaled",
        "x": s.x, "im_z": s.z.imag, "log_neg_im_z": s.log_abs_y,
        "zeta": s.zeta, "eta": s.eta, "residual": s.residual, "iterations": s.iterations,
    }


def _cmd_root(args, out):
    rec = _root_record(args)
    if args.json:
        _print_json(rec, out)
    else:
        for k, v in rec.items():
            out.write(f"{k:<13} {fmt(v)}\n")
    return EXIT_OK


def sweep_row(eps, we):
    """One sweep row as a dict keyed by ``CSV_FIELDS`` (natural logs converted to base 10)."""
    g = gamma(eps, we)
    asym, _ = gamma_asymptotic(eps, we)
    ratio = math.exp(g.log_gamma_z - asym) if min(g.log_gamma_z, asym) > RATIO_LOG_MIN else None
    return {
        "eps": float(eps), "we": float(we), "l_opt": g.l_opt, "zeta": g.zeta, "eta": g.eta_opt,
        "log10_gamma_z": g.log_gamma_z / LOG10,
        "log10_gamma_lambda": g.log_gamma_lambda / LOG10,
        "log10_gamma_asym": asym / LOG10,
        "ratio": ratio, "method": g.method,
    }


def _cmd_gamma(args, out):
    g = gamma(args.eps, args.we)
    asym, asym_lam = gamma_asymptotic(args.eps, args.we)
    rec = {
        "eps": g.eps, "we": g.we, "l_opt": g.l_opt, "method": g.method,
        "log_gamma_z": g.log_gamma_z, "log_gamma_lambda": g.log_gamma_lambda,
        "log_gamma_asym_z": asym, "log_gamma_asym_lambda": asym_lam,
        "eta_opt": g.eta_opt, "zeta": g.zeta, "certified": g.certified,
        "candidates": [[c.l, c.log_abs_y, c.source] for c in g.candidates],
    }
    if args.json:
        _print_json(rec, out)
    else:
        for k, v in rec.items():
            if k != "candidates":
                out.write(f"{k:<22} {fmt(v)}\n")
    return EXIT_OK


def _sweep_rows(grid, we, jobs):
    if jobs == 1 or len(grid) == 1:
        return [sweep_row(e, we) for e in grid]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(sweep_row, grid, [we] * len(grid)))


def _meta_lines(args):
    return [
        f"bubbleres {__version__}",
        f"sweep eps in [{fmt(args.eps_min)}, {fmt(args.eps_max)}], {args.steps} points, we = {fmt(args.we)}",
        "logs are base 10; gamma in z units, lambda = z / eps",
    ]


def render_csv(rows, meta=()):
    buf = io.StringIO()
    for line in meta:
        buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in rows:
        w.writerow([fmt(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def render_json(rows, meta=()):
    doc = {"rows": rows}
    if meta:
        doc = {"meta": list(meta), **doc}
    return json.dumps(doc, indent=2) + "\n"


def _cmd_sweep(args, out):
    if args.eps_min > args.eps_max:
        raise DomainError(f"--eps-min {args.eps_min} exceeds --eps-max {args.eps_max}")
    grid = [float(e) for e in np.linspace(args.eps_min, args.eps_max, args.steps)]
    rows = _sweep_rows(grid, args.we, args.jobs or os.cpu_count() or 1)
    meta = _meta_lines(args) if args.meta else ()
    text = render_csv(rows, meta) if args.format == "csv" else render_json(rows, meta)
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def read_sweep(path):
    """``(eps / sqrt(we), log_gamma_z)`` pairs from a sweep file."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        rows = json.loads(text)["rows"]
    else:
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        rows = list(csv.DictReader(lines))
    pts = []
    for row in rows:
        eps, we = float(row["eps"]), float(row["we"])
        pts.append((eps / math.sqrt(we), float(row["log10_gamma_z"]) * LOG10))
    return pts


def _cmd_fit(args, out):
    res = fit_ab(read_sweep(args.path))
    rec = {
        "b_fit": res.b_fit, "log_a_fit": res.log_a_fit, "residual_rms": res.residual_rms,
        "eps_min": res.eps_range[0], "eps_max": res.eps_range[1],
        "b_published": PUBLISHED_VALUES["eta_m0"], "log_a_published": -PUBLISHED_VALUES["eta_m2"],
    }
    if args.json:
        _print_json(rec, out)
    else:
        for k, v in rec.items():
            out.write(f"{k:<16} {fmt(v)}\n")
    return EXIT_OK


def _cmd_selftest(args, out):
    results = selftest.run([args.module] if args.module else None)
    for mod, name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'} {mod}:{name} {detail}\n")
    return EXIT_OK if all(ok for _, _, ok, _ in results) else EXIT_SELFTEST


COMMANDS = {
    "constants": _cmd_constants,
    "root": _cmd_root,
    "gamma": _cmd_gamma,
    "sweep": _cmd_sweep,
    "fit": _cmd_fit,
    "selftest": _cmd_selftest,
}


def _hint(exc):
    if isinstance(exc, PrecisionError):
        return "imaginary part below double resolution; try --method scaled"
    if isinstance(exc, RegimeError):
        return "outside the validated regime"
    return "try --method scaled or a different seed regime"


def run(argv=None, out=None, err=None):
    """Parse ``argv`` and execute; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (InsufficientPointsError, DomainError, OSError, KeyError, ValueError) as exc:
        if isinstance(exc, RegimeError):
            err.write(f"error: {exc} ({_hint(exc)})\n")
            return EXIT_SOLVER
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConvergenceError, PrecisionError, BubbleResError, ArithmeticError) as exc:
        regime = getattr(args, "l", None)
        where = f" for l = {args.l}, regime {disp.regime_of(disp.PhysicalParams(args.l, args.eps, args.we))}" if regime else ""
        err.write(f"error: solver failure{where}: {exc} ({_hint(exc)})\n")
        return EXIT_SOLVER


def main():
    sys.exit(run())
