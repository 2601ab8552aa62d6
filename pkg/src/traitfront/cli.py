"""Command-line entry point.

Subcommands map onto the experiment pipelines plus the acceptance gate:

    simulate-pde   explicit reaction-diffusion run (needs a finite epsilon)
    solve-hj       limiting interface solve (tag I, J, or w)
    solve-action   direct trajectory optimization at one probe point
    distance       geodesic distance field by fast sweeping
    analyze-front  fit propagation laws to a stored front curve CSV
    sweep          the epsilon sweep against the obstacle solution
    check          run the acceptance criteria and report pass/fail

Exit codes: 0 success, 1 acceptance failure, 2 configuration error,
3 numerical error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .acceptance import AcceptanceContext, evaluate_all, format_report
from .config import default_config, parse_config
from .errors import TraitfrontError
from .experiments import Experiment, allocate_run_dir, run_experiment
from .fronts import FrontCurve, fit_law
from .storage import read_csv_columns, write_manifest


def _load_config(args):
    if args.config:
        return parse_config(Path(args.config).read_text(encoding="utf-8"))
    return default_config()


def _run_pipeline(args, kind, options, cfg=None):
    if cfg is None:
        cfg = _load_config(args)
    outdir = allocate_run_dir(args.outdir, kind)
    exp = Experiment(kind, cfg, outdir, seed=args.seed, options=options)
    manifest = run_experiment(exp)
    if "error" in manifest:
        print(f"error ({manifest['error']['type']}): "
              f"{manifest['error']['message']}", file=sys.stderr)
    print(f"wrote {outdir / 'manifest.json'}")
    return manifest["exit_code"]


def _cmd_simulate_pde(args):
    cfg = _load_config(args)
    if args.epsilon is not None:
        cfg = cfg.with_updates(epsilon=args.epsilon)
    return _run_pipeline(args, "SimulatePDE", {}, cfg=cfg)


def _cmd_solve_hj(args):
    return _run_pipeline(args, "SolveHJ", {"tag": args.tag})


def _cmd_solve_action(args):
    options = {}
    for key in ("x", "theta", "t"):
        value = getattr(args, key)
        if value is not None:
            options[key] = value
    return _run_pipeline(args, "SolveAction", options)


def _cmd_distance(args):
    return _run_pipeline(args, "Distance", {})


def _cmd_sweep(args):
    return _run_pipeline(args, "EpsSweep", {})


def _cmd_front(args):
    return _run_pipeline(args, "FrontConstant", {})


def _cmd_sets(args):
    return _run_pipeline(args, "SetEquivalence", {})


def _cmd_refine(args):
    return _run_pipeline(args, "Refinement", {})


def _cmd_analyze_front(args):
    cols = read_csv_columns(args.csv)
    curve = FrontCurve(
        np.asarray(cols["t"], dtype=float),
        np.asarray(cols["x_front"], dtype=float),
        tag=str(cols["tag"][0]),
        level=float(cols["level"][0]),
    )
    fits = {"power": fit_law(curve, "power")}
    if np.all(curve.times > 1.0):
        fits["power_sqrt_log"] = fit_law(curve, "power_sqrt_log")
    summary = {}
    for form, fit in fits.items():
        summary[form] = {"c": fit.c, "alpha": fit.alpha,
                         "residual": fit.residual}
        print(f"{form}: x(t) = {fit.c:.6g} * t^{fit.alpha:.4g}"
              + (" * sqrt(log t)" if fit.log_correction else "")
              + f"   (rms residual {fit.residual:.3g})")
    if args.out:
        write_manifest(args.out, {"source": str(args.csv), "fits": summary})
        print(f"wrote {args.out}")
    return 0


def _cmd_check(args):
    only = None
    if args.only:
        only = [int(part) for part in args.only.split(",") if part.strip()]
    progress = (lambda msg: print(f"... {msg}", flush=True)) if args.verbose else None
    ctx = AcceptanceContext(seed=args.seed, progress=progress)
    results = evaluate_all(ctx, only=only)
    print(format_report(results))
    if args.outdir:
        outdir = allocate_run_dir(args.outdir, "check")
        write_manifest(outdir / "manifest.json", {
            "criteria": {
                str(r.cid): {"name": r.name, "passed": r.passed,
                             "details": r.details, "report": r.lines,
                             "seconds": r.seconds}
                for r in results
            },
            "seed": args.seed,
            "backend": _kernels.current_backend(),
        })
        print(f"wrote {outdir / 'manifest.json'}")
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="traitfront",
        description="Numerical laboratory for front propagation with an "
                    "unbounded motility trait.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--backend", choices=("auto", "pure", "compiled"), default=None,
        help="kernel backend (default: TRAITFRONT_BACKEND or auto)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="INI run configuration file")
        p.add_argument("--outdir", default="runs",
                       help="base directory for experiment outputs")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("simulate-pde",
                       help="explicit reaction-diffusion run")
    common(p)
    p.add_argument("--epsilon", type=float, default=None,
                   help="override run.epsilon from the config")
    p.set_defaults(func=_cmd_simulate_pde)

    p = sub.add_parser("solve-hj", help="limiting interface solve")
    common(p)
    p.add_argument("--tag", choices=("I", "J", "w"), default="J")
    p.set_defaults(func=_cmd_solve_hj)

    p = sub.add_parser("solve-action",
                       help="trajectory optimization at one probe")
    common(p)
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(func=_cmd_solve_action)

    p = sub.add_parser("distance", help="geodesic distance field")
    common(p)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("analyze-front", help="fit laws to a front CSV")
    p.add_argument("csv", help="front curve CSV written by another run")
    p.add_argument("--out", default=None, help="write fits as JSON here")
    p.set_defaults(func=_cmd_analyze_front)

    p = sub.add_parser("sweep", help="epsilon sweep vs the obstacle solution")
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("front-constant",
                       help="measure the headline front constant")
    common(p)
    p.set_defaults(func=_cmd_front)

    p = sub.add_parser("set-equivalence",
                       help="compare invaded sets across methods")
    common(p)
    p.set_defaults(func=_cmd_sets)

    p = sub.add_parser("refinement", help="grid and cap refinement study")
    common(p)
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("check", help="run the acceptance criteria")
    p.add_argument("--only", default=None,
                   help="comma-separated criterion numbers (default: all)")
    p.add_argument("--outdir", default=None,
                   help="also write a JSON manifest under this directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--verbose", action="store_true",
                   help="print progress for the long solves")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.backend:
        try:
            _kernels.use(args.backend)
        except ImportError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except TraitfrontError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
