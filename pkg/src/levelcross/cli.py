"""Command-line front end.

Subcommands: sweep, propagate, zeros, phase, ddp, znt, fit, compare.
An optional key=value config file (--config settings.cfg) supplies
defaults for any long option of the chosen subcommand; flags given on
the command line win.  Config keys use the option names, with '_' and
'-' interchangeable.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np
from scipy.interpolate import CubicSpline

from .ddp import ddp_probability, phase_integral, zero_points
from .errors import LevelCrossError
from .harness import (
    METHODS,
    SweepConfig,
    compare_methods,
    read_sweep_csv,
    report_to_json,
    run_sweep,
)
from .models import model_from_params
from .propagator import PropagatorSettings, propagate, propagate_trace
from .znt import fit_parameters, glancing_double_crossing, glancing_tunneling, znt_phase_estimate

_SETTINGS_KEYS = (
    "rel-tol",
    "abs-tol",
    "asymptotic-ratio",
    "convergence-tol",
    "max-span-doublings",
    "tail-cutoff",
)

# long options each subcommand accepts from a config file
_SUB_KEYS = {
    "sweep": frozenset(
        ("model", "N", "alpha-min", "alpha-max", "points", "spacing", "methods", "out", "workers")
        + _SETTINGS_KEYS
    ),
    "propagate": frozenset(
        ("model", "N", "alpha", "A", "B", "V0", "trace", "samples") + _SETTINGS_KEYS
    ),
    "zeros": frozenset(("N", "alpha")),
    "phase": frozenset(("N", "alpha", "k")),
    "ddp": frozenset(("N", "alpha")),
    "znt": frozenset(("branch", "N", "alpha")),
    "fit": frozenset(("curves",)),
    "compare": frozenset(("threshold", "report")),
}


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            entries[key.strip().replace("_", "-")] = value.strip()
    return entries


def _extract_config(argv: list[str]) -> tuple[list[str], dict[str, str]]:
    out: list[str] = []
    path = None
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--config":
            if i + 1 >= len(argv):
                raise ValueError("--config requires a path")
            path = argv[i + 1]
            i += 2
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
            i += 1
        else:
            out.append(tok)
            i += 1
    return out, (_load_config(path) if path else {})


def _merge_config(argv: list[str], config: dict[str, str]) -> list[str]:
    # config entries become leading flags so explicit flags override them
    if not config or not argv or argv[0] not in _SUB_KEYS:
        return argv
    allowed = _SUB_KEYS[argv[0]]
    flags: list[str] = []
    for key, value in config.items():
        if key in allowed:
            flags.extend((f"--{key}", value))
    return [argv[0], *flags, *argv[1:]]


def _add_settings_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--rel-tol", type=float, default=None)
    sp.add_argument("--abs-tol", type=float, default=None)
    sp.add_argument("--asymptotic-ratio", type=float, default=None)
    sp.add_argument("--convergence-tol", type=float, default=None)
    sp.add_argument("--max-span-doublings", type=int, default=None)
    sp.add_argument("--tail-cutoff", type=float, default=None)


def _settings_from_args(args: argparse.Namespace) -> PropagatorSettings:
    overrides = {
        name: getattr(args, name)
        for name in (
            "rel_tol",
            "abs_tol",
            "asymptotic_ratio",
            "convergence_tol",
            "max_span_doublings",
            "tail_cutoff",
        )
        if getattr(args, name) is not None
    }
    return PropagatorSettings(**overrides)


def _add_model_options(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--model", choices=("superparabolic", "parabolic"), default="superparabolic")
    sp.add_argument("--N", type=int, default=None)
    sp.add_argument("--alpha", type=float, default=None)
    sp.add_argument("--A", type=float, default=None)
    sp.add_argument("--B", type=float, default=None)
    sp.add_argument("--V0", type=float, default=None)


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.model != "superparabolic":
        raise ValueError("sweep covers the glancing family only; use --model superparabolic")
    config = SweepConfig(
        n_values=tuple(int(tok) for tok in args.N.split(",")),
        alpha_min=args.alpha_min,
        alpha_max=args.alpha_max,
        points=args.points,
        spacing=args.spacing,
        methods=tuple(tok.strip() for tok in args.methods.split(",") if tok.strip()),
        settings=_settings_from_args(args),
        out_path=args.out,
        workers=args.workers,
    )
    rows = run_sweep(config)
    failed = sum(1 for r in rows if r.status != "ok")
    print(f"wrote {len(rows)} rows to {args.out} ({failed} with failures)")
    return 0


def _cmd_propagate(args: argparse.Namespace) -> int:
    model = model_from_params(
        args.model, N=args.N, alpha=args.alpha, A=args.A, B=args.B, V0=args.V0
    )
    settings = _settings_from_args(args)
    result = propagate(model, settings)
    print(f"probability = {result.probability:.17g}")
    print(f"final_norm_drift = {result.final_norm_drift:.17g}")
    print(f"span_used = {result.span_used:.17g}")
    print(f"doublings_used = {result.doublings_used}")
    print(f"converged = {result.converged}")
    if args.trace is not None:
        samples = propagate_trace(model, settings, args.samples)
        with open(args.trace, "w", encoding="ascii", newline="") as fh:
            fh.write("t,P1,P2,norm\n")
            for t, p1, p2, norm in samples:
                fh.write(f"{t:.17g},{p1:.17g},{p2:.17g},{norm:.17g}\n")
        print(f"trace written to {args.trace}")
    return 0


def _cmd_zeros(args: argparse.Namespace) -> int:
    print("k,re_tc,im_tc")
    for z in zero_points(args.N, args.alpha):
        print(f"{z.k},{z.t_c.real:.17g},{z.t_c.imag:.17g}")
    return 0


def _cmd_phase(args: argparse.Namespace) -> int:
    d = phase_integral(args.N, args.alpha, args.k)
    print(f"sigma = {d.real:.17g}")
    print(f"delta = {d.imag:.17g}")
    print(f"eta = {abs(d):.17g}")
    return 0


def _cmd_ddp(args: argparse.Namespace) -> int:
    print(f"P = {ddp_probability(args.N, args.alpha):.17g}")
    return 0


def _cmd_znt(args: argparse.Namespace) -> int:
    if args.branch == "double":
        p = glancing_double_crossing(args.N, args.alpha)
    else:
        p = glancing_tunneling(args.N, args.alpha)
    print(f"P = {p:.17g}")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    data = np.genfromtxt(args.curves, delimiter=",", names=True)
    for col in ("t", "E1", "E2"):
        if col not in (data.dtype.names or ()):
            raise ValueError(f"curves file needs columns t,E1,E2; missing {col!r}")
    order = np.argsort(data["t"])
    t = data["t"][order]
    e1 = CubicSpline(t, data["E1"][order])
    e2 = CubicSpline(t, data["E2"][order])
    geom, a_sq, b_sq = fit_parameters(e1, e2, (float(t[0]), float(t[-1])))
    estimate = znt_phase_estimate(geom, e1, e2, a_sq, b_sq)
    print(f"t_b = {geom.t_b:.17g}")
    print(f"t_t = {geom.t_t:.17g}")
    print(f"t_0 = {geom.t_0:.17g}")
    print(f"V0_fit = {geom.V0_fit:.17g}")
    print(f"d_sq = {geom.d_sq:.17g}")
    print(f"a_sq = {a_sq:.17g}")
    print(f"b_sq = {b_sq:.17g}")
    print(f"sigma_estimate = {estimate.real:.17g}")
    print(f"delta_estimate = {estimate.imag:.17g}")
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    rows, _ = read_sweep_csv(args.csv)
    report = compare_methods(rows, threshold=args.threshold)
    text = report_to_json(report)
    if args.report is not None:
        with open(args.report, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
        for method, dev in sorted(report.max_abs_deviation.items()):
            shown = "n/a" if dev is None else f"{dev:.6g}"
            print(f"max|P_{method} - P_numeric| = {shown}")
        print(f"report written to {args.report}")
    else:
        print(text, end="")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levelcross",
        description="Transition probabilities for level-glancing and parabolic two-level models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", help="evaluate methods over an alpha grid, write CSV")
    sp.add_argument("--model", choices=("superparabolic", "parabolic"), default="superparabolic")
    sp.add_argument("--N", type=str, required=True, help="even N, comma-separated list allowed")
    sp.add_argument("--alpha-min", type=float, required=True)
    sp.add_argument("--alpha-max", type=float, required=True)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--spacing", choices=("linear", "log"), default="log")
    sp.add_argument("--methods", type=str, default=",".join(METHODS))
    sp.add_argument("--out", type=str, required=True)
    sp.add_argument("--workers", type=int, default=0)
    _add_settings_options(sp)
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("propagate", help="integrate the exact dynamics for one model")
    _add_model_options(sp)
    sp.add_argument("--trace", type=str, default=None, help="write population trace CSV here")
    sp.add_argument("--samples", type=int, default=512)
    _add_settings_options(sp)
    sp.set_defaults(func=_cmd_propagate)

    sp = sub.add_parser("zeros", help="complex zero points of the adiabatic gap")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.set_defaults(func=_cmd_zeros)

    sp = sub.add_parser("phase", help="complex gap integral D at the k-th zero point")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=_cmd_phase)

    sp = sub.add_parser("ddp", help="coherent multi-zero adiabatic probability")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.set_defaults(func=_cmd_ddp)

    sp = sub.add_parser("znt", help="Zhu-Nakamura probability, double or tunnel branch")
    sp.add_argument("--branch", choices=("double", "tunnel"), required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.set_defaults(func=_cmd_znt)

    sp = sub.add_parser("fit", help="fit reduced parameters from adiabatic curves CSV (t,E1,E2)")
    sp.add_argument("--curves", type=str, required=True)
    sp.set_defaults(func=_cmd_fit)

    sp = sub.add_parser("compare", help="method-comparison report from a sweep CSV")
    sp.add_argument("csv", type=str)
    sp.add_argument("--threshold", type=float, default=0.05)
    sp.add_argument("--report", type=str, default=None)
    sp.set_defaults(func=_cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    try:
        stripped, config = _extract_config(raw)
        merged = _merge_config(stripped, config)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = _build_parser().parse_args(merged)
    try:
        return args.func(args)
    except LevelCrossError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
