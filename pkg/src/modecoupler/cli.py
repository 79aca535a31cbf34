"""Command-line surface: steady-state queries, trajectory runs, parameter
sweeps, figure datasets and the self-validation suite.

Exit codes: 0 success, 1 domain error, 2 I/O failure, 3 validation failure.
All numeric output is printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, dynamics, liouvillian, observables, steadystate, sweep, validate as validation
from .errors import ModeCouplerError
from .params import from_json, make_params
from .statespace import CSV_COLUMNS, vacuum


def _fmt(v) -> str:
    return f"{v:.12g}"


def _add_param_flags(parser):
    parser.add_argument("--params", help="JSON parameter file")
    parser.add_argument("--omega", type=float)
    parser.add_argument("--kappa", type=float, default=0.0)
    parser.add_argument("--epsilon", type=float, default=0.0)
    parser.add_argument("--gamma-a", type=float, default=0.0)
    parser.add_argument("--gamma-b", type=float, default=0.0)
    parser.add_argument("--gamma", type=float, default=None)
    parser.add_argument("--theta", type=float, default=None)
    parser.add_argument("--normalized", action="store_true",
                        help="interpret flag values as ratios to omega "
                             "(omega fixed at 1)")


def _params_from_args(args):
    if args.params:
        return from_json(args.params)
    omega = 1.0 if args.normalized else args.omega
    if omega is None:
        raise ModeCouplerError("either --params or --omega is required")
    return make_params(omega, kappa=args.kappa, epsilon=args.epsilon,
                       gamma_a=args.gamma_a, gamma_b=args.gamma_b,
                       gamma=args.gamma, theta=args.theta)


def _emit(payload: dict, args):
    if getattr(args, "format", "json") == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        keys = list(payload)
        text = (",".join(keys) + "\n"
                + ",".join(_fmt(payload[k]) if isinstance(payload[k], float)
                           else str(payload[k]) for k in keys) + "\n")
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _state_payload(rho) -> dict:
    return dict(zip(CSV_COLUMNS, (float(v) for v in rho.csv_row())))


def cmd_steady(args) -> int:
    params = _params_from_args(args)
    numeric = steadystate.numeric_steady(params, pdd0=args.pdd0)
    analytic = steadystate.steady_state(params, pdd0=args.pdd0)
    dev = steadystate.max_deviation(analytic.rho, numeric.rho)
    obs = observables.compute_all(analytic.rho)
    payload = {
        "regime": analytic.regime,
        "singular": analytic.singular,
        "denominator": analytic.denominator,
        "analytic": _state_payload(analytic.rho),
        "numeric": _state_payload(numeric.rho),
        "max_abs_deviation": dev,
        "observables": dict(zip(observables.OBSERVABLE_COLUMNS,
                                (float(v) for v in obs.csv_row()))),
    }
    if args.format == "csv":
        flat = {"regime": analytic.regime, "max_abs_deviation": dev}
        flat.update(payload["analytic"])
        flat.update({"obs_" + k: v for k, v in payload["observables"].items()})
        _emit(flat, args)
    else:
        _emit(payload, args)
    return 0


def cmd_evolve(args) -> int:
    params = _params_from_args(args)
    sys_ = liouvillian.build(params)
    dt = args.dt if args.dt else dynamics.max_step(params)
    if args.pdd0 is not None:
        y0 = liouvillian.pack(dynamics.singular_initial_state(params, args.pdd0))
    else:
        y0 = liouvillian.pack(vacuum())
    sample_every = max(1, int(round(args.t_end / dt / args.samples)))
    traj = dynamics.integrate_linear(sys_, y0, args.t_end, dt, sample_every)
    traj.to_csv(args.output) if args.output else traj.to_csv("/dev/stdout")
    return 0


def _parse_axis(text: str) -> sweep.Axis:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ModeCouplerError(
            "axis must be name:start:stop:count[:log], got " + text)
    scale = parts[4] if len(parts) == 5 else "linear"
    return sweep.Axis(parts[0], float(parts[1]), float(parts[2]),
                      int(parts[3]), scale)


def cmd_sweep(args) -> int:
    params = _params_from_args(args)
    axes = tuple(_parse_axis(a) for a in args.axis)
    spec = sweep.SweepSpec(base=params, axes=axes, pdd0=args.pdd0)
    table = sweep.run_sweep(spec)
    table.write_csv(args.output)
    return 0


def cmd_figure(args) -> int:
    table = sweep.figure_dataset(args.id, args.resolution)
    table.write_csv(args.output)
    return 0


def cmd_validate(args) -> int:
    report = validation.run_suite(seed=args.seed)
    print(f"passed: {report.passed}")
    print(f"failed: {report.failed}")
    for line in report.failures:
        print("FAIL " + line)
    return 0 if report.ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modecoupler",
        description="coupled dissipative bosonic modes: steady states, "
                    "dynamics, correlations")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("steady", help="steady state (analytic + numeric)")
    _add_param_flags(p)
    p.add_argument("--pdd0", type=float, default=None,
                   help="initial rho_dd population (singular regime)")
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_steady)

    p = subs.add_parser("evolve", help="trajectory from vacuum (or a "
                                       "rho_dd mixture) as CSV")
    _add_param_flags(p)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--pdd0", type=float, default=None)
    p.add_argument("--output")
    p.set_defaults(func=cmd_evolve)

    p = subs.add_parser("sweep", help="steady-state observables on a grid")
    _add_param_flags(p)
    p.add_argument("--axis", action="append", required=True,
                   help="name:start:stop:count[:log]; repeat for 2-D")
    p.add_argument("--pdd0", type=float, default=None)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = subs.add_parser("figure", help="regenerate a survey-figure dataset")
    p.add_argument("id", choices=sweep.FIGURE_IDS)
    p.add_argument("--resolution", type=int, default=64)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_figure)

    p = subs.add_parser("validate", help="run the self-validation suite")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModeCouplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
