"""Command-line front end.

Usage: ``fracblocks [--config PATH] [--out DIR] [--seed N] [--threads N] COMMAND ...``
with COMMAND one of ``validate, power, spectrum, evolve, pde, reduce``.
Settings come from built-in defaults, then the JSON config file, then flags.

Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 numerical failure.
"""

import argparse
import json
import math
from pathlib import Path
import sys

import numpy as np

from . import __version__
from .block_operator import (
    assemble_lambda,
    balakrishnan_block,
    fractional_power_closed_form,
    fractional_power_eig_oracle,
)
from .errors import (
    BranchCutError,
    ConvergenceError,
    DiagonalizationError,
    DomainError,
    SingularResolventError,
)
from .evolution import evolve, fit_growth_rate, random_state
from .laplacian import DirichletModel, solve_pde
from .reduction import char_coeffs, format_ode
from .spectral_base import QuadratureSpec, SpectralOperator
from .spectrum import (
    classify_generation,
    eigenvalues_formula,
    max_real_part,
    sectoriality_threshold,
    semilines,
)
from . import validation

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

NUMERIC_ERRORS = (ConvergenceError, DiagonalizationError, BranchCutError, SingularResolventError)

DEFAULTS = {
    "n": 3,
    "alpha": 0.5,
    "mu": 1.0,
    "operator": {"type": "dirichlet", "length": math.pi, "m": 1, "modes": 8},
    "tag": "minus_lambda_alpha",
    "times": {"t_max": 5.0, "steps": 101},
    "x_points": 513,
    "initial": None,
    "quadrature": {"nodes_per_panel": 64, "scheme": "gauss-legendre-split", "tolerance": 1e-10},
    "grid": validation.DEFAULT_GRID,
    "tolerance": None,
    "include_coeffs": False,
    "seed": 0,
    "threads": 1,
}


class ConfigError(Exception):
    pass


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _numeric(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def resolve_config(file_doc, overrides):
    """Merge defaults, a config document and flag overrides; validate ranges."""
    cfg = json.loads(json.dumps(DEFAULTS))
    for src in (file_doc or {}, overrides):
        for key, value in src.items():
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            if value is None:
                continue
            same_kind = key != "operator" or value.get("type") == cfg[key].get("type")
            if isinstance(cfg.get(key), dict) and isinstance(value, dict) and same_kind:
                cfg[key] = {**cfg[key], **value}
            else:
                cfg[key] = value
    if not (isinstance(cfg["n"], int) and cfg["n"] >= 2):
        raise ConfigError("n must be an integer >= 2")
    if not (_numeric(cfg["alpha"]) and 0 <= cfg["alpha"] <= 1):
        raise ConfigError("alpha must lie in [0, 1]")
    if not (_numeric(cfg["mu"]) and cfg["mu"] > 0):
        raise ConfigError("mu must be positive")
    t = cfg["times"]
    if not (_numeric(t.get("t_max")) and t["t_max"] >= 0 and isinstance(t.get("steps"), int)
            and t["steps"] >= 1):
        raise ConfigError("times needs t_max >= 0 and integer steps >= 1")
    if not (isinstance(cfg["seed"], int) and cfg["seed"] >= 0):
        raise ConfigError("seed must be a non-negative integer")
    if not (isinstance(cfg["threads"], int) and cfg["threads"] >= 0):
        raise ConfigError("threads must be a non-negative integer")
    if cfg["tolerance"] is not None and not (_numeric(cfg["tolerance"]) and cfg["tolerance"] >= 0):
        raise ConfigError("tolerance must be a non-negative number")
    if not (isinstance(cfg["x_points"], int) and cfg["x_points"] >= 5):
        raise ConfigError("x_points must be an integer >= 5")
    try:
        build_operator(cfg)
        QuadratureSpec(**cfg["quadrature"])
    except (DomainError, TypeError, ValueError, OSError) as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def build_operator(cfg):
    spec = cfg["operator"]
    kind = spec.get("type")
    if kind == "dirichlet":
        return dirichlet_model(cfg).operator()
    if kind == "eigenvalues":
        return SpectralOperator(tuple(spec["eigenvalues"]), spec.get("label", ""))
    if kind == "file":
        return SpectralOperator.from_json(Path(spec["path"]).read_text())
    raise DomainError(f"unknown operator type {kind!r}")


def dirichlet_model(cfg):
    spec = cfg["operator"]
    if spec.get("type") != "dirichlet":
        raise DomainError("this command needs a dirichlet operator")
    return DirichletModel(
        float(spec.get("length", math.pi)), int(spec.get("m", 1)), int(spec.get("modes", 8)),
        int(spec.get("quadrature_points", 1025)),
    )


def time_grid(cfg):
    return np.linspace(0.0, cfg["times"]["t_max"], cfg["times"]["steps"])


def _envelope(cfg, command):
    return {"version": __version__, "command": command, "config": cfg}


def _write(out, name, text):
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def cmd_power(cfg, out):
    n, mu, a = cfg["n"], cfg["mu"], cfg["alpha"]
    closed = fractional_power_closed_form(n, mu, a)
    doc = _envelope(cfg, "power")
    doc["closed_form"] = closed.to_dict()
    if 0 < a < 1:
        eig = fractional_power_eig_oracle(assemble_lambda(n, mu), a)
        quad = balakrishnan_block(n, mu, a, QuadratureSpec(**cfg["quadrature"]))
        doc["eig_oracle"] = eig.to_dict()
        doc["balakrishnan"] = quad.to_dict()
        c = closed.entries
        doc["max_relative_error"] = {
            "eig_oracle": float(np.max(np.abs(eig.entries - c) / np.abs(c))),
            "balakrishnan": float(np.max(np.abs(quad.entries - c) / np.abs(c))),
        }
    _write(out, "power.json", _dumps(doc))
    print(closed.pretty())
    return EXIT_OK


def cmd_spectrum(cfg, out):
    from fractions import Fraction

    n, a = cfg["n"], cfg["alpha"]
    op = build_operator(cfg)
    exact = Fraction(a).limit_denominator(10**6)
    alpha = exact if abs(float(exact) - a) < 1e-15 else a
    report = eigenvalues_formula(n, alpha, op, cfg["tag"])
    header = "".join(f"# {k}: {json.dumps(v, sort_keys=True)}\n"
                     for k, v in _envelope(cfg, "spectrum").items())
    _write(out, "spectrum.csv", header + report.to_csv())
    rays = semilines(report)
    lines = [header, "k,conjugate,angle,angle_over_pi,r_min,r_max\n"]
    for r in rays:
        lines.append(f"{r['k']},{int(r['conjugate'])},{float(r['angle_over_pi']) * math.pi!r},"
                     f"{r['angle_over_pi']},{r['r_min']!r},{r['r_max']!r}\n")
    _write(out, "semilines.csv", "".join(lines))
    doc = _envelope(cfg, "spectrum")
    doc.update({
        "operator_tag": report.operator_tag,
        "angles_over_pi": [str(x) for x in report.angles_over_pi()],
        "threshold": sectoriality_threshold(n),
        "classification": classify_generation(n, a) if a > 0 else None,
        "max_real_part_minus_lambda_alpha": max_real_part(n, a, op) if a > 0 else None,
    })
    _write(out, "spectrum.json", _dumps(doc))
    print("semiline angles / pi:", ", ".join(doc["angles_over_pi"]))
    return EXIT_OK


def cmd_evolve(cfg, out):
    op = build_operator(cfg)
    state = random_state(cfg["n"], op, cfg["seed"])
    traj = evolve(state, cfg["alpha"], time_grid(cfg), threads=cfg["threads"])
    _write(out, "trajectory.csv", traj.to_csv(_envelope(cfg, "evolve")))
    doc = _envelope(cfg, "evolve")
    doc["trajectory"] = traj.to_dict(include_coeffs=cfg["include_coeffs"])
    rate = fit_growth_rate(traj.times, traj.norms) if traj.times[-1] > 0 else None
    doc["fitted_growth_rate"] = rate
    _write(out, "trajectory.json", _dumps(doc))
    print(f"fitted growth rate: {rate}")
    return EXIT_OK


def _initial_functions(cfg, model):
    n = cfg["n"]
    spec = cfg["initial"] or [{"mode": 1}] + ["zero"] * (n - 1)
    if len(spec) != n:
        raise ConfigError(f"initial needs {n} entries, got {len(spec)}")
    funcs = []
    for item in spec:
        if item == "zero" or item is None:
            funcs.append(None)
        elif isinstance(item, dict) and "mode" in item:
            phi = model.eigenfunction(int(item["mode"]))
            amp = float(item.get("amplitude", 1.0))
            funcs.append(lambda x, phi=phi, amp=amp: amp * phi(x))
        elif isinstance(item, dict) and "bump" in item:
            amp, length = float(item["bump"]), model.length
            funcs.append(lambda x, amp=amp: amp * x * (length - x))
        else:
            raise ConfigError(f"unrecognised initial data entry {item!r}")
    return funcs


def cmd_pde(cfg, out):
    try:
        model = dirichlet_model(cfg)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    x = np.linspace(0.0, model.length, cfg["x_points"])
    sol = solve_pde(model, cfg["n"], cfg["alpha"], _initial_functions(cfg, model), time_grid(cfg), x)
    _write(out, "field.csv", sol.to_csv(_envelope(cfg, "pde")))
    doc = _envelope(cfg, "pde")
    doc["solution"] = sol.to_dict()
    _write(out, "field.json", _dumps(doc))
    print(f"L2 norm at t_max: {float(sol.l2_trace()[-1])!r}")
    return EXIT_OK


def cmd_reduce(cfg, out):
    op = build_operator(cfg)
    doc = _envelope(cfg, "reduce")
    doc["modes"] = []
    for j, mu in enumerate(op.eigenvalues, start=1):
        cc = char_coeffs(cfg["n"], cfg["alpha"], mu)
        doc["modes"].append({"j": j, **cc.to_dict(), "equation": format_ode(cc)})
        print(f"mode {j} (mu={mu!r}): {format_ode(cc)}")
    _write(out, "reduce.json", _dumps(doc))
    return EXIT_OK


def cmd_validate(cfg, out):
    grid = {"orders": [int(v) for v in cfg["grid"]["orders"]],
            "alphas": [float(v) for v in cfg["grid"]["alphas"]],
            "mus": [float(v) for v in cfg["grid"]["mus"]]}
    results = validation.run_suite(grid, cfg["seed"], QuadratureSpec(**cfg["quadrature"]),
                                   cfg["tolerance"])
    doc = _envelope(cfg, "validate")
    doc.update(validation.report(results))
    _write(out, "validate.json", _dumps(doc))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.max_residual:.3g} (tol {r.tolerance:g})")
    return EXIT_OK if doc["passed"] else EXIT_VALIDATION


COMMANDS = {
    "validate": cmd_validate,
    "power": cmd_power,
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "pde": cmd_pde,
    "reduce": cmd_reduce,
}


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=argparse.SUPPRESS, help="JSON config file")
    common.add_argument("--out", type=Path, default=argparse.SUPPRESS, help="output directory")
    common.add_argument("--seed", type=_nonneg_int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=_nonneg_int, default=argparse.SUPPRESS,
                        help="worker threads over modes (0 = auto)")

    parser = argparse.ArgumentParser(prog="fracblocks", parents=[common], description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--mu", type=float, help="mode eigenvalue (power)")
        p.add_argument("--eigenvalues", type=float, nargs="+", help="explicit operator spectrum")
        p.add_argument("--operator-file", type=Path, help="operator JSON document")
        p.add_argument("--modes", type=int, help="Dirichlet modes")
        p.add_argument("--length", type=float, help="Dirichlet interval length")
        p.add_argument("--m", type=int, help="polyharmonic order")
        p.add_argument("--t-max", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--tolerance", type=float, help="override every validation tolerance")
        p.add_argument("--tag", choices=["lambda", "minus_lambda", "lambda_alpha",
                                         "minus_lambda_alpha"])
        p.add_argument("--coeffs", action="store_true", help="dump coefficients in JSON output")
    return parser


def _overrides(args):
    o = {"n": args.n, "alpha": args.alpha, "mu": args.mu, "tolerance": args.tolerance,
         "tag": args.tag, "seed": getattr(args, "seed", None),
         "threads": getattr(args, "threads", None)}
    if args.coeffs:
        o["include_coeffs"] = True
    if args.eigenvalues:
        o["operator"] = {"type": "eigenvalues", "eigenvalues": args.eigenvalues}
    elif args.operator_file:
        o["operator"] = {"type": "file", "path": str(args.operator_file)}
    else:
        dirichlet = {k: v for k, v in (("modes", args.modes), ("length", args.length),
                                       ("m", args.m)) if v is not None}
        if dirichlet:
            o["operator"] = {"type": "dirichlet", **dirichlet}
    times = {k: v for k, v in (("t_max", args.t_max), ("steps", args.steps)) if v is not None}
    if times:
        o["times"] = times
    return o


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = getattr(args, "out", Path("."))
    try:
        doc = {}
        if getattr(args, "config", None):
            try:
                doc = json.loads(Path(args.config).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
            if not isinstance(doc, dict):
                raise ConfigError("config must be a JSON object")
        overrides = _overrides(args)
        cfg = resolve_config(doc, overrides)
        return COMMANDS[args.command](cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERIC_ERRORS as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ConvergenceError):
            payload["last_change"] = exc.error
        print(json.dumps(payload), file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
