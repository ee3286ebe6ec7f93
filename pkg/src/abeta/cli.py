"""Command-line front end: bound evaluation, radii, curves, verification runs.

Data goes to stdout (newline-delimited JSON, or CSV for `curve`),
diagnostics to stderr.  Exit codes: 0 success, 1 verification violations,
2 usage or domain error.  Numbers are serialized with 12 significant
digits in JSON and 6 decimals in CSV.  The sampling seed comes from
--seed, falling back to the ABETA_SEED environment variable, then 1.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import bounds, radii, verify
from .errors import AbetaError

_EXIT_OK = 0
_EXIT_VIOLATIONS = 1
_EXIT_USAGE = 2


def _sig12(x: float) -> float:
    return float(f"{float(x):.12g}")


def _emit_json(record: dict, out) -> None:
    clean = {}
    for key, value in record.items():
        if isinstance(value, float):
            clean[key] = _sig12(value)
        elif isinstance(value, tuple):
            clean[key] = [(_sig12(v) if isinstance(v, float) else v) for v in value]
        else:
            clean[key] = value
    out.write(json.dumps(clean) + "\n")


def _parse_grid(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _default_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ABETA_SEED")
    if env is not None:
        return int(env)
    return 1


def _betas_for(args) -> list[float]:
    if getattr(args, "beta_grid", None):
        return _parse_grid(args.beta_grid)
    if args.beta is None:
        raise AbetaError("--beta (or --beta-grid) is required")
    return [args.beta]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_bounds(args, out) -> int:
    params = {}
    for name in ("n", "mu", "N", "p"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    for beta in _betas_for(args):
        if args.theorem in ("growth", "re-growth"):
            if args.r is None:
                raise AbetaError(f"{args.theorem} needs --r in (0, 1)")
            fn = bounds.growth_envelope if args.theorem == "growth" else bounds.re_fz_envelope
            lower, upper = fn(beta, args.r)
            _emit_json(
                {
                    "theorem_id": args.theorem,
                    "beta": beta,
                    "params": {"r": args.r},
                    "value": {"lower": _sig12(lower), "upper": _sig12(upper)},
                    "sharp": bounds.SharpStatus.SHARP_VERIFIED.value,
                },
                out,
            )
        else:
            bv = bounds.evaluate(args.theorem, beta, **params)
            _emit_json(
                {
                    "theorem_id": bv.theorem_id,
                    "beta": beta,
                    "params": {k: _sig12(v) if isinstance(v, float) else v for k, v in params.items()},
                    "value": bv.value,
                    "sharp": bv.sharp.value,
                },
                out,
            )
    return _EXIT_OK


def _radius_record(result: radii.RadiusResult, beta: float) -> dict:
    return {
        "equation_id": result.equation_id,
        "beta": beta,
        "radius": result.radius,
        "residual": result.residual,
        "bracket": result.bracket,
        "iterations": result.iterations,
    }


def _cmd_radii(args, out) -> int:
    if args.table1:
        worst = 0.0
        for beta, expected in radii.TABLE1_REFERENCE:
            computed = radii.bohr_radius(beta, 1).radius
            delta = computed - expected
            worst = max(worst, abs(delta))
            _emit_json(
                {
                    "beta": beta,
                    "radius": computed,
                    "expected": expected,
                    "delta": delta,
                    "ok": abs(delta) <= radii.TABLE1_TOL,
                },
                out,
            )
        if worst > radii.TABLE1_TOL:
            print(f"discrepancy: worst |delta| = {worst:.3e} exceeds {radii.TABLE1_TOL}", file=sys.stderr)
            return _EXIT_VIOLATIONS
        return _EXIT_OK
    if args.rogosinski:
        for beta in _betas_for(args):
            result = radii.rogosinski_radius(beta, args.m, args.N if args.N is not None else 1)
            _emit_json(_radius_record(result, beta), out)
        return _EXIT_OK
    for beta in _betas_for(args):
        result = radii.bohr_radius(beta, args.m)
        _emit_json(_radius_record(result, beta), out)
    return _EXIT_OK


def _cmd_verify(args, out) -> int:
    seed = _default_seed(args)
    if args.samples is not None and args.samples < 1:
        raise AbetaError(f"--samples must be >= 1, got {args.samples}")
    samples = args.samples if args.samples is not None else 10_000
    violations = 0

    if args.theorem == "zalcman-surface":
        for beta in _betas_for(args):
            best, (p_star, rho_star) = verify.scan_zalcman_surface(beta, args.grid_steps)
            _emit_json(
                {
                    "theorem_id": "zalcman-surface",
                    "beta": beta,
                    "max_value": best,
                    "argmax": {"p": _sig12(p_star), "rho": _sig12(rho_star)},
                    "expected_max": bounds.zalcman_bound(beta),
                },
                out,
            )
        return _EXIT_OK
    if args.theorem == "t31-lower-surface":
        for beta in _betas_for(args):
            report = verify.verify_t31_lower_surface(beta)
            record = dataclasses.asdict(report)
            record["ok"] = report.ok
            _emit_json(record, out)
            if not report.ok:
                violations += 1
        return _EXIT_VIOLATIONS if violations else _EXIT_OK
    if args.theorem == "growth":
        for beta in _betas_for(args):
            report = verify.verify_growth(beta, samples, seed)
            record = dataclasses.asdict(report)
            record["ok"] = report.ok
            _emit_json(record, out)
            violations += report.envelope_violations + report.re_envelope_violations
        return _EXIT_VIOLATIONS if violations else _EXIT_OK

    if args.full:
        betas = _parse_grid(args.betas) if args.betas else list(verify.DEFAULT_BETAS)
        reports = verify.run_registry(betas, samples, seed)
    else:
        if args.theorem is None:
            raise AbetaError("--theorem or --full is required")
        params = {}
        for name in ("n", "mu", "N"):
            value = getattr(args, name, None)
            if value is not None:
                params[name] = value
        reports = [verify.verify_bound(args.theorem, beta, samples, seed, **params) for beta in _betas_for(args)]
    for report in reports:
        _emit_json(dataclasses.asdict(report), out)
        violations += report.violations
    if violations:
        print(f"verification found {violations} violation(s)", file=sys.stderr)
        return _EXIT_VIOLATIONS
    return _EXIT_OK


def _cmd_curve(args, out) -> int:
    if args.betas:
        grid = _parse_grid(args.betas)
    elif args.count is not None:
        if args.count < 1:
            raise AbetaError(f"--count must be >= 1, got {args.count}")
        step = (args.stop - args.start) / max(args.count - 1, 1)
        grid = [args.start + step * i for i in range(args.count)]
    else:
        grid = []
    if not grid:
        raise AbetaError("curve needs a nonempty beta grid (--betas or --start/--stop/--count)")
    rows = radii.radius_curve(args.m, args.N if args.rogosinski else None, grid)
    out.write("beta,radius\n")
    for beta, radius in rows:
        out.write(f"{beta:.6f},{radius:.6f}\n")
    return _EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abeta",
        description="Coefficient-functional bounds, growth envelopes, and Bohr radii "
        "for a one-parameter class of holomorphic semigroup generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--beta", type=float, help="filtration parameter in [0, 1]")
        p.add_argument("--beta-grid", type=str, help="comma-separated list of beta values")
        p.add_argument("--seed", type=int, default=None, help="sampling seed (default: ABETA_SEED or 1)")

    p_bounds = sub.add_parser("bounds", help="evaluate a closed-form theorem bound")
    add_common(p_bounds)
    p_bounds.add_argument(
        "--theorem",
        required=True,
        choices=sorted(bounds.THEOREMS) + ["growth", "re-growth"],
    )
    p_bounds.add_argument("--n", type=int)
    p_bounds.add_argument("--mu", type=float)
    p_bounds.add_argument("--N", type=int)
    p_bounds.add_argument("--p", type=float)
    p_bounds.add_argument("--r", type=float)
    p_bounds.set_defaults(run=_cmd_bounds)

    p_radii = sub.add_parser("radii", help="solve Bohr / Bohr-Rogosinski radii")
    add_common(p_radii)
    p_radii.add_argument("--bohr", action="store_true")
    p_radii.add_argument("--rogosinski", action="store_true")
    p_radii.add_argument("--table1", action="store_true", help="compare the seven reference radii")
    p_radii.add_argument("--m", type=int, default=1)
    p_radii.add_argument("--N", type=int)
    p_radii.set_defaults(run=_cmd_radii)

    p_verify = sub.add_parser("verify", help="run sampling verification")
    add_common(p_verify)
    p_verify.add_argument(
        "--theorem",
        choices=sorted(verify.REGISTRY) + ["zalcman-surface", "t31-lower-surface", "growth"],
    )
    p_verify.add_argument("--full", action="store_true", help="run the whole registry")
    p_verify.add_argument("--betas", type=str, help="beta grid for --full")
    p_verify.add_argument("--samples", type=int)
    p_verify.add_argument("--grid-steps", type=int, default=400)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--mu", type=float)
    p_verify.add_argument("--N", type=int)
    p_verify.set_defaults(run=_cmd_verify)

    p_curve = sub.add_parser("curve", help="emit (beta, radius) rows as CSV")
    p_curve.add_argument("--bohr", action="store_true")
    p_curve.add_argument("--rogosinski", action="store_true")
    p_curve.add_argument("--m", type=int, default=1)
    p_curve.add_argument("--N", type=int, default=1)
    p_curve.add_argument("--betas", type=str, help="comma-separated beta grid")
    p_curve.add_argument("--start", type=float, default=0.0)
    p_curve.add_argument("--stop", type=float, default=0.9)
    p_curve.add_argument("--count", type=int)
    p_curve.add_argument("--seed", type=int, default=None)
    p_curve.set_defaults(run=_cmd_curve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args, sys.stdout)
    except AbetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
