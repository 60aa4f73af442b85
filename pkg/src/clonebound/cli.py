"""Command line harness: curve sweeps, single cloner reports, verification suites.

Exit codes: 0 on success with no violations, 1 on usage errors (bad flags,
invalid parameter ranges, unwritable paths), 2 when a verification suite
found at least one violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import bounds, cloner, suites

CURVES = ("re-lower", "ae-lower", "re-sym", "f-diff")

# Fallback seed when neither --seed nor CLONEBOUND_SEED is given.
DEFAULT_SEED = 42

__all__ = ["SweepSpec", "run_sweep", "format_number", "build_parser", "main"]


@dataclass(frozen=True)
class SweepSpec:
    """One curve evaluated on a shared z grid for several output counts."""

    curve: str
    n_in: int
    l_values: tuple
    z_min: float
    z_max: float
    steps: int
    out_path: str

    def __post_init__(self):
        if self.curve not in CURVES:
            raise ValueError(f"unknown curve {self.curve!r}, expected one of {CURVES}")
        if self.n_in < 1:
            raise ValueError(f"--n must be >= 1, got {self.n_in}")
        values = tuple(int(v) for v in self.l_values)
        if not values or sorted(set(values)) != list(values):
            raise ValueError("--l must be a strictly increasing list of output counts")
        if values[0] <= self.n_in:
            raise ValueError(
                f"every output count must exceed n = {self.n_in}, got {values[0]}"
            )
        object.__setattr__(self, "l_values", values)
        if not 0.0 <= self.z_min < self.z_max <= 1.0:
            raise ValueError(
                f"need 0 <= z_min < z_max <= 1, got [{self.z_min}, {self.z_max}]"
            )
        if self.steps < 2:
            raise ValueError(f"--steps must be >= 2, got {self.steps}")
        if self.curve in ("re-sym", "f-diff") and self.z_max >= 1.0:
            raise ValueError(f"curve {self.curve!r} is undefined at z = 1")
        if self.curve == "f-diff" and self.z_min <= 0.0:
            raise ValueError("curve 'f-diff' is undefined at z = 0")


_CURVE_FUNCS = {
    "re-lower": bounds.re_lower_bound,
    "ae-lower": bounds.ae_lower_bound,
    "re-sym": bounds.re_symmetric,
    "f-diff": bounds.f_rel_diff,
}


def format_number(value: float) -> str:
    """9 significant digits, scientific notation below 1e-4, plain zero."""
    if value == 0:
        return "0"
    if abs(value) < 1e-4:
        return f"{value:.8e}"
    return f"{value:.9g}"


def run_sweep(spec: SweepSpec) -> None:
    """Evaluate the requested curve on the grid and write the CSV dataset."""
    func = _CURVE_FUNCS[spec.curve]
    grid = np.linspace(spec.z_min, spec.z_max, spec.steps)
    header = "z," + ",".join(f"L{v}" for v in spec.l_values)
    lines = [header]
    for z in grid:
        z = float(z)
        row = [format_number(z)]
        for n_out in spec.l_values:
            row.append(format_number(func(z, spec.n_in, n_out)))
        lines.append(",".join(row))
    with open(spec.out_path, "w", encoding="ascii", newline="") as handle:
        handle.write("\n".join(lines) + "\n")


def _cloner_document(z: float, n_in: int, n_out: int, kind: str,
                     perfect: str, split) -> dict:
    task = cloner.CloneTask(cloner.PreparedPair.from_overlap(z), n_in, n_out)
    if kind == "symmetric":
        result = cloner.symmetric_cloner(task)
    elif kind == "asymmetric":
        result = cloner.asymmetric_cloner(task, perfect=perfect)
    elif kind == "custom-split":
        if split is None:
            raise ValueError("--split is required for kind 'custom-split'")
        result = cloner.split_cloner(task, float(split))
    else:
        raise ValueError(f"unknown kind {kind!r}")

    ae_low = bounds.ae_lower_bound(z, n_in, n_out)
    re_low = bounds.re_lower_bound(z, n_in, n_out)
    if kind == "symmetric":
        re_ref = bounds.re_symmetric(z, n_in, n_out)
        ae_ref = re_ref * task.denominator
    else:
        re_ref = re_low
        ae_ref = ae_low
    return {
        "kind": result.kind,
        "z": z,
        "n": n_in,
        "l": n_out,
        "delta_phi": result.delta_phi,
        "delta_psi": result.delta_psi,
        "x_phi": result.errors.x_phi,
        "x_psi": result.errors.x_psi,
        "ae": result.errors.ae,
        "re": result.errors.re,
        "denominator": result.errors.denom,
        "gram_residual": cloner.gram_residual(task, result),
        "coplanarity_residual": max(result.v_phi.residual, result.v_psi.residual),
        "ae_reference": ae_ref,
        "re_reference": re_ref,
        "ae_lower_bound": ae_low,
        "re_lower_bound": re_low,
    }


def _resolve_seed(seed) -> int:
    if seed is not None:
        return int(seed)
    env = os.environ.get("CLONEBOUND_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CLONEBOUND_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags by default; 2 is reserved
    # here for suite violations, so usage errors are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_l_list(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clonebound", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = commands.add_parser("sweep", help="evaluate a curve family to CSV")
    sweep.add_argument("--curve", required=True, choices=CURVES)
    sweep.add_argument("--n", type=int, required=True, help="input copy count")
    sweep.add_argument("--l", type=_parse_l_list, required=True,
                       help="comma-separated output copy counts")
    sweep.add_argument("--z-min", type=float, default=0.0)
    sweep.add_argument("--z-max", type=float, default=1.0)
    sweep.add_argument("--steps", type=int, default=401)
    sweep.add_argument("--out", required=True, help="CSV output path")

    clone = commands.add_parser("cloner", help="report one cloner as JSON")
    clone.add_argument("--z", type=float, required=True)
    clone.add_argument("--n", type=int, required=True)
    clone.add_argument("--l", type=int, required=True)
    clone.add_argument("--kind", required=True,
                       choices=("symmetric", "asymmetric", "custom-split"))
    clone.add_argument("--perfect", choices=("phi", "psi"), default="phi")
    clone.add_argument("--split", type=float, default=None)
    clone.add_argument("--json", dest="json_path", default=None,
                       help="also write the JSON document to this path")

    verify = commands.add_parser("verify", help="run randomized verification suites")
    verify.add_argument("--suite", required=True,
                        choices=suites.SUITE_NAMES + ("all",))
    verify.add_argument("--trials", type=int, default=10000)
    verify.add_argument("--seed", type=int, default=None,
                        help="defaults to CLONEBOUND_SEED, then 42")
    verify.add_argument("--dim", type=int, default=None,
                        help="max sampled dimension for state-based suites")
    verify.add_argument("--report", default=None, help="JSON report path")
    return parser


def _cmd_sweep(args) -> int:
    spec = SweepSpec(
        curve=args.curve,
        n_in=args.n,
        l_values=args.l,
        z_min=args.z_min,
        z_max=args.z_max,
        steps=args.steps,
        out_path=args.out,
    )
    run_sweep(spec)
    print(f"wrote {spec.out_path}: curve={spec.curve} n={spec.n_in} "
          f"l={','.join(str(v) for v in spec.l_values)} steps={spec.steps}")
    return 0


def _cmd_cloner(args) -> int:
    if not 0.0 < args.z < 1.0:
        raise ValueError(f"--z must lie strictly between 0 and 1, got {args.z}")
    doc = _cloner_document(args.z, args.n, args.l, args.kind, args.perfect, args.split)
    text = json.dumps(doc, indent=2)
    print(text)
    if args.json_path is not None:
        with open(args.json_path, "w", encoding="ascii", newline="") as handle:
            handle.write(text + "\n")
    return 0


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    names = suites.SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = suites.run_suites(names, args.trials, seed, args.dim)
    for rep in reports:
        print(f"{rep.suite}: trials={rep.trials} failures={rep.failures} "
              f"worst_margin={rep.worst_margin:.3e} seed={rep.seed} "
              f"time={rep.wall_time:.2f}s")
    if args.report is not None:
        payload = {"reports": [rep.to_json_dict() for rep in reports]}
        with open(args.report, "w", encoding="ascii", newline="") as handle:
            handle.write(json.dumps(payload, indent=2) + "\n")
    return 0 if sum(rep.failures for rep in reports) == 0 else 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "cloner":
            return _cmd_cloner(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError) as exc:
        print(f"clonebound: error: {exc}", file=sys.stderr)
        return 1
