"""Command-line front end: JSON problems in, JSON results out.

Subcommands cover every analysis the library offers; all of them read a
problem description from --input or standard input and write a result object
to --output or standard output.  Exit codes: 0 success, 2 invalid input,
3 numeric/tolerance failure, 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from .applications import (
    LevelProblem,
    calabi,
    extremal_family,
    image_membership,
    solve_level_problem,
    support_function,
)
from .betti import analyze, betti_complement, betti_y, check_bounds, result_json
from .circle import PlanarCone, omega_set
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import InvalidInputError, NumericalError, OracleDisagreement
from .filtration import IndexProfile, index_profile
from .fixtures import NAMED_FIXTURES
from .oracles import grid_index_profile, verify_analysis
from .pencil import QuadraticPencil

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# problem parsing
# ---------------------------------------------------------------------------

def load_problem(data: dict) -> tuple[QuadraticPencil, PlanarCone, dict]:
    """Parse a problem JSON into a pencil, a cone and the leftover options."""
    if not isinstance(data, dict):
        raise InvalidInputError("problem JSON must be an object")
    pencil = QuadraticPencil.from_json(data)
    cone_data = data.get("cone", {"kind": "zero", "generators": []})
    cone = PlanarCone.from_json(cone_data)
    extra = {k: data[k] for k in ("c", "mode", "smooth") if k in data}
    return pencil, cone, extra


def _read_input(args) -> dict:
    try:
        if args.input:
            with open(args.input, "r", encoding="utf-8") as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed problem JSON: {exc}") from exc
    except OSError as exc:
        raise InvalidInputError(f"cannot read input: {exc}") from exc


def _write_output(args, data: dict) -> None:
    text = json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config_from(args) -> ToleranceConfig:
    cfg = DEFAULT_CONFIG
    kw = {}
    if getattr(args, "tol", None) is not None:
        kw["tol_eig"] = args.tol
        kw["tol_angle"] = args.tol
    if getattr(args, "epsilon", None) is not None:
        kw["epsilon_reg"] = args.epsilon
    if getattr(args, "grid", None) is not None:
        kw["grid_n"] = args.grid
    if getattr(args, "seed", None) is not None:
        kw["seed"] = args.seed
    return cfg.with_(**kw) if kw else cfg


def _add_common(sp) -> None:
    sp.add_argument("--input", help="problem JSON file (default: stdin)")
    sp.add_argument("--output", help="result JSON file (default: stdout)")
    sp.add_argument("--epsilon", type=float, help="regularization shift size")
    sp.add_argument("--tol", type=float, help="eigenvalue and angle tolerance")
    sp.add_argument("--grid", type=int, help="oracle grid resolution")
    sp.add_argument("--seed", type=int, help="PRNG seed for oracles")
    sp.add_argument("--smooth", action="store_true",
                    help="assert the solution set is a nonsingular intersection")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_betti_x(args) -> int:
    pencil, cone, extra = load_problem(_read_input(args))
    cfg = _config_from(args)
    res = analyze(pencil, cone, cfg)
    data = result_json(res)
    smooth = args.smooth or bool(extra.get("smooth"))
    data["violations"] = check_bounds(res.report, smooth=smooth)
    if getattr(args, "verify", False):
        data["oracle"] = verify_analysis(pencil, cone, cfg)
    _write_output(args, data)
    return 0


def _cmd_betti_y(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    entries = betti_y(pencil, cone, cfg)
    data = {
        "entries": [
            {"k": e.k, "determined": e.determined, "reduced": e.reduced,
             "absolute": e.absolute, "transfer_bound": e.transfer_bound}
            for e in entries
        ]
    }
    _write_output(args, data)
    return 0


def _cmd_betti_complement(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    _write_output(args, {"b_complement": betti_complement(pencil, cone, cfg)})
    return 0


def _cmd_euler(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    res = analyze(pencil, cone, cfg)
    _write_output(args, {"chi": res.chi, "chi_alternating": res.report.chi})
    return 0


def _cmd_table(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    res = analyze(pencil, cone, cfg)
    _write_output(args, {
        "table": res.table.display_rows(),
        "mu": res.table.mu,
        "nu": res.table.nu,
        "c": res.table.c,
        "d": res.table.d,
        "w1": res.table.w1_nonzero,
    })
    return 0


def _cmd_level_set(args) -> int:
    data = _read_input(args)
    pencil, _, extra = load_problem(data)
    cfg = _config_from(args)
    if "c" not in extra:
        raise InvalidInputError("level-set requires a point 'c' in the problem JSON")
    c = extra["c"]
    if not (isinstance(c, (list, tuple)) and len(c) == 2):
        raise InvalidInputError("'c' must be a pair of numbers")
    mode = extra.get("mode", "eq")
    problem = LevelProblem(pencil, (float(c[0]), float(c[1])), mode=mode)
    res = solve_level_problem(problem, cfg)
    _write_output(args, {
        "nonempty": res.nonempty,
        "b_tilde": list(res.b_tilde),
        "mode": mode,
    })
    return 0


def _cmd_calabi(args) -> int:
    pencil, _, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    cert = calabi(pencil, cfg)
    _write_output(args, cert.to_json())
    return 0


def _cmd_member(args) -> int:
    data = _read_input(args)
    pencil, _, extra = load_problem(data)
    cfg = _config_from(args)
    if args.c is not None:
        c = args.c
    elif "c" in extra:
        c = extra["c"]
    else:
        raise InvalidInputError("member requires 'c' (flag or problem JSON)")
    member, cert = image_membership(pencil, (float(c[0]), float(c[1])), cfg)
    _write_output(args, {"member": member, "certificate": cert.to_json()})
    return 0


def _cmd_support(args) -> int:
    pencil, _, _ = load_problem(_read_input(args))
    if args.theta is not None:
        values = [{"theta": args.theta,
                   "value": support_function(pencil, args.theta)}]
    else:
        values = [{"theta": th, "value": support_function(pencil, th)}
                  for th in np.linspace(0.0, TWO_PI, args.directions,
                                        endpoint=False)]
    _write_output(args, {"support": values})
    return 0


def _cmd_extremal(args) -> int:
    pencil = extremal_family(args.n)
    data = pencil.to_json()
    data["cone"] = {"kind": "zero", "generators": []}
    _write_output(args, data)
    return 0


def _cmd_fixture(args) -> int:
    try:
        pencil = NAMED_FIXTURES[args.name]()
    except KeyError as exc:
        raise InvalidInputError(
            f"unknown fixture {args.name!r}; choose from "
            f"{sorted(NAMED_FIXTURES)}") from exc
    data = pencil.to_json()
    data["cone"] = {"kind": "zero", "generators": []}
    _write_output(args, data)
    return 0


def emit_profile_csv(profile: IndexProfile, path: str,
                     grid=None) -> None:
    """Write profile rows as CSV: theta, i_plus, i_minus, is_breakpoint."""
    rows = list(profile.rows())
    if grid is not None:
        rows.extend((th, t.i_plus, t.i_minus, False)
                    for th, t in zip(grid.thetas, grid.triples))
        rows.sort(key=lambda r: r[0])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "i_plus", "i_minus", "is_breakpoint"])
        for theta, ip, im, is_bp in rows:
            writer.writerow([f"{theta:.12f}", ip, im, str(is_bp).lower()])


def _cmd_profile(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    profile = index_profile(pencil, omega_set(cone, cfg.tol_angle), cfg)
    grid = grid_index_profile(pencil, cfg) if args.grid else None
    emit_profile_csv(profile, args.csv, grid)
    _write_output(args, {
        "csv": args.csv,
        "breakpoints": len(profile.breakpoint_angles()),
    })
    return 0


def _cmd_verify(args) -> int:
    pencil, cone, _ = load_problem(_read_input(args))
    cfg = _config_from(args)
    res = analyze(pencil, cone, cfg)
    oracle = verify_analysis(pencil, cone, cfg)
    data = result_json(res)
    data["oracle"] = oracle
    _write_output(args, data)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadrics",
        description="Topological invariants of sets cut out by two quadratic "
                    "forms, from inertia analysis over the circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    plain = {
        "betti-x": "Betti numbers of the solution set in projective space",
        "betti-y": "reduced Betti numbers of the spherical double cover",
        "betti-complement": "Betti numbers of the projective complement",
        "euler": "Euler characteristic of the solution set",
        "table": "the integer table behind the Betti numbers",
        "calabi": "positive definite combination certificate",
        "verify": "run the analysis and all applicable oracles",
    }
    for name, help_text in plain.items():
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
        if name == "betti-x":
            sp.add_argument("--verify", action="store_true",
                            help="also run the oracles and attach their verdicts")

    sp = sub.add_parser("level-set", help="level sets of the quadratic map")
    _add_common(sp)

    sp = sub.add_parser("member",
                        help="membership of a plane point in the sphere image")
    _add_common(sp)
    sp.add_argument("--c", type=float, nargs=2, metavar=("C0", "C1"),
                    help="the plane point to test")

    sp = sub.add_parser("support", help="support function of the sphere image")
    _add_common(sp)
    sp.add_argument("--theta", type=float, help="single direction angle")
    sp.add_argument("--directions", type=int, default=64,
                    help="number of sampled directions when --theta is absent")

    sp = sub.add_parser("extremal",
                        help="emit the extremal family as a problem JSON")
    _add_common(sp)
    sp.add_argument("--n", type=int, required=True,
                    help="projective dimension")

    sp = sub.add_parser("fixture", help="emit a named example problem JSON")
    _add_common(sp)
    sp.add_argument("name", help="fixture name")

    sp = sub.add_parser("profile", help="index profile as CSV")
    _add_common(sp)
    sp.add_argument("--csv", required=True, help="output CSV path")

    return parser


_DISPATCH = {
    "betti-x": _cmd_betti_x,
    "betti-y": _cmd_betti_y,
    "betti-complement": _cmd_betti_complement,
    "euler": _cmd_euler,
    "table": _cmd_table,
    "level-set": _cmd_level_set,
    "calabi": _cmd_calabi,
    "member": _cmd_member,
    "support": _cmd_support,
    "extremal": _cmd_extremal,
    "fixture": _cmd_fixture,
    "profile": _cmd_profile,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except OracleDisagreement as exc:
        print(f"oracle disagreement: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
