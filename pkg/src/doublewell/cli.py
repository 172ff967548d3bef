"""Command-line driver for the double-well solvers.

Subcommands:

    solve      energies (and optional ground-state density profile) for one
               potential, from the matrix route, the piecewise route, or both
    sweep      ground-pair energy and well occupancies while the right floor
               is stepped through a list of values
    fit        two-state tunnelling element from a sweep CSV, plus an overlay
               of measured versus model occupancies
    reproduce  canned parameter sets that regenerate the reference figures

All inputs and outputs are dimensionless: energies in units of the empty-box
ground energy, lengths in units of the box width. CSV cells carry 17
significant digits so runs can be diffed numerically.

Exit codes: 0 ok, 1 usage or invalid data, 2 solver cross-check failure,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import re
import sys

import numpy as np

from . import analytic, observables, spectral, toymodel
from .errors import (
    DomainError,
    InconsistentDataError,
    NumericalError,
    ValidationError,
)
from .potential import PotentialSpec, load_spec
from .spectral import DEFAULT_BASIS_SIZE

__all__ = [
    "main",
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_CROSS_CHECK",
    "EXIT_NUMERICAL",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CROSS_CHECK = 2
EXIT_NUMERICAL = 3

CROSS_CHECK_TOLERANCE = 1e-4

# right-floor value lists behind the canned figure presets
_LEGEND_500 = (0.0, -1e-7, -5e-7, -1e-6, -5e-6, -1e-5)
_LEGEND_1000 = (0.0, -1e-10, -3e-10, -1e-9, -2e-9, -5e-9, -1e-8, -3e-8)
_FILL_500 = (-2e-7, -3e-7, -2e-6, -3e-6)
_FILL_1000 = (-5e-10, -7e-10, -3e-9, -7e-9)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems as exit code 1 and accepts
    scientific-notation negatives (--vr -1e-5) as flag values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # stdlib matcher predates scientific notation; it is an instance
        # attribute, so it must be replaced after construction
        self._negative_number_matcher = re.compile(
            r"^-\d*\.?\d+(?:[eE][-+]?\d+)?$"
        )

    def error(self, message):
        raise _UsageError(message)


def _fmt(value) -> str:
    return format(float(value), ".17g")


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return _fmt(value)


def _write_csv(path, header, rows) -> None:
    """Write rows to path, or stdout when path is None."""

    def emit(stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])

    if path is None:
        emit(sys.stdout)
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            emit(fh)


def _add_spec_flags(parser, include_vr=True) -> None:
    parser.add_argument("--config", default=None, metavar="FILE",
                        help="key=value file with v0, vL, vR, b; flags override it")
    parser.add_argument("--v0", type=float, default=None,
                        help="barrier height (required here or in --config)")
    parser.add_argument("--vl", type=float, default=None,
                        help="left well floor (default 0)")
    if include_vr:
        parser.add_argument("--vr", type=float, default=None,
                            help="right well floor (default 0)")
    parser.add_argument("--b", type=float, default=None,
                        help="barrier width (default 0.2)")


def _resolve_spec(args) -> PotentialSpec:
    values = {"v0": None, "vl": 0.0, "vr": 0.0, "b": 0.2}
    if args.config is not None:
        cfg = load_spec(args.config)
        values.update(v0=cfg.v0, vl=cfg.vl, vr=cfg.vr, b=cfg.b)
    for name in ("v0", "vl", "vr", "b"):
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if values["v0"] is None:
        raise ValidationError("barrier height missing: pass --v0 or a --config with v0")
    return PotentialSpec(**values)


def _ground_profile_rows(state, grid_size):
    profile = observables.density_profile(state, grid_size=grid_size)
    return list(zip(profile.grid, profile.density))


def _cmd_solve(args) -> int:
    spec = _resolve_spec(args)
    if args.states < 1:
        raise ValidationError(f"--states must be at least 1, got {args.states}")
    solver = args.solver
    if solver != "spectral" and not spec.v0 > max(spec.vl, spec.vr):
        if solver == "analytic":
            raise DomainError(
                "the piecewise route needs a barrier above both well floors "
                f"(v0={spec.v0}, floors {spec.vl}, {spec.vr})"
            )
        print(
            "note: barrier does not rise above the well floors; "
            "reporting matrix-route energies only",
            file=sys.stderr,
        )
        solver = "spectral"

    solution = None
    levels = None
    if solver in ("spectral", "both"):
        solution = spectral.solve(spec, basis_size=args.n)
        if args.states > solution.basis_size:
            raise ValidationError(
                f"--states {args.states} exceeds basis size {solution.basis_size}"
            )
    if solver in ("analytic", "both"):
        levels = analytic.find_levels(spec, args.states)

    if solver == "both":
        header = ["state", "energy_spectral", "energy_analytic"]
        rows = [
            [i, solution.energies[i], levels[i]]
            for i in range(args.states)
        ]
    elif solver == "spectral":
        header = ["state", "energy"]
        rows = [[i, solution.energies[i]] for i in range(args.states)]
    else:
        header = ["state", "energy"]
        rows = [[i, levels[i]] for i in range(args.states)]
    _write_csv(args.out, header, rows)

    if args.profile is not None:
        if levels is not None:
            state0 = analytic.assemble_state(spec, levels[0])
            profile_rows = _ground_profile_rows(state0, args.grid)
        else:
            profile_rows = _ground_profile_rows(solution, args.grid)
        _write_csv(args.profile, ["x", "density"], profile_rows)

    if solver == "both":
        diffs = [abs(solution.energies[i] - levels[i]) for i in range(args.states)]
        worst = int(np.argmax(diffs))
        if diffs[worst] > CROSS_CHECK_TOLERANCE:
            print(
                f"cross-check failed: |energy_spectral - energy_analytic| = "
                f"{_fmt(diffs[worst])} at state {worst} "
                f"(tolerance {_fmt(CROSS_CHECK_TOLERANCE)})",
                file=sys.stderr,
            )
            return EXIT_CROSS_CHECK
    return EXIT_OK


def _sweep_row(base: PotentialSpec, vr: float, state_index: int, solver: str,
               basis_size: int):
    """(energy, p_left, p_right, cross_diff) for one right-floor value."""
    spec = PotentialSpec(v0=base.v0, vl=base.vl, vr=vr, b=base.b)
    cross = 0.0
    if solver == "spectral":
        solution = spectral.solve(spec, basis_size=basis_size)
        occ = observables.occupancy(solution, spec, state_index=state_index)
        return solution.energies[state_index], occ.p_left, occ.p_right, cross
    levels = analytic.find_levels(spec, state_index + 1)
    energy = levels[state_index]
    if solver == "both":
        solution = spectral.solve(spec, basis_size=basis_size)
        cross = abs(solution.energies[state_index] - energy)
    state = analytic.assemble_state(spec, energy)
    occ = observables.occupancy(state, spec)
    return energy, occ.p_left, occ.p_right, cross


def _cmd_sweep(args) -> int:
    base = _resolve_spec(args)
    try:
        vr_values = [float(tok) for tok in args.vr_values.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValidationError(f"--vr-values must be comma-separated numbers: {exc}")
    if not vr_values:
        raise ValidationError("--vr-values is empty")
    if args.state < 0:
        raise ValidationError(f"--state must be non-negative, got {args.state}")

    rows = []
    p_rights = []
    failures = 0
    worst_cross = 0.0
    for vr in vr_values:
        try:
            energy, p_left, p_right, cross = _sweep_row(
                base, vr, args.state, args.solver, args.n
            )
        except (ValueError, NumericalError) as exc:
            print(f"sweep row vr={_fmt(vr)} failed: {exc}", file=sys.stderr)
            rows.append([vr, math.nan, math.nan, math.nan])
            failures += 1
            continue
        worst_cross = max(worst_cross, cross)
        rows.append([vr, energy, p_left, p_right])
        p_rights.append(p_right)
    _write_csv(args.out, ["vr", "energy", "p_left", "p_right"], rows)

    if len(p_rights) >= 2:
        monotone = all(a <= b for a, b in zip(p_rights, p_rights[1:]))
        print(
            "p_right monotone non-decreasing along sweep order: "
            + ("yes" if monotone else "NO"),
            file=sys.stderr,
        )
    if failures:
        print(f"{failures} sweep row(s) failed", file=sys.stderr)
        return EXIT_NUMERICAL
    if worst_cross > CROSS_CHECK_TOLERANCE:
        print(
            f"cross-check failed: worst |energy_spectral - energy_analytic| = "
            f"{_fmt(worst_cross)} (tolerance {_fmt(CROSS_CHECK_TOLERANCE)})",
            file=sys.stderr,
        )
        return EXIT_CROSS_CHECK
    return EXIT_OK


def _read_sweep_csv(path):
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        missing = {"vr", "p_left"} - set(fields)
        if missing:
            raise ValidationError(
                f"sweep CSV {path} lacks column(s) {sorted(missing)}"
            )
        rows = []
        for record in reader:
            try:
                rows.append((float(record["vr"]), float(record["p_left"])))
            except (TypeError, ValueError):
                raise ValidationError(
                    f"sweep CSV {path} has a non-numeric row: {record}"
                )
    return rows


def _overlay(deltas, p_lefts, t):
    """Rows (delta/t, measured p_left, model p_left) and the worst gap."""
    ratios = np.asarray(deltas, dtype=np.float64) / t
    curve = toymodel.occupancy_curve(t, ratios)
    max_dev = float(np.max(np.abs(np.asarray(p_lefts) - curve.p_left)))
    rows = [
        [ratio, p_micro, p_toy]
        for ratio, p_micro, p_toy in zip(ratios, p_lefts, curve.p_left)
    ]
    return rows, max_dev


def _cmd_fit(args) -> int:
    raw = _read_sweep_csv(args.sweep_csv)
    rows = [(vr, p) for vr, p in raw if math.isfinite(p)]
    skipped = len(raw) - len(rows)
    if skipped:
        print(f"ignoring {skipped} row(s) without a finite p_left", file=sys.stderr)
    deltas = [(args.vl - vr) / 2.0 for vr, _ in rows]
    p_lefts = [p for _, p in rows]
    asymmetric = sum(1 for d in deltas if d != 0.0)
    if asymmetric < 2:
        raise InconsistentDataError(
            f"need at least two asymmetric rows to fit, found {asymmetric}"
        )
    t, ref_index = toymodel.fit_from_sweep(deltas, p_lefts)
    overlay_rows, max_dev = _overlay(deltas, p_lefts, t)
    _write_csv(args.out, ["delta_over_t", "p_micro", "p_toy"], overlay_rows)
    print(f"t = {_fmt(t)}")
    print(
        f"reference row {ref_index}: vr = {_fmt(rows[ref_index][0])}, "
        f"p_left = {_fmt(rows[ref_index][1])}"
    )
    print(f"max |p_micro - p_toy| = {_fmt(max_dev)}")
    return EXIT_OK


def _reproduce_densities(out_dir, v0, vr_values):
    sweep_rows = []
    for vr in vr_values:
        spec = PotentialSpec(v0=v0, vl=0.0, vr=vr, b=0.2)
        levels = analytic.find_levels(spec, 1)
        state = analytic.assemble_state(spec, levels[0])
        occ = observables.occupancy(state, spec)
        sweep_rows.append([vr, levels[0], occ.p_left, occ.p_right])
        name = f"density_vr_{vr:.1e}.csv"
        _write_csv(
            os.path.join(out_dir, name),
            ["x", "density"],
            _ground_profile_rows(state, observables.DEFAULT_GRID_SIZE),
        )
        print(f"wrote {os.path.join(out_dir, name)}")
    _write_csv(
        os.path.join(out_dir, "sweep.csv"),
        ["vr", "energy", "p_left", "p_right"],
        sweep_rows,
    )
    print(f"wrote {os.path.join(out_dir, 'sweep.csv')}")


def _reproduce_fit(out_dir, v0, vr_values):
    sweep_rows = []
    for vr in vr_values:
        spec = PotentialSpec(v0=v0, vl=0.0, vr=vr, b=0.2)
        levels = analytic.find_levels(spec, 1)
        state = analytic.assemble_state(spec, levels[0])
        occ = observables.occupancy(state, spec)
        sweep_rows.append([vr, levels[0], occ.p_left, occ.p_right])
    _write_csv(
        os.path.join(out_dir, "sweep.csv"),
        ["vr", "energy", "p_left", "p_right"],
        sweep_rows,
    )
    print(f"wrote {os.path.join(out_dir, 'sweep.csv')}")

    deltas = [-row[0] / 2.0 for row in sweep_rows]
    p_lefts = [row[2] for row in sweep_rows]
    t, ref_index = toymodel.fit_from_sweep(deltas, p_lefts)
    overlay_rows, max_dev = _overlay(deltas, p_lefts, t)
    _write_csv(
        os.path.join(out_dir, "overlay.csv"),
        ["delta_over_t", "p_micro", "p_toy"],
        overlay_rows,
    )
    print(f"wrote {os.path.join(out_dir, 'overlay.csv')}")
    fit_path = os.path.join(out_dir, "fit.txt")
    with open(fit_path, "w", encoding="utf-8") as fh:
        fh.write(f"t = {_fmt(t)}\n")
        fh.write(f"reference vr = {_fmt(sweep_rows[ref_index][0])}\n")
        fh.write(f"max |p_micro - p_toy| = {_fmt(max_dev)}\n")
    print(f"wrote {fit_path}")


def _cmd_reproduce(args) -> int:
    out_dir = args.out if args.out is not None else args.figure
    os.makedirs(out_dir, exist_ok=True)
    if args.figure == "fig3":
        _reproduce_densities(out_dir, 500.0, _LEGEND_500)
    elif args.figure == "fig5":
        _reproduce_densities(out_dir, 1000.0, _LEGEND_1000)
    elif args.figure == "fig4":
        vrs = sorted(_LEGEND_500 + _FILL_500, reverse=True)
        _reproduce_fit(out_dir, 500.0, vrs)
    else:
        vrs = sorted(_LEGEND_1000 + _FILL_1000, reverse=True)
        _reproduce_fit(out_dir, 1000.0, vrs)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="doublewell",
        description="Bound states and localization of a particle in an "
        "asymmetric square double well inside a hard box.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser(
        "solve", help="energies (and optional density profile) for one potential"
    )
    _add_spec_flags(solve)
    solve.add_argument("--n", type=int, default=DEFAULT_BASIS_SIZE,
                       help="basis size for the matrix route")
    solve.add_argument("--states", type=int, default=2,
                       help="number of levels to report")
    solve.add_argument("--grid", type=int, default=observables.DEFAULT_GRID_SIZE,
                       help="points for the density profile (odd)")
    solve.add_argument("--solver", choices=("spectral", "analytic", "both"),
                       default="both")
    solve.add_argument("--out", default=None, metavar="FILE",
                       help="energies CSV (default: stdout)")
    solve.add_argument("--profile", default=None, metavar="FILE",
                       help="also write the ground-state density CSV here")
    solve.set_defaults(func=_cmd_solve)

    sweep = sub.add_parser(
        "sweep", help="step the right floor through a list of values"
    )
    _add_spec_flags(sweep, include_vr=False)
    sweep.add_argument("--vr-values", required=True, metavar="LIST",
                       help="comma-separated right-floor values")
    sweep.add_argument("--state", type=int, default=0,
                       help="eigenstate to track (0 = ground)")
    sweep.add_argument("--n", type=int, default=DEFAULT_BASIS_SIZE,
                       help="basis size for cross-checks")
    sweep.add_argument("--solver", choices=("spectral", "analytic", "both"),
                       default="both")
    sweep.add_argument("--out", default=None, metavar="FILE",
                       help="sweep CSV (default: stdout)")
    sweep.set_defaults(func=_cmd_sweep)

    fit = sub.add_parser(
        "fit", help="fit the two-state tunnelling element to a sweep CSV"
    )
    fit.add_argument("sweep_csv", help="CSV with columns vr, p_left (sweep output)")
    fit.add_argument("--vl", type=float, default=0.0,
                     help="left floor used in the sweep (to reconstruct delta)")
    fit.add_argument("--out", default="overlay.csv", metavar="FILE",
                     help="overlay CSV path")
    fit.set_defaults(func=_cmd_fit)

    reproduce = sub.add_parser(
        "reproduce", help="regenerate a reference figure's data files"
    )
    reproduce.add_argument("figure", choices=("fig3", "fig4", "fig5", "fig6"))
    reproduce.add_argument("--out", default=None, metavar="DIR",
                           help="output directory (default: the figure id)")
    reproduce.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
