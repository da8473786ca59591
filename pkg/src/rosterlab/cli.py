"""Command-line front end.

Thin bindings only: every subcommand parses arguments, calls into the
library and prints results. All randomness flows from one ``--seed`` flag;
when omitted, a fresh seed is drawn and printed so the run stays
reproducible.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

from .generator import GeneratorConfig, generate_instance
from .instance import (
    InstanceError,
    ReserveRequirement,
    load_instance,
    load_scenario,
    save_instance,
    save_scenario,
)
from .mip import MipError, SolveControls
from .rerostering import solve_rerostering
from .rostering import (
    RosterError,
    load_roster,
    save_roster,
    solve_rostering,
)
from .scenarios import generate_scenario
from .sweep import (
    SweepConfig,
    SweepError,
    compare_to_baseline,
    ratio_from_csv,
    run_sweep,
    write_ratio_csv,
)


def _controls(args: argparse.Namespace) -> SolveControls:
    return SolveControls(gap=args.gap, time_limit=args.time_limit)


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    seed = secrets.randbelow(2**31)
    print(f"seed: {seed} (drawn; pass --seed {seed} to reproduce)")
    return seed


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gap", type=float, default=1e-4, help="relative MIP gap")
    p.add_argument(
        "--time-limit", type=float, default=100.0, help="per-solve time limit (s)"
    )
    p.add_argument(
        "--no-conversion-safe",
        dest="conversion_safe",
        action="store_false",
        help="drop the reserve conversion-safety protections",
    )


def _cmd_generate(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        n_employees=args.employees,
        days=args.days,
        skill_mode=args.skills,
        history_days=args.history_days,
    )
    instance = generate_instance(config, _seed(args))
    save_instance(instance, args.out)
    print(f"instance: {args.out} ({args.employees} employees, {args.days} days, {args.skills} skills)")
    return 0


def _cmd_roster(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    requirement = ReserveRequirement.constant(args.reserve, instance.days)
    roster = solve_rostering(
        instance, requirement, _controls(args), conversion_safe=args.conversion_safe
    )
    for name, value in roster.cost_breakdown.to_dict().items():
        print(f"{name}: {value}")
    if args.out:
        save_roster(roster, instance, args.out)
        print(f"roster: {args.out}")
    return 0


def _cmd_reroster(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    roster = load_roster(args.roster, instance)
    if args.scenario:
        scenario = load_scenario(args.scenario)
    else:
        seed = _seed(args)
        scenario = generate_scenario(
            instance.n_employees, instance.days, args.rho, seed, 0
        )
        if args.save_scenario:
            save_scenario(scenario, args.save_scenario)
    result = solve_rerostering(
        instance,
        roster,
        scenario,
        _controls(args),
        conversion_safe=args.conversion_safe,
    )
    print(f"absent_days: {len(scenario.absent_pairs())}")
    for name, value in result.cost_breakdown.to_dict().items():
        print(f"{name}: {value}")
    for name, value in result.metrics.to_dict().items():
        print(f"{name}: {value}")
    if args.out:
        save_roster(result.roster, instance, args.out)
        print(f"repaired_roster: {args.out}")
    return 0


def _grid(args: argparse.Namespace) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if (args.tpr is None) != (args.rfpr is None):
        raise SweepError("--tpr and --rfpr must be given together (single-cell mode)")
    if args.tpr is not None:
        return (args.tpr,), (args.rfpr,)
    step = args.grid_step
    if not 0 < step <= 1:
        raise SweepError(f"--grid-step must be in (0, 1], got {step}")
    n = round(1.0 / step)
    values = tuple(round(i * step, 10) for i in range(n + 1))
    return values, values


def _cmd_sweep(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    tpr_values, rfpr_values = _grid(args)
    config = SweepConfig(
        instance=instance,
        tpr_values=tpr_values,
        rfpr_values=rfpr_values,
        rho=args.rho,
        n_scenarios=args.scenarios,
        baselines=tuple(args.baseline),
        controls=_controls(args),
        master_seed=_seed(args),
        truth_mode=args.truth_mode,
        conversion_safe=args.conversion_safe,
        jobs=args.jobs,
        time_budget_s=args.time_budget,
    )
    result = run_sweep(config, args.out)
    print(f"cells: {len(result.cells)}")
    if result.truncated:
        print("truncated: time budget reached before all cells ran")
    print(f"results: {Path(args.out) / 'results.csv'}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    grid = ratio_from_csv(args.results, args.baseline)
    out = args.out or f"ratio_fixed{args.baseline}.csv"
    write_ratio_csv(grid, out)
    crossings = grid.unit_crossings()
    print(f"baseline: fixed-{args.baseline} (mean repair cost {grid.baseline_cost})")
    print(f"cells: {grid.ratios.size}")
    print(f"unit_contour_points: {len(crossings)}")
    print(f"ratio_csv: {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rosterlab",
        description="Robust rostering with simulated absence predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a synthetic instance file")
    p.add_argument("--employees", type=int, default=35)
    p.add_argument("--days", type=int, default=28)
    p.add_argument("--skills", choices=("uniform", "hierarchical"), default="hierarchical")
    p.add_argument("--history-days", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="instance JSON path")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("roster", help="solve one rostering problem")
    p.add_argument("--instance", required=True)
    p.add_argument("--reserve", type=int, default=0, help="reserve shifts per day")
    p.add_argument("--out", default=None, help="save the roster JSON here")
    _add_solver_flags(p)
    p.set_defaults(func=_cmd_roster)

    p = sub.add_parser("reroster", help="repair a roster against one scenario")
    p.add_argument("--instance", required=True)
    p.add_argument("--roster", required=True, help="roster JSON from `roster --out`")
    p.add_argument("--scenario", default=None, help="scenario JSON; omit to sample one")
    p.add_argument("--rho", type=float, default=0.0264, help="absence rate when sampling")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--save-scenario", default=None, help="save the sampled scenario here")
    p.add_argument("--out", default=None, help="save the repaired roster JSON here")
    _add_solver_flags(p)
    p.set_defaults(func=_cmd_reroster)

    p = sub.add_parser("sweep", help="run the classifier grid study")
    p.add_argument("--instance", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--scenarios", type=int, default=100)
    p.add_argument("--grid-step", type=float, default=0.1)
    p.add_argument("--tpr", type=float, default=None, help="single-cell mode")
    p.add_argument("--rfpr", type=float, default=None, help="single-cell mode")
    p.add_argument("--rho", type=float, default=0.0264)
    p.add_argument(
        "--baseline", type=int, action="append", default=None,
        help="fixed-k baseline; repeatable (default 1 2 3 4)",
    )
    p.add_argument("--truth-mode", choices=("shared", "per_cell"), default="shared")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-budget", type=float, default=None, help="total solver seconds")
    p.add_argument("--out", required=True, help="output directory")
    _add_solver_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("report", help="baseline-ratio grid from a results CSV")
    p.add_argument("--results", required=True, help="results.csv from a sweep")
    p.add_argument("--baseline", type=int, required=True)
    p.add_argument("--out", default=None, help="ratio CSV path")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "baseline", None) is None and args.command == "sweep":
        args.baseline = [1, 2, 3, 4]
    try:
        return args.func(args)
    except (InstanceError, RosterError, MipError, SweepError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
