"""Grid study over classifier operating points.

For every (tpr, rfpr) cell: simulate predictions, turn the flags into a
per-day reserve requirement, solve the rostering problem once, then repair
that roster against each evaluation absence scenario and aggregate the
repair costs and change counts. Fixed k-reserves-per-day policies run
through the identical pipeline as baselines.

Truth modes: ``shared`` (default) evaluates every cell against one common
scenario set so cells differ only through their policies; ``per_cell``
gives each cell its own worlds, with the prediction pass's own truth as
world 0. All randomness derives from one master seed through per-purpose
stream splits, so results are reproducible regardless of execution order.

Records append to a JSONL log as they complete; a rerun over the same log
skips finished keys, making long sweeps resumable. Solve failures are
recorded in the affected cell and never abort the sweep.
"""

from __future__ import annotations

import csv
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np

from .instance import AbsenceScenario, ProblemInstance, ReserveRequirement
from .mip import MipError, SolveControls, SolveStatus, solve
from .rerostering import build_rerostering_model, extract_reroster
from .rostering import (
    Roster,
    RosterError,
    build_rostering_model,
    extract_roster,
    roster_from_dict,
    roster_to_dict,
)
from .scenarios import baseline_policy, generate_scenario
from .seeds import DOMAIN_PREDICTIONS, DOMAIN_WORLDS, derive_seed, rng_for
from .simulate import ClassifierProfile, simulate_predictions

SUMMARY_COLUMNS = (
    "policy",
    "tpr",
    "rfpr",
    "rostering_cost",
    "reserves_per_day",
    "mean_reroster_cost",
    "pct_reserves_converted",
    "working_shift_changes",
    "dayoff_changes",
    "n_optimal",
    "n_gap",
    "mean_solve_s",
)

DETAIL_COLUMNS = (
    "policy",
    "tpr",
    "rfpr",
    "scenario",
    "reroster_cost",
    "base_cost",
    "change_cost",
    "pct_reserves_converted",
    "working_shift_changes",
    "dayoff_changes",
    "status",
    "solve_s",
)

DEFAULT_GRID = tuple(round(0.1 * i, 1) for i in range(11))
ML_POLICY = "ml"

# statuses that still carry a usable incumbent
_GAP_STATUSES = (SolveStatus.FEASIBLE_GAP, SolveStatus.TIME_LIMIT)


class SweepError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    """Everything one sweep depends on, including all randomness."""

    instance: ProblemInstance
    tpr_values: tuple[float, ...] = DEFAULT_GRID
    rfpr_values: tuple[float, ...] = DEFAULT_GRID
    rho: float = 0.0264
    n_scenarios: int = 100
    baselines: tuple[int, ...] = (1, 2, 3, 4)
    controls: SolveControls = field(default_factory=SolveControls)
    master_seed: int = 0
    truth_mode: str = "shared"
    conversion_safe: bool = True
    backend: str = "highs"
    jobs: int = 1
    time_budget_s: float | None = None
    pilot: bool = True

    def __post_init__(self) -> None:
        for name, values in (("tpr_values", self.tpr_values), ("rfpr_values", self.rfpr_values)):
            if not values:
                raise ValueError(f"{name} must be non-empty")
            for v in values:
                if not 0.0 <= v <= 1.0:
                    raise ValueError(f"{name} entries must be in [0, 1], got {v}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")
        if self.n_scenarios < 1:
            raise ValueError("n_scenarios must be at least 1")
        if any(k < 0 for k in self.baselines):
            raise ValueError("baseline k values must be non-negative")
        if self.truth_mode not in ("shared", "per_cell"):
            raise ValueError(f"unknown truth_mode {self.truth_mode!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.time_budget_s is not None and self.time_budget_s <= 0:
            raise ValueError("time_budget_s must be positive")


@dataclass(frozen=True)
class ScenarioRecord:
    """One repair solve against one evaluation scenario."""

    index: int
    status: str
    reroster_cost: float | None
    base_cost: float | None
    change_cost: float | None
    pct_reserves_converted: float | None
    working_shift_changes: int | None
    dayoff_changes: int | None
    gap: float | None
    solve_s: float

    @property
    def solved(self) -> bool:
        return self.reroster_cost is not None


@dataclass(frozen=True)
class CellRecord:
    """One policy cell: a rostering solve plus its scenario repairs.

    Aggregates are derived from the detail rows on access, so they can
    never drift from them.
    """

    policy: str
    tpr: float | None
    rfpr: float | None
    roster_status: str
    rostering_cost: float | None
    reserves_per_day: float | None
    roster_gap: float | None
    roster_solve_s: float
    details: tuple[ScenarioRecord, ...]

    def _mean(self, pick: Callable[[ScenarioRecord], float | int | None]) -> float | None:
        values = [pick(r) for r in self.details if r.solved]
        if not values:
            return None
        return float(np.mean([float(v) for v in values]))

    @property
    def mean_reroster_cost(self) -> float | None:
        return self._mean(lambda r: r.reroster_cost)

    @property
    def mean_pct_reserves_converted(self) -> float | None:
        return self._mean(lambda r: r.pct_reserves_converted)

    @property
    def mean_working_shift_changes(self) -> float | None:
        return self._mean(lambda r: r.working_shift_changes)

    @property
    def mean_dayoff_changes(self) -> float | None:
        return self._mean(lambda r: r.dayoff_changes)

    @property
    def status_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for status in [self.roster_status] + [r.status for r in self.details]:
            counts[status] = counts.get(status, 0) + 1
        return counts

    @property
    def n_optimal(self) -> int:
        return self.status_counts.get(SolveStatus.OPTIMAL.value, 0)

    @property
    def n_gap(self) -> int:
        n = 0
        if self.roster_status in (s.value for s in _GAP_STATUSES) and self.rostering_cost is not None:
            n += 1
        for r in self.details:
            if r.status in (s.value for s in _GAP_STATUSES) and r.solved:
                n += 1
        return n

    @property
    def max_gap(self) -> float | None:
        gaps = [self.roster_gap] + [r.gap for r in self.details]
        gaps = [g for g in gaps if g is not None]
        return max(gaps) if gaps else None

    @property
    def mean_solve_s(self) -> float:
        times = [self.roster_solve_s] + [r.solve_s for r in self.details]
        return float(np.mean(times))

    def summary_row(self) -> dict[str, Any]:
        return {
            "policy": self.policy,
            "tpr": self.tpr,
            "rfpr": self.rfpr,
            "rostering_cost": self.rostering_cost,
            "reserves_per_day": self.reserves_per_day,
            "mean_reroster_cost": self.mean_reroster_cost,
            "pct_reserves_converted": self.mean_pct_reserves_converted,
            "working_shift_changes": self.mean_working_shift_changes,
            "dayoff_changes": self.mean_dayoff_changes,
            "n_optimal": self.n_optimal,
            "n_gap": self.n_gap,
            "mean_solve_s": self.mean_solve_s,
        }

    def detail_rows(self) -> list[dict[str, Any]]:
        rows = []
        for r in self.details:
            rows.append(
                {
                    "policy": self.policy,
                    "tpr": self.tpr,
                    "rfpr": self.rfpr,
                    "scenario": r.index,
                    "reroster_cost": r.reroster_cost,
                    "base_cost": r.base_cost,
                    "change_cost": r.change_cost,
                    "pct_reserves_converted": r.pct_reserves_converted,
                    "working_shift_changes": r.working_shift_changes,
                    "dayoff_changes": r.dayoff_changes,
                    "status": r.status,
                    "solve_s": r.solve_s,
                }
            )
        return rows


@dataclass(frozen=True)
class SweepResult:
    """All completed cells plus whether the time budget cut the run short."""

    config: SweepConfig
    cells: tuple[CellRecord, ...]
    truncated: bool

    def find(self, policy: str, tpr: float | None = None, rfpr: float | None = None) -> CellRecord:
        for cell in self.cells:
            if cell.policy != policy:
                continue
            if policy == ML_POLICY and not (
                _close(cell.tpr, tpr) and _close(cell.rfpr, rfpr)
            ):
                continue
            return cell
        raise KeyError(f"no cell for policy={policy!r}, tpr={tpr}, rfpr={rfpr}")


def _close(a: float | None, b: float | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return abs(a - b) <= 1e-9


# ---------------------------------------------------------------------------
# Cell plans: the unit of work and of resume-keying


@dataclass(frozen=True)
class _CellPlan:
    policy: str
    tpr: float | None
    rfpr: float | None
    grid_i: int | None
    grid_j: int | None
    baseline_k: int | None
    requirement: ReserveRequirement
    truth: AbsenceScenario | None

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.policy, _fmt(self.tpr), _fmt(self.rfpr))


def _fmt(value: float | None) -> str:
    return "" if value is None else format(float(value), ".6g")


def _cell_plans(config: SweepConfig) -> list[_CellPlan]:
    inst = config.instance
    plans: list[_CellPlan] = []
    for i, tpr in enumerate(config.tpr_values):
        for j, rfpr in enumerate(config.rfpr_values):
            profile = ClassifierProfile(tpr=tpr, rfpr=rfpr, event_rate=config.rho)
            seed = derive_seed(config.master_seed, DOMAIN_PREDICTIONS, i, j)
            outcome = simulate_predictions(inst.n_employees, inst.days, profile, seed)
            plans.append(
                _CellPlan(
                    policy=ML_POLICY,
                    tpr=tpr,
                    rfpr=rfpr,
                    grid_i=i,
                    grid_j=j,
                    baseline_k=None,
                    requirement=outcome.reserve_requirement,
                    truth=outcome.scenario,
                )
            )
    for k in sorted(set(config.baselines)):
        plans.append(
            _CellPlan(
                policy=f"fixed-{k}",
                tpr=None,
                rfpr=None,
                grid_i=None,
                grid_j=None,
                baseline_k=k,
                requirement=baseline_policy(k, inst.days),
                truth=None,
            )
        )
    return plans


def _evaluation_scenarios(config: SweepConfig, plan: _CellPlan) -> list[AbsenceScenario]:
    inst = config.instance
    if config.truth_mode == "shared":
        return [
            generate_scenario(inst.n_employees, inst.days, config.rho, config.master_seed, s)
            for s in range(config.n_scenarios)
        ]
    # per-cell worlds: the prediction pass's own truth is world 0 (so the
    # cell is judged on the world its classifier actually saw), the rest
    # are fresh draws from the cell's private stream
    if plan.baseline_k is None:
        axis = (0, plan.grid_i, plan.grid_j)
    else:
        axis = (1, plan.baseline_k, 0)
    scenarios: list[AbsenceScenario] = []
    for s in range(config.n_scenarios):
        if s == 0 and plan.truth is not None:
            scenarios.append(plan.truth)
            continue
        rng = rng_for(config.master_seed, DOMAIN_WORLDS, *axis, s)
        absent = rng.random((inst.n_employees, inst.days)) < config.rho
        scenarios.append(
            AbsenceScenario(
                absent=absent,
                seed=derive_seed(config.master_seed, DOMAIN_WORLDS, *axis, s),
            )
        )
    return scenarios


# ---------------------------------------------------------------------------
# Incremental record log


class _RecordLog:
    """Append-only JSONL keyed by cell and (cell, scenario)."""

    def __init__(self, path: Path | None):
        self.path = path
        self.rosters: dict[tuple, dict[str, Any]] = {}
        self.rerosters: dict[tuple, dict[str, Any]] = {}
        if path is not None and path.exists():
            self._load(path)

    def _load(self, path: Path) -> None:
        lines = path.read_text().splitlines()
        for pos, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                if pos == len(lines) - 1:
                    break  # torn tail write from an interrupted run
                raise SweepError(f"{path}: corrupt record at line {pos + 1}")
            key = tuple(record["key"])
            if record["kind"] == "roster":
                self.rosters[key] = record
            elif record["kind"] == "reroster":
                self.rerosters[key] = record

    def append(self, record: dict[str, Any]) -> None:
        key = tuple(record["key"])
        if record["kind"] == "roster":
            self.rosters[key] = record
        else:
            self.rerosters[key] = record
        if self.path is None:
            return
        with self.path.open("a") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            fh.flush()


# ---------------------------------------------------------------------------
# Solving one cell


def _solve_cell_roster(
    config: SweepConfig, plan: _CellPlan, log: _RecordLog
) -> tuple[Roster | None, dict[str, Any]]:
    cached = log.rosters.get(plan.key)
    if cached is not None:
        roster = None
        if cached.get("roster") is not None:
            roster = roster_from_dict(cached["roster"], config.instance)
        return roster, cached

    inst = config.instance
    record: dict[str, Any] = {
        "kind": "roster",
        "key": list(plan.key),
        "status": SolveStatus.ERROR.value,
        "objective": None,
        "gap": None,
        "solve_s": 0.0,
        "reserves_per_day": None,
        "roster": None,
        "message": "",
    }
    try:
        model = build_rostering_model(
            inst, plan.requirement, conversion_safe=config.conversion_safe
        )
        outcome = solve(model, config.controls, backend=config.backend)
        record["status"] = outcome.status.value
        record["gap"] = outcome.gap
        record["solve_s"] = outcome.wall_time
        record["message"] = outcome.message
        roster = None
        if outcome.has_solution:
            roster = extract_roster(inst, plan.requirement, outcome)
            record["objective"] = roster.cost_breakdown.total
            record["reserves_per_day"] = (
                roster.count_shift(inst.shifts.reserve) / inst.days
            )
            record["roster"] = roster_to_dict(roster, inst)
    except (RosterError, MipError) as exc:
        record["status"] = SolveStatus.ERROR.value
        record["message"] = str(exc)
        roster = None
    log.append(record)
    return roster, record


def _failed_scenario_record(index: int, status: str, solve_s: float, gap: float | None = None) -> ScenarioRecord:
    return ScenarioRecord(
        index=index,
        status=status,
        reroster_cost=None,
        base_cost=None,
        change_cost=None,
        pct_reserves_converted=None,
        working_shift_changes=None,
        dayoff_changes=None,
        gap=gap,
        solve_s=solve_s,
    )


def _solve_one_scenario(
    config: SweepConfig,
    roster: Roster,
    scenario: AbsenceScenario,
    index: int,
) -> ScenarioRecord:
    start = time.perf_counter()
    try:
        model = build_rerostering_model(
            config.instance,
            roster,
            scenario,
            reserve=None,
            conversion_safe=config.conversion_safe,
        )
        outcome = solve(model, config.controls, backend=config.backend)
        if not outcome.has_solution:
            return _failed_scenario_record(
                index, outcome.status.value, outcome.wall_time, outcome.gap
            )
        result = extract_reroster(
            config.instance, roster, scenario, outcome, reserve=None
        )
    except (RosterError, MipError):
        return _failed_scenario_record(
            index, SolveStatus.ERROR.value, time.perf_counter() - start
        )
    return ScenarioRecord(
        index=index,
        status=outcome.status.value,
        reroster_cost=result.cost_breakdown.total,
        base_cost=result.cost_breakdown.base_cost,
        change_cost=result.cost_breakdown.change_cost,
        pct_reserves_converted=result.metrics.pct_reserves_converted,
        working_shift_changes=result.metrics.n_working_shift_changes,
        dayoff_changes=result.metrics.n_dayoff_changes,
        gap=outcome.gap,
        solve_s=outcome.wall_time,
    )


def _scenario_record_from_log(record: Mapping[str, Any]) -> ScenarioRecord:
    return ScenarioRecord(
        index=int(record["key"][3]),
        status=record["status"],
        reroster_cost=record["reroster_cost"],
        base_cost=record["base_cost"],
        change_cost=record["change_cost"],
        pct_reserves_converted=record["pct_reserves_converted"],
        working_shift_changes=record["working_shift_changes"],
        dayoff_changes=record["dayoff_changes"],
        gap=record["gap"],
        solve_s=record["solve_s"],
    )


def _scenario_record_to_log(plan: _CellPlan, rec: ScenarioRecord) -> dict[str, Any]:
    return {
        "kind": "reroster",
        "key": list(plan.key) + [rec.index],
        "status": rec.status,
        "reroster_cost": rec.reroster_cost,
        "base_cost": rec.base_cost,
        "change_cost": rec.change_cost,
        "pct_reserves_converted": rec.pct_reserves_converted,
        "working_shift_changes": rec.working_shift_changes,
        "dayoff_changes": rec.dayoff_changes,
        "gap": rec.gap,
        "solve_s": rec.solve_s,
    }


def _run_cell(config: SweepConfig, plan: _CellPlan, log: _RecordLog) -> CellRecord:
    roster, roster_record = _solve_cell_roster(config, plan, log)
    details: list[ScenarioRecord] = []
    if roster is not None:
        scenarios = _evaluation_scenarios(config, plan)
        pending = [
            (s, scenario)
            for s, scenario in enumerate(scenarios)
            if plan.key + (s,) not in log.rerosters
        ]
        fresh: dict[int, ScenarioRecord] = {}
        if config.jobs > 1 and len(pending) > 1:
            with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                futures = [
                    pool.submit(_solve_one_scenario, config, roster, scenario, s)
                    for s, scenario in pending
                ]
                for (s, _), future in zip(pending, futures):
                    fresh[s] = future.result()
        else:
            for s, scenario in pending:
                fresh[s] = _solve_one_scenario(config, roster, scenario, s)
        for s in range(config.n_scenarios):
            cached = log.rerosters.get(plan.key + (s,))
            if cached is not None:
                details.append(_scenario_record_from_log(cached))
            else:
                rec = fresh[s]
                log.append(_scenario_record_to_log(plan, rec))
                details.append(rec)
    return CellRecord(
        policy=plan.policy,
        tpr=plan.tpr,
        rfpr=plan.rfpr,
        roster_status=roster_record["status"],
        rostering_cost=roster_record["objective"],
        reserves_per_day=roster_record["reserves_per_day"],
        roster_gap=roster_record["gap"],
        roster_solve_s=roster_record["solve_s"],
        details=tuple(details),
    )


# ---------------------------------------------------------------------------
# The sweep itself


def run_sweep(config: SweepConfig, out_dir: str | Path | None = None) -> SweepResult:
    """Run (or resume) the full grid study.

    With ``out_dir`` given, records append to ``records.jsonl`` there as
    they complete and the summary/detail CSVs plus a manifest are written
    at the end; an existing log is resumed, skipping completed keys.
    """
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
    log = _RecordLog(out_path / "records.jsonl" if out_path else None)

    if config.pilot:
        _pilot_solve(config)

    plans = _cell_plans(config)
    cells: list[CellRecord] = []
    truncated = False
    spent = 0.0
    for plan in plans:
        if config.time_budget_s is not None and spent >= config.time_budget_s:
            truncated = True
            break
        cell = _run_cell(config, plan, log)
        spent += cell.roster_solve_s + sum(r.solve_s for r in cell.details)
        cells.append(cell)

    result = SweepResult(config=config, cells=tuple(cells), truncated=truncated)
    if out_path is not None:
        write_summary_csv(result, out_path / "results.csv")
        write_details_csv(result, out_path / "details.csv")
        _write_manifest(result, out_path / "manifest.json")
    return result


def _pilot_solve(config: SweepConfig) -> None:
    """Fail fast when even the reserve-free model cannot be solved."""
    inst = config.instance
    model = build_rostering_model(
        inst, baseline_policy(0, inst.days), conversion_safe=config.conversion_safe
    )
    outcome = solve(model, config.controls, backend=config.backend)
    if not outcome.has_solution:
        raise SweepError(
            f"pilot rostering solve failed ({outcome.status.value}): {outcome.message}"
        )


def _write_manifest(result: SweepResult, path: Path) -> None:
    config = result.config
    manifest = {
        "instance": {
            "employees": config.instance.n_employees,
            "days": config.instance.days,
            "skills": list(config.instance.skills),
        },
        "grid": {
            "tpr_values": list(config.tpr_values),
            "rfpr_values": list(config.rfpr_values),
        },
        "rho": config.rho,
        "n_scenarios": config.n_scenarios,
        "baselines": list(config.baselines),
        "controls": {"gap": config.controls.gap, "time_limit": config.controls.time_limit},
        "master_seed": config.master_seed,
        "truth_mode": config.truth_mode,
        "conversion_safe": config.conversion_safe,
        "backend": config.backend,
        "time_budget_s": config.time_budget_s,
        "truncated": result.truncated,
        "n_cells": len(result.cells),
        "versions": {
            "python": sys.version.split()[0],
            "numpy": np.__version__,
        },
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# CSV output


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_summary_csv(result: SweepResult, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_COLUMNS)
        for cell in result.cells:
            row = cell.summary_row()
            writer.writerow([_csv_value(row[c]) for c in SUMMARY_COLUMNS])


def write_details_csv(result: SweepResult, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DETAIL_COLUMNS)
        for cell in result.cells:
            for row in cell.detail_rows():
                writer.writerow([_csv_value(row[c]) for c in DETAIL_COLUMNS])


# ---------------------------------------------------------------------------
# Baseline comparison


@dataclass(frozen=True)
class RatioGrid:
    """Per-cell mean repair cost divided by one baseline's mean."""

    baseline_k: int
    baseline_cost: float
    tpr_values: tuple[float, ...]
    rfpr_values: tuple[float, ...]
    ratios: np.ndarray  # shape (len(tpr_values), len(rfpr_values))

    def to_rows(self) -> list[dict[str, float]]:
        rows = []
        for i, tpr in enumerate(self.tpr_values):
            for j, rfpr in enumerate(self.rfpr_values):
                rows.append({"tpr": tpr, "rfpr": rfpr, "ratio": float(self.ratios[i, j])})
        return rows

    def unit_crossings(self) -> list[tuple[float, float]]:
        """Points where the ratio crosses 1.0 along grid edges.

        Linear interpolation between adjacent cells; feeds the iso-cost
        contour on ratio plots.
        """
        points: list[tuple[float, float]] = []
        r = self.ratios
        for i, tpr in enumerate(self.tpr_values):
            for j, rfpr in enumerate(self.rfpr_values):
                if i + 1 < len(self.tpr_values):
                    a, b = r[i, j], r[i + 1, j]
                    if np.isfinite(a) and np.isfinite(b) and (a - 1.0) * (b - 1.0) < 0:
                        t = (1.0 - a) / (b - a)
                        points.append(
                            (tpr + t * (self.tpr_values[i + 1] - tpr), rfpr)
                        )
                if j + 1 < len(self.rfpr_values):
                    a, b = r[i, j], r[i, j + 1]
                    if np.isfinite(a) and np.isfinite(b) and (a - 1.0) * (b - 1.0) < 0:
                        t = (1.0 - a) / (b - a)
                        points.append(
                            (tpr, rfpr + t * (self.rfpr_values[j + 1] - rfpr))
                        )
        return points


def compare_to_baseline(result: SweepResult, k: int) -> RatioGrid:
    """Mean repair cost of every grid cell relative to baseline ``k``."""
    baseline = result.find(f"fixed-{k}")
    base_cost = baseline.mean_reroster_cost
    if base_cost is None:
        raise SweepError(f"baseline fixed-{k} has no solved scenarios")
    if base_cost <= 0:
        raise SweepError(f"baseline fixed-{k} mean cost is {base_cost}, ratio undefined")
    config = result.config
    ratios = np.full((len(config.tpr_values), len(config.rfpr_values)), np.nan)
    for i, tpr in enumerate(config.tpr_values):
        for j, rfpr in enumerate(config.rfpr_values):
            try:
                cell = result.find(ML_POLICY, tpr, rfpr)
            except KeyError:
                continue
            mean = cell.mean_reroster_cost
            if mean is not None:
                ratios[i, j] = mean / base_cost
    return RatioGrid(
        baseline_k=k,
        baseline_cost=base_cost,
        tpr_values=config.tpr_values,
        rfpr_values=config.rfpr_values,
        ratios=ratios,
    )


def ratio_from_csv(results_csv: str | Path, k: int) -> RatioGrid:
    """Build the baseline-ratio grid straight from a results CSV.

    Lets reporting run without the instance or the sweep log; only the
    summary rows are needed.
    """
    ml_rows: dict[tuple[float, float], float | None] = {}
    base_cost: float | None = None
    found_baseline = False
    with Path(results_csv).open(newline="") as fh:
        for row in csv.DictReader(fh):
            cost = row.get("mean_reroster_cost") or None
            if row["policy"] == f"fixed-{k}":
                found_baseline = True
                base_cost = float(cost) if cost else None
            elif row["policy"] == ML_POLICY:
                key = (float(row["tpr"]), float(row["rfpr"]))
                ml_rows[key] = float(cost) if cost else None
    if not found_baseline:
        raise SweepError(f"no fixed-{k} baseline row in {results_csv}")
    if base_cost is None:
        raise SweepError(f"baseline fixed-{k} has no solved scenarios")
    if base_cost <= 0:
        raise SweepError(f"baseline fixed-{k} mean cost is {base_cost}, ratio undefined")
    if not ml_rows:
        raise SweepError(f"no ml rows in {results_csv}")
    tpr_values = tuple(sorted({t for t, _ in ml_rows}))
    rfpr_values = tuple(sorted({r for _, r in ml_rows}))
    ratios = np.full((len(tpr_values), len(rfpr_values)), np.nan)
    for (t, r), cost in ml_rows.items():
        if cost is not None:
            ratios[tpr_values.index(t), rfpr_values.index(r)] = cost / base_cost
    return RatioGrid(
        baseline_k=k,
        baseline_cost=base_cost,
        tpr_values=tpr_values,
        rfpr_values=rfpr_values,
        ratios=ratios,
    )


def write_ratio_csv(grid: RatioGrid, path: str | Path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("tpr", "rfpr", "ratio"))
        for row in grid.to_rows():
            writer.writerow(
                [_csv_value(row["tpr"]), _csv_value(row["rfpr"]), _csv_value(row["ratio"])]
            )
