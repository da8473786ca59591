"""Repair a roster after absences materialize.

The repair model keeps all scheduling rules of the rostering model, strips
absent employees' cells on their absence days, and charges for deviations
from the original roster of every present employee:

* changing one working shift into another (``shift_change_cost``),
* converting a reserve into a working shift (``reserve_conversion_cost``),
* turning a day off into a working day or vice versa
  (``dayoff_change_cost``; swapping a day off directly for a reserve
  counts twice).

Only the absent cells themselves are exempt: the assignment that vanished
with the absence is never charged, while the employee's remaining days are
charged like anyone else's. A reserve on a present day may never become a
day off: it either stays a reserve or is converted into a working shift.
Skill swaps within the same shift are free. By default the per-day reserve
requirement is dropped during repair (pass ``reserve=`` to keep one).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .instance import AbsenceScenario, ProblemInstance, ReserveRequirement
from .mip import MipModel, SolveControls, SolveOutcome, SolveStatus, VarKind, solve
from .rostering import (
    RECOMPUTE_RTOL,
    CostBreakdown,
    Roster,
    RosterError,
    build_base_model,
    compute_assignment_costs,
    extract_assignment,
    require_solution,
)


@dataclass(frozen=True)
class RerosterCostBreakdown:
    """Repair objective split into roster cost and change cost."""

    base_cost: float
    change_cost: float
    total: float

    def to_dict(self) -> dict[str, float]:
        return {
            "base_cost": self.base_cost,
            "change_cost": self.change_cost,
            "total": self.total,
        }


@dataclass(frozen=True)
class RerosterMetrics:
    """Aggregate change statistics of one repair.

    ``pct_reserves_converted`` is the fraction (in [0, 1]) of the original
    roster's reserve shifts that were converted into working shifts; it is
    defined as 0 when the original roster scheduled no reserves.
    """

    pct_reserves_converted: float
    n_working_shift_changes: int
    n_dayoff_changes: int

    def to_dict(self) -> dict[str, float | int]:
        return {
            "pct_reserves_converted": self.pct_reserves_converted,
            "n_working_shift_changes": self.n_working_shift_changes,
            "n_dayoff_changes": self.n_dayoff_changes,
        }


@dataclass(frozen=True)
class RerosterResult:
    """A repaired roster plus per-cell change counts and aggregates.

    The change maps are sparse over (employee index, day) with positive
    counts only; absent cells never appear in them.
    """

    roster: Roster
    shift_changes: Mapping[tuple[int, int], int]
    reserve_conversions: Mapping[tuple[int, int], int]
    dayoff_changes: Mapping[tuple[int, int], int]
    cost_breakdown: RerosterCostBreakdown
    metrics: RerosterMetrics


def change_counts(
    original_cell: tuple[str, str] | None,
    new_cell: tuple[str, str] | None,
    working: tuple[str, ...],
    reserve_shift: str,
) -> tuple[int, int, int]:
    """Change counters for one employee-day.

    Returns (working-shift changes, reserve conversions, day-off changes)
    as the repair model charges them. A skill swap within the same shift is
    not a change.
    """
    orig = original_cell[0] if original_cell else None
    new = new_cell[0] if new_cell else None
    if orig == new:
        return 0, 0, 0
    was_working = int(orig in working)
    now_working = int(new in working)
    was_any = int(orig is not None)
    now_any = int(new is not None)
    was_reserve = int(orig == reserve_shift)
    v2 = max(0, was_working + now_working - 1)
    v3 = max(0, now_any + was_reserve - 1)
    v4 = max(0, 2 * (1 - was_reserve) - was_any - now_working)
    return v2, v3, v4


def build_rerostering_model(
    instance: ProblemInstance,
    original: Roster,
    scenario: AbsenceScenario,
    reserve: ReserveRequirement | None = None,
    conversion_safe: bool = True,
    name: str = "rerostering",
) -> MipModel:
    """Construct the repair MIP against a realized absence scenario."""
    _check_scenario(instance, scenario)
    absent = scenario.absent
    shifts = instance.shifts
    working = shifts.working

    model, x, objective = build_base_model(
        instance,
        reserve,
        conversion_safe,
        name,
        cell_exists=lambda n, d: not absent[n, d],
    )

    original_shift: dict[tuple[int, int], str] = {
        (n, d): s for (n, d), (s, _) in original.assignment.items()
    }

    # The day-level change indicator is affine in x once the original
    # assignment is a constant (1 - x_on_original_shift, or x_anything for
    # an original day off), so the three change counters reduce to one row
    # each with no auxiliary binaries. Rows that are never binding for the
    # cell's original state are dropped along with their counter.
    for n, emp in enumerate(instance.employees):
        for d in range(instance.days):
            if absent[n, d]:
                # the vanished assignment itself is never charged
                continue
            orig = original_shift.get((n, d))
            if orig is None:
                # off -> working costs 1, off -> reserve costs 2
                v4 = model.add_var(f"v4[{n},{d}]", VarKind.CONTINUOUS)
                objective.append((v4, emp.dayoff_change_cost))
                terms = [
                    (x[(n, d, s, k)], -1.0 if s in working else -2.0)
                    for s in shifts.all_shifts
                    for k in emp.skills
                ]
                model.add_constraint(
                    f"count_dayoff[{n},{d}]", terms + [(v4, 1.0)], ">=", 0.0
                )
            elif orig == shifts.reserve:
                # a repaired reserve either stays or becomes a working
                # shift (one conversion); it may not become a day off
                v3 = model.add_var(f"v3[{n},{d}]", VarKind.CONTINUOUS)
                objective.append((v3, emp.reserve_conversion_cost))
                terms = [
                    (x[(n, d, s, k)], 1.0)
                    for s in shifts.all_shifts
                    if s != shifts.reserve
                    for k in emp.skills
                ]
                model.add_constraint(
                    f"count_conversion[{n},{d}]", terms + [(v3, -1.0)], "<=", 0.0
                )
                x_all = [
                    (x[(n, d, s, k)], 1.0)
                    for s in shifts.all_shifts
                    for k in emp.skills
                ]
                model.add_constraint(f"keep_reserve[{n},{d}]", x_all, ">=", 1.0)
            else:
                # originally working: another working shift is a shift
                # change; reserve or day off is a day-off change
                v2 = model.add_var(f"v2[{n},{d}]", VarKind.CONTINUOUS)
                v4 = model.add_var(f"v4[{n},{d}]", VarKind.CONTINUOUS)
                objective.append((v2, emp.shift_change_cost))
                objective.append((v4, emp.dayoff_change_cost))
                other_working = [
                    (x[(n, d, s, k)], 1.0)
                    for s in working
                    if s != orig
                    for k in emp.skills
                ]
                model.add_constraint(
                    f"count_shift_change[{n},{d}]",
                    other_working + [(v2, -1.0)],
                    "<=",
                    0.0,
                )
                stay_or_work = [
                    (x[(n, d, s, k)], 3.0 if s == orig else 1.0)
                    for s in working
                    for k in emp.skills
                ]
                model.add_constraint(
                    f"count_dayoff[{n},{d}]", stay_or_work + [(v4, 1.0)], ">=", 1.0
                )

    model.set_objective(objective)
    return model


def extract_reroster(
    instance: ProblemInstance,
    original: Roster,
    scenario: AbsenceScenario,
    outcome: SolveOutcome,
    reserve: ReserveRequirement | None = None,
) -> RerosterResult:
    """Turn a repair solution into a RerosterResult.

    All change counts are recomputed from the two assignments; the solver's
    change variables and objective must agree (for gap-terminated solves
    the recomputed total may only be lower, never higher).
    """
    if not outcome.has_solution:
        raise RosterError("outcome has no solution to extract", outcome.status)
    values = outcome.values
    assignment = extract_assignment(instance, values)
    shifts = instance.shifts

    for (n, d) in assignment:
        if scenario.absent[n, d]:
            raise RosterError(
                f"absent employee {instance.employees[n].id} assigned on day {d}"
            )

    shift_changes: dict[tuple[int, int], int] = {}
    conversions: dict[tuple[int, int], int] = {}
    dayoff_changes: dict[tuple[int, int], int] = {}
    change_cost = 0.0
    tol = RECOMPUTE_RTOL
    for n, emp in enumerate(instance.employees):
        for d in range(instance.days):
            if scenario.absent[n, d]:
                continue
            orig_cell = original.assignment.get((n, d))
            new_cell = assignment.get((n, d))
            if orig_cell is not None and orig_cell[0] == shifts.reserve and new_cell is None:
                raise RosterError(
                    f"reserve of {emp.id} on day {d} became a day off"
                )
            v2, v3, v4 = change_counts(orig_cell, new_cell, shifts.working, shifts.reserve)
            if v2:
                shift_changes[(n, d)] = v2
            if v3:
                conversions[(n, d)] = v3
            if v4:
                dayoff_changes[(n, d)] = v4
            change_cost += (
                v2 * emp.shift_change_cost
                + v3 * emp.reserve_conversion_cost
                + v4 * emp.dayoff_change_cost
            )
            for solver_name, mine, weight in (
                (f"v2[{n},{d}]", v2, emp.shift_change_cost),
                (f"v3[{n},{d}]", v3, emp.reserve_conversion_cost),
                (f"v4[{n},{d}]", v4, emp.dayoff_change_cost),
            ):
                solver_v = values.get(solver_name, 0.0)
                if (
                    outcome.status is SolveStatus.OPTIMAL
                    and abs(weight * (solver_v - mine)) > tol * (1 + abs(outcome.objective_value or 0.0))
                ):
                    raise RosterError(
                        f"change count mismatch at {solver_name}: solver {solver_v}, "
                        f"recomputed {mine}"
                    )

    overtime, understaffing, shortfall, base = compute_assignment_costs(
        instance, assignment, reserve
    )
    total = base.total + change_cost
    if outcome.objective_value is not None:
        gap_ok = (
            abs(total - outcome.objective_value) <= tol * (1 + abs(outcome.objective_value))
            if outcome.status is SolveStatus.OPTIMAL
            else total <= outcome.objective_value + tol * (1 + abs(outcome.objective_value))
        )
        if not gap_ok:
            raise RosterError(
                f"repair objective mismatch: solver {outcome.objective_value}, "
                f"recomputed {total}"
            )

    roster = Roster(
        assignment=assignment,
        overtime=overtime,
        understaffing=understaffing,
        reserve_shortfall=shortfall,
        cost_breakdown=base,
    )
    original_reserves = original.count_shift(shifts.reserve)
    converted = sum(conversions.values())
    metrics = RerosterMetrics(
        pct_reserves_converted=(converted / original_reserves) if original_reserves else 0.0,
        n_working_shift_changes=int(sum(shift_changes.values())),
        n_dayoff_changes=int(sum(dayoff_changes.values())),
    )
    return RerosterResult(
        roster=roster,
        shift_changes=shift_changes,
        reserve_conversions=conversions,
        dayoff_changes=dayoff_changes,
        cost_breakdown=RerosterCostBreakdown(
            base_cost=base.total, change_cost=change_cost, total=total
        ),
        metrics=metrics,
    )


def solve_rerostering(
    instance: ProblemInstance,
    original: Roster,
    scenario: AbsenceScenario,
    controls: SolveControls | None = None,
    backend: str = "highs",
    reserve: ReserveRequirement | None = None,
    conversion_safe: bool = True,
) -> RerosterResult:
    """Build, solve and extract a repair in one step."""
    model = build_rerostering_model(instance, original, scenario, reserve, conversion_safe)
    outcome = solve(model, controls, backend=backend)
    require_solution(outcome, "rerostering")
    return extract_reroster(instance, original, scenario, outcome, reserve)


def _check_scenario(instance: ProblemInstance, scenario: AbsenceScenario) -> None:
    if scenario.absent.shape != (instance.n_employees, instance.days):
        raise ValueError(
            f"scenario shape {scenario.absent.shape} does not match instance "
            f"({instance.n_employees} employees, {instance.days} days)"
        )
