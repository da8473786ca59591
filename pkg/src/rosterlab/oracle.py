"""Exhaustive reference solvers for tiny instances.

These enumerate every joint assignment that satisfies the hard scheduling
rules and evaluate the objective by direct counting, sharing no code with
the MIP rows (feasibility goes through ``employee_schedule_violations``).
They exist to pin expected optima in tests; sizes beyond a few employees
and days are rejected rather than attempted.
"""

from __future__ import annotations

from itertools import product
from typing import Mapping

from .instance import AbsenceScenario, ProblemInstance, ReserveRequirement
from .rerostering import change_counts
from .rostering import (
    compute_assignment_costs,
    conversion_safe_pairs,
    employee_schedule_violations,
)

MAX_SCHEDULES_PER_EMPLOYEE = 50_000
MAX_LEAVES = 5_000_000

Schedule = dict[int, tuple[str, str]]
Assignment = dict[tuple[int, int], tuple[str, str]]


def _feasible_schedules(
    instance: ProblemInstance,
    employee: int,
    conversion_safe: bool,
    cell_exists=None,
    must_assign: frozenset[int] = frozenset(),
) -> list[Schedule]:
    """All schedules of one employee satisfying the hard rules.

    ``cell_exists(d)`` vetoes days (absences); ``must_assign`` days must
    carry some shift (a reserve being repaired may not become a day off).
    """
    emp = instance.employees[employee]
    shifts = instance.shifts
    pairs = shifts.forbidden_successions
    if conversion_safe:
        pairs = conversion_safe_pairs(pairs, shifts.reserve)

    options_per_day: list[list[tuple[str, str] | None]] = []
    for d in range(instance.days):
        if cell_exists is not None and not cell_exists(d):
            options_per_day.append([None])
            continue
        options: list[tuple[str, str] | None] = []
        if d not in must_assign:
            options.append(None)
        options.extend((s, k) for s in shifts.all_shifts for k in emp.skills)
        options_per_day.append(options)

    count = 1
    for opts in options_per_day:
        count *= len(opts)
    if count > MAX_SCHEDULES_PER_EMPLOYEE:
        raise ValueError(
            f"employee {emp.id} has {count} candidate schedules, "
            f"above the oracle cap {MAX_SCHEDULES_PER_EMPLOYEE}"
        )

    feasible: list[Schedule] = []
    for combo in product(*options_per_day):
        schedule: Schedule = {d: cell for d, cell in enumerate(combo) if cell}
        if not employee_schedule_violations(
            instance,
            employee,
            schedule,
            count_reserve_as_night=conversion_safe,
            pairs=pairs,
        ):
            feasible.append(schedule)
    return feasible


def _own_cost(instance: ProblemInstance, employee: int, schedule: Schedule) -> float:
    emp = instance.employees[employee]
    shifts = instance.shifts
    work = sum(1 for s, _ in schedule.values() if s in shifts.working)
    reserves = sum(1 for s, _ in schedule.values() if s == shifts.reserve)
    cost = work * emp.wage + reserves * emp.reserve_wage
    cost += max(0, work - emp.max_work_days) * emp.overtime_cost
    return cost


def _search(
    instance: ProblemInstance,
    per_employee: list[list[tuple[Schedule, float]]],
    leaf_cost,
) -> tuple[float, Assignment] | None:
    """Depth-first search over employees with own-cost pruning.

    ``leaf_cost(assignment)`` adds the joint penalties (understaffing,
    reserve shortfall, change costs) on top of the accumulated own costs.
    """
    n_emp = len(per_employee)
    min_rest = [0.0] * (n_emp + 1)
    for n in range(n_emp - 1, -1, -1):
        min_rest[n] = min_rest[n + 1] + min(c for _, c in per_employee[n])

    best: list[float] = [float("inf")]
    best_assignment: list[Assignment | None] = [None]
    chosen: list[Schedule] = [{} for _ in range(n_emp)]

    def recurse(n: int, acc: float) -> None:
        if acc + min_rest[n] >= best[0]:
            return
        if n == n_emp:
            assignment: Assignment = {
                (i, d): cell
                for i in range(n_emp)
                for d, cell in chosen[i].items()
            }
            total = acc + leaf_cost(assignment)
            if total < best[0]:
                best[0] = total
                best_assignment[0] = assignment
            return
        for schedule, cost in per_employee[n]:
            chosen[n] = schedule
            recurse(n + 1, acc + cost)

    recurse(0, 0.0)
    if best_assignment[0] is None:
        return None
    return best[0], best_assignment[0]


def oracle_rostering(
    instance: ProblemInstance,
    reserve: ReserveRequirement,
    conversion_safe: bool = True,
) -> tuple[float, Assignment] | None:
    """Exhaustive optimum of the rostering problem, or None if infeasible."""
    per_employee: list[list[tuple[Schedule, float]]] = []
    leaves = 1
    for n in range(instance.n_employees):
        schedules = _feasible_schedules(instance, n, conversion_safe)
        if not schedules:
            return None
        leaves *= len(schedules)
        per_employee.append([(s, _own_cost(instance, n, s)) for s in schedules])
    if leaves > MAX_LEAVES:
        raise ValueError(f"{leaves} joint assignments, above the oracle cap {MAX_LEAVES}")

    def leaf_cost(assignment: Assignment) -> float:
        _, _, _, breakdown = compute_assignment_costs(instance, assignment, reserve)
        return breakdown.understaff_cost + breakdown.shortfall_penalty

    return _search(instance, per_employee, leaf_cost)


def oracle_rerostering(
    instance: ProblemInstance,
    original: Mapping[tuple[int, int], tuple[str, str]],
    scenario: AbsenceScenario,
    reserve: ReserveRequirement | None = None,
    conversion_safe: bool = True,
) -> tuple[float, Assignment] | None:
    """Exhaustive optimum of the repair problem, or None if infeasible."""
    shifts = instance.shifts
    per_employee: list[list[tuple[Schedule, float]]] = []
    leaves = 1
    for n in range(instance.n_employees):
        emp = instance.employees[n]
        must_assign = frozenset(
            d
            for d in range(instance.days)
            if not scenario.absent[n, d]
            and original.get((n, d), (None,))[0] == shifts.reserve
        )
        schedules = _feasible_schedules(
            instance,
            n,
            conversion_safe,
            cell_exists=lambda d, n=n: not scenario.absent[n, d],
            must_assign=must_assign,
        )
        if not schedules:
            return None
        leaves *= len(schedules)
        rated = []
        for schedule in schedules:
            cost = _own_cost(instance, n, schedule)
            for d in range(instance.days):
                if scenario.absent[n, d]:
                    continue
                v2, v3, v4 = change_counts(
                    original.get((n, d)),
                    schedule.get(d),
                    shifts.working,
                    shifts.reserve,
                )
                cost += (
                    v2 * emp.shift_change_cost
                    + v3 * emp.reserve_conversion_cost
                    + v4 * emp.dayoff_change_cost
                )
            rated.append((schedule, cost))
        per_employee.append(rated)
    if leaves > MAX_LEAVES:
        raise ValueError(f"{leaves} joint assignments, above the oracle cap {MAX_LEAVES}")

    def leaf_cost(assignment: Assignment) -> float:
        _, _, _, breakdown = compute_assignment_costs(instance, assignment, reserve)
        return breakdown.understaff_cost + breakdown.shortfall_penalty

    return _search(instance, per_employee, leaf_cost)
