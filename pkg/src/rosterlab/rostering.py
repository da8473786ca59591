"""Build and solve the robust rostering model.

The model assigns each employee at most one (shift, skill) per day, meets
skill-stratified demand softly (understaffing is penalized), enforces
forbidden shift successions, consecutive-day and consecutive-night caps,
minimum working days (hard) and maximum working days (overtime), excludes
undesired assignments, and schedules at least the requested number of
reserve shifts per day (shortfall penalized) subject to a per-employee
reserve cap.

With ``conversion_safe=True`` (the default) the model also guarantees that
any scheduled reserve shift can later be turned into any working shift
without breaking a hard constraint: successions adjacent to a reserve are
restricted as if the reserve could become any working shift, and reserve
days count toward the consecutive-night cap. ``conversion_safe=False``
drops those protections and gives the plain formulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping

import json
from pathlib import Path

from .instance import ProblemInstance, ReserveRequirement
from .mip import MipModel, SolveControls, SolveOutcome, SolveStatus, VarKind, solve

# relative tolerance for the independent cost recomputation cross-check
RECOMPUTE_RTOL = 1e-6


class RosterError(Exception):
    """Raised when a rostering solve cannot produce a usable roster."""

    def __init__(self, message: str, status: SolveStatus | None = None):
        self.status = status
        super().__init__(message)


@dataclass(frozen=True)
class CostBreakdown:
    """Objective decomposition of a roster."""

    wages: float
    overtime_cost: float
    understaff_cost: float
    reserve_wages: float
    shortfall_penalty: float
    total: float

    def to_dict(self) -> dict[str, float]:
        return {
            "wages": self.wages,
            "overtime_cost": self.overtime_cost,
            "understaff_cost": self.understaff_cost,
            "reserve_wages": self.reserve_wages,
            "shortfall_penalty": self.shortfall_penalty,
            "total": self.total,
        }


@dataclass(frozen=True)
class Roster:
    """A solved roster.

    ``assignment`` maps ``(employee index, day)`` to ``(shift, skill)``;
    unassigned cells are simply absent. The slack maps are sparse: only
    strictly positive overtime / understaffing / reserve-shortfall entries
    appear.
    """

    assignment: Mapping[tuple[int, int], tuple[str, str]]
    overtime: Mapping[int, float]
    understaffing: Mapping[tuple[int, str, str], float]
    reserve_shortfall: Mapping[int, float]
    cost_breakdown: CostBreakdown

    def shift_at(self, employee: int, day: int) -> tuple[str, str] | None:
        return self.assignment.get((employee, day))

    def reserve_cells(self, reserve_shift: str) -> list[tuple[int, int]]:
        return sorted(
            (n, d) for (n, d), (s, _) in self.assignment.items() if s == reserve_shift
        )

    def count_shift(self, shift: str) -> int:
        return sum(1 for s, _ in self.assignment.values() if s == shift)

    def working_days(self, employee: int, working_shifts: tuple[str, ...]) -> int:
        return sum(
            1
            for (n, _), (s, _k) in self.assignment.items()
            if n == employee and s in working_shifts
        )


# ---------------------------------------------------------------------------
# Model construction


def conversion_safe_pairs(
    pairs: tuple[tuple[str, str], ...], reserve: str
) -> tuple[tuple[str, str], ...]:
    """Extend forbidden successions so a reserve behaves like any shift it
    could become: (s1,s2) forbidden => (s1,reserve) and (reserve,s2) too."""
    out = list(pairs)
    seen = set(pairs)
    for s1, s2 in pairs:
        for extra in ((s1, reserve), (reserve, s2)):
            if extra not in seen:
                seen.add(extra)
                out.append(extra)
    return tuple(out)


def _night_shifts(instance: ProblemInstance, conversion_safe: bool) -> tuple[str, ...]:
    if conversion_safe:
        return (instance.shifts.night, instance.shifts.reserve)
    return (instance.shifts.night,)


def build_base_model(
    instance: ProblemInstance,
    reserve: ReserveRequirement | None,
    conversion_safe: bool,
    name: str,
    cell_exists=None,
) -> tuple[MipModel, dict[tuple[int, int, str, str], int], list[tuple[int, float]]]:
    """Assignment variables, scheduling rules and base cost terms.

    Shared by the rostering model and the repair model (which filters out
    absentees' cells via ``cell_exists`` and adds change costs on top).
    Returns the model, the x-variable index map and the objective terms;
    the caller finalizes the objective. ``reserve=None`` drops the per-day
    reserve requirement entirely.
    """
    if reserve is not None:
        if reserve.days != instance.days:
            raise ValueError(
                f"reserve requirement covers {reserve.days} days, "
                f"instance has {instance.days}"
            )
        for d, c in enumerate(reserve.per_day):
            if c > instance.n_employees:
                raise ValueError(
                    f"reserve requirement {c} on day {d} exceeds workforce "
                    f"{instance.n_employees}"
                )
    if cell_exists is None:
        cell_exists = lambda n, d: True

    model = MipModel(name)
    days = instance.days
    shifts = instance.shifts
    all_shifts = shifts.all_shifts
    working = shifts.working

    # x[n,d,s,k] for qualified skills only; no variables on vetoed cells
    x: dict[tuple[int, int, str, str], int] = {}
    objective: list[tuple[int, float]] = []
    for n, emp in enumerate(instance.employees):
        for d in range(days):
            if not cell_exists(n, d):
                continue
            for s in all_shifts:
                for k in emp.skills:
                    idx = model.add_var(f"x[{n},{d},{s},{k}]", VarKind.BINARY)
                    x[(n, d, s, k)] = idx
                    if s == shifts.reserve:
                        objective.append((idx, emp.reserve_wage))
                    else:
                        objective.append((idx, emp.wage))

    v5: list[int] = []
    for n, emp in enumerate(instance.employees):
        idx = model.add_var(f"v5[{n}]", VarKind.CONTINUOUS)
        v5.append(idx)
        objective.append((idx, emp.overtime_cost))

    v6: dict[tuple[int, str, str], int] = {}
    for (d, s, k), m in sorted(instance.demand.items()):
        if m <= 0:
            continue
        idx = model.add_var(f"v6[{d},{s},{k}]", VarKind.CONTINUOUS)
        v6[(d, s, k)] = idx
        objective.append((idx, instance.understaff_cost))

    vr: dict[int, int] = {}
    if reserve is not None:
        for d, c in enumerate(reserve.per_day):
            if c <= 0:
                continue
            idx = model.add_var(f"vr[{d}]", VarKind.CONTINUOUS)
            vr[d] = idx
            objective.append((idx, instance.reserve_shortfall_cost))

    _add_rostering_constraints(model, instance, x, conversion_safe, cell_exists)

    for n, emp in enumerate(instance.employees):
        work_terms = [
            (x[(n, d, s, k)], 1.0)
            for d in range(days)
            if cell_exists(n, d)
            for s in working
            for k in emp.skills
        ]
        if emp.min_work_days > 0:
            # with every cell vetoed the minimum is unmeetable; 0 >= beta
            # keeps the model well-formed and correctly infeasible
            model.add_constraint(
                f"min_days[{n}]",
                work_terms or [(v5[n], 0.0)],
                ">=",
                emp.min_work_days,
            )
        model.add_constraint(
            f"max_days[{n}]", work_terms + [(v5[n], -1.0)], "<=", emp.max_work_days
        )
        reserve_terms = [
            (x[(n, d, shifts.reserve, k)], 1.0)
            for d in range(days)
            if cell_exists(n, d)
            for k in emp.skills
        ]
        if reserve_terms:
            model.add_constraint(
                f"reserve_cap[{n}]", reserve_terms, "<=", emp.max_reserve_shifts
            )

    for (d, s, k), m in sorted(instance.demand.items()):
        if m <= 0:
            continue
        terms: list[tuple[int, float]] = [
            (x[(n, d, s, k)], 1.0)
            for n in instance.qualified[k]
            if cell_exists(n, d)
        ]
        terms.append((v6[(d, s, k)], 1.0))
        model.add_constraint(f"demand[{d},{s},{k}]", terms, ">=", float(m))

    if reserve is not None:
        for d, c in enumerate(reserve.per_day):
            if c <= 0:
                continue
            terms = [
                (x[(n, d, shifts.reserve, k)], 1.0)
                for n, emp in enumerate(instance.employees)
                if cell_exists(n, d)
                for k in emp.skills
            ]
            terms.append((vr[d], 1.0))
            model.add_constraint(f"reserve_req[{d}]", terms, ">=", float(c))

    return model, x, objective


def build_rostering_model(
    instance: ProblemInstance,
    reserve: ReserveRequirement,
    conversion_safe: bool = True,
    name: str = "rostering",
) -> MipModel:
    """Construct the rostering MIP for an instance and reserve requirement."""
    model, _, objective = build_base_model(instance, reserve, conversion_safe, name)
    model.set_objective(objective)
    return model


def _add_rostering_constraints(
    model: MipModel,
    instance: ProblemInstance,
    x: Mapping[tuple[int, int, str, str], int],
    conversion_safe: bool,
    cell_exists=None,
) -> None:
    """Per-employee scheduling rules shared by rostering and rerostering.

    ``cell_exists(n, d)`` may veto cells that carry no variables (used when
    absentees' days are stripped from a repair model).
    """
    days = instance.days
    shifts = instance.shifts
    all_shifts = shifts.all_shifts
    if cell_exists is None:
        cell_exists = lambda n, d: True

    pairs = shifts.forbidden_successions
    if conversion_safe:
        pairs = conversion_safe_pairs(pairs, shifts.reserve)
    night_like = _night_shifts(instance, conversion_safe)

    for n, emp in enumerate(instance.employees):
        def cell(d: int, subset: tuple[str, ...] = all_shifts) -> list[tuple[int, float]]:
            if not cell_exists(n, d):
                return []
            return [(x[(n, d, s, k)], 1.0) for s in subset for k in emp.skills]

        for d in range(days):
            terms = cell(d)
            if terms:
                model.add_constraint(f"one_shift[{n},{d}]", terms, "<=", 1.0)

        for d in range(days - 1):
            for s1, s2 in pairs:
                first = cell(d, (s1,))
                second = cell(d + 1, (s2,))
                if first and second:
                    model.add_constraint(
                        f"succ[{n},{d},{s1},{s2}]", first + second, "<=", 1.0
                    )

        last = instance.history_shift(emp.id, -1)
        if last is not None:
            blocked = sorted({s2 for s1, s2 in pairs if s1 == last})
            for s2 in blocked:
                terms = cell(0, (s2,))
                if terms:
                    model.add_constraint(f"succ_hist[{n},{s2}]", terms, "<=", 0.0)

        limit = emp.max_consecutive_work
        for start in range(0, days - limit):
            terms = [t for d in range(start, start + limit + 1) for t in cell(d)]
            if terms:
                model.add_constraint(f"work_run[{n},{start}]", terms, "<=", float(limit))
        for delta in range(0, min(limit, days)):
            hist = sum(
                1
                for h in range(delta - limit, 0)
                if instance.history_shift(emp.id, h) is not None
            )
            if hist == 0:
                continue
            terms = [t for d in range(0, delta + 1) for t in cell(d)]
            if terms:
                model.add_constraint(
                    f"work_run_hist[{n},{delta}]", terms, "<=", float(limit - hist)
                )

        nlimit = emp.max_consecutive_nights
        for start in range(0, days - nlimit):
            terms = [
                t for d in range(start, start + nlimit + 1) for t in cell(d, night_like)
            ]
            if terms:
                model.add_constraint(
                    f"night_run[{n},{start}]", terms, "<=", float(nlimit)
                )
        for delta in range(0, min(nlimit, days)):
            hist = sum(
                1
                for h in range(delta - nlimit, 0)
                if instance.history_shift(emp.id, h) == shifts.night
            )
            if hist == 0:
                continue
            terms = [t for d in range(0, delta + 1) for t in cell(d, night_like)]
            if terms:
                model.add_constraint(
                    f"night_run_hist[{n},{delta}]", terms, "<=", float(nlimit - hist)
                )

    for n_id, d, s in sorted(instance.undesired):
        n = instance.employee_index[n_id]
        emp = instance.employees[n]
        if not cell_exists(n, d):
            continue
        terms = [(x[(n, d, s, k)], 1.0) for k in emp.skills]
        model.add_constraint(f"undesired[{n},{d},{s}]", terms, "==", 0.0)


# ---------------------------------------------------------------------------
# Cost recomputation and extraction


def compute_assignment_costs(
    instance: ProblemInstance,
    assignment: Mapping[tuple[int, int], tuple[str, str]],
    reserve: ReserveRequirement | None,
) -> tuple[dict[int, float], dict[tuple[int, str, str], float], dict[int, float], CostBreakdown]:
    """Evaluate a roster's objective from scratch.

    Returns (overtime days, understaffing, reserve shortfall, breakdown),
    each sparse with positive entries only. ``reserve=None`` means no
    per-day reserve requirement (shortfall identically zero).
    """
    shifts = instance.shifts
    wages = 0.0
    reserve_wages = 0.0
    work_days = [0] * instance.n_employees
    reserve_count = [0] * instance.days
    skill_count: dict[tuple[int, str, str], int] = {}
    for (n, d), (s, k) in assignment.items():
        emp = instance.employees[n]
        if s == shifts.reserve:
            reserve_wages += emp.reserve_wage
            reserve_count[d] += 1
        else:
            wages += emp.wage
            work_days[n] += 1
            key = (d, s, k)
            skill_count[key] = skill_count.get(key, 0) + 1

    overtime: dict[int, float] = {}
    overtime_cost = 0.0
    for n, emp in enumerate(instance.employees):
        over = max(0, work_days[n] - emp.max_work_days)
        if over > 0:
            overtime[n] = float(over)
            overtime_cost += over * emp.overtime_cost

    understaffing: dict[tuple[int, str, str], float] = {}
    understaff_cost = 0.0
    for key, m in instance.demand.items():
        short = max(0, m - skill_count.get(key, 0))
        if short > 0:
            understaffing[key] = float(short)
            understaff_cost += short * instance.understaff_cost

    shortfall: dict[int, float] = {}
    shortfall_penalty = 0.0
    if reserve is not None:
        for d, c in enumerate(reserve.per_day):
            short = max(0, c - reserve_count[d])
            if short > 0:
                shortfall[d] = float(short)
                shortfall_penalty += short * instance.reserve_shortfall_cost

    breakdown = CostBreakdown(
        wages=wages,
        overtime_cost=overtime_cost,
        understaff_cost=understaff_cost,
        reserve_wages=reserve_wages,
        shortfall_penalty=shortfall_penalty,
        total=wages + overtime_cost + understaff_cost + reserve_wages + shortfall_penalty,
    )
    return overtime, understaffing, shortfall, breakdown


def extract_assignment(
    instance: ProblemInstance, values: Mapping[str, float]
) -> dict[tuple[int, int], tuple[str, str]]:
    """Read the x variables of a solution back into an assignment map."""
    assignment: dict[tuple[int, int], tuple[str, str]] = {}
    for n, emp in enumerate(instance.employees):
        for d in range(instance.days):
            for s in instance.shifts.all_shifts:
                for k in emp.skills:
                    if values.get(f"x[{n},{d},{s},{k}]", 0.0) > 0.5:
                        if (n, d) in assignment:
                            raise RosterError(
                                f"employee {emp.id} assigned twice on day {d}"
                            )
                        assignment[(n, d)] = (s, k)
    return assignment


def extract_roster(
    instance: ProblemInstance,
    reserve: ReserveRequirement,
    outcome: SolveOutcome,
) -> Roster:
    """Turn a solve outcome into a Roster, cross-checking the solver.

    The objective and every slack are recomputed from the assignment alone;
    disagreement with the solver (beyond weighted float tolerance) raises.
    """
    if not outcome.has_solution:
        raise RosterError("outcome has no solution to extract", outcome.status)
    values = outcome.values
    assignment = extract_assignment(instance, values)
    overtime, understaffing, shortfall, breakdown = compute_assignment_costs(
        instance, assignment, reserve
    )

    for n, emp in enumerate(instance.employees):
        solver = values.get(f"v5[{n}]", 0.0)
        mine = overtime.get(n, 0.0)
        if abs(emp.overtime_cost * (solver - mine)) > RECOMPUTE_RTOL * (1 + abs(breakdown.total)):
            raise RosterError(
                f"overtime mismatch for {emp.id}: solver {solver}, recomputed {mine}"
            )
    for key in instance.demand:
        d, s, k = key
        solver = values.get(f"v6[{d},{s},{k}]", 0.0)
        mine = understaffing.get(key, 0.0)
        if abs(instance.understaff_cost * (solver - mine)) > RECOMPUTE_RTOL * (1 + abs(breakdown.total)):
            raise RosterError(
                f"understaffing mismatch at {key}: solver {solver}, recomputed {mine}"
            )
    for d in range(instance.days):
        solver = values.get(f"vr[{d}]", 0.0)
        mine = shortfall.get(d, 0.0)
        if abs(instance.reserve_shortfall_cost * (solver - mine)) > RECOMPUTE_RTOL * (1 + abs(breakdown.total)):
            raise RosterError(
                f"reserve shortfall mismatch on day {d}: solver {solver}, recomputed {mine}"
            )
    if outcome.objective_value is not None:
        if abs(breakdown.total - outcome.objective_value) > RECOMPUTE_RTOL * (
            1 + abs(outcome.objective_value)
        ):
            raise RosterError(
                f"objective mismatch: solver {outcome.objective_value}, "
                f"recomputed {breakdown.total}"
            )

    return Roster(
        assignment=assignment,
        overtime=overtime,
        understaffing=understaffing,
        reserve_shortfall=shortfall,
        cost_breakdown=breakdown,
    )


def require_solution(outcome: SolveOutcome, what: str) -> None:
    """Raise RosterError when an outcome carries no usable solution."""
    if outcome.status is SolveStatus.INFEASIBLE:
        raise RosterError(f"{what} model is infeasible", outcome.status)
    if not outcome.has_solution:
        raise RosterError(
            f"{what} solve ended without a solution ({outcome.status.value}: "
            f"{outcome.message})",
            outcome.status,
        )


def solve_rostering(
    instance: ProblemInstance,
    reserve: ReserveRequirement,
    controls: SolveControls | None = None,
    backend: str = "highs",
    conversion_safe: bool = True,
) -> Roster:
    """Build, solve and extract in one step."""
    model = build_rostering_model(instance, reserve, conversion_safe)
    outcome = solve(model, controls, backend=backend)
    require_solution(outcome, "rostering")
    return extract_roster(instance, reserve, outcome)


# ---------------------------------------------------------------------------
# Hard-rule evaluation (shared by the conversion-safety check and the
# exhaustive oracles; deliberately a separate code path from the MIP rows)


def employee_schedule_violations(
    instance: ProblemInstance,
    employee: int,
    schedule: Mapping[int, tuple[str, str] | None],
    count_reserve_as_night: bool = False,
    pairs: Iterable[tuple[str, str]] | None = None,
) -> set[tuple]:
    """Hard-rule violations of one employee's schedule.

    ``schedule`` maps day -> (shift, skill) or None. Returned keys identify
    the rule family and location; demand and overtime are soft and not
    reported here. ``pairs`` overrides the instance's forbidden successions
    (e.g. with their conversion-safe extension).
    """
    emp = instance.employees[employee]
    shifts = instance.shifts
    days = instance.days
    violations: set[tuple] = set()

    def shift_on(d: int) -> str | None:
        if d < 0:
            return instance.history_shift(emp.id, d)
        cell = schedule.get(d)
        return cell[0] if cell else None

    pairs = set(shifts.forbidden_successions if pairs is None else pairs)
    for d in range(-1, days - 1):
        s1, s2 = shift_on(d), shift_on(d + 1)
        if s1 is not None and s2 is not None and (s1, s2) in pairs:
            violations.add(("succession", emp.id, d, s1, s2))

    limit = emp.max_consecutive_work
    for start in range(-limit, days - limit):
        assigned = sum(
            1 for d in range(start, start + limit + 1) if shift_on(d) is not None
        )
        if assigned > limit:
            violations.add(("work_run", emp.id, start))

    nlimit = emp.max_consecutive_nights
    for start in range(-nlimit, days - nlimit):
        count = 0
        for d in range(start, start + nlimit + 1):
            s = shift_on(d)
            if s == shifts.night:
                count += 1
            elif count_reserve_as_night and d >= 0 and s == shifts.reserve:
                count += 1
        if count > nlimit:
            violations.add(("night_run", emp.id, start))

    work_days = sum(1 for d in range(days) if shift_on(d) in shifts.working)
    if work_days < emp.min_work_days:
        violations.add(("min_days", emp.id))

    reserves = sum(1 for d in range(days) if shift_on(d) == shifts.reserve)
    if reserves > emp.max_reserve_shifts:
        violations.add(("max_reserve", emp.id))

    for d in range(days):
        s = shift_on(d)
        if s is not None and (emp.id, d, s) in instance.undesired:
            violations.add(("undesired", emp.id, d, s))

    return violations


@dataclass(frozen=True)
class ConversionViolation:
    """One hard rule a reserve-to-working conversion would introduce."""

    employee: str
    day: int
    to_shift: str
    kind: str
    key: tuple

    def __str__(self) -> str:
        return (
            f"{self.employee} day {self.day} -> {self.to_shift}: "
            f"{self.kind} violation {self.key}"
        )


def check_conversion_safety(
    instance: ProblemInstance, roster: Roster
) -> list[ConversionViolation]:
    """Check that every reserve can become every working shift.

    For each scheduled reserve (n, d) and each working shift s, the reserve
    is hypothetically converted to s and the employee's hard rules are
    re-evaluated against the instance's plain rules. Only violations the
    conversion introduces (absent from the unconverted schedule) are
    reported, so a roster that was already irregular is not blamed twice.
    Returns an empty list when all conversions are safe.
    """
    shifts = instance.shifts
    out: list[ConversionViolation] = []
    by_employee: dict[int, dict[int, tuple[str, str]]] = {}
    for (n, d), cell in roster.assignment.items():
        by_employee.setdefault(n, {})[d] = cell
    for n in sorted(by_employee):
        schedule = by_employee[n]
        reserve_days = sorted(d for d, (s, _) in schedule.items() if s == shifts.reserve)
        if not reserve_days:
            continue
        base = employee_schedule_violations(instance, n, schedule)
        for d in reserve_days:
            for s in shifts.working:
                converted = dict(schedule)
                converted[d] = (s, converted[d][1])
                new = employee_schedule_violations(instance, n, converted) - base
                for key in sorted(new):
                    out.append(
                        ConversionViolation(
                            employee=instance.employees[n].id,
                            day=d,
                            to_shift=s,
                            kind=key[0],
                            key=key,
                        )
                    )
    return out


# ---------------------------------------------------------------------------
# Roster serialization


def roster_to_dict(roster: Roster, instance: ProblemInstance) -> dict[str, Any]:
    ids = [e.id for e in instance.employees]
    return {
        "assignment": [
            {"employee": ids[n], "day": d, "shift": s, "skill": k}
            for (n, d), (s, k) in sorted(roster.assignment.items())
        ],
        "overtime": {ids[n]: v for n, v in sorted(roster.overtime.items())},
        "understaffing": [
            {"day": d, "shift": s, "skill": k, "short": v}
            for (d, s, k), v in sorted(roster.understaffing.items())
        ],
        "reserve_shortfall": {str(d): v for d, v in sorted(roster.reserve_shortfall.items())},
        "cost_breakdown": roster.cost_breakdown.to_dict(),
    }


def roster_from_dict(data: Mapping[str, Any], instance: ProblemInstance) -> Roster:
    index = instance.employee_index
    assignment: dict[tuple[int, int], tuple[str, str]] = {}
    for row in data["assignment"]:
        n = index[row["employee"]]
        key = (n, int(row["day"]))
        if key in assignment:
            raise RosterError(f"duplicate assignment for {row['employee']} day {row['day']}")
        assignment[key] = (str(row["shift"]), str(row["skill"]))
    overtime = {index[e]: float(v) for e, v in data.get("overtime", {}).items()}
    understaffing = {
        (int(r["day"]), str(r["shift"]), str(r["skill"])): float(r["short"])
        for r in data.get("understaffing", [])
    }
    shortfall = {int(d): float(v) for d, v in data.get("reserve_shortfall", {}).items()}
    cb = data["cost_breakdown"]
    breakdown = CostBreakdown(
        wages=float(cb["wages"]),
        overtime_cost=float(cb["overtime_cost"]),
        understaff_cost=float(cb["understaff_cost"]),
        reserve_wages=float(cb["reserve_wages"]),
        shortfall_penalty=float(cb["shortfall_penalty"]),
        total=float(cb["total"]),
    )
    return Roster(
        assignment=assignment,
        overtime=overtime,
        understaffing=understaffing,
        reserve_shortfall=shortfall,
        cost_breakdown=breakdown,
    )


def save_roster(roster: Roster, instance: ProblemInstance, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(roster_to_dict(roster, instance), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_roster(path: str | Path, instance: ProblemInstance) -> Roster:
    with open(path, "r", encoding="utf-8") as fh:
        return roster_from_dict(json.load(fh), instance)
