"""Core domain types for rostering problems.

A :class:`ProblemInstance` bundles the employees, planning horizon, shift
catalog, skill-stratified demand and cost weights of one rostering problem.
Instances are immutable after construction; every mutating-looking operation
elsewhere in the package returns new objects.

Day indexing: planning days are ``0 .. days-1``. History rows use negative
day indices (``-1`` is the last day before the horizon).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Mapping

import numpy as np


class InstanceError(ValueError):
    """Raised when instance data is structurally or semantically invalid.

    ``path`` names the offending field, e.g. ``employees[3].wage``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ShiftCatalog:
    """The shift vocabulary of an instance.

    ``working`` are the demand-carrying shifts. ``reserve`` is the on-call
    shift: it pays a stand-by wage, counts toward rest rules like any other
    assignment, but carries no demand. ``night`` must be one of the working
    shifts and is the shift the consecutive-night rule applies to.
    """

    working: tuple[str, ...]
    reserve: str
    night: str
    forbidden_successions: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if not self.working:
            raise InstanceError("shifts.working", "at least one working shift required")
        if len(set(self.working)) != len(self.working):
            raise InstanceError("shifts.working", "duplicate shift ids")
        if self.reserve in self.working:
            raise InstanceError("shifts.reserve", "reserve shift must not be a working shift")
        if self.night not in self.working:
            raise InstanceError("shifts.night", f"night shift {self.night!r} not in working shifts")
        for i, (s1, s2) in enumerate(self.forbidden_successions):
            for side, s in (("0", s1), ("1", s2)):
                if s not in self.working:
                    raise InstanceError(
                        f"shifts.forbidden_successions[{i}][{side}]",
                        f"{s!r} is not a working shift (reserve may not appear here)",
                    )

    @property
    def all_shifts(self) -> tuple[str, ...]:
        """Working shifts followed by the reserve shift."""
        return self.working + (self.reserve,)

    def to_dict(self) -> dict[str, Any]:
        return {
            "working": list(self.working),
            "reserve": self.reserve,
            "night": self.night,
            "forbidden_successions": [list(p) for p in self.forbidden_successions],
        }


@dataclass(frozen=True)
class Employee:
    """One employee: qualifications, workload bounds and cost weights.

    Workload bounds:
      * ``max_consecutive_work``: any run of consecutive assigned days
        (working or reserve) may not exceed this length.
      * ``max_consecutive_nights``: ditto for night shifts only.
      * ``min_work_days`` / ``max_work_days``: bounds on the number of
        working-shift days in the horizon; the minimum is hard, days beyond
        the maximum are paid at ``overtime_cost`` each.
      * ``max_reserve_shifts``: cap on reserve assignments in the horizon.

    Cost weights:
      * ``wage`` per working shift, ``reserve_wage`` per reserve shift.
      * ``shift_change_cost`` / ``reserve_conversion_cost`` /
        ``dayoff_change_cost``: charged per repair action when an existing
        roster is repaired after absences (change working shift, convert a
        reserve to a working shift, turn a day off into a working day or
        vice versa).
    """

    id: str
    skills: tuple[str, ...]
    max_consecutive_work: int
    max_consecutive_nights: int
    min_work_days: int
    max_work_days: int
    max_reserve_shifts: int
    wage: float
    overtime_cost: float
    reserve_wage: float
    shift_change_cost: float
    reserve_conversion_cost: float
    dayoff_change_cost: float

    def __post_init__(self) -> None:
        path = f"employee[{self.id}]"
        if not self.id:
            raise InstanceError("employee.id", "empty id")
        if not self.skills:
            raise InstanceError(f"{path}.skills", "employee must hold at least one skill")
        if len(set(self.skills)) != len(self.skills):
            raise InstanceError(f"{path}.skills", "duplicate skills")
        for name in (
            "max_consecutive_work",
            "max_consecutive_nights",
            "min_work_days",
            "max_work_days",
            "max_reserve_shifts",
        ):
            if int(getattr(self, name)) < 0:
                raise InstanceError(f"{path}.{name}", "must be non-negative")
        if self.max_consecutive_work == 0 and self.min_work_days > 0:
            raise InstanceError(f"{path}.max_consecutive_work", "zero but min_work_days > 0")
        if self.min_work_days > self.max_work_days:
            raise InstanceError(
                f"{path}.min_work_days",
                f"exceeds max_work_days ({self.min_work_days} > {self.max_work_days})",
            )
        for name in (
            "wage",
            "overtime_cost",
            "reserve_wage",
            "shift_change_cost",
            "reserve_conversion_cost",
            "dayoff_change_cost",
        ):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise InstanceError(f"{path}.{name}", "must be finite and non-negative")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "skills": list(self.skills),
            "max_consecutive_work": self.max_consecutive_work,
            "max_consecutive_nights": self.max_consecutive_nights,
            "min_work_days": self.min_work_days,
            "max_work_days": self.max_work_days,
            "max_reserve_shifts": self.max_reserve_shifts,
            "wage": self.wage,
            "overtime_cost": self.overtime_cost,
            "reserve_wage": self.reserve_wage,
            "shift_change_cost": self.shift_change_cost,
            "reserve_conversion_cost": self.reserve_conversion_cost,
            "dayoff_change_cost": self.dayoff_change_cost,
        }


@dataclass(frozen=True)
class ProblemInstance:
    """A complete rostering problem. Immutable; treat all fields read-only.

    ``demand`` maps ``(day, working shift, skill) -> minimum headcount``;
    missing keys mean zero. ``undesired`` lists assignments that are
    excluded outright. ``history`` maps ``(employee id, negative day) ->
    shift`` for the days immediately before the horizon, so rest rules can
    look across the boundary.
    """

    employees: tuple[Employee, ...]
    days: int
    skills: tuple[str, ...]
    shifts: ShiftCatalog
    demand: Mapping[tuple[int, str, str], int]
    undesired: frozenset[tuple[str, int, str]] = frozenset()
    history: Mapping[tuple[str, int], str] = field(default_factory=dict)
    understaff_cost: float = 500.0
    reserve_shortfall_cost: float = 1000.0

    def __post_init__(self) -> None:
        if self.days < 1:
            raise InstanceError("days", "horizon must have at least one day")
        if not self.employees:
            raise InstanceError("employees", "at least one employee required")
        if not self.skills or len(set(self.skills)) != len(self.skills):
            raise InstanceError("skills", "must be non-empty and unique")
        ids = [e.id for e in self.employees]
        if len(set(ids)) != len(ids):
            raise InstanceError("employees", "duplicate employee ids")
        known = set(self.skills)
        for i, emp in enumerate(self.employees):
            for s in emp.skills:
                if s not in known:
                    raise InstanceError(f"employees[{i}].skills", f"unknown skill {s!r}")
        working = set(self.shifts.working)
        for key, m in self.demand.items():
            d, s, k = key
            path = f"demand[({d},{s!r},{k!r})]"
            if not 0 <= d < self.days:
                raise InstanceError(f"{path}.day", f"day {d} outside 0..{self.days - 1}")
            if s not in working:
                raise InstanceError(f"{path}.shift", f"{s!r} is not a working shift")
            if k not in known:
                raise InstanceError(f"{path}.skill", f"unknown skill {k!r}")
            if int(m) < 0:
                raise InstanceError(f"{path}.min", "must be non-negative")
        id_set = set(ids)
        all_shifts = set(self.shifts.all_shifts)
        for n, d, s in self.undesired:
            path = f"undesired[({n!r},{d},{s!r})]"
            if n not in id_set:
                raise InstanceError(f"{path}.employee", f"unknown employee {n!r}")
            if not 0 <= d < self.days:
                raise InstanceError(f"{path}.day", f"day {d} outside 0..{self.days - 1}")
            if s not in all_shifts:
                raise InstanceError(f"{path}.shift", f"unknown shift {s!r}")
        for (n, d), s in self.history.items():
            path = f"history[({n!r},{d})]"
            if n not in id_set:
                raise InstanceError(f"{path}.employee", f"unknown employee {n!r}")
            if d >= 0:
                raise InstanceError(f"{path}.day", "history days must be negative")
            if s not in all_shifts:
                raise InstanceError(f"{path}.shift", f"unknown shift {s!r}")
        for name in ("understaff_cost", "reserve_shortfall_cost"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise InstanceError(f"costs.{name}", "must be finite and non-negative")

    @property
    def n_employees(self) -> int:
        return len(self.employees)

    @cached_property
    def employee_index(self) -> dict[str, int]:
        """Map employee id -> position in ``employees``."""
        return {e.id: i for i, e in enumerate(self.employees)}

    @cached_property
    def qualified(self) -> dict[str, tuple[int, ...]]:
        """Map skill -> indices of employees holding that skill."""
        table: dict[str, list[int]] = {k: [] for k in self.skills}
        for i, emp in enumerate(self.employees):
            for k in emp.skills:
                table[k].append(i)
        return {k: tuple(v) for k, v in table.items()}

    def demand_at(self, day: int, shift: str, skill: str) -> int:
        return int(self.demand.get((day, shift, skill), 0))

    def history_shift(self, employee_id: str, day: int) -> str | None:
        """Shift worked on a (negative) history day, or None for a day off."""
        return self.history.get((employee_id, day))

    def to_dict(self) -> dict[str, Any]:
        return {
            "employees": [e.to_dict() for e in self.employees],
            "days": self.days,
            "skills": list(self.skills),
            "shifts": self.shifts.to_dict(),
            "demand": [
                {"day": d, "shift": s, "skill": k, "min": int(m)}
                for (d, s, k), m in sorted(self.demand.items())
            ],
            "undesired": [list(t) for t in sorted(self.undesired)],
            "history": [
                {"employee": n, "day": d, "shift": s}
                for (n, d), s in sorted(self.history.items())
            ],
            "costs": {
                "understaff": self.understaff_cost,
                "reserve_shortfall": self.reserve_shortfall_cost,
            },
        }


@dataclass(frozen=True)
class ReserveRequirement:
    """Per-day minimum number of scheduled reserve shifts."""

    per_day: tuple[int, ...]

    def __post_init__(self) -> None:
        for d, c in enumerate(self.per_day):
            if int(c) < 0:
                raise InstanceError(f"reserve_requirement[{d}]", "must be non-negative")

    @classmethod
    def constant(cls, level: int, days: int) -> "ReserveRequirement":
        """The fixed-level policy: the same requirement on every day."""
        if level < 0:
            raise ValueError("level must be non-negative")
        return cls(per_day=(int(level),) * days)

    @property
    def days(self) -> int:
        return len(self.per_day)

    @property
    def total(self) -> int:
        return int(sum(self.per_day))

    def to_dict(self) -> dict[str, Any]:
        return {"per_day": list(self.per_day)}


@dataclass(frozen=True, eq=False)
class AbsenceScenario:
    """One realization of who is absent on which day.

    ``absent[n, d]`` is True when employee ``n`` (by position in the
    instance) is absent on day ``d``. ``seed`` records the RNG seed the
    scenario was drawn from, for reproducibility.
    """

    absent: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.absent, dtype=bool)
        if arr.ndim != 2:
            raise InstanceError("scenario.absent", "must be a 2-d employee x day matrix")
        object.__setattr__(self, "absent", arr)
        arr.setflags(write=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbsenceScenario):
            return NotImplemented
        return self.seed == other.seed and np.array_equal(self.absent, other.absent)

    @property
    def n_employees(self) -> int:
        return int(self.absent.shape[0])

    @property
    def n_days(self) -> int:
        return int(self.absent.shape[1])

    def absentees(self) -> tuple[int, ...]:
        """Indices of employees absent on at least one day."""
        return tuple(int(i) for i in np.flatnonzero(self.absent.any(axis=1)))

    def absent_pairs(self) -> list[tuple[int, int]]:
        """Sparse (employee, day) absence list, sorted."""
        rows, cols = np.nonzero(self.absent)
        return [(int(n), int(d)) for n, d in zip(rows, cols)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "employees": self.n_employees,
            "days": self.n_days,
            "seed": int(self.seed),
            "absent": [list(p) for p in self.absent_pairs()],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AbsenceScenario":
        n = _expect_int(data, "employees", "scenario")
        d = _expect_int(data, "days", "scenario")
        if n < 1 or d < 1:
            raise InstanceError("scenario", "employees and days must be positive")
        absent = np.zeros((n, d), dtype=bool)
        for i, pair in enumerate(data.get("absent", ())):
            path = f"scenario.absent[{i}]"
            if len(pair) != 2:
                raise InstanceError(path, "expected an (employee, day) pair")
            ni, di = int(pair[0]), int(pair[1])
            if not (0 <= ni < n and 0 <= di < d):
                raise InstanceError(path, f"({ni},{di}) outside the {n}x{d} matrix")
            absent[ni, di] = True
        return cls(absent=absent, seed=int(data.get("seed", 0)))


# ---------------------------------------------------------------------------
# Serialization


def _expect(data: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in data:
        raise InstanceError(f"{path}.{key}", "missing required field")
    return data[key]


def _expect_int(data: Mapping[str, Any], key: str, path: str) -> int:
    value = _expect(data, key, path)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"{path}.{key}", f"expected an integer, got {type(value).__name__}")
    return value


def _expect_number(data: Mapping[str, Any], key: str, path: str) -> float:
    value = _expect(data, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceError(f"{path}.{key}", f"expected a number, got {type(value).__name__}")
    return float(value)


def _expect_str(data: Mapping[str, Any], key: str, path: str) -> str:
    value = _expect(data, key, path)
    if not isinstance(value, str):
        raise InstanceError(f"{path}.{key}", f"expected a string, got {type(value).__name__}")
    return value


def _expect_list(data: Mapping[str, Any], key: str, path: str) -> list:
    value = _expect(data, key, path)
    if not isinstance(value, list):
        raise InstanceError(f"{path}.{key}", f"expected a list, got {type(value).__name__}")
    return value


def _employee_from_dict(data: Mapping[str, Any], path: str) -> Employee:
    if not isinstance(data, Mapping):
        raise InstanceError(path, "expected an object")
    skills = _expect_list(data, "skills", path)
    return Employee(
        id=_expect_str(data, "id", path),
        skills=tuple(str(s) for s in skills),
        max_consecutive_work=_expect_int(data, "max_consecutive_work", path),
        max_consecutive_nights=_expect_int(data, "max_consecutive_nights", path),
        min_work_days=_expect_int(data, "min_work_days", path),
        max_work_days=_expect_int(data, "max_work_days", path),
        max_reserve_shifts=_expect_int(data, "max_reserve_shifts", path),
        wage=_expect_number(data, "wage", path),
        overtime_cost=_expect_number(data, "overtime_cost", path),
        reserve_wage=_expect_number(data, "reserve_wage", path),
        shift_change_cost=_expect_number(data, "shift_change_cost", path),
        reserve_conversion_cost=_expect_number(data, "reserve_conversion_cost", path),
        dayoff_change_cost=_expect_number(data, "dayoff_change_cost", path),
    )


def instance_from_dict(data: Mapping[str, Any]) -> ProblemInstance:
    """Build and validate a ProblemInstance from plain JSON data."""
    if not isinstance(data, Mapping):
        raise InstanceError("instance", "top level must be an object")
    shifts_data = _expect(data, "shifts", "instance")
    if not isinstance(shifts_data, Mapping):
        raise InstanceError("shifts", "expected an object")
    catalog = ShiftCatalog(
        working=tuple(str(s) for s in _expect_list(shifts_data, "working", "shifts")),
        reserve=_expect_str(shifts_data, "reserve", "shifts"),
        night=_expect_str(shifts_data, "night", "shifts"),
        forbidden_successions=tuple(
            (str(p[0]), str(p[1]))
            for p in shifts_data.get("forbidden_successions", [])
        ),
    )
    employees = tuple(
        _employee_from_dict(e, f"employees[{i}]")
        for i, e in enumerate(_expect_list(data, "employees", "instance"))
    )
    demand: dict[tuple[int, str, str], int] = {}
    for i, row in enumerate(_expect_list(data, "demand", "instance")):
        path = f"demand[{i}]"
        if not isinstance(row, Mapping):
            raise InstanceError(path, "expected an object")
        key = (
            _expect_int(row, "day", path),
            _expect_str(row, "shift", path),
            _expect_str(row, "skill", path),
        )
        if key in demand:
            raise InstanceError(path, f"duplicate demand entry for {key}")
        demand[key] = _expect_int(row, "min", path)
    undesired = set()
    for i, row in enumerate(data.get("undesired", [])):
        path = f"undesired[{i}]"
        if len(row) != 3:
            raise InstanceError(path, "expected [employee, day, shift]")
        entry = (str(row[0]), int(row[1]), str(row[2]))
        if entry[2] == catalog.reserve:
            raise InstanceError(f"{path}.shift", "reserve shift not allowed in undesired list")
        undesired.add(entry)
    history: dict[tuple[str, int], str] = {}
    for i, row in enumerate(data.get("history", [])):
        path = f"history[{i}]"
        if not isinstance(row, Mapping):
            raise InstanceError(path, "expected an object")
        key = (_expect_str(row, "employee", path), _expect_int(row, "day", path))
        if key in history:
            raise InstanceError(path, f"duplicate history entry for {key}")
        history[key] = _expect_str(row, "shift", path)
    costs = data.get("costs", {})
    if not isinstance(costs, Mapping):
        raise InstanceError("costs", "expected an object")
    kwargs: dict[str, Any] = {}
    if "understaff" in costs:
        kwargs["understaff_cost"] = _expect_number(costs, "understaff", "costs")
    if "reserve_shortfall" in costs:
        kwargs["reserve_shortfall_cost"] = _expect_number(costs, "reserve_shortfall", "costs")
    return ProblemInstance(
        employees=employees,
        days=_expect_int(data, "days", "instance"),
        skills=tuple(str(s) for s in _expect_list(data, "skills", "instance")),
        shifts=catalog,
        demand=demand,
        undesired=frozenset(undesired),
        history=history,
        **kwargs,
    )


def load_instance(path: str | Path) -> ProblemInstance:
    """Load an instance from a JSON file, validating all fields."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError("instance", f"not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def save_instance(instance: ProblemInstance, path: str | Path) -> None:
    """Write an instance as formatted JSON (stable key order)."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def save_scenario(scenario: AbsenceScenario, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scenario(path: str | Path) -> AbsenceScenario:
    with open(path, "r", encoding="utf-8") as fh:
        return AbsenceScenario.from_dict(json.load(fh))
