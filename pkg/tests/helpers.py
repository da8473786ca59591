"""Hand-built micro-instances shared across the test modules.

T1/T2 are one-day rostering fixtures small enough to check by hand; R1 is
the matching repair fixture. Expected optima were frozen from the
exhaustive enumerator before the tests were written.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from rosterlab import (
    AbsenceScenario,
    Employee,
    ProblemInstance,
    ReserveRequirement,
    Roster,
    ShiftCatalog,
)
from rosterlab.rostering import compute_assignment_costs

ONE_SHIFT = ShiftCatalog(working=("day",), reserve="res", night="day")
TWO_SHIFT = ShiftCatalog(working=("early", "late"), reserve="res", night="late")
TWO_SHIFT_FORBIDDEN = ShiftCatalog(
    working=("early", "late"),
    reserve="res",
    night="late",
    forbidden_successions=(("late", "early"),),
)


def make_employee(eid: str = "e0", skills: tuple[str, ...] = ("a",), wage: float = 100.0, **kw) -> Employee:
    """Employee with the study's cost ratios hanging off one wage."""
    fields = dict(
        id=eid,
        skills=skills,
        max_consecutive_work=6,
        max_consecutive_nights=4,
        min_work_days=0,
        max_work_days=28,
        max_reserve_shifts=1,
        wage=wage,
        overtime_cost=1.5 * wage,
        reserve_wage=0.1 * wage,
        shift_change_cost=wage,
        reserve_conversion_cost=0.1 * wage,
        dayoff_change_cost=1.5 * wage,
    )
    fields.update(kw)
    return Employee(**fields)


def make_roster(
    instance: ProblemInstance,
    assignment: Mapping[tuple[int, int], tuple[str, str]],
    reserve: ReserveRequirement | None = None,
) -> Roster:
    """Roster with slacks and cost breakdown recomputed from the assignment."""
    overtime, under, short, breakdown = compute_assignment_costs(instance, assignment, reserve)
    return Roster(dict(assignment), overtime, under, short, breakdown)


def t1_instance(**emp_kw) -> ProblemInstance:
    """One employee, one day, one shift, demand 1. Optimum 100 at c*=0."""
    return ProblemInstance(
        employees=(make_employee("e0", max_work_days=1, **emp_kw),),
        days=1,
        skills=("a",),
        shifts=ONE_SHIFT,
        demand={(0, "day", "a"): 1},
        understaff_cost=500.0,
        reserve_shortfall_cost=1000.0,
    )


def t1_unqualified_instance() -> ProblemInstance:
    """T1 where the employee cannot serve the demanded skill. Optimum 500."""
    return ProblemInstance(
        employees=(make_employee("e0", skills=("b",), max_work_days=1),),
        days=1,
        skills=("a", "b"),
        shifts=ONE_SHIFT,
        demand={(0, "day", "a"): 1},
        understaff_cost=500.0,
        reserve_shortfall_cost=1000.0,
    )


def t2_instance() -> ProblemInstance:
    """Two identical T1 employees; understaffing dear enough that both optima
    in the frozen examples (110 at c*=1, 1110 at c*=2) hold."""
    return ProblemInstance(
        employees=(
            make_employee("e0", max_work_days=1),
            make_employee("e1", max_work_days=1),
        ),
        days=1,
        skills=("a",),
        shifts=ONE_SHIFT,
        demand={(0, "day", "a"): 1},
        understaff_cost=2000.0,
        reserve_shortfall_cost=1000.0,
    )


def r1_instance() -> ProblemInstance:
    """The repair fixture: like T2 but with the default understaffing cost."""
    return ProblemInstance(
        employees=(
            make_employee("e0", max_work_days=1),
            make_employee("e1", max_work_days=1),
        ),
        days=1,
        skills=("a",),
        shifts=ONE_SHIFT,
        demand={(0, "day", "a"): 1},
        understaff_cost=500.0,
        reserve_shortfall_cost=1000.0,
    )


def r1_original(instance: ProblemInstance) -> Roster:
    """R1's pre-disruption roster: e0 works, e1 on reserve (total 110)."""
    return make_roster(
        instance,
        {(0, 0): ("day", "a"), (1, 0): ("res", "a")},
        ReserveRequirement((1,)),
    )


def scenario_from_pairs(
    n_employees: int, n_days: int, pairs: list[tuple[int, int]], seed: int = 0
) -> AbsenceScenario:
    absent = np.zeros((n_employees, n_days), dtype=bool)
    for n, d in pairs:
        absent[n, d] = True
    return AbsenceScenario(absent=absent, seed=seed)


def random_tiny_instance(
    rng: np.random.Generator,
) -> tuple[ProblemInstance, ReserveRequirement]:
    """A random instance small enough for the exhaustive enumerator.

    At most 3 employees, 3 days and 2 working shifts, with random demand,
    history, vetoes and work-rule bounds. Some draws are infeasible on
    purpose; callers compare solver and enumerator on whatever comes out.
    """
    n_emp = int(rng.integers(2, 4))
    days = int(rng.integers(2, 4))
    emps = []
    for i in range(n_emp):
        wage = float(rng.integers(5, 15))
        emps.append(
            Employee(
                id=f"e{i}",
                skills=("a",) if rng.random() < 0.7 else ("a", "b"),
                max_consecutive_work=int(rng.integers(1, 4)),
                max_consecutive_nights=int(rng.integers(1, 3)),
                min_work_days=int(rng.integers(0, 2)),
                max_work_days=int(rng.integers(1, days + 1)),
                max_reserve_shifts=int(rng.integers(0, 3)),
                wage=wage,
                overtime_cost=1.5 * wage,
                reserve_wage=0.1 * wage,
                shift_change_cost=wage,
                reserve_conversion_cost=0.1 * wage,
                dayoff_change_cost=1.5 * wage,
            )
        )
    demand = {}
    for d in range(days):
        for s in ("early", "late"):
            for k in ("a", "b"):
                if rng.random() < 0.4:
                    demand[(d, s, k)] = int(rng.integers(1, 3))
    history = {}
    for i in range(n_emp):
        if rng.random() < 0.4:
            history[(f"e{i}", -1)] = str(rng.choice(["early", "late"]))
    undesired = set()
    if rng.random() < 0.3:
        undesired.add(("e0", 0, "early"))
    inst = ProblemInstance(
        employees=tuple(emps),
        days=days,
        skills=("a", "b"),
        shifts=TWO_SHIFT_FORBIDDEN,
        demand=demand,
        undesired=frozenset(undesired),
        history=history,
        understaff_cost=50.0,
        reserve_shortfall_cost=100.0,
    )
    req = ReserveRequirement(tuple(int(rng.integers(0, 2)) for _ in range(days)))
    return inst, req
