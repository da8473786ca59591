from __future__ import annotations

import pytest

from rosterlab import (
    GeneratorConfig,
    ProblemInstance,
    ReserveRequirement,
    RosterError,
    SolveControls,
    build_rostering_model,
    check_conversion_safety,
    generate_instance,
    load_roster,
    save_roster,
    solve_rostering,
)
from rosterlab.rostering import compute_assignment_costs, employee_schedule_violations

import helpers


def test_t1_optimum(t1):
    roster = solve_rostering(t1, ReserveRequirement((0,)))
    assert roster.cost_breakdown.total == pytest.approx(100.0)
    assert roster.assignment == {(0, 0): ("day", "a")}
    assert not roster.understaffing


def test_t1_unqualified_understaffed():
    inst = helpers.t1_unqualified_instance()
    roster = solve_rostering(inst, ReserveRequirement((0,)))
    assert roster.cost_breakdown.total == pytest.approx(500.0)
    assert roster.assignment == {}
    assert roster.understaffing == {(0, "day", "a"): 1.0}


def test_t2_one_works_one_reserve(t2):
    roster = solve_rostering(t2, ReserveRequirement((1,)))
    assert roster.cost_breakdown.total == pytest.approx(110.0)
    assert not roster.reserve_shortfall
    assert roster.count_shift("day") == 1
    assert roster.count_shift("res") == 1


def test_t2_reserve_shortfall_priced(t2):
    # with both employees capped at one reserve each, c*=2 leaves one short
    roster = solve_rostering(t2, ReserveRequirement((2,)))
    assert roster.cost_breakdown.total == pytest.approx(1110.0)
    assert roster.reserve_shortfall == {0: 1.0}
    assert roster.cost_breakdown.shortfall_penalty == pytest.approx(1000.0)


def test_zero_demand_zero_requirement_is_free():
    inst = ProblemInstance(
        employees=(helpers.make_employee(max_work_days=1),),
        days=1,
        skills=("a",),
        shifts=helpers.ONE_SHIFT,
        demand={},
    )
    roster = solve_rostering(inst, ReserveRequirement((0,)))
    assert roster.cost_breakdown.total == 0.0
    assert roster.assignment == {}


def test_reserve_length_mismatch_rejected(t1):
    with pytest.raises(ValueError, match="covers"):
        build_rostering_model(t1, ReserveRequirement((0, 0)))


def test_reserve_above_workforce_rejected(t1):
    with pytest.raises(ValueError, match="exceeds workforce"):
        build_rostering_model(t1, ReserveRequirement((2,)))


def test_infeasible_minimum_reported():
    inst = helpers.t1_instance(min_work_days=1)
    blocked = ProblemInstance(
        employees=inst.employees,
        days=1,
        skills=inst.skills,
        shifts=inst.shifts,
        demand=dict(inst.demand),
        undesired=frozenset({("e0", 0, "day")}),
    )
    with pytest.raises(RosterError, match="infeasible"):
        solve_rostering(blocked, ReserveRequirement((0,)))


def test_variable_naming_scheme(t2):
    model = build_rostering_model(t2, ReserveRequirement((1,)))
    for name in ("x[0,0,day,a]", "x[1,0,res,a]", "v5[0]", "v6[0,day,a]", "vr[0]"):
        model.var_index(name)  # raises if the name is missing


def test_objective_matches_recomputed_breakdown(small_uniform_instance):
    inst = small_uniform_instance
    req = ReserveRequirement.constant(1, inst.days)
    roster = solve_rostering(inst, req)
    _, _, _, again = compute_assignment_costs(inst, roster.assignment, req)
    assert again.total == pytest.approx(roster.cost_breakdown.total)
    assert again.to_dict() == pytest.approx(roster.cost_breakdown.to_dict())


def test_solver_roster_respects_hard_rules(small_hierarchical_instance):
    inst = small_hierarchical_instance
    roster = solve_rostering(inst, ReserveRequirement.constant(1, inst.days))
    by_emp: dict[int, dict[int, tuple[str, str]]] = {}
    for (n, d), cell in roster.assignment.items():
        by_emp.setdefault(n, {})[d] = cell
    for n, emp in enumerate(inst.employees):
        schedule = by_emp.get(n, {})
        assert employee_schedule_violations(inst, n, schedule) == set()
        reserves = sum(1 for s, _ in schedule.values() if s == inst.shifts.reserve)
        assert reserves <= emp.max_reserve_shifts


def test_undesired_cells_stay_empty():
    base = generate_instance(GeneratorConfig(n_employees=6, days=7, skill_mode="uniform"), seed=2)
    vetoed = frozenset((e.id, d, s) for e in base.employees[:2] for d in (0, 1) for s in base.shifts.all_shifts)
    inst = ProblemInstance(
        employees=base.employees,
        days=base.days,
        skills=base.skills,
        shifts=base.shifts,
        demand=dict(base.demand),
        undesired=vetoed,
        history=dict(base.history),
        understaff_cost=base.understaff_cost,
        reserve_shortfall_cost=base.reserve_shortfall_cost,
    )
    roster = solve_rostering(inst, ReserveRequirement.constant(0, inst.days))
    for n in (0, 1):
        for d in (0, 1):
            assert roster.shift_at(n, d) is None


def test_history_blocks_forbidden_succession():
    inst = generate_instance(
        GeneratorConfig(n_employees=6, days=7, skill_mode="uniform", history_days=1), seed=4
    )
    roster = solve_rostering(inst, ReserveRequirement.constant(1, inst.days))
    for n, emp in enumerate(inst.employees):
        prior = inst.history_shift(emp.id, -1)
        first = roster.shift_at(n, 0)
        if prior is not None and first is not None:
            assert (prior, first[0]) not in inst.shifts.forbidden_successions


def test_cost_monotone_in_reserve_requirement(small_uniform_instance):
    inst = small_uniform_instance
    totals = []
    for level in (0, 1, 2):
        req = ReserveRequirement.constant(level, inst.days)
        totals.append(solve_rostering(inst, req).cost_breakdown.total)
    gap = SolveControls().gap
    for low, high in zip(totals, totals[1:]):
        assert high >= low - gap * (1 + abs(low))


def test_roster_round_trip(tmp_path, small_uniform_instance):
    inst = small_uniform_instance
    roster = solve_rostering(inst, ReserveRequirement.constant(1, inst.days))
    path = tmp_path / "roster.json"
    save_roster(roster, inst, path)
    loaded = load_roster(path, inst)
    assert loaded.assignment == dict(roster.assignment)
    assert loaded.cost_breakdown == roster.cost_breakdown


# --- conversion safety --------------------------------------------------


def test_solver_rosters_convert_safely(small_uniform_instance, small_hierarchical_instance):
    for inst in (small_uniform_instance, small_hierarchical_instance):
        roster = solve_rostering(inst, ReserveRequirement.constant(2, inst.days))
        assert check_conversion_safety(inst, roster) == []


def test_reserve_counts_toward_work_run():
    # a maximal working run followed by a reserve is already irregular on
    # its own; the conversion introduces nothing new, so the check passes
    emp = helpers.make_employee(max_consecutive_work=2, max_work_days=3, max_reserve_shifts=1)
    inst = ProblemInstance(
        employees=(emp,),
        days=3,
        skills=("a",),
        shifts=helpers.ONE_SHIFT,
        demand={},
    )
    roster = helpers.make_roster(
        inst, {(0, 0): ("day", "a"), (0, 1): ("day", "a"), (0, 2): ("res", "a")}
    )
    assert check_conversion_safety(inst, roster) == []


def test_unsafe_conversion_reported():
    emp = helpers.make_employee(max_consecutive_nights=1, max_work_days=3, max_reserve_shifts=1)
    inst = ProblemInstance(
        employees=(emp,),
        days=2,
        skills=("a",),
        shifts=helpers.TWO_SHIFT,  # night shift is "late"
        demand={},
    )
    roster = helpers.make_roster(inst, {(0, 0): ("late", "a"), (0, 1): ("res", "a")})
    violations = check_conversion_safety(inst, roster)
    assert violations, "converting the reserve into a second night must be flagged"
    assert any(v.kind == "night_run" and v.to_shift == "late" for v in violations)


def test_literal_formulation_can_be_unsafe_but_flag_protects():
    # under the protective default the same instance yields a roster whose
    # conversions are all safe; the literal formulation may not
    emp = helpers.make_employee(max_consecutive_nights=1, max_work_days=4, max_reserve_shifts=2)
    inst = ProblemInstance(
        employees=(emp, helpers.make_employee("e1", max_work_days=4)),
        days=2,
        skills=("a",),
        shifts=helpers.TWO_SHIFT,
        demand={(0, "late", "a"): 1, (1, "late", "a"): 1},
    )
    safe = solve_rostering(inst, ReserveRequirement((0, 1)), conversion_safe=True)
    assert check_conversion_safety(inst, safe) == []
