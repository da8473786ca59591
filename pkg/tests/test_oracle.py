from __future__ import annotations

import numpy as np
import pytest

from rosterlab import (
    GeneratorConfig,
    ProblemInstance,
    ReserveRequirement,
    SolveStatus,
    build_rerostering_model,
    build_rostering_model,
    extract_reroster,
    extract_roster,
    generate_instance,
    oracle_rerostering,
    oracle_rostering,
    solve,
)
from rosterlab.rostering import require_solution

import helpers


def test_t1_value(t1):
    cost, assignment = oracle_rostering(t1, ReserveRequirement((0,)))
    assert cost == pytest.approx(100.0)
    assert assignment == {(0, 0): ("day", "a")}


def test_t2_value(t2):
    cost, _ = oracle_rostering(t2, ReserveRequirement((1,)))
    assert cost == pytest.approx(110.0)


def test_unqualified_value():
    cost, assignment = oracle_rostering(
        helpers.t1_unqualified_instance(), ReserveRequirement((0,))
    )
    assert cost == pytest.approx(500.0)
    assert assignment == {}


def test_contradictory_hard_rules_reported():
    inst = helpers.t1_instance(min_work_days=1)
    blocked = ProblemInstance(
        employees=inst.employees,
        days=1,
        skills=inst.skills,
        shifts=inst.shifts,
        demand=dict(inst.demand),
        undesired=frozenset({("e0", 0, "day")}),
    )
    assert oracle_rostering(blocked, ReserveRequirement((0,))) is None


def test_enumeration_guard():
    inst = generate_instance(GeneratorConfig(n_employees=20, days=14), seed=0)
    with pytest.raises(ValueError, match="cap"):
        oracle_rostering(inst, ReserveRequirement.constant(0, inst.days))


def test_reroster_oracle_on_r1(r1):
    inst, orig = r1
    scen = helpers.scenario_from_pairs(2, 1, [(0, 0)])
    cost, assignment = oracle_rerostering(inst, orig.assignment, scen)
    assert cost == pytest.approx(110.0)
    assert assignment == {(1, 0): ("day", "a")}


def test_reroster_oracle_counts_change_costs(r1):
    inst, orig = r1
    scen = helpers.scenario_from_pairs(2, 1, [])
    cost, assignment = oracle_rerostering(inst, orig.assignment, scen)
    assert cost == pytest.approx(110.0)
    assert assignment == dict(orig.assignment)


def test_oracle_matches_solver_on_random_instances():
    # a quick slice of the full equivalence sweep in the acceptance suite
    rng = np.random.default_rng(7)
    agreements = 0
    for _ in range(10):
        inst, req = helpers.random_tiny_instance(rng)
        cs = bool(rng.random() < 0.5)
        expected = oracle_rostering(inst, req, conversion_safe=cs)
        out = solve(build_rostering_model(inst, req, conversion_safe=cs))
        if expected is None:
            assert out.status is SolveStatus.INFEASIBLE
            continue
        require_solution(out, "rostering")
        roster = extract_roster(inst, req, out)
        tol = 1e-4 * (1 + abs(expected[0]))
        assert abs(roster.cost_breakdown.total - expected[0]) <= tol
        agreements += 1

        absent = rng.random((inst.n_employees, inst.days)) < 0.25
        scen = helpers.scenario_from_pairs(
            inst.n_employees, inst.days, [(int(n), int(d)) for n, d in zip(*absent.nonzero())]
        )
        re_expected = oracle_rerostering(inst, roster.assignment, scen, conversion_safe=cs)
        re_out = solve(build_rerostering_model(inst, roster, scen, conversion_safe=cs))
        if re_expected is None:
            assert re_out.status is SolveStatus.INFEASIBLE
            continue
        require_solution(re_out, "rerostering")
        result = extract_reroster(inst, roster, scen, re_out)
        tol = 1e-4 * (1 + abs(re_expected[0]))
        assert abs(result.cost_breakdown.total - re_expected[0]) <= tol
    assert agreements >= 5
