from __future__ import annotations

import numpy as np
import pytest

from rosterlab import (
    MipError,
    MipModel,
    ReserveRequirement,
    SolveControls,
    SolveStatus,
    VarKind,
    build_rostering_model,
    export_lp,
    parse_lp,
    solve,
)
from rosterlab.bnb import MAX_BINARIES, solve_by_enumeration

import helpers


def one_var_model() -> MipModel:
    m = MipModel("demo")
    m.add_var("x", VarKind.INTEGER)
    m.add_constraint("c0", [("x", 1.0)], ">=", 3.0)
    m.set_objective([("x", 1.0)])
    return m


def test_single_integer_variable():
    out = solve(one_var_model())
    assert out.status is SolveStatus.OPTIMAL
    assert out.objective_value == pytest.approx(3.0)
    assert out.value("x") == pytest.approx(3.0)


def test_contradictory_bounds_infeasible():
    m = MipModel()
    m.add_var("x", VarKind.CONTINUOUS)  # implies x >= 0
    m.add_constraint("c0", [("x", 1.0)], "<=", -1.0)
    out = solve(m)
    assert out.status is SolveStatus.INFEASIBLE
    assert not out.has_solution
    with pytest.raises(MipError):
        out.value("x")


def test_duplicate_variable_rejected():
    m = MipModel()
    m.add_var("x", VarKind.BINARY)
    with pytest.raises(MipError, match="duplicate"):
        m.add_var("x", VarKind.BINARY)


def test_duplicate_constraint_rejected():
    m = MipModel()
    m.add_var("x", VarKind.BINARY)
    m.add_constraint("c", [("x", 1.0)], "<=", 1.0)
    with pytest.raises(MipError, match="duplicate"):
        m.add_constraint("c", [("x", 1.0)], "<=", 1.0)


def test_unknown_sense_rejected():
    m = MipModel()
    m.add_var("x", VarKind.BINARY)
    with pytest.raises(MipError, match="sense"):
        m.add_constraint("c", [("x", 1.0)], "<", 1.0)


def test_empty_constraint_rejected():
    m = MipModel()
    m.add_var("x", VarKind.BINARY)
    with pytest.raises(MipError, match="no terms"):
        m.add_constraint("c", [], "<=", 1.0)


def test_unknown_variable_reference_rejected():
    m = MipModel()
    m.add_var("x", VarKind.BINARY)
    with pytest.raises(MipError, match="unknown variable"):
        m.add_constraint("c", [("y", 1.0)], "<=", 1.0)


def test_empty_model_rejected():
    with pytest.raises(MipError, match="no variables"):
        solve(MipModel())


def test_unknown_backend_rejected():
    with pytest.raises(MipError, match="backend"):
        solve(one_var_model(), backend="cplex")


def test_objective_accumulates_repeated_terms():
    m = MipModel()
    m.add_var("x", VarKind.CONTINUOUS)
    m.set_objective([("x", 1.0), ("x", 2.0)])
    assert m.objective_vector().tolist() == [3.0]


def test_solve_controls_validation():
    with pytest.raises(ValueError):
        SolveControls(gap=-1e-9)
    with pytest.raises(ValueError):
        SolveControls(time_limit=0.0)


def test_stats_counts_kinds():
    m = MipModel()
    m.add_var("b", VarKind.BINARY)
    m.add_var("i", VarKind.INTEGER)
    m.add_var("c", VarKind.CONTINUOUS)
    m.add_constraint("r", [("b", 1.0)], "<=", 1.0)
    assert m.stats() == {
        "variables": 3,
        "binary": 1,
        "integer": 1,
        "continuous": 1,
        "constraints": 1,
    }


# --- LP text ----------------------------------------------------------


def test_export_has_sections():
    text = export_lp(one_var_model())
    assert "Minimize" in text
    assert "Subject To" in text
    assert text.endswith("End\n") or text.endswith("End")


def test_export_is_deterministic():
    assert export_lp(one_var_model()) == export_lp(one_var_model())


def test_export_parse_fixpoint():
    # identical up to the model-name comment on the first line
    text = export_lp(one_var_model())
    again = export_lp(parse_lp(text))
    assert again.splitlines()[1:] == text.splitlines()[1:]


def test_parse_handwritten_lp():
    text = """\\ sample
Minimize
 obj: 2 x + 3 y
Subject To
 c0: x + y >= 2
Bounds
 x <= 4
Binary
 y
End
"""
    m = parse_lp(text)
    out = solve(m)
    assert out.status is SolveStatus.OPTIMAL
    assert out.objective_value == pytest.approx(4.0)  # x=2, y=0


def test_resolve_is_reproducible():
    m = one_var_model()
    a = solve(m)
    b = solve(m)
    assert a.objective_value == b.objective_value
    assert a.status is b.status


# --- enumeration backend ----------------------------------------------


def test_enumeration_cap():
    m = MipModel()
    for i in range(MAX_BINARIES + 1):
        m.add_var(f"b{i}", VarKind.BINARY)
    m.add_constraint("c", [("b0", 1.0)], "<=", 1.0)
    m.set_objective([("b0", 1.0)])
    with pytest.raises(MipError, match="enumeration cap"):
        solve_by_enumeration(m)


def test_enumeration_rejects_general_integers():
    with pytest.raises(MipError, match="binary and continuous"):
        solve_by_enumeration(one_var_model())


def _random_model(rng: np.random.Generator) -> MipModel:
    m = MipModel("rand")
    n_bin = int(rng.integers(1, 7))
    n_cont = int(rng.integers(0, 3))
    names = [f"b{i}" for i in range(n_bin)] + [f"c{i}" for i in range(n_cont)]
    for i in range(n_bin):
        m.add_var(f"b{i}", VarKind.BINARY)
    for i in range(n_cont):
        m.add_var(f"c{i}", VarKind.CONTINUOUS)
    for ci in range(int(rng.integers(1, 5))):
        picks = rng.choice(len(names), size=rng.integers(1, len(names) + 1), replace=False)
        terms = [(names[int(p)], float(rng.integers(-3, 4)) or 1.0) for p in picks]
        sense = ("<=", ">=", "==")[int(rng.integers(0, 3))]
        rhs = float(rng.integers(-2, 5))
        m.add_constraint(f"r{ci}", terms, sense, rhs)
    # positive objective weights keep the region bounded below
    m.set_objective([(nm, float(rng.integers(1, 5))) for nm in names])
    return m


def test_backends_agree_on_random_models():
    rng = np.random.default_rng(2024)
    statuses = set()
    for _ in range(40):
        m = _random_model(rng)
        a = solve(m, backend="highs")
        b = solve(m, backend="enumerate")
        statuses.add(a.status)
        if a.status is SolveStatus.INFEASIBLE:
            assert b.status is SolveStatus.INFEASIBLE
        else:
            assert a.status is SolveStatus.OPTIMAL
            assert b.status is SolveStatus.OPTIMAL
            assert a.objective_value == pytest.approx(b.objective_value, abs=1e-6)
    # the draw must exercise both outcomes for this test to mean anything
    assert SolveStatus.OPTIMAL in statuses and SolveStatus.INFEASIBLE in statuses


# --- dual-route check on a real model ----------------------------------


def test_rostering_model_survives_lp_round_trip(t2):
    model = build_rostering_model(t2, ReserveRequirement((1,)))
    direct = solve(model, backend="highs")
    assert direct.status is SolveStatus.OPTIMAL
    assert direct.objective_value == pytest.approx(110.0)

    reparsed = parse_lp(export_lp(model))
    independent = solve_by_enumeration(reparsed)
    assert independent.status is SolveStatus.OPTIMAL
    assert independent.objective_value == pytest.approx(110.0, abs=1e-6)


def test_binaries_come_back_integral(t2):
    model = build_rostering_model(t2, ReserveRequirement((1,)))
    out = solve(model)
    for name, kind in zip(model.var_names, model.var_kinds):
        if kind is VarKind.BINARY:
            assert out.values[name] in (0.0, 1.0)
