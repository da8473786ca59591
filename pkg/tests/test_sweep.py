from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

import numpy as np
import pytest

from rosterlab.sweep import (
    DETAIL_COLUMNS,
    ML_POLICY,
    SUMMARY_COLUMNS,
    RatioGrid,
    SweepConfig,
    SweepError,
    compare_to_baseline,
    ratio_from_csv,
    run_sweep,
    write_ratio_csv,
)

from helpers import make_employee, t1_instance


def _rows(path: Path, drop: tuple[str, ...] = ("mean_solve_s", "solve_s")) -> list[dict]:
    with path.open(newline="") as fh:
        rows = [dict(r) for r in csv.DictReader(fh)]
    for row in rows:
        for col in drop:
            row.pop(col, None)
    return rows


@pytest.fixture(scope="module")
def sweep_run(small_uniform_instance, tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    config = SweepConfig(
        instance=small_uniform_instance,
        tpr_values=(0.0, 0.5, 1.0),
        rfpr_values=(0.0, 0.5, 1.0),
        rho=0.15,
        n_scenarios=3,
        baselines=(0, 1),
        master_seed=7,
    )
    result = run_sweep(config, out_dir=out)
    return config, result, out


def test_grid_and_baseline_cells(sweep_run):
    config, result, _ = sweep_run
    assert len(result.cells) == 9 + 2
    assert not result.truncated
    for cell in result.cells:
        assert len(cell.details) == config.n_scenarios
        assert all(r.solved for r in cell.details)
    assert result.find(ML_POLICY, 0.5, 0.5).policy == ML_POLICY
    # realized staffing: one day's reserve is priced out by the shortfall penalty
    assert result.find("fixed-1").reserves_per_day == pytest.approx(6 / 7)
    with pytest.raises(KeyError):
        result.find("fixed-9")


def test_summary_csv_shape(sweep_run):
    _, _, out = sweep_run
    with (out / "results.csv").open(newline="") as fh:
        header = next(csv.reader(fh))
    assert tuple(header) == SUMMARY_COLUMNS
    assert len(_rows(out / "results.csv")) == 11


def test_details_csv_shape(sweep_run):
    config, _, out = sweep_run
    with (out / "details.csv").open(newline="") as fh:
        header = next(csv.reader(fh))
    assert tuple(header) == DETAIL_COLUMNS
    rows = _rows(out / "details.csv")
    assert len(rows) == 11 * config.n_scenarios
    assert all(row["reroster_cost"] != "" for row in rows)


def test_summary_aggregates_match_detail_rows(sweep_run):
    _, _, out = sweep_run
    details: dict[tuple, list[dict]] = {}
    for row in _rows(out / "details.csv"):
        details.setdefault((row["policy"], row["tpr"], row["rfpr"]), []).append(row)
    for row in _rows(out / "results.csv"):
        group = details[(row["policy"], row["tpr"], row["rfpr"])]
        for summary_col, detail_col in (
            ("mean_reroster_cost", "reroster_cost"),
            ("pct_reserves_converted", "pct_reserves_converted"),
            ("working_shift_changes", "working_shift_changes"),
            ("dayoff_changes", "dayoff_changes"),
        ):
            mean = np.mean([float(g[detail_col]) for g in group])
            assert float(row[summary_col]) == pytest.approx(mean, rel=1e-12)


def test_zero_zero_cell_equals_no_reserve_baseline(sweep_run):
    # a classifier that never flags anyone books exactly zero reserves
    _, result, _ = sweep_run
    blind = result.find(ML_POLICY, 0.0, 0.0)
    fixed0 = result.find("fixed-0")
    assert blind.reserves_per_day == 0.0
    assert blind.rostering_cost == fixed0.rostering_cost
    assert blind.mean_reroster_cost == fixed0.mean_reroster_cost
    for a, b in zip(blind.details, fixed0.details):
        assert a.reroster_cost == b.reroster_cost


def test_manifest_contents(sweep_run):
    config, result, out = sweep_run
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["n_cells"] == len(result.cells)
    assert manifest["truncated"] is False
    assert manifest["master_seed"] == config.master_seed
    assert manifest["instance"]["employees"] == config.instance.n_employees
    assert manifest["grid"]["tpr_values"] == list(config.tpr_values)


def test_resume_from_partial_log(sweep_run, tmp_path):
    config, _, out = sweep_run
    lines = (out / "records.jsonl").read_text().splitlines()
    resume_dir = tmp_path / "resume"
    resume_dir.mkdir()
    (resume_dir / "records.jsonl").write_text("\n".join(lines[: len(lines) // 2]) + "\n")

    run_sweep(config, out_dir=resume_dir)

    assert _rows(resume_dir / "results.csv") == _rows(out / "results.csv")
    assert _rows(resume_dir / "details.csv") == _rows(out / "details.csv")
    resumed = (resume_dir / "records.jsonl").read_text().splitlines()
    assert len(resumed) == len(lines)  # no duplicate records


def test_rerun_over_complete_log_is_a_no_op(sweep_run):
    config, _, out = sweep_run
    before_log = (out / "records.jsonl").read_bytes()
    before_csv = (out / "results.csv").read_bytes()

    run_sweep(config, out_dir=out)

    # every key is cached, so even the solve timings come from the log
    assert (out / "records.jsonl").read_bytes() == before_log
    assert (out / "results.csv").read_bytes() == before_csv


def test_parallel_jobs_match_serial(sweep_run):
    config, result, _ = sweep_run
    parallel = run_sweep(dataclasses.replace(config, jobs=2))
    for serial_cell, parallel_cell in zip(result.cells, parallel.cells):
        a = serial_cell.summary_row()
        b = parallel_cell.summary_row()
        a.pop("mean_solve_s")
        b.pop("mean_solve_s")
        assert a == b


def test_time_budget_truncates(small_uniform_instance):
    config = SweepConfig(
        instance=small_uniform_instance,
        tpr_values=(0.5,),
        rfpr_values=(0.5,),
        rho=0.15,
        n_scenarios=1,
        baselines=(0,),
        master_seed=7,
        time_budget_s=1e-9,
    )
    result = run_sweep(config)
    assert result.truncated
    assert len(result.cells) == 1


def test_per_cell_truth_mode(small_uniform_instance):
    config = SweepConfig(
        instance=small_uniform_instance,
        tpr_values=(1.0,),
        rfpr_values=(0.0,),
        rho=0.15,
        n_scenarios=2,
        baselines=(),
        master_seed=3,
        truth_mode="per_cell",
    )
    result = run_sweep(config)
    (cell,) = result.cells
    assert len(cell.details) == 2
    assert all(r.solved for r in cell.details)


def test_compare_to_baseline(sweep_run):
    _, result, _ = sweep_run
    grid = compare_to_baseline(result, 1)
    assert grid.baseline_k == 1
    assert grid.baseline_cost == result.find("fixed-1").mean_reroster_cost
    assert grid.ratios.shape == (3, 3)
    assert np.isfinite(grid.ratios).all()
    assert (grid.ratios > 0).all()
    cell = result.find(ML_POLICY, 1.0, 0.0)
    assert grid.ratios[2, 0] == pytest.approx(cell.mean_reroster_cost / grid.baseline_cost)
    with pytest.raises(KeyError):
        compare_to_baseline(result, 9)


def test_ratio_from_csv_matches_in_memory(sweep_run, tmp_path):
    _, result, out = sweep_run
    from_csv = ratio_from_csv(out / "results.csv", 1)
    in_memory = compare_to_baseline(result, 1)
    assert from_csv.tpr_values == in_memory.tpr_values
    assert from_csv.rfpr_values == in_memory.rfpr_values
    np.testing.assert_allclose(from_csv.ratios, in_memory.ratios, rtol=1e-12)

    with pytest.raises(SweepError, match="fixed-9"):
        ratio_from_csv(out / "results.csv", 9)

    path = tmp_path / "ratios.csv"
    write_ratio_csv(from_csv, path)
    rows = _rows(path)
    assert len(rows) == 9
    assert float(rows[0]["ratio"]) == pytest.approx(from_csv.ratios[0, 0])


def test_unit_crossings_interpolate():
    grid = RatioGrid(
        baseline_k=1,
        baseline_cost=100.0,
        tpr_values=(0.0, 1.0),
        rfpr_values=(0.0, 1.0),
        ratios=np.array([[0.5, 1.5], [2.0, 3.0]]),
    )
    crossings = grid.unit_crossings()
    assert len(crossings) == 2
    assert crossings[0] == pytest.approx((1 / 3, 0.0))
    assert crossings[1] == pytest.approx((0.0, 0.5))

    flat = dataclasses.replace(grid, ratios=np.full((2, 2), 2.0))
    assert flat.unit_crossings() == []


@pytest.mark.parametrize(
    "kwargs",
    [
        {"tpr_values": (1.5,)},
        {"tpr_values": ()},
        {"rfpr_values": (-0.1,)},
        {"rho": 1.5},
        {"n_scenarios": 0},
        {"baselines": (-1,)},
        {"truth_mode": "weird"},
        {"jobs": 0},
        {"time_budget_s": 0.0},
    ],
)
def test_config_validation(small_uniform_instance, kwargs):
    with pytest.raises(ValueError):
        SweepConfig(instance=small_uniform_instance, **kwargs)


def test_pilot_failure_raises():
    # one employee who must work two days in a one-day horizon
    inst = t1_instance()
    broken = dataclasses.replace(
        inst,
        employees=(make_employee("a", "a", min_work_days=2, max_work_days=2),),
    )
    config = SweepConfig(instance=broken, tpr_values=(0.0,), rfpr_values=(0.0,))
    with pytest.raises(SweepError, match="pilot"):
        run_sweep(config)
