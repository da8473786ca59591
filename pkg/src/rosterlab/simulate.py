"""Simulate a binary absence classifier at a chosen performance point.

Each employee-day is an independent draw: the employee is absent with
probability ``event_rate``; a true absence is flagged with probability
``tpr`` (otherwise missed); a non-absence raises a potential false alarm
with probability ``rfpr``, which materializes with probability
``event_rate`` (so the effective false-positive rate on negatives is
``rfpr * event_rate``). Every flag, true or false, demands one reserve
shift on its day; the per-day totals form the reserve requirement the
rostering model receives. The simulated truth travels along with the
prediction so downstream evaluation can replay the same world.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .instance import AbsenceScenario, ReserveRequirement


@dataclass(frozen=True)
class ClassifierProfile:
    """Operating point of the simulated classifier.

    ``tpr`` is the sensitivity on true absences, ``rfpr`` the rescaled
    false-positive rate (potential false alarms per non-absence, actualized
    at the event rate), ``event_rate`` the per-employee-day absence
    probability.
    """

    tpr: float
    rfpr: float
    event_rate: float

    def __post_init__(self) -> None:
        for field_name in ("tpr", "rfpr", "event_rate"):
            value = getattr(self, field_name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"{field_name} must be a number, got {value!r}")
            if not 0.0 <= float(value) <= 1.0:
                raise ValueError(f"{field_name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class PredictionOutcome:
    """One simulated prediction pass over a scheduling period."""

    reserve_requirement: ReserveRequirement
    scenario: AbsenceScenario
    tallies: Mapping[str, int]
    seed: int

    def __post_init__(self) -> None:
        expected = {"tp", "fp", "fn", "tn"}
        if set(self.tallies) != expected:
            raise ValueError(f"tallies must have keys {sorted(expected)}")
        t = self.tallies
        if t["tp"] + t["fn"] != int(self.scenario.absent.sum()):
            raise ValueError("tp+fn must equal the number of simulated absences")
        cells = self.scenario.absent.size
        if t["tp"] + t["fn"] + t["fp"] + t["tn"] != cells:
            raise ValueError("tallies must sum to the number of employee-days")
        if self.reserve_requirement.total != t["tp"] + t["fp"]:
            raise ValueError("reserve requirement must total tp+fp")


def simulate_predictions(
    n_employees: int,
    n_days: int,
    profile: ClassifierProfile,
    seed: int,
) -> PredictionOutcome:
    """Draw one truth-plus-prediction world, deterministically from seed.

    Callers running many passes should hand each one its own seed derived
    via the seed-domain helpers, keeping streams order-independent.
    """
    if n_employees <= 0 or n_days <= 0:
        raise ValueError("n_employees and n_days must be positive")
    rng = np.random.default_rng(seed)
    shape = (n_employees, n_days)
    absent = rng.random(shape) < profile.event_rate
    flagged_if_absent = rng.random(shape) < profile.tpr
    potential_fp = rng.random(shape) < profile.rfpr
    actual_fp = rng.random(shape) < profile.event_rate

    tp_mask = absent & flagged_if_absent
    fp_mask = ~absent & potential_fp & actual_fp
    positives = tp_mask | fp_mask

    tallies = {
        "tp": int(tp_mask.sum()),
        "fn": int((absent & ~flagged_if_absent).sum()),
        "fp": int(fp_mask.sum()),
        "tn": int((~absent & ~fp_mask).sum()),
    }
    per_day = tuple(int(c) for c in positives.sum(axis=0))
    return PredictionOutcome(
        reserve_requirement=ReserveRequirement(per_day),
        scenario=AbsenceScenario(absent=absent, seed=seed),
        tallies=tallies,
        seed=seed,
    )


def confusion_metrics(tallies: Mapping[str, int]) -> dict[str, float | None]:
    """Sensitivity, specificity and false-positive rate from raw tallies.

    A ratio whose denominator is zero is returned as None rather than NaN.
    """
    for key in ("tp", "fp", "fn", "tn"):
        if key not in tallies:
            raise ValueError(f"missing tally {key!r}")
        if tallies[key] < 0:
            raise ValueError(f"tally {key!r} is negative")
    tp, fp, fn, tn = tallies["tp"], tallies["fp"], tallies["fn"], tallies["tn"]
    tpr = tp / (tp + fn) if tp + fn else None
    specificity = tn / (tn + fp) if tn + fp else None
    fpr = 1.0 - specificity if specificity is not None else None
    return {"tpr": tpr, "fpr": fpr, "specificity": specificity}
