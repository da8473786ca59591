"""Evaluation absence scenarios and fixed reserve policies.

Evaluation scenarios are plain Bernoulli absence draws, kept on a seed
domain disjoint from the prediction simulation so the evaluated worlds can
never leak into the classifier's truth. The fixed policy schedules a
constant number of reserves per day regardless of any prediction.
"""

from __future__ import annotations

from .instance import AbsenceScenario, ReserveRequirement
from .seeds import DOMAIN_SCENARIOS, derive_seed, rng_for


def generate_scenario(
    n_employees: int, n_days: int, rho: float, seed: int, index: int
) -> AbsenceScenario:
    """Evaluation scenario ``index``, reproducible in isolation."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"rho must be in [0, 1], got {rho}")
    if n_employees <= 0 or n_days <= 0:
        raise ValueError("n_employees and n_days must be positive")
    rng = rng_for(seed, DOMAIN_SCENARIOS, index)
    absent = rng.random((n_employees, n_days)) < rho
    return AbsenceScenario(
        absent=absent, seed=derive_seed(seed, DOMAIN_SCENARIOS, index)
    )


def generate_scenarios(
    n_employees: int, n_days: int, rho: float, count: int, seed: int
) -> list[AbsenceScenario]:
    """``count`` independent Bernoulli(rho) absence scenarios."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return [
        generate_scenario(n_employees, n_days, rho, seed, i) for i in range(count)
    ]


def baseline_policy(k: int, n_days: int) -> ReserveRequirement:
    """A constant requirement of ``k`` reserves on every day."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    return ReserveRequirement.constant(k, n_days)
