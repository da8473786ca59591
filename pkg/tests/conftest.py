from __future__ import annotations

import pytest

from rosterlab import GeneratorConfig, ReserveRequirement, generate_instance

import helpers


@pytest.fixture
def t1():
    return helpers.t1_instance()


@pytest.fixture
def t2():
    return helpers.t2_instance()


@pytest.fixture
def r1():
    inst = helpers.r1_instance()
    return inst, helpers.r1_original(inst)


@pytest.fixture(scope="session")
def small_uniform_instance():
    """Generated 6x7 uniform instance reused by solver-level tests."""
    return generate_instance(GeneratorConfig(n_employees=6, days=7, skill_mode="uniform"), seed=42)


@pytest.fixture(scope="session")
def small_hierarchical_instance():
    return generate_instance(
        GeneratorConfig(n_employees=8, days=7, skill_mode="hierarchical"), seed=42
    )


@pytest.fixture
def zero_reserve():
    def make(days: int) -> ReserveRequirement:
        return ReserveRequirement.constant(0, days)

    return make
