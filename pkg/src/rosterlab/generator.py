"""Random but reproducible problem instances for studies and tests.

Two skill modes:

* ``uniform``: one skill, everyone holds it, one wage level.
* ``hierarchical``: four employee types (head nurse, nurse, caretaker,
  trainee). Heads can stand in for nurses and caretakers, nurses for
  caretakers; trainees are a separate track. Wages fall with seniority.

Demand per day is drawn from a band expressed as a fraction of the
workforce, then split over the working shifts with fixed shares and, in
hierarchical mode, over skills proportional to the type mix.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .instance import Employee, ProblemInstance, ShiftCatalog
from .seeds import DOMAIN_GENERATOR, rng_for

WORKING_SHIFTS = ("early", "day", "late", "night")
RESERVE_SHIFT = "reserve"
NIGHT_SHIFT = "night"
# rest after a night: no working shift may directly follow one
DEFAULT_FORBIDDEN = (("night", "early"), ("night", "day"), ("night", "late"))

# type -> (skill, wage, qualified skills)
HIERARCHY = {
    "head": ("head", 100.0, ("head", "nurse", "caretaker")),
    "nurse": ("nurse", 70.0, ("nurse", "caretaker")),
    "caretaker": ("caretaker", 50.0, ("caretaker",)),
    "trainee": ("trainee", 30.0, ("trainee",)),
}
HIERARCHY_ORDER = ("head", "nurse", "caretaker", "trainee")
DEFAULT_TYPE_COUNTS = (5, 14, 10, 6)
UNIFORM_WAGE = 100.0

OVERTIME_FACTOR = 1.5
RESERVE_WAGE_FACTOR = 0.1
SHIFT_CHANGE_FACTOR = 1.0
RESERVE_CONVERSION_FACTOR = 0.1
DAYOFF_CHANGE_FACTOR = 1.5
UNDERSTAFF_WAGE_MULTIPLE = 5.0


# 28-day study values the work-day bounds scale from on other horizons
_REF_DAYS = 28
_REF_MIN_WORK = 16
_REF_MAX_WORK = 20
_REF_MAX_RESERVE = 4


@dataclass(frozen=True)
class GeneratorConfig:
    """Knobs for :func:`generate_instance`. Defaults give the study shape.

    The work-day and reserve bounds default to the 28-day study values
    scaled proportionally to ``days``, so shorter horizons stay feasible.
    """

    n_employees: int = 35
    days: int = 28
    skill_mode: str = "hierarchical"
    type_counts: tuple[int, ...] | None = None
    demand_band: tuple[float, float] = (0.70, 0.80)
    shift_shares: tuple[float, ...] = (0.30, 0.25, 0.30, 0.15)
    max_consecutive_work: int = 6
    max_consecutive_nights: int = 4
    min_work_days: int | None = None
    max_work_days: int | None = None
    max_reserve_shifts: int | None = None
    history_days: int = 0
    reserve_shortfall_cost: float = 1000.0

    def __post_init__(self) -> None:
        if self.skill_mode not in ("uniform", "hierarchical"):
            raise ValueError(f"unknown skill_mode {self.skill_mode!r}")
        if self.n_employees < 1:
            raise ValueError("n_employees must be positive")
        if self.days < 1:
            raise ValueError("days must be positive")
        lo, hi = self.demand_band
        if not (0.0 <= lo <= hi <= 1.5):
            raise ValueError("demand_band must satisfy 0 <= lo <= hi <= 1.5")
        if len(self.shift_shares) != len(WORKING_SHIFTS):
            raise ValueError(f"shift_shares needs {len(WORKING_SHIFTS)} entries")
        if abs(sum(self.shift_shares) - 1.0) > 1e-9:
            raise ValueError("shift_shares must sum to 1")
        if self.history_days < 0:
            raise ValueError("history_days must be non-negative")

    def _scaled(self, reference: int) -> int:
        return int(round(reference * self.days / _REF_DAYS))

    @property
    def effective_min_work_days(self) -> int:
        if self.min_work_days is not None:
            return self.min_work_days
        return self._scaled(_REF_MIN_WORK)

    @property
    def effective_max_work_days(self) -> int:
        if self.max_work_days is not None:
            return self.max_work_days
        return max(self._scaled(_REF_MAX_WORK), self.effective_min_work_days)

    @property
    def effective_max_reserve_shifts(self) -> int:
        if self.max_reserve_shifts is not None:
            return self.max_reserve_shifts
        return max(self._scaled(_REF_MAX_RESERVE), 1)


def max_workable_days(days: int, max_consecutive: int) -> int:
    """Most assigned days possible in a horizon given a consecutive-day cap."""
    if max_consecutive <= 0:
        return 0
    cycle = max_consecutive + 1
    return (days // cycle) * max_consecutive + min(days % cycle, max_consecutive)


def _type_counts(config: GeneratorConfig) -> tuple[int, ...]:
    if config.type_counts is not None:
        counts = tuple(int(c) for c in config.type_counts)
        if any(c < 0 for c in counts):
            raise ValueError("type_counts must be non-negative")
        if len(counts) != len(HIERARCHY_ORDER):
            raise ValueError(f"type_counts needs {len(HIERARCHY_ORDER)} entries")
        if sum(counts) != config.n_employees:
            raise ValueError(
                f"type_counts sum {sum(counts)} != n_employees {config.n_employees}"
            )
        return counts
    if config.n_employees == sum(DEFAULT_TYPE_COUNTS):
        return DEFAULT_TYPE_COUNTS
    return _largest_remainder(
        [c / sum(DEFAULT_TYPE_COUNTS) for c in DEFAULT_TYPE_COUNTS], config.n_employees
    )


def _largest_remainder(fractions: list[float], total: int) -> tuple[int, ...]:
    """Split ``total`` into integer parts proportional to ``fractions``."""
    raw = [f * total for f in fractions]
    parts = [int(r) for r in raw]
    short = total - sum(parts)
    order = sorted(range(len(raw)), key=lambda i: raw[i] - parts[i], reverse=True)
    for i in order[:short]:
        parts[i] += 1
    return tuple(parts)


def _make_employee(emp_id: str, skills: tuple[str, ...], wage: float,
                   config: GeneratorConfig) -> Employee:
    return Employee(
        id=emp_id,
        skills=skills,
        max_consecutive_work=config.max_consecutive_work,
        max_consecutive_nights=config.max_consecutive_nights,
        min_work_days=config.effective_min_work_days,
        max_work_days=config.effective_max_work_days,
        max_reserve_shifts=config.effective_max_reserve_shifts,
        wage=wage,
        overtime_cost=OVERTIME_FACTOR * wage,
        reserve_wage=RESERVE_WAGE_FACTOR * wage,
        shift_change_cost=SHIFT_CHANGE_FACTOR * wage,
        reserve_conversion_cost=RESERVE_CONVERSION_FACTOR * wage,
        dayoff_change_cost=DAYOFF_CHANGE_FACTOR * wage,
    )


def generate_instance(config: GeneratorConfig, seed: int) -> ProblemInstance:
    """Generate a valid instance. Same (config, seed) => identical output."""
    rng = rng_for(seed, DOMAIN_GENERATOR)

    if config.skill_mode == "uniform":
        skills: tuple[str, ...] = ("nurse",)
        employees = tuple(
            _make_employee(f"e{i:02d}", ("nurse",), UNIFORM_WAGE, config)
            for i in range(config.n_employees)
        )
        skill_split = {"nurse": 1.0}
    else:
        counts = _type_counts(config)
        skills = tuple(HIERARCHY[t][0] for t in HIERARCHY_ORDER)
        employees_list = []
        idx = 0
        for type_name, count in zip(HIERARCHY_ORDER, counts):
            _, wage, qualified = HIERARCHY[type_name]
            for _ in range(count):
                employees_list.append(
                    _make_employee(f"{type_name[0]}{idx:02d}", qualified, wage, config)
                )
                idx += 1
        employees = tuple(employees_list)
        total = sum(counts)
        skill_split = {
            HIERARCHY[t][0]: c / total for t, c in zip(HIERARCHY_ORDER, counts) if c > 0
        }

    # the horizon must leave room for the hard minimum of working days
    reachable = max_workable_days(
        config.days - (1 if config.history_days else 0), config.max_consecutive_work
    )
    if reachable < config.effective_min_work_days:
        raise ValueError(
            f"min_work_days {config.effective_min_work_days} unreachable: at most "
            f"{reachable} working days fit in {config.days} days with runs of "
            f"{config.max_consecutive_work}"
        )

    demand: dict[tuple[int, str, str], int] = {}
    lo, hi = config.demand_band
    for d in range(config.days):
        day_total = int(round(rng.uniform(lo, hi) * config.n_employees))
        per_shift = _largest_remainder(list(config.shift_shares), day_total)
        for s, m_shift in zip(WORKING_SHIFTS, per_shift):
            if m_shift == 0:
                continue
            split = _largest_remainder(list(skill_split.values()), m_shift)
            for k, m in zip(skill_split.keys(), split):
                if m > 0:
                    demand[(d, s, k)] = m
        if day_total > config.n_employees:
            warnings.warn(
                f"day {d}: demand {day_total} exceeds workforce {config.n_employees}",
                stacklevel=2,
            )

    history: dict[tuple[str, int], str] = {}
    if config.history_days > 0:
        # short, non-night tails so the horizon start stays unconstrained
        max_run = min(config.history_days, max(config.max_consecutive_work - 1, 0))
        day_shifts = [s for s in WORKING_SHIFTS if s != NIGHT_SHIFT]
        for emp in employees:
            if max_run == 0 or rng.random() < 0.5:
                continue
            run = int(rng.integers(1, max_run + 1))
            shift = day_shifts[int(rng.integers(0, len(day_shifts)))]
            for h in range(-run, 0):
                history[(emp.id, h)] = shift

    max_wage = max(e.wage for e in employees)
    return ProblemInstance(
        employees=employees,
        days=config.days,
        skills=skills,
        shifts=ShiftCatalog(
            working=WORKING_SHIFTS,
            reserve=RESERVE_SHIFT,
            night=NIGHT_SHIFT,
            forbidden_successions=DEFAULT_FORBIDDEN,
        ),
        demand=demand,
        undesired=frozenset(),
        history=history,
        understaff_cost=UNDERSTAFF_WAGE_MULTIPLE * max_wage,
        reserve_shortfall_cost=config.reserve_shortfall_cost,
    )
