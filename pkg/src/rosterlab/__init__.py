"""Robust personnel rostering with simulated absence predictions.

Build rosters that hedge against absenteeism with convertible reserve
shifts, size the reserves from a simulated binary classifier, repair
rosters after absences realize, and sweep classifier operating points to
map when prediction-informed reserves beat fixed policies.
"""

from .instance import (
    AbsenceScenario,
    Employee,
    InstanceError,
    ProblemInstance,
    ReserveRequirement,
    ShiftCatalog,
    load_instance,
    load_scenario,
    save_instance,
    save_scenario,
)
from .generator import GeneratorConfig, generate_instance
from .mip import (
    MipError,
    MipModel,
    SolveControls,
    SolveOutcome,
    SolveStatus,
    VarKind,
    export_lp,
    parse_lp,
    solve,
)
from .rostering import (
    CostBreakdown,
    ConversionViolation,
    Roster,
    RosterError,
    build_rostering_model,
    check_conversion_safety,
    extract_roster,
    load_roster,
    save_roster,
    solve_rostering,
)
from .rerostering import (
    RerosterCostBreakdown,
    RerosterMetrics,
    RerosterResult,
    build_rerostering_model,
    change_counts,
    extract_reroster,
    solve_rerostering,
)
from .simulate import ClassifierProfile, PredictionOutcome, confusion_metrics, simulate_predictions
from .scenarios import baseline_policy, generate_scenario, generate_scenarios
from .sweep import (
    CellRecord,
    RatioGrid,
    ScenarioRecord,
    SweepConfig,
    SweepError,
    SweepResult,
    compare_to_baseline,
    ratio_from_csv,
    run_sweep,
    write_details_csv,
    write_ratio_csv,
    write_summary_csv,
)
from .oracle import oracle_rerostering, oracle_rostering

__version__ = "0.1.0"

__all__ = [
    "AbsenceScenario",
    "CellRecord",
    "ClassifierProfile",
    "ConversionViolation",
    "CostBreakdown",
    "Employee",
    "GeneratorConfig",
    "InstanceError",
    "MipError",
    "MipModel",
    "PredictionOutcome",
    "ProblemInstance",
    "RatioGrid",
    "RerosterCostBreakdown",
    "RerosterMetrics",
    "RerosterResult",
    "ReserveRequirement",
    "Roster",
    "RosterError",
    "ScenarioRecord",
    "ShiftCatalog",
    "SolveControls",
    "SolveOutcome",
    "SolveStatus",
    "SweepConfig",
    "SweepError",
    "SweepResult",
    "VarKind",
    "baseline_policy",
    "build_rerostering_model",
    "build_rostering_model",
    "change_counts",
    "check_conversion_safety",
    "compare_to_baseline",
    "confusion_metrics",
    "export_lp",
    "extract_reroster",
    "extract_roster",
    "generate_instance",
    "generate_scenario",
    "generate_scenarios",
    "load_instance",
    "load_roster",
    "load_scenario",
    "oracle_rerostering",
    "oracle_rostering",
    "parse_lp",
    "ratio_from_csv",
    "run_sweep",
    "save_instance",
    "save_roster",
    "save_scenario",
    "simulate_predictions",
    "solve",
    "solve_rerostering",
    "solve_rostering",
    "write_details_csv",
    "write_ratio_csv",
    "write_summary_csv",
    "__version__",
]
