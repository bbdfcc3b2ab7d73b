"""
Ratbound: sufficient-condition boundedness analysis for systems of two rational
difference equations.
"""

__version__ = "0.1.0"

from .comparability import (
    ComparabilityFact,
    ComparabilityFacts,
    Orientation,
    Provenance,
    Rigor,
    Shape,
    assert_fact,
    derive_comparability,
)
from .errors import (
    DocumentError,
    PreconditionError,
    RatboundError,
    SystemValidationError,
    TableError,
)
from .eta import EtaDecision, EtaQuery, eta_decide, eta_oracle
from .loader import SystemDocument, load_system, parse_system, serialize_system
from .model import IndexSet, RationalSystem, index_sets, swap_system, validate_system
from .results import format_report_text, report_to_dict, save_report, save_trajectory_csv
from .simulator import (
    InitialConditions,
    SimulationMode,
    SimulationSettings,
    Trajectory,
    empirical_bound,
    run_trials,
    simulate,
    validate_certificate,
)
from .theorems import (
    CURRENT_TABLE_VERSION,
    TABLE_REGISTRY,
    AnalysisReport,
    BoundednessFact,
    TheoremTable,
    analyze,
    explain,
    get_default_table,
)
from .warmup import warmup_jit

__all__ = [
    # Model
    "RationalSystem",
    "IndexSet",
    "index_sets",
    "swap_system",
    "validate_system",
    # Eta conditions
    "EtaQuery",
    "EtaDecision",
    "eta_decide",
    "eta_oracle",
    # Comparability
    "ComparabilityFact",
    "ComparabilityFacts",
    "Shape",
    "Orientation",
    "Provenance",
    "Rigor",
    "assert_fact",
    "derive_comparability",
    # Theorems
    "AnalysisReport",
    "BoundednessFact",
    "TheoremTable",
    "TABLE_REGISTRY",
    "CURRENT_TABLE_VERSION",
    "get_default_table",
    "analyze",
    "explain",
    # Simulation
    "InitialConditions",
    "SimulationMode",
    "SimulationSettings",
    "Trajectory",
    "simulate",
    "empirical_bound",
    "validate_certificate",
    "run_trials",
    "warmup_jit",
    # IO
    "SystemDocument",
    "load_system",
    "parse_system",
    "serialize_system",
    "format_report_text",
    "report_to_dict",
    "save_report",
    "save_trajectory_csv",
    # Errors
    "RatboundError",
    "PreconditionError",
    "SystemValidationError",
    "DocumentError",
    "TableError",
]
