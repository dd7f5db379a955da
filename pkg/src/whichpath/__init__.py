"""Quantitative trade-off between state distinguishability and interference.

The package measures, for a pair of pure states under a projective
measurement, how alike their outcome statistics are (the overlap ``U``) and
how much interference contrast their superpositions can show (the power
``I``), verifies ``U >= I`` and its refinements numerically, builds most
reliable two-hypothesis tests with error bounds, models a two-beam
interferometer with an energy-exchanging path marker, and analyzes a
truncated phase operator with its number-spread statistics.
"""

from .hilbert import (
    ATOL_OPERATOR,
    ATOL_VECTOR,
    MAX_TENSOR_DIM,
    IncompatibleMeasurementsError,
    MeasurementValidation,
    Operator,
    ProjectiveMeasurement,
    StateVector,
    ValidationIssue,
    basis_state,
    identity_operator,
    inner_product,
    max_abs_entry,
    measurement_from_blocks,
    measurement_from_columns,
    projector_onto,
    refine,
    standard_basis_measurement,
    tensor,
    trivial_measurement,
    validate_measurement,
)
from .interferometer import (
    FieldState,
    IdealFringeReport,
    InterferometerScenario,
    TruncationOverflowError,
    beam_measurement,
    build_paths,
    ideal_fringe_check,
    indistinguishability_closed_form,
    interference_power_closed_form,
    photon_number_measurement,
    position_spin_measurement,
    superposed_state,
)
from .measures import (
    ChainReport,
    FringeScan,
    NonOrthogonalStatesWarning,
    OutcomeDistribution,
    OutcomeRecord,
    SuperpositionSpec,
    TradeoffReport,
    bhattacharyya,
    chain_report,
    fringe_scan,
    indistinguishability,
    interference_power,
    outcome_distribution,
    superposition_probability,
    tradeoff_report,
    visibility,
)
from .nptesting import (
    ErrorBoundReport,
    NPTest,
    TestErrors,
    best_np_test,
    likelihood_ratios,
    np_test_errors,
    verify_bounds,
)
from .phasefield import (
    CounterexampleReport,
    PhaseStats,
    RelationReport,
    counterexample_analysis,
    phase_operator,
    phase_stats,
    uncertainty_relation_check,
)
from .scenario import (
    DistributionPair,
    PairScenario,
    ScenarioError,
    load_scenario,
    parse_scenario,
)
from .verify import phase_candidate_sweep, run_verification

__all__ = [
    "ATOL_OPERATOR",
    "ATOL_VECTOR",
    "MAX_TENSOR_DIM",
    "ChainReport",
    "CounterexampleReport",
    "DistributionPair",
    "ErrorBoundReport",
    "FieldState",
    "FringeScan",
    "IdealFringeReport",
    "IncompatibleMeasurementsError",
    "InterferometerScenario",
    "MeasurementValidation",
    "NPTest",
    "NonOrthogonalStatesWarning",
    "Operator",
    "OutcomeDistribution",
    "OutcomeRecord",
    "PairScenario",
    "PhaseStats",
    "ProjectiveMeasurement",
    "RelationReport",
    "ScenarioError",
    "StateVector",
    "SuperpositionSpec",
    "TestErrors",
    "TradeoffReport",
    "TruncationOverflowError",
    "ValidationIssue",
    "basis_state",
    "beam_measurement",
    "best_np_test",
    "bhattacharyya",
    "build_paths",
    "chain_report",
    "counterexample_analysis",
    "fringe_scan",
    "ideal_fringe_check",
    "identity_operator",
    "indistinguishability",
    "indistinguishability_closed_form",
    "inner_product",
    "interference_power",
    "interference_power_closed_form",
    "likelihood_ratios",
    "load_scenario",
    "max_abs_entry",
    "measurement_from_blocks",
    "measurement_from_columns",
    "np_test_errors",
    "outcome_distribution",
    "parse_scenario",
    "phase_candidate_sweep",
    "phase_operator",
    "phase_stats",
    "photon_number_measurement",
    "position_spin_measurement",
    "projector_onto",
    "refine",
    "run_verification",
    "standard_basis_measurement",
    "superposed_state",
    "superposition_probability",
    "tensor",
    "tradeoff_report",
    "trivial_measurement",
    "uncertainty_relation_check",
    "validate_measurement",
    "verify_bounds",
    "visibility",
]

__version__ = "0.1.0"
