"""Measurement channels, entropic reality and information quantifiers,
unitary dilations, and runnable scenarios on finite-dimensional systems."""

from .channels import (
    DephasingMap,
    MonitoringMap,
    RevealedMeasurement,
    apply_collapse,
    apply_dephasing,
    apply_monitoring,
    apply_weak_collapse,
    compose_weak_collapses,
    iterate_monitoring,
    monitoring_difference,
    monitoring_kraus,
    outcome_probability,
    unrevealed_average,
    weak_collapse_difference,
)
from .dilation import (
    ComplementarityLedger,
    DilationUnitary,
    TripartiteSSAReport,
    apply_dilation,
    build_dilation,
    complementarity_ledger,
    dilated_channel_output,
    tripartite_ssa_experiment,
)
from .errors import (
    ConfigParseError,
    DegenerateGram,
    DimensionMismatch,
    DimensionOverflow,
    InvalidBipartition,
    InvalidRank,
    InvalidSubsystemIndex,
    NotADistribution,
    NotARealityState,
    NotHermitian,
    NotPositive,
    NotUnbiased,
    PacketTooWide,
    QRealityError,
    TraceNotOne,
    UnknownScenario,
    ZeroProbabilityOutcome,
)
from .quantifiers import (
    InformationLedger,
    IrrealityBreakdown,
    RealityChangeReport,
    generated_irreality,
    information,
    information_ledger,
    irreality,
    irreality_decomposition,
    monotonicity_check,
    reality_change,
)
from .scenarios import (
    Assertion,
    DetectorArraySpec,
    ScatteringParams,
    ScenarioResult,
    apparatus_reality_check,
    detector_array_state,
    measurement_entropy_bookkeeping,
    scattering_overlaps,
    scattering_state,
    two_qubit_information_flow,
)
from .states import (
    DEFAULT_TOLERANCES,
    MAX_TOTAL_DIMENSION,
    DensityMatrix,
    DimsSpec,
    ObservableSpec,
    PureState,
    ToleranceConfig,
    binary_entropy,
    computational_basis,
    embed_operator,
    fourier_basis,
    observable,
    partial_trace,
    pure_to_density,
    random_observable,
    random_pure_state,
    random_state,
    random_unitary,
    shannon_entropy,
    tensor,
    trace_distance,
    validate_pure_state,
    validate_state,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
