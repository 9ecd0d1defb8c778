"""One-clean-qubit (DQC1) trace-estimation simulator and analysis toolkit."""

__version__ = "0.1.0"

from .qmath import (
    DensityMatrix,
    HermitianObservable,
    eigvals_hermitian,
    expectation,
    fidelity,
    partial_trace,
    pauli_observable,
    pure_state,
    repartition,
    tensor,
    vn_entropy,
)
from .dqc1 import (
    Dqc1Config,
    UnitaryMatrix,
    build_input,
    circuit_output_state,
    exact_expectations,
    normalized_trace,
    output_state,
    reduced_control,
    z_theta,
)
from .sampling import (
    MeasurementRecord,
    ShotPlan,
    chi2_reduced,
    chi2_report,
    estimate_trace,
    poisson_counts,
    rng_stream,
    sample_expectation,
    shots_required,
)
from .correlations import (
    MEASURE_CONTROL,
    MEASURE_REGISTER,
    BlochDirection,
    CorrelationReport,
    concurrence,
    correlation_report,
    discord,
    min_conditional_entropy,
    mutual_information,
    tangle,
)
from .clifford import (
    CliffordCircuit,
    Gate,
    SignedPauliString,
    conjugate_gate,
    dqc1_clifford_expectations,
    propagate,
    random_clifford_circuit,
    verify_zero_discord,
)
from .tomography import (
    ReconstructionError,
    TomographyRun,
    TomographySetting,
    all_settings,
    linear_estimate,
    minimal_settings,
    noiseless_run,
    psd_project,
    reconstruct,
    simulate_counts,
)

__all__ = [
    "DensityMatrix", "HermitianObservable", "eigvals_hermitian", "expectation",
    "fidelity", "partial_trace", "pauli_observable", "pure_state", "repartition",
    "tensor", "vn_entropy",
    "Dqc1Config", "UnitaryMatrix", "build_input", "circuit_output_state",
    "exact_expectations", "normalized_trace", "output_state", "reduced_control",
    "z_theta",
    "MeasurementRecord", "ShotPlan", "chi2_reduced", "chi2_report",
    "estimate_trace", "poisson_counts", "rng_stream", "sample_expectation",
    "shots_required",
    "MEASURE_CONTROL", "MEASURE_REGISTER", "BlochDirection", "CorrelationReport",
    "concurrence", "correlation_report", "discord", "min_conditional_entropy",
    "mutual_information", "tangle",
    "CliffordCircuit", "Gate", "SignedPauliString", "conjugate_gate",
    "dqc1_clifford_expectations", "propagate", "random_clifford_circuit",
    "verify_zero_discord",
    "ReconstructionError", "TomographyRun", "TomographySetting", "all_settings",
    "linear_estimate", "minimal_settings", "noiseless_run", "psd_project",
    "reconstruct", "simulate_counts",
]
