"""Entanglement measures and teleportation fidelities for GHZ/W-mixture channels.

Four ingredients: dense one-to-four-qubit linear algebra (`qcore`),
closed-form measures including the piecewise mixture tangle
(`entanglement`), a decomposition-search upper bound on convex-roof
measures (`convexroof`), a teleportation simulator with explicit circuit
unitaries (`teleport`), and the decohered W state example (`noisychan`).
"""

from .convexroof import (
    Ensemble,
    RoofConfig,
    RoofResult,
    ensemble_from_mixing,
    minimize_roof,
    optimal_ghzw_ensemble,
)
from .entanglement import (
    Cut,
    GhzwMixtureParams,
    MeasureKind,
    MeasureValue,
    c_abc_mixture,
    channel_mixture_state,
    concurrence_pure2,
    concurrence_wootters,
    cut_concurrence_pure,
    eof_from_concurrence,
    ghzw_params,
    ghzw_pure_tangle,
    ghzw_superposition,
    groverian_from_concurrence,
    monogamy_residual,
    reduced_concurrences_qc,
    three_tangle_ghzw,
    three_tangle_pure,
)
from .noisychan import ChannelReport, NoiseParams, channel_report, epsilon_x_w, noise_params
from .qcore import (
    ComplexMatrix,
    DensityMatrix,
    DensityReport,
    DensityValidationError,
    PureState,
    density_report,
    ghz_state,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    load_state_file,
    partial_trace,
    random_density_matrix,
    random_pure_state,
    save_state_file,
    sqrt_psd,
    validate_density,
    w_state,
)
from .teleport import (
    CriticalValues,
    QuadratureConfig,
    SchemeKind,
    TeleportReport,
    TeleportScheme,
    avg_fidelity,
    avg_fidelity_closed,
    channel_state,
    critical_values,
    fidelity_ghz_closed,
    fidelity_w_closed,
    input_state,
    scheme_unitary,
    teleport_output,
)
from .tolerances import Tolerances, get_default, set_default

__version__ = "0.1.0"

__all__ = [
    "ChannelReport",
    "ComplexMatrix",
    "CriticalValues",
    "Cut",
    "DensityMatrix",
    "DensityReport",
    "DensityValidationError",
    "Ensemble",
    "GhzwMixtureParams",
    "MeasureKind",
    "MeasureValue",
    "NoiseParams",
    "PureState",
    "QuadratureConfig",
    "RoofConfig",
    "RoofResult",
    "SchemeKind",
    "TeleportReport",
    "TeleportScheme",
    "Tolerances",
    "avg_fidelity",
    "avg_fidelity_closed",
    "c_abc_mixture",
    "channel_mixture_state",
    "channel_report",
    "channel_state",
    "concurrence_pure2",
    "concurrence_wootters",
    "critical_values",
    "cut_concurrence_pure",
    "density_report",
    "ensemble_from_mixing",
    "eof_from_concurrence",
    "epsilon_x_w",
    "fidelity_ghz_closed",
    "fidelity_w_closed",
    "get_default",
    "ghz_state",
    "ghzw_params",
    "ghzw_pure_tangle",
    "ghzw_superposition",
    "groverian_from_concurrence",
    "hermitian_eigensystem",
    "hermitian_eigenvalues",
    "input_state",
    "kron",
    "load_state_file",
    "minimize_roof",
    "monogamy_residual",
    "noise_params",
    "optimal_ghzw_ensemble",
    "partial_trace",
    "random_density_matrix",
    "random_pure_state",
    "reduced_concurrences_qc",
    "save_state_file",
    "scheme_unitary",
    "set_default",
    "sqrt_psd",
    "teleport_output",
    "three_tangle_ghzw",
    "three_tangle_pure",
    "validate_density",
    "w_state",
]
