"""Solitons of coupled Gross-Pitaevskii equations with PT-symmetric Scarf-II potentials.

Exact bright-soliton construction, Fourier-collocation linear stability,
RK4 dynamics with seeded perturbations and adiabatic parameter ramps,
and a CLI that writes machine-readable results.
"""

__version__ = "0.1.0"

from .errors import (
    BlowUpError,
    ConfigError,
    ConvergenceFailure,
    InconsistentConstraints,
    InvalidValue,
    MissingField,
    NoRealAmplitude,
    PtgpeError,
    StabilityGuardError,
    UnknownKey,
)
from .grid import GridSpec, diff_matrix_2, make_grid, spectral_derivative
from .model import (
    AmplitudeMode,
    EqualAmplitudes,
    FixedA1,
    ModelParams,
    SolitonSolution,
    poynting,
    power,
    sample_soliton,
    scarf_potential,
    solve_amplitudes,
    stationary_residual,
)
from .stability import (
    MapResult,
    StabilityMatrix,
    StabilityReport,
    assemble_stability_matrix,
    classify,
    eigenspectrum,
    scan_map,
    stability_report,
    zero_mode_residuals,
)
from .evolution import (
    EvolutionTrace,
    FieldState,
    ParameterSchedule,
    ScheduledParam,
    Snapshot,
    count_peaks,
    evolve,
    perturb,
    rhs,
    rk4_step,
    schedule_value,
)

__all__ = [
    "__version__",
    # errors
    "PtgpeError",
    "NoRealAmplitude",
    "InconsistentConstraints",
    "ConvergenceFailure",
    "StabilityGuardError",
    "BlowUpError",
    "ConfigError",
    "MissingField",
    "InvalidValue",
    "UnknownKey",
    # grid
    "GridSpec",
    "make_grid",
    "spectral_derivative",
    "diff_matrix_2",
    # model
    "ModelParams",
    "AmplitudeMode",
    "FixedA1",
    "EqualAmplitudes",
    "SolitonSolution",
    "scarf_potential",
    "solve_amplitudes",
    "sample_soliton",
    "stationary_residual",
    "power",
    "poynting",
    # stability
    "StabilityMatrix",
    "StabilityReport",
    "MapResult",
    "assemble_stability_matrix",
    "eigenspectrum",
    "classify",
    "zero_mode_residuals",
    "stability_report",
    "scan_map",
    # evolution
    "FieldState",
    "ScheduledParam",
    "ParameterSchedule",
    "EvolutionTrace",
    "Snapshot",
    "schedule_value",
    "rhs",
    "rk4_step",
    "perturb",
    "evolve",
    "count_peaks",
]
