"""Exact and numerical dynamics of a PT-symmetric two-level system driven by
synchronous modulations gamma(t) = R * nu(t)."""

from .core import (
    DELTA_CRIT,
    Cosine,
    Modulation,
    Regime,
    RegimeParams,
    SechSquared,
    TwoLevelState,
    hamiltonian,
    regime_of,
    tau,
)
from .exceptions import PTSyncError, SingularFitError, StepUnderflowError
from .analytic import (
    BranchCoefficients,
    amplitudes_analytic,
    fit_coefficients,
    propagate_analytic,
    sech2_final_populations,
)
from .numeric import IntegrationConfig, Trajectory, integrate_propagator, integrate_state
from .floquet import (
    FloquetModes,
    QuasienergyPair,
    floquet_modes_analytic,
    quasienergies_analytic,
    quasienergies_numeric,
)
from .analysis import (
    CpiBranch,
    CpiSolution,
    LocalizationResult,
    SweepRecord,
    cdt_scan,
    cpi_amplitude,
    cpi_curve,
    localization,
    populations,
    return_amplitude,
)

__version__ = "0.1.0"
