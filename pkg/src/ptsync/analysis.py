"""Observables built on the propagators: populations, CDT localization and
the pulse areas giving complete population inversion (CPI) or return."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial

import numpy as np

from .analytic import amplitudes_analytic
from .core import Cosine, Modulation, Regime, TwoLevelState, regime_of
from .exceptions import PTSyncError
from .numeric import IntegrationConfig, integrate_state


def populations(state: TwoLevelState) -> tuple[float, float, float]:
    p1 = abs(state.c1) ** 2
    p2 = abs(state.c2) ** 2
    return p1, p2, p1 + p2


@dataclass(frozen=True)
class LocalizationResult:
    value: float
    window: tuple[float, float]
    samples_per_period: int


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a scan: the varied parameter and what was measured."""

    parameter: str
    value: float
    observables: dict = field(default_factory=dict)

    def as_row(self) -> dict:
        return {self.parameter: self.value, **self.observables}


def localization(
    mod: Modulation,
    initial: TwoLevelState | None = None,
    window_periods: int = 10,
    cfg: IntegrationConfig | None = None,
    samples_per_period: int = 200,
    method: str = "analytic",
) -> LocalizationResult:
    """Minimum of ``P1/P`` over ``window_periods`` drive periods.

    ``method`` selects the closed-form propagator or the RK4 integrator.
    """
    if not isinstance(mod.family, Cosine):
        raise TypeError("localization is defined for the periodic drive")
    if window_periods < 0 or samples_per_period < 1:
        raise ValueError("window_periods must be >= 0 and samples_per_period >= 1")
    initial = initial or TwoLevelState(1.0, 0.0, 0.0)
    t0 = initial.t
    t1 = t0 + window_periods * mod.period
    times = np.linspace(t0, t1, window_periods * samples_per_period + 1)
    if method == "analytic":
        amps = amplitudes_analytic(initial, mod, times)
    elif method == "numeric":
        amps = integrate_state(initial, mod, t1, cfg, t_eval=times).amplitudes
    else:
        raise ValueError(f"unknown method {method!r}")
    p = np.abs(amps) ** 2
    total = p.sum(axis=1)
    if np.any(total <= 0) or not np.all(np.isfinite(total)):
        raise PTSyncError("total population vanished or overflowed inside the window")
    value = float(np.min(p[:, 0] / total))
    return LocalizationResult(value, (float(t0), float(t1)), samples_per_period)


def _cdt_point(x, template, vary, initial, window_periods, samples_per_period, method, cfg):
    mod = template.replace(**{vary: x})
    res = localization(mod, initial, window_periods, cfg, samples_per_period, method)
    return SweepRecord(vary, float(x), {"localization": res.value})


def cdt_scan(
    template: Modulation,
    vary: str,
    grid,
    initial: TwoLevelState | None = None,
    window_periods: int = 10,
    samples_per_period: int = 200,
    method: str = "analytic",
    cfg: IntegrationConfig | None = None,
    workers: int = 1,
) -> list[SweepRecord]:
    """Localization across a grid of ``omega`` or ``R`` values.

    Records come back in grid order whatever the number of workers.
    """
    if vary not in ("omega", "R"):
        raise ValueError(f"can only vary 'omega' or 'R', got {vary!r}")
    if not isinstance(template.family, Cosine) or template.family.nu0 != 0:
        raise ValueError("CDT scans need a cosine drive with zero static component (nu0 = 0)")
    point = partial(
        _cdt_point,
        template=template,
        vary=vary,
        initial=initial,
        window_periods=window_periods,
        samples_per_period=samples_per_period,
        method=method,
        cfg=cfg,
    )
    grid = [float(x) for x in grid]
    if workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(point, grid))
    return [point(x) for x in grid]


class CpiBranch(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class CpiSolution:
    R: float
    A: float
    branch: CpiBranch
    n: int = 0

    @property
    def area(self) -> float:
        return 2 * self.A


def cpi_amplitude(R: float, n: int = 0) -> CpiSolution:
    """sech^2 amplitude ``A`` that fully inverts the population from level 2.

    R < 1:  2A cos(theta) + theta = (n + 1/2) pi
    R = 1:  A = 1/2
    R > 1:  2A sinh(phi) = phi
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rp = regime_of(R)
    if rp.regime is Regime.OSCILLATORY:
        A = ((n + 0.5) * math.pi - rp.theta) / (2 * rp.cos_theta)
        return CpiSolution(R, A, CpiBranch.SUBCRITICAL, n)
    if n != 0:
        raise ValueError(f"only n = 0 exists for R >= 1 (got n={n}, R={R})")
    if rp.regime is Regime.CRITICAL:
        return CpiSolution(R, 0.5, CpiBranch.CRITICAL)
    return CpiSolution(R, rp.phi / (2 * rp.sinh_phi), CpiBranch.SUPERCRITICAL)


def return_amplitude(R: float, n: int = 1) -> float:
    """sech^2 amplitude that returns the population to level 2 (R < 1 only)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rp = regime_of(R)
    if rp.regime is not Regime.OSCILLATORY:
        raise ValueError(f"no return condition is known for R >= 1 (got R={R})")
    return n * math.pi / (2 * rp.cos_theta)


def cpi_curve(R_min: float, R_max: float, steps: int) -> list[tuple[float, float]]:
    """The n = 0 CPI amplitude sampled on ``steps`` evenly spaced R values."""
    if not (0 <= R_min < R_max) or steps < 2:
        raise ValueError("need 0 <= R_min < R_max and steps >= 2")
    return [(float(R), cpi_amplitude(float(R)).A) for R in np.linspace(R_min, R_max, steps)]
