"""Closed-form propagation in the rescaled time ``tau``.

With ``gamma = R*nu`` and ``tau = integral of nu``, the amplitude ``C1`` obeys
``C1'' + (1 - R**2) C1 = 0``.  Each regime has a two-dimensional solution
space; ``basis_matrix`` returns the two basis solutions as columns so that
``C(tau) = basis_matrix(tau) @ (d1, d2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Modulation, Regime, RegimeParams, TwoLevelState, regime_of, tau
from .exceptions import SingularFitError


@dataclass(frozen=True)
class BranchCoefficients:
    d1: complex
    d2: complex
    regime: RegimeParams


def basis_matrix(rp: RegimeParams, tau_values) -> np.ndarray:
    """Basis solutions evaluated at ``tau_values``, shape ``(..., 2, 2)``.

    Column 0 multiplies ``d1`` and column 1 multiplies ``d2``.
    """
    x = np.asarray(tau_values, dtype=float)
    B = np.empty(x.shape + (2, 2), dtype=complex)
    if rp.regime is Regime.OSCILLATORY:
        c = rp.cos_theta
        em = np.exp(-1j * c * x)
        ep = np.exp(1j * c * x)
        B[..., 0, 0] = em
        B[..., 1, 0] = -np.exp(-1j * rp.theta) * em
        B[..., 0, 1] = ep
        B[..., 1, 1] = np.exp(1j * rp.theta) * ep
    elif rp.regime is Regime.CRITICAL:
        B[..., 0, 0] = x
        B[..., 1, 0] = 1j * (x - 1.0)
        B[..., 0, 1] = 1.0
        B[..., 1, 1] = 1j
    else:
        s = rp.sinh_phi
        ep = np.exp(s * x)
        em = np.exp(-s * x)
        B[..., 0, 0] = ep
        B[..., 1, 0] = 1j * math.exp(-rp.phi) * ep
        B[..., 0, 1] = em
        B[..., 1, 1] = 1j * math.exp(rp.phi) * em
    return B


def fit_coefficients(initial: TwoLevelState, mod: Modulation) -> BranchCoefficients:
    """Solve for ``(d1, d2)`` so the branch solution matches ``initial``."""
    amps = initial.amplitudes
    if not np.any(amps):
        raise ValueError("initial state must be nonzero")
    rp = regime_of(mod.R)
    tau0 = float(tau(mod, initial.t))
    if not math.isfinite(tau0):
        raise ValueError(f"rescaled time at t={initial.t} is not finite")
    B = basis_matrix(rp, tau0)
    det = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    scale = np.abs(B).max() ** 2
    if abs(det) <= 1e-14 * scale:
        raise SingularFitError(f"basis matrix is singular at tau={tau0} (det={det})")
    d = np.linalg.solve(B, amps)
    return BranchCoefficients(complex(d[0]), complex(d[1]), rp)


def amplitudes_analytic(initial: TwoLevelState, mod: Modulation, times) -> np.ndarray:
    """Closed-form amplitudes at each of ``times``; shape ``(len(times), 2)``."""
    coeffs = fit_coefficients(initial, mod)
    d = np.array([coeffs.d1, coeffs.d2])
    B = basis_matrix(coeffs.regime, tau(mod, np.asarray(times, dtype=float)))
    return B @ d


def propagate_analytic(initial: TwoLevelState, mod: Modulation, t: float) -> TwoLevelState:
    amps = amplitudes_analytic(initial, mod, t)
    return TwoLevelState.from_array(amps, t)


def sech2_final_populations(A: float, R: float) -> tuple[float, float]:
    """Populations at ``t = +inf`` for a sech^2 pulse started in level 2 at ``t = -inf``."""
    mod = Modulation.sech2(A, R)
    final = propagate_analytic(TwoLevelState(0.0, 1.0, -math.inf), mod, math.inf)
    return abs(final.c1) ** 2, abs(final.c2) ** 2
