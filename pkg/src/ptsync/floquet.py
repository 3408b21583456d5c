"""Floquet analysis for the periodic (cosine) drive.

Quasienergies follow from the one-period evolution operator ``U(period, 0)``
via ``eps = i*Log(lambda)/period``, with the real part folded into
``(-omega/2, omega/2]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Cosine, Modulation, Regime, regime_of
from .numeric import IntegrationConfig, integrate_propagator

#: Eigenvector-matrix condition number above which the monodromy is reported defective.
DEFECTIVE_COND = 1e6
#: Relative size of ``U - (tr U / 2) I`` below which U is treated as a multiple of the identity.
SCALAR_TOL = 1e-10


@dataclass(frozen=True)
class QuasienergyPair:
    eps1: complex
    eps2: complex
    folded: bool = True
    defective: bool = False
    condition: float = 1.0


@dataclass(frozen=True)
class FloquetModes:
    """Periodic parts ``u(t)`` of the Floquet solutions ``u(t) exp(-i eps t)``.

    ``coalesced`` marks the exceptional point, where ``u1`` and ``u2`` are the
    same single mode.
    """

    u1: Callable[[np.ndarray], np.ndarray]
    u2: Callable[[np.ndarray], np.ndarray]
    eps1: complex
    eps2: complex
    period: float
    coalesced: bool = False


def fold(eps: complex, omega: float) -> complex:
    """Reduce the real part of ``eps`` into ``(-omega/2, omega/2]``."""
    re = eps.real - omega * math.ceil((eps.real - omega / 2) / omega)
    return complex(re, eps.imag)


def eig2x2(U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and unit eigenvectors (as columns) of a 2x2 matrix.

    Uses the trace/determinant quadratic.  A matrix indistinguishable from a
    multiple of the identity gets the standard basis as eigenvectors.
    """
    a, b, c, d = complex(U[0, 0]), complex(U[0, 1]), complex(U[1, 0]), complex(U[1, 1])
    half_tr = (a + d) / 2
    disc = cmath.sqrt(((a - d) / 2) ** 2 + b * c)
    lam = np.array([half_tr + disc, half_tr - disc])
    scale = max(abs(a), abs(b), abs(c), abs(d), 1e-300)
    if max(abs(b), abs(c), abs(a - d)) <= SCALAR_TOL * scale:
        return lam, np.eye(2, dtype=complex)
    V = np.empty((2, 2), dtype=complex)
    for k, l in enumerate(lam):
        v1 = np.array([b, l - a])
        v2 = np.array([l - d, c])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        V[:, k] = v / np.linalg.norm(v)
    return lam, V


def eigvec_condition(V: np.ndarray) -> float:
    """2-norm condition number of a matrix with unit columns."""
    overlap = min(1.0, abs(np.vdot(V[:, 0], V[:, 1])))
    if overlap >= 1.0:
        return math.inf
    return math.sqrt((1 + overlap) / (1 - overlap))


def _ordered(e1: complex, e2: complex) -> tuple[complex, complex]:
    # Imaginary parts equal up to round-off count as ties, broken by the real part.
    tie = abs(e1.imag - e2.imag) <= 1e-9 * max(1.0, abs(e1), abs(e2))
    key1 = (0.0 if tie else e1.imag, e1.real)
    key2 = (0.0 if tie else e2.imag, e2.real)
    return (e1, e2) if key1 <= key2 else (e2, e1)


def _require_cosine(mod: Modulation) -> Cosine:
    if not isinstance(mod.family, Cosine):
        raise TypeError("Floquet analysis needs a periodic (cosine) modulation")
    return mod.family


def monodromy(mod: Modulation, cfg: IntegrationConfig | None = None) -> np.ndarray:
    _require_cosine(mod)
    return integrate_propagator(mod, 0.0, mod.period, cfg)


def quasienergies_from_monodromy(U: np.ndarray, omega: float) -> QuasienergyPair:
    period = 2 * math.pi / omega
    lam, V = eig2x2(U)
    eps = [fold(1j * cmath.log(l) / period, omega) for l in lam]
    cond = eigvec_condition(V)
    e1, e2 = _ordered(*eps)
    return QuasienergyPair(e1, e2, folded=True, defective=cond > DEFECTIVE_COND, condition=cond)


def quasienergies_numeric(mod: Modulation, cfg: IntegrationConfig | None = None) -> QuasienergyPair:
    fam = _require_cosine(mod)
    return quasienergies_from_monodromy(monodromy(mod, cfg), fam.omega)


def quasienergies_analytic(mod: Modulation) -> QuasienergyPair:
    fam = _require_cosine(mod)
    rp = regime_of(mod.R)
    if rp.regime is Regime.OSCILLATORY:
        e = complex(fam.nu0 * rp.cos_theta)
    elif rp.regime is Regime.HYPERBOLIC:
        e = 1j * fam.nu0 * rp.sinh_phi
    else:
        defective = fam.nu0 != 0
        return QuasienergyPair(0j, 0j, defective=defective, condition=math.inf if defective else 1.0)
    e1, e2 = _ordered(fold(e, fam.omega), fold(-e, fam.omega))
    return QuasienergyPair(e1, e2)


def floquet_modes_analytic(mod: Modulation) -> FloquetModes:
    fam = _require_cosine(mod)
    rp = regime_of(mod.R)
    w = fam.omega

    def osc(t):
        return fam.nu1 * np.sin(w * np.asarray(t, dtype=float)) / w

    if rp.regime is Regime.OSCILLATORY:
        c, th = rp.cos_theta, rp.theta

        def u1(t):
            x = osc(t) * c
            return np.stack([np.exp(-1j * x), -np.exp(-1j * (th + x))], axis=-1)

        def u2(t):
            x = osc(t) * c
            return np.stack([np.exp(1j * x), np.exp(1j * (th + x))], axis=-1)

        e = fam.nu0 * c
        return FloquetModes(u1, u2, complex(e), complex(-e), fam.period)

    if rp.regime is Regime.HYPERBOLIC:
        s, ph = rp.sinh_phi, rp.phi

        def u1(t):
            x = osc(t) * s
            return np.stack([np.exp(x), 1j * np.exp(-ph + x)], axis=-1)

        def u2(t):
            x = osc(t) * s
            return np.stack([np.exp(-x), 1j * np.exp(ph - x)], axis=-1)

        e = fam.nu0 * s
        return FloquetModes(u1, u2, 1j * e, -1j * e, fam.period)

    def fixed(t):
        shape = np.shape(t)
        return np.broadcast_to(np.array([1.0, 1j]), shape + (2,)).copy()

    if fam.nu0 != 0:
        return FloquetModes(fixed, fixed, 0j, 0j, fam.period, coalesced=True)

    def linear(t):
        x = osc(t)
        return np.stack([x + 0j, 1j * x - 1j], axis=-1)

    return FloquetModes(fixed, linear, 0j, 0j, fam.period)
