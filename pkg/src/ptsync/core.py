"""Model definitions: states, modulation profiles and the Hamiltonian.

The equation of motion is ``i dC/dt = H(t) C`` with

    H(t) = i*gamma(t)*sigma_z - nu(t)*sigma_x,    gamma(t) = R*nu(t).

Time is dimensionless throughout.  Both supported profiles are even in ``t``,
which makes ``H`` PT-symmetric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

#: Half-width of the band around R = 1 that is classified as critical.
DELTA_CRIT = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class TwoLevelState:
    """Amplitudes ``(c1, c2)`` at time ``t``.

    ``t`` may be ``-inf``/``+inf`` for the sech^2 pulse asymptotics.
    """

    c1: complex
    c2: complex
    t: float = 0.0

    @property
    def amplitudes(self) -> np.ndarray:
        return np.array([self.c1, self.c2], dtype=complex)

    @classmethod
    def from_array(cls, amps, t: float) -> TwoLevelState:
        return cls(complex(amps[0]), complex(amps[1]), float(t))


@dataclass(frozen=True)
class Cosine:
    """Periodic coupling ``nu(t) = nu0 + nu1*cos(omega*t)``."""

    nu0: float
    nu1: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega}")

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    def nu(self, t):
        return self.nu0 + self.nu1 * np.cos(self.omega * t)

    def tau(self, t):
        return self.nu0 * t + (self.nu1 / self.omega) * np.sin(self.omega * t)


@dataclass(frozen=True)
class SechSquared:
    """Pulse ``nu(t) = A*sech(t)**2`` with total area ``2A``."""

    A: float

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"pulse amplitude A must be positive, got {self.A}")

    @property
    def period(self) -> float:
        raise TypeError("a sech^2 pulse is not periodic")

    def nu(self, t):
        return self.A / np.cosh(t) ** 2

    def tau(self, t):
        # tanh(+-inf) == +-1 exactly, so the asymptotic limits map to +-A.
        return self.A * np.tanh(t)


Family = Union[Cosine, SechSquared]


@dataclass(frozen=True)
class Modulation:
    """A drive profile together with the gain-loss ratio ``R``."""

    family: Family
    R: float

    def __post_init__(self):
        if not isinstance(self.family, (Cosine, SechSquared)):
            raise TypeError(f"unsupported modulation family {self.family!r}")
        if not (self.R >= 0 and math.isfinite(self.R)):
            raise ValueError(f"R must be a finite non-negative number, got {self.R}")

    @classmethod
    def cosine(cls, nu0: float, nu1: float, omega: float, R: float) -> Modulation:
        return cls(Cosine(nu0, nu1, omega), R)

    @classmethod
    def sech2(cls, A: float, R: float) -> Modulation:
        return cls(SechSquared(A), R)

    @property
    def is_periodic(self) -> bool:
        return isinstance(self.family, Cosine)

    @property
    def period(self) -> float:
        return self.family.period

    def nu(self, t):
        return self.family.nu(t)

    def gamma(self, t):
        return self.R * self.family.nu(t)

    def replace(self, **changes) -> Modulation:
        """Copy with ``R`` or any family parameter changed."""
        R = changes.pop("R", self.R)
        fam = self.family
        if changes:
            params = {k: getattr(fam, k) for k in fam.__dataclass_fields__}
            unknown = set(changes) - set(params)
            if unknown:
                raise ValueError(f"unknown parameter(s) {sorted(unknown)} for {type(fam).__name__}")
            params.update(changes)
            fam = type(fam)(**params)
        return Modulation(fam, R)


class Regime(enum.Enum):
    OSCILLATORY = "oscillatory"
    CRITICAL = "critical"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class RegimeParams:
    regime: Regime
    R: float
    theta: float | None = None
    phi: float | None = None

    @property
    def cos_theta(self) -> float:
        return math.sqrt(1.0 - self.R * self.R)

    @property
    def sinh_phi(self) -> float:
        return math.sqrt(self.R * self.R - 1.0)


def regime_of(R: float) -> RegimeParams:
    """Classify ``R`` into one of the three closed-form branches.

    ``R = sin(theta)`` below the critical band, ``R = cosh(phi)`` above it.
    """
    if not R >= 0:
        raise ValueError(f"R must be non-negative, got {R}")
    if abs(R - 1.0) <= DELTA_CRIT:
        return RegimeParams(Regime.CRITICAL, R)
    if R < 1.0:
        return RegimeParams(Regime.OSCILLATORY, R, theta=math.asin(R))
    return RegimeParams(Regime.HYPERBOLIC, R, phi=math.acosh(R))


def hamiltonian(mod: Modulation, t: float) -> np.ndarray:
    nu = float(mod.nu(t))
    g = mod.R * nu
    return np.array([[1j * g, -nu], [-nu, -1j * g]], dtype=complex)


def tau(mod: Modulation, t):
    """Rescaled time, the integral of ``nu`` normalised to ``tau(0) = 0``."""
    return mod.family.tau(t)
