"""Runge-Kutta integration of ``i dC/dt = H(t) C``.

This is the independent numerical route: it only ever evaluates the
Hamiltonian entries ``gamma(t)`` and ``nu(t)`` and knows nothing about the
rescaled time or the closed-form branches.  The norm is never renormalised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Modulation, TwoLevelState
from .exceptions import StepUnderflowError


@dataclass(frozen=True)
class IntegrationConfig:
    """Step control for the RK4 integrators.

    ``dt=None`` picks a default: one thousandth of the drive period for the
    cosine family, ``1e-3`` for the sech^2 pulse.  ``t_max_sech`` is the
    horizon that stands in for ``t = +-inf``.
    """

    dt: float | None = None
    adaptive: bool = False
    tol: float = 1e-10
    t_max_sech: float = 20.0

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if not self.t_max_sech > 0:
            raise ValueError(f"t_max_sech must be positive, got {self.t_max_sech}")

    def step_for(self, mod: Modulation) -> float:
        if mod.is_periodic:
            dt = mod.period / 1000 if self.dt is None else self.dt
            if dt > mod.period / 100 * (1 + 1e-12):
                raise ValueError(
                    f"dt={dt} does not resolve the drive (period {mod.period:.6g}, need dt <= period/100)"
                )
            return dt
        return 1e-3 if self.dt is None else self.dt

    def finite_time(self, mod: Modulation, t: float) -> float:
        """Map ``+-inf`` to ``+-t_max_sech`` for pulses; reject it otherwise."""
        if math.isfinite(t):
            return float(t)
        if mod.is_periodic or math.isnan(t):
            raise ValueError(f"time {t} is only meaningful for a sech^2 pulse")
        return math.copysign(self.t_max_sech, t)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    amplitudes: np.ndarray

    @property
    def final(self) -> TwoLevelState:
        return TwoLevelState.from_array(self.amplitudes[-1], self.t[-1])

    def states(self) -> list[TwoLevelState]:
        return [TwoLevelState.from_array(a, t) for t, a in zip(self.t, self.amplitudes)]

    @property
    def populations(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        p = np.abs(self.amplitudes) ** 2
        return p[:, 0], p[:, 1], p[:, 0] + p[:, 1]


def _step_matrices(mod: Modulation, starts: np.ndarray, steps: np.ndarray) -> np.ndarray:
    """One classic RK4 step for each ``(start, step)`` pair, as 2x2 matrices.

    The ODE is linear, so a step maps ``C -> P @ C``; the four stages are
    applied to the identity to build ``P``.  Shape ``(len(starts), 2, 2)``.
    """
    h = steps[:, None, None]

    def rhs_matrix(t):
        # -i H(t)  with  H = [[i g, -n], [-n, -i g]]
        n = np.asarray(mod.nu(t), dtype=float)
        g = mod.R * n
        M = np.empty(n.shape + (2, 2), dtype=complex)
        M[..., 0, 0] = g
        M[..., 0, 1] = 1j * n
        M[..., 1, 0] = 1j * n
        M[..., 1, 1] = -g
        return M

    eye = np.eye(2, dtype=complex)
    a0 = rhs_matrix(starts)
    am = rhs_matrix(starts + steps / 2)
    a1 = rhs_matrix(starts + steps)
    k1 = a0
    k2 = am @ (eye + 0.5 * h * k1)
    k3 = am @ (eye + 0.5 * h * k2)
    k4 = a1 @ (eye + h * k3)
    return eye + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _march(P: np.ndarray, a: complex, b: complex) -> np.ndarray:
    """Apply the step matrices in sequence; returns every node, shape ``(n+1, 2)``."""
    nodes = [(a, b)]
    for p11, p12, p21, p22 in P.reshape(-1, 4).tolist():
        a, b = p11 * a + p12 * b, p21 * a + p22 * b
        nodes.append((a, b))
    return np.array(nodes, dtype=complex)


def _fixed(mod: Modulation, t_out: np.ndarray, dt: float, a: complex, b: complex) -> np.ndarray:
    """Fixed-step RK4 on the grid ``t0 + k*dt``.

    Output times that fall between grid nodes are reached by one shorter
    side step from the preceding node, leaving the main grid untouched.
    """
    t0, t1 = float(t_out[0]), float(t_out[-1])
    sgn = 1.0 if t1 >= t0 else -1.0
    h = sgn * dt
    n_full = int(math.floor(abs(t1 - t0) / dt + 1e-9))
    P = _step_matrices(mod, t0 + h * np.arange(n_full), np.full(n_full, h))
    nodes = _march(P, a, b)
    k = np.clip(np.floor((t_out - t0) * sgn / dt + 1e-9).astype(int), 0, n_full)
    rest = t_out - (t0 + h * k)
    out = nodes[k]
    side = np.abs(rest) > 0
    if np.any(side):
        S = _step_matrices(mod, (t0 + h * k)[side], rest[side])
        out[side] = np.einsum("nij,nj->ni", S, out[side])
    return out


def _single_step(mod: Modulation, t: float, h: float, y: np.ndarray) -> np.ndarray:
    return _step_matrices(mod, np.array([t]), np.array([h]))[0] @ y


def _adaptive(mod: Modulation, t_out: np.ndarray, y: np.ndarray, h0: float, tol: float) -> np.ndarray:
    """Step-doubling RK4 that lands exactly on every output time."""
    out = [y]
    t = float(t_out[0])
    h = h0
    for target in t_out[1:].tolist():
        direction = 1.0 if target >= t else -1.0
        while (target - t) * direction > 0:
            last = h >= abs(target - t)
            hs = direction * min(h, abs(target - t))
            coarse = _single_step(mod, t, hs, y)
            fine = _single_step(mod, t + hs / 2, hs / 2, _single_step(mod, t, hs / 2, y))
            err = np.max(np.abs(fine - coarse)) / 15 / max(1.0, float(np.linalg.norm(fine)))
            if err <= tol:
                t = target if last else t + hs
                y = fine
                if not last:
                    h *= 2.0 if err == 0 else min(2.0, max(1.0, 0.9 * (tol / err) ** 0.2))
            else:
                h = abs(hs) * max(0.2, 0.9 * (tol / err) ** 0.2)
                if h < 1e-13 * max(1.0, abs(t)):
                    raise StepUnderflowError(t, h)
        out.append(y)
    return np.array(out)


def integrate_state(
    initial: TwoLevelState,
    mod: Modulation,
    t_end: float,
    cfg: IntegrationConfig | None = None,
    t_eval=None,
) -> Trajectory:
    """Integrate from ``initial.t`` to ``t_end``.

    Fixed-step runs march on the grid ``initial.t + k*dt``; without
    ``t_eval`` every grid node (plus ``t_end``) is returned.  In adaptive
    mode the default output is 101 evenly spaced times.  ``t_eval`` must be
    monotonic, start at the initial time and end at ``t_end``.  Infinite
    times are allowed for sech^2 pulses and replaced by ``+-cfg.t_max_sech``.
    """
    cfg = cfg or IntegrationConfig()
    t0 = cfg.finite_time(mod, initial.t)
    t1 = cfg.finite_time(mod, t_end)
    dt = cfg.step_for(mod)
    if t_eval is None:
        if cfg.adaptive:
            t_out = np.linspace(t0, t1, 101)
        else:
            sgn = 1.0 if t1 >= t0 else -1.0
            n_full = int(math.floor(abs(t1 - t0) / dt + 1e-9))
            t_out = t0 + sgn * dt * np.arange(n_full + 1)
            if abs(t_out[-1] - t1) > 1e-12 * max(1.0, abs(t1)):
                t_out = np.append(t_out, t1)
            t_out[-1] = t1
    else:
        t_out = np.array(t_eval, dtype=float)
        if t_out.ndim != 1 or t_out.size == 0:
            raise ValueError("t_eval must be a non-empty 1-d sequence")
        tol = 1e-12 * max(1.0, abs(t0), abs(t1))
        if abs(t_out[0] - t0) > tol or abs(t_out[-1] - t1) > tol:
            raise ValueError("t_eval must start at the initial time and end at t_end")
        d = np.diff(t_out)
        if not (np.all(d >= 0) or np.all(d <= 0)):
            raise ValueError("t_eval must be monotonic")
        t_out[0], t_out[-1] = t0, t1

    y0 = initial.amplitudes
    if t_out.size == 1:
        return Trajectory(t_out, y0[None, :])
    if cfg.adaptive:
        amps = _adaptive(mod, t_out, y0, dt, cfg.tol)
    else:
        amps = _fixed(mod, t_out, dt, complex(y0[0]), complex(y0[1]))
    return Trajectory(t_out, amps)


def integrate_propagator(
    mod: Modulation, t0: float, t1: float, cfg: IntegrationConfig | None = None
) -> np.ndarray:
    """Evolution operator ``U(t1, t0)``, integrating each column separately."""
    cfg = cfg or IntegrationConfig()
    t0 = cfg.finite_time(mod, t0)
    t1 = cfg.finite_time(mod, t1)
    if t1 < t0:
        raise ValueError(f"t1={t1} precedes t0={t0}")
    U = np.eye(2, dtype=complex)
    if t1 == t0:
        return U
    cols = [integrate_state(TwoLevelState(*e, t=t0), mod, t1, cfg, t_eval=[t0, t1]).amplitudes[-1] for e in U.T]
    return np.column_stack(cols)
