"""Cross-checks between the closed-form and numerical routes.

Each check returns a ``CheckResult``; ``run_checks`` drives them for the
``verify`` command.  ``dt`` overrides every RK4 step size used by a check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import cpi_amplitude, localization, return_amplitude
from .analytic import amplitudes_analytic, sech2_final_populations
from .core import Modulation, TwoLevelState
from .floquet import monodromy, quasienergies_analytic, quasienergies_numeric
from .numeric import IntegrationConfig, integrate_state

REFERENCE_PANELS = [(nu0, R) for nu0 in (0.5, 0.0) for R in (0.5, 1.0, 1.2)]
CDT_OMEGAS = (1.0, 2.0, 5.0, 10.0, 20.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    limit: str
    passed: bool
    detail: str = ""


def _cfg(dt: float | None, default: float | None = None) -> IntegrationConfig:
    return IntegrationConfig(dt=dt if dt is not None else default)


def check_analytic_vs_rk4(dt=None) -> CheckResult:
    worst = 0.0
    for nu0, R in REFERENCE_PANELS:
        mod = Modulation.cosine(nu0, 1.0, 3.0, R)
        tr = integrate_state(TwoLevelState(1, 0), mod, 40.0, _cfg(dt, mod.period / 2000))
        ref = amplitudes_analytic(TwoLevelState(1, 0), mod, tr.t)
        worst = max(worst, float(np.abs(tr.amplitudes - ref).max()))
    return CheckResult("analytic-vs-rk4", worst, "< 1e-7", worst < 1e-7)


def check_rk4_convergence(dt=None) -> CheckResult:
    mod = Modulation.cosine(0.5, 1.0, 3.0, 0.5)
    h = dt if dt is not None else mod.period / 200
    ref = amplitudes_analytic(TwoLevelState(1, 0), mod, [40.0])[0]
    errs = []
    for step in (h, h / 2):
        tr = integrate_state(TwoLevelState(1, 0), mod, 40.0, IntegrationConfig(dt=step), t_eval=[0.0, 40.0])
        errs.append(float(np.abs(tr.amplitudes[-1] - ref).max()))
    factor = errs[0] / errs[1] if errs[1] > 0 else math.inf
    return CheckResult("rk4-convergence", factor, "in [12, 20]", 12 <= factor <= 20)


def _r_grid():
    grid = np.linspace(0.05, 1.95, 200)
    return grid[np.abs(grid - 1) >= 1e-3]


def check_quasienergies(dt=None) -> CheckResult:
    worst = 0.0
    for R in _r_grid():
        mod = Modulation.cosine(0.5, 1.0, 3.0, float(R))
        num = quasienergies_numeric(mod, _cfg(dt))
        ana = quasienergies_analytic(mod)
        for a, b in ((num.eps1, ana.eps1), (num.eps2, ana.eps2)):
            worst = max(worst, abs(a.real - b.real), abs(a.imag - b.imag))
    return CheckResult("quasienergy-numeric-vs-analytic", worst, "< 1e-6", worst < 1e-6)


def check_zero_static_quasienergies(dt=None) -> CheckResult:
    worst = 0.0
    for R in _r_grid():
        q = quasienergies_numeric(Modulation.cosine(0.0, 1.0, 3.0, float(R)), _cfg(dt))
        worst = max(worst, abs(q.eps1), abs(q.eps2))
    return CheckResult("quasienergy-zero-static", worst, "< 1e-8", worst < 1e-8)


def check_exceptional_point(dt=None) -> CheckResult:
    ep = quasienergies_numeric(Modulation.cosine(0.5, 1.0, 3.0, 1.0), _cfg(dt))
    free = quasienergies_numeric(Modulation.cosine(0.0, 1.0, 3.0, 1.0), _cfg(dt))
    ok = ep.condition > 1e6 and ep.defective and free.condition < 1e3
    detail = f"cond(nu0=0.5)={ep.condition:.3g} cond(nu0=0)={free.condition:.3g}"
    return CheckResult("exceptional-point", ep.condition, "> 1e6 (and < 1e3 at nu0=0)", ok, detail)


def check_unimodular(dt=None) -> CheckResult:
    worst = 0.0
    for nu0, R in REFERENCE_PANELS:
        U = monodromy(Modulation.cosine(nu0, 1.0, 3.0, R), _cfg(dt))
        worst = max(worst, abs(np.linalg.det(U) - 1))
    return CheckResult("monodromy-determinant", worst, "< 1e-10", worst < 1e-10)


def _cdt_values(dt):
    mod = Modulation.cosine(0.0, 1.0, 1.0, 0.5)
    return [localization(mod.replace(omega=w), cfg=_cfg(dt), method="numeric").value for w in CDT_OMEGAS]


def check_cdt_low_frequency(dt=None) -> CheckResult:
    v = _cdt_values(dt)[0]
    return CheckResult("cdt-low-frequency", v, "localization(omega=1) < 0.05", v < 0.05)


def check_cdt_high_frequency(dt=None) -> CheckResult:
    v = _cdt_values(dt)[-1]
    return CheckResult("cdt-high-frequency", v, "localization(omega=20) > 0.95", v > 0.95)


def check_cdt_monotone(dt=None) -> CheckResult:
    vals = _cdt_values(dt)
    drop = max(0.0, max(a - b for a, b in zip(vals, vals[1:])))
    detail = " ".join(f"{v:.4f}" for v in vals)
    return CheckResult("cdt-monotone", drop, "largest decrease <= 0.02", drop <= 0.02, detail)


def _sech_final(A: float, R: float, dt):
    mod = Modulation.sech2(A, R)
    tr = integrate_state(TwoLevelState(0, 1, -20.0), mod, 20.0, _cfg(dt), t_eval=[-20.0, 20.0])
    return np.abs(tr.amplitudes[-1]) ** 2


def check_cpi(dt=None) -> CheckResult:
    cases = [
        (0.0, math.pi / 4, 1e-6, None),
        (1.0, 0.5, 1e-4, 1e-6),
        (1.5, math.acosh(1.5) / math.sqrt(1.25) / 2, 1e-4, None),
    ]
    worst = 0.0
    ok = True
    for R, A, p1_tol, p2_tol in cases:
        p1, p2 = _sech_final(A, R, dt)
        worst = max(worst, abs(p1 - 1))
        ok &= abs(p1 - 1) <= p1_tol and (p2_tol is None or p2 < p2_tol)
    return CheckResult("cpi-forward", worst, "|P1-1| within 1e-6 (R=0) / 1e-4", bool(ok))


def check_return(dt=None) -> CheckResult:
    p1, p2 = _sech_final(return_amplitude(0.5, 1), 0.5, dt)
    ok = p1 < 1e-6 and abs(p2 - 1) < 1e-4
    return CheckResult("return-forward", max(p1, abs(p2 - 1)), "P1 < 1e-6, |P2-1| < 1e-4", bool(ok))


def check_cpi_analytic(dt=None) -> CheckResult:
    worst = 0.0
    for R in np.linspace(0.0, 3.0, 31):
        sol = cpi_amplitude(float(R))
        worst = max(worst, sech2_final_populations(sol.A, float(R))[1])
    return CheckResult("cpi-analytic-exactness", worst, "P2_inf < 1e-10", worst < 1e-10)


def check_parabolic_growth(dt=None) -> CheckResult:
    mod = Modulation.cosine(0.5, 1.0, 3.0, 1.0)
    tr = integrate_state(TwoLevelState(1, 0), mod, 110.0, _cfg(dt))
    x = mod.family.tau(tr.t)
    sel = (x >= 5) & (x <= 50)
    slope = float(np.polyfit(np.log(x[sel]), np.log(np.abs(tr.amplitudes[sel, 1]) ** 2), 1)[0])
    return CheckResult("critical-parabolic-growth", slope, "2.00 +- 0.01", abs(slope - 2) <= 0.01)


def check_exponential_growth(dt=None) -> CheckResult:
    mod = Modulation.cosine(0.5, 1.0, 3.0, 1.2)
    ts = mod.period * np.arange(61)
    tr = integrate_state(TwoLevelState(1, 0), mod, float(ts[-1]), _cfg(dt), t_eval=ts)
    sel = ts >= 20 * mod.period
    rate = float(np.polyfit(ts[sel], np.log(np.abs(tr.amplitudes[sel, 1]) ** 2), 1)[0])
    expected = 2 * 0.5 * math.sqrt(1.2**2 - 1)
    rel = abs(rate - expected) / expected
    return CheckResult("hyperbolic-growth-rate", rel, "relative error < 1%", rel < 0.01, f"rate={rate:.6g}")


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "analytic-vs-rk4": check_analytic_vs_rk4,
    "rk4-convergence": check_rk4_convergence,
    "quasienergy-numeric-vs-analytic": check_quasienergies,
    "quasienergy-zero-static": check_zero_static_quasienergies,
    "exceptional-point": check_exceptional_point,
    "monodromy-determinant": check_unimodular,
    "cdt-low-frequency": check_cdt_low_frequency,
    "cdt-high-frequency": check_cdt_high_frequency,
    "cdt-monotone": check_cdt_monotone,
    "cpi-forward": check_cpi,
    "return-forward": check_return,
    "cpi-analytic-exactness": check_cpi_analytic,
    "critical-parabolic-growth": check_parabolic_growth,
    "hyperbolic-growth-rate": check_exponential_growth,
}


def run_checks(names=None, dt: float | None = None) -> list[CheckResult]:
    """Run the named checks (all by default).  Exceptions count as failures."""
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    results = []
    for name in names:
        try:
            results.append(CHECKS[name](dt))
        except (ValueError, ArithmeticError) as exc:
            results.append(CheckResult(name, math.nan, "", False, f"error: {exc}"))
    return results
