"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".
"""

import math
import time

import numpy as np

from ptsync.analysis import cpi_amplitude, localization, return_amplitude
from ptsync.analytic import amplitudes_analytic
from ptsync.core import SIGMA_X, Modulation, TwoLevelState, hamiltonian
from ptsync.floquet import monodromy, quasienergies_analytic, quasienergies_numeric
from ptsync.numeric import IntegrationConfig, integrate_state

GROUND = TwoLevelState(1.0, 0.0, 0.0)
UPPER = TwoLevelState(0.0, 1.0, -20.0)


def _sech_final(A, R):
    tr = integrate_state(UPPER, Modulation.sech2(A, R), 20.0, t_eval=[-20.0, 20.0])
    return np.abs(tr.amplitudes[-1]) ** 2


def test_c1_analytic_numeric_agreement(report):
    start = time.perf_counter()
    worst = 0.0
    for nu0 in (0.5, 0.0):
        for R in (0.5, 1.0, 1.2):
            mod = Modulation.cosine(nu0, 1.0, 3.0, R)
            tr = integrate_state(GROUND, mod, 40.0, IntegrationConfig(dt=mod.period / 2000))
            ref = amplitudes_analytic(GROUND, mod, tr.t)
            worst = max(worst, np.abs(tr.amplitudes - ref).max())
    elapsed = time.perf_counter() - start
    ok = worst < 1e-7 and elapsed < 1.0
    report("C1 analytic vs RK4, six panels", ok, f"max deviation {worst:.3g} (< 1e-7), {elapsed:.2f} s (< 1 s)")
    assert ok


def test_c2_quasienergy_reproduction(report):
    start = time.perf_counter()
    grid = np.linspace(0.05, 1.95, 200)
    grid = grid[np.abs(grid - 1) >= 1e-3]
    worst = worst_zero = 0.0
    for R in grid:
        mod = Modulation.cosine(0.5, 1.0, 3.0, float(R))
        qn, qa = quasienergies_numeric(mod), quasienergies_analytic(mod)
        num = sorted((qn.eps1, qn.eps2), key=lambda e: (e.imag, e.real))
        ana = sorted((qa.eps1, qa.eps2), key=lambda e: (e.imag, e.real))
        for a, b in zip(num, ana):
            worst = max(worst, abs(a.real - b.real), abs(a.imag - b.imag))
        q0 = quasienergies_numeric(mod.replace(nu0=0.0))
        worst_zero = max(worst_zero, abs(q0.eps1), abs(q0.eps2))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and worst_zero < 1e-8 and elapsed < 10.0
    report(
        "C2 quasienergies on the R grid",
        ok,
        f"max |d eps| {worst:.3g} (< 1e-6), nu0=0 max |eps| {worst_zero:.3g} (< 1e-8), {elapsed:.2f} s (< 10 s)",
    )
    assert ok


def test_c3_exceptional_point(report):
    ep = quasienergies_numeric(Modulation.cosine(0.5, 1.0, 3.0, 1.0))
    free = quasienergies_numeric(Modulation.cosine(0.0, 1.0, 3.0, 1.0))
    ok = ep.condition > 1e6 and ep.defective and free.condition < 1e3 and not free.defective
    report(
        "C3 exceptional point",
        ok,
        f"cond {ep.condition:.3g} at nu0=0.5 (> 1e6, defective={ep.defective}), cond {free.condition:.3g} at nu0=0 (< 1e3)",
    )
    assert ok


def test_c4_cdt_trend(report):
    start = time.perf_counter()
    mod = Modulation.cosine(0.0, 1.0, 1.0, 0.5)
    omegas = (1.0, 2.0, 5.0, 10.0, 20.0)
    vals = [localization(mod.replace(omega=w), method="numeric").value for w in omegas]
    elapsed = time.perf_counter() - start
    low, high = vals[0] < 0.05, vals[-1] > 0.95
    monotone = all(b >= a - 0.02 for a, b in zip(vals, vals[1:]))
    trace = ", ".join(f"{w:g}:{v:.4f}" for w, v in zip(omegas, vals))
    report("C4a localization(omega=1) < 0.05", low, f"{vals[0]:.5f}")
    report("C4b localization(omega=20) > 0.95", high, f"{vals[-1]:.5f}")
    report("C4c monotone within 0.02", monotone, trace)
    report("C4d runtime < 5 s", elapsed < 5.0, f"{elapsed:.2f} s")
    assert low and high and monotone and elapsed < 5.0


def test_c5_pulse_area_theorem(report):
    start = time.perf_counter()
    p_rz = _sech_final(math.pi / 4, 0.0)
    p_crit = _sech_final(0.5, 1.0)
    A_hyp = math.acosh(1.5) / math.sqrt(1.25) / 2
    p_hyp = _sech_final(A_hyp, 1.5)
    p_ret = _sech_final(return_amplitude(0.5, 1), 0.5)
    elapsed = time.perf_counter() - start
    checks = {
        "a R=0, A=pi/4": (abs(p_rz[0] - 1) < 1e-6, f"P1={p_rz[0]:.12f}"),
        "b R=1, A=1/2": (abs(p_crit[0] - 1) < 1e-4 and p_crit[1] < 1e-6, f"P1={p_crit[0]:.10f} P2={p_crit[1]:.3g}"),
        "c R=1.5, 2A=arccosh(1.5)/sqrt(1.25)": (abs(p_hyp[0] - 1) < 1e-4, f"P1={p_hyp[0]:.10f}"),
        "d return R=0.5, n=1": (p_ret[0] < 1e-6 and abs(p_ret[1] - 1) < 1e-4, f"P1={p_ret[0]:.3g} P2={p_ret[1]:.10f}"),
    }
    for label, (ok, detail) in checks.items():
        report(f"C5{label}", ok, detail)
    report("C5 runtime < 1 s", elapsed < 1.0, f"{elapsed:.2f} s")
    assert all(ok for ok, _ in checks.values()) and elapsed < 1.0
    assert abs(cpi_amplitude(1.5).A - A_hyp) < 1e-15


def test_c6_growth_laws(report):
    crit = Modulation.cosine(0.5, 1.0, 3.0, 1.0)
    tr = integrate_state(GROUND, crit, 110.0)
    x = crit.family.tau(tr.t)
    sel = (x >= 5) & (x <= 50)
    slope = np.polyfit(np.log(x[sel]), np.log(np.abs(tr.amplitudes[sel, 1]) ** 2), 1)[0]
    ok_parabolic = abs(slope - 2) <= 0.01
    report("C6a parabolic growth exponent", ok_parabolic, f"{slope:.6f} (2.00 +- 0.01)")

    hyp = Modulation.cosine(0.5, 1.0, 3.0, 1.2)
    ts = hyp.period * np.arange(61)
    tr = integrate_state(GROUND, hyp, float(ts[-1]), t_eval=ts)
    late = ts >= 20 * hyp.period
    rate = np.polyfit(ts[late], np.log(np.abs(tr.amplitudes[late, 1]) ** 2), 1)[0]
    expected = 2 * 0.5 * math.sinh(math.acosh(1.2))
    rel = abs(rate - expected) / expected
    ok_exp = rel < 0.01
    report("C6b exponential growth rate", ok_exp, f"{rate:.8f} vs {expected:.8f}, relative error {rel:.2g} (< 1%)")
    assert ok_parabolic and ok_exp


def _ode_residual(mod, initial, times, h=1e-3):
    worst = 0.0
    for t in times:
        pts = t + h * np.array([-2, -1, 1, 2])
        c = amplitudes_analytic(initial, mod, np.concatenate([pts, [t]]))
        d = (c[0] - 8 * c[1] + 8 * c[2] - c[3]) / (12 * h)
        worst = max(worst, np.abs(1j * d - hamiltonian(mod, t) @ c[4]).max())
    return worst


def test_c7_property_suite(report):
    results = {}

    init = TwoLevelState(0.3 + 0.2j, -0.5j, 0.0)
    residual = max(
        _ode_residual(Modulation.cosine(0.5, 1.0, 3.0, R), init, np.linspace(0.1, 5.0, 12)) for R in (0.5, 1.0, 1.2)
    )
    results["ODE residual, all branches"] = (residual < 1e-8, f"{residual:.3g} (< 1e-8)")

    det_err = max(
        abs(np.linalg.det(monodromy(Modulation.cosine(nu0, 1.0, 3.0, R))) - 1)
        for nu0 in (0.5, 0.0)
        for R in (0.5, 1.0, 1.2)
    )
    results["det U = 1"] = (det_err < 1e-10, f"{det_err:.3g} (< 1e-10)")

    pt_err = 0.0
    for mod in (Modulation.cosine(0.5, 1.0, 3.0, 1.2), Modulation.sech2(0.7, 0.4)):
        for t in np.linspace(-10, 10, 101):
            lhs = SIGMA_X @ np.conj(hamiltonian(mod, -t)) @ SIGMA_X
            pt_err = max(pt_err, np.abs(lhs - hamiltonian(mod, t)).max())
    results["PT-symmetry identity"] = (pt_err < 1e-14, f"{pt_err:.3g} (< 1e-14)")

    herm = Modulation.cosine(0.5, 1.0, 3.0, 0.0)
    amps = amplitudes_analytic(TwoLevelState(0.6, 0.8j), herm, np.linspace(0, 40, 401))
    norm_err = np.abs((np.abs(amps) ** 2).sum(axis=1) - 1).max()
    results["Hermitian-limit norm"] = (norm_err < 1e-12, f"{norm_err:.3g} (< 1e-12)")

    mod = Modulation.cosine(0.5, 1.0, 3.0, 0.5)
    ref = amplitudes_analytic(GROUND, mod, [40.0])[0]
    errs = []
    for n in (200, 400):
        tr = integrate_state(GROUND, mod, 40.0, IntegrationConfig(dt=mod.period / n), t_eval=[0.0, 40.0])
        errs.append(np.abs(tr.amplitudes[-1] - ref).max())
    factor = errs[0] / errs[1]
    results["RK4 order-4 factor"] = (12 <= factor <= 20, f"{factor:.3f} (in [12, 20])")

    gap = abs(cpi_amplitude(1 - 1e-4).A - cpi_amplitude(1 + 1e-4).A)
    results["CPI curve continuity"] = (gap < 1e-3, f"gap {gap:.3g} (< 1e-3)")

    for label, (ok, detail) in results.items():
        report(f"C7 {label}", ok, detail)
    assert all(ok for ok, _ in results.values())
