import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptsync.core import (
    DELTA_CRIT,
    SIGMA_X,
    Cosine,
    Modulation,
    Regime,
    SechSquared,
    TwoLevelState,
    hamiltonian,
    regime_of,
    tau,
)

cosine_mods = st.builds(
    Modulation.cosine,
    nu0=st.floats(-2, 2),
    nu1=st.floats(-2, 2),
    omega=st.floats(0.1, 20),
    R=st.floats(0, 3),
)
sech_mods = st.builds(Modulation.sech2, A=st.floats(0.01, 5), R=st.floats(0, 3))
any_mod = st.one_of(cosine_mods, sech_mods)


def test_hamiltonian_cosine_at_origin():
    H = hamiltonian(Modulation.cosine(0.5, 1, 3, 0.5), 0.0)
    np.testing.assert_allclose(H, [[0.75j, -1.5], [-1.5, -0.75j]], rtol=0, atol=1e-15)


def test_hamiltonian_sech_peak():
    H = hamiltonian(Modulation.sech2(1.0, 1.0), 0.0)
    np.testing.assert_array_equal(H, [[1j, -1], [-1, -1j]])


@given(mod=any_mod, t=st.floats(-30, 30))
def test_hermitian_limit_is_real_symmetric(mod, t):
    H = hamiltonian(mod.replace(R=0.0), t)
    assert np.all(H.imag == 0)
    np.testing.assert_array_equal(H, H.T)


@given(mod=any_mod)
@settings(max_examples=50)
def test_pt_symmetry_identity(mod):
    for t in np.linspace(-10, 10, 201):
        lhs = SIGMA_X @ np.conj(hamiltonian(mod, -t)) @ SIGMA_X
        assert np.abs(lhs - hamiltonian(mod, t)).max() < 1e-14


def test_tau_examples():
    m = Modulation.cosine(0.5, 1, 3, 0.2)
    assert tau(m, 2 * math.pi / 3) == pytest.approx(1.047198, abs=1e-6)
    assert tau(Modulation.sech2(2.0, 0.3), math.inf) == 2.0
    assert tau(Modulation.sech2(2.0, 0.3), -math.inf) == -2.0
    zero_static = Modulation.cosine(0.0, 1, 3, 0.7)
    assert abs(tau(zero_static, zero_static.period)) < 1e-15
    assert tau(m, 0.0) == 0.0


@pytest.mark.parametrize(
    "mod",
    [Modulation.cosine(0.5, 1, 3, 0.5), Modulation.cosine(0, 1.3, 7, 1.2), Modulation.sech2(0.8, 1.5)],
)
def test_tau_derivative_is_coupling(mod):
    h = 1e-4
    for t in np.linspace(-3, 3, 25):
        fd = (tau(mod, t + h) - tau(mod, t - h)) / (2 * h)
        nu = mod.nu(t)
        assert fd == pytest.approx(nu, rel=1e-6, abs=1e-9)


def test_regime_examples():
    r = regime_of(0.5)
    assert r.regime is Regime.OSCILLATORY
    assert r.theta == pytest.approx(math.pi / 6, abs=1e-15)
    assert regime_of(1.0).regime is Regime.CRITICAL
    r = regime_of(1.5)
    assert r.regime is Regime.HYPERBOLIC
    # oracle: arccosh(x) = ln(x + sqrt(x^2 - 1))
    assert r.phi == pytest.approx(math.log(1.5 + math.sqrt(1.25)), abs=1e-15)
    assert r.phi == pytest.approx(0.962424, abs=1e-6)


def test_regime_band_edges():
    assert regime_of(1 - DELTA_CRIT / 2).regime is Regime.CRITICAL
    assert regime_of(1 + DELTA_CRIT / 2).regime is Regime.CRITICAL
    assert regime_of(1 - 10 * DELTA_CRIT).regime is Regime.OSCILLATORY
    assert regime_of(1 + 10 * DELTA_CRIT).regime is Regime.HYPERBOLIC


def test_regime_rejects_negative():
    with pytest.raises(ValueError):
        regime_of(-0.1)


@given(st.floats(0, 1 - 1e-8))
def test_regime_round_trip_oscillatory(R):
    r = regime_of(R)
    assert abs(math.sin(r.theta) - R) < 1e-14
    assert abs(math.sin(r.theta) ** 2 + r.cos_theta**2 - 1) < 1e-14


@given(st.floats(1 + 1e-8, 50))
def test_regime_round_trip_hyperbolic(R):
    r = regime_of(R)
    assert abs(math.cosh(r.phi) - R) <= 1e-14 * R
    assert abs(R**2 - r.sinh_phi**2 - 1) <= 1e-13 * R**2


def test_modulation_validation():
    with pytest.raises(ValueError):
        Cosine(0.5, 1, 0.0)
    with pytest.raises(ValueError):
        SechSquared(-1.0)
    with pytest.raises(ValueError):
        Modulation.cosine(0.5, 1, 3, -0.2)
    with pytest.raises(TypeError):
        Modulation.sech2(1.0, 0.5).period


def test_replace_changes_single_parameter():
    m = Modulation.cosine(0.0, 1, 3, 0.5)
    assert m.replace(omega=20).family == Cosine(0.0, 1, 20)
    assert m.replace(R=0.9).R == 0.9
    with pytest.raises(ValueError):
        m.replace(A=1.0)


def test_gamma_tracks_nu():
    m = Modulation.cosine(0.5, 1, 3, 0.7)
    t = np.linspace(-5, 5, 11)
    np.testing.assert_array_equal(m.gamma(t), 0.7 * m.nu(t))


def test_state_populations_finite():
    s = TwoLevelState(1 / math.sqrt(2), 1j / math.sqrt(2))
    np.testing.assert_allclose(np.abs(s.amplitudes) ** 2, [0.5, 0.5])
