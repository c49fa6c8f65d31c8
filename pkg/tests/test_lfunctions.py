import cmath
import math

import mpmath
import numpy as np
import pytest

from cubichecke.characters import CubicCharacter, HeckePsi, enumerate_cubic_chars
from cubichecke.gaussian import GaussInt
from cubichecke.lfunctions import (
    AFEConfig,
    gamma_factor,
    lvalue_afe,
    lvalue_direct,
    lvalue_psi_afe,
    poisson_check,
    v_weight,
    v_weight_exact,
    w_tilde_k,
)


def _mp_gamma_factor(s, t, d, D):
    def G(z):
        return ((2 * mpmath.pi) ** (-z) * mpmath.gamma(z)) ** (mpmath.mpf(d) / 2)

    z0 = mpmath.mpf(0.5) + 1j * t
    return complex(G(s + z0) / G(z0) * mpmath.sqrt(D) ** s)


def test_gamma_factor_at_zero_is_one():
    for E in ("K", "F"):
        for t in (0.0, 1.0, -3.5):
            assert abs(gamma_factor(0, t, E) - 1) < 1e-14


@pytest.mark.parametrize("t", [0.0, 1.0, 5.0])
def test_gamma_factor_against_mpmath(t):
    for E, d, D in (("K", 2, 4), ("F", 4, 144)):
        for s in (2, 2 + 1j, 0.25 - 0.5j):
            assert abs(gamma_factor(s, t, E) - _mp_gamma_factor(s, t, d, D)) < 1e-10


def test_gamma_factor_rejects_poles():
    with pytest.raises(ValueError):
        gamma_factor(-0.5, 0.0, "K")
    with pytest.raises(ValueError):
        gamma_factor(-1.5 + 1e-10, 0.0, "F")


def test_afe_config_validation():
    for kw in ({"G": "other"}, {"T": 10}, {"step": 0.1}, {"step": 0}, {"A": -1.0}):
        with pytest.raises(ValueError):
            AFEConfig(**kw)
    A, B = AFEConfig(A=5.0).split(100)
    assert (A, B) == (5.0, 20.0)


@pytest.mark.parametrize("E", ["K", "F"])
@pytest.mark.parametrize("t", [0.0, 1.0])
def test_v_weight_matches_closed_form(E, t):
    xs = [1e-3, 0.05, 0.7, 1.0, 3.0, 12.0]
    got = v_weight(np.array(xs), t, E)
    for x, v in zip(xs, got):
        assert abs(v - v_weight_exact(x, t, E)) < 1e-10


def test_v_weight_small_xi_limit_for_f():
    xs = np.logspace(-6, -1, 21)
    dev = np.abs(v_weight(xs, 0.0, "F") - 1) / xs**0.4
    assert np.all(np.isfinite(dev)) and dev.max() < 10
    assert abs(v_weight(1e-6, 0.0, "F") - v_weight_exact(1e-6, 0.0, "F")) < 1e-10


def test_v_weight_large_xi_decay_for_f():
    xs = np.array([10.0, 20.0, 40.0, 80.0])
    scaled = np.abs(v_weight(xs, 0.0, "F")) * np.exp(2 * np.sqrt(xs))
    assert np.all(scaled < 50)


def test_gaussian_weight_decay():
    cfg = AFEConfig(G="gauss")
    assert abs(v_weight(1e3, 0.0, "K", cfg)) < 1e-6
    assert abs(v_weight(1e3, 0.0, "F", cfg)) < 1e-6


@pytest.mark.parametrize("E,d", [("K", 2), ("F", 4)])
def test_gaussian_weight_scaling_in_t(E, d):
    cfg = AFEConfig(G="gauss")
    base = np.array([0.5, 2.0, 8.0, 32.0])
    for t in (0.0, 1.0, 5.0):
        xs = base * (1 + abs(t)) ** (d / 2)
        vals = np.abs(v_weight(xs, t, E, cfg))
        # dominated by a fixed decreasing profile once xi is rescaled
        assert vals[-1] < 1e-3
        assert np.all(vals <= 2.0)


def _sample_chars(qmax, count):
    chars = list(enumerate_cubic_chars(1, qmax))
    step = max(1, len(chars) // count)
    return chars[::step][:count]


def test_split_invariance_sample():
    for chi in _sample_chars(2000, 12):
        N = chi.norm
        a = lvalue_afe(chi).value
        b = lvalue_afe(chi, config=AFEConfig(A=2 * math.sqrt(N))).value
        assert abs(a - b) < 1e-6


def test_afe_matches_direct_small_conductors():
    for chi in enumerate_cubic_chars(1, 150):
        d = lvalue_direct(chi)
        assert abs(lvalue_afe(chi).value - d.value) < 1e-5


def test_conjugate_symmetry_and_root_number():
    for chi in _sample_chars(1000, 20):
        r = lvalue_afe(chi)
        rc = lvalue_afe(chi.conj())
        assert abs(rc.value - r.value.conjugate()) < 1e-8
        assert abs(abs(r.root_number) - 1) < 1e-6


def test_nonzero_t_runs_and_conjugates():
    chi = next(iter(enumerate_cubic_chars(12, 13)))
    a = lvalue_afe(chi, t=2.0).value
    b = lvalue_afe(chi.conj(), t=-2.0).value
    assert abs(a - b.conjugate()) < 1e-8
    assert abs(a - lvalue_direct(chi, t=2.0).value) < 1e-5


def test_non_primitive_rejected():
    for n in [GaussInt(1, 0), GaussInt(3, 0), GaussInt(13, 0)]:
        with pytest.raises(ValueError):
            lvalue_afe(CubicCharacter.from_n(n))


def test_direct_spread_shrinks():
    chi = next(iter(enumerate_cubic_chars(60, 61)))
    spreads = [lvalue_direct(chi, scale=s).extra["spread"] for s in (2, 8)]
    assert spreads[1] < spreads[0]


def test_direct_conjugate_values():
    for chi in _sample_chars(200, 5):
        a = lvalue_direct(chi).value
        b = lvalue_direct(chi.conj()).value
        assert abs(a - b.conjugate()) < 1e-10


def test_psi_principal_against_direct():
    afe = lvalue_psi_afe(GaussInt(1, 0))
    d = lvalue_direct(HeckePsi.of(GaussInt(1, 0)))
    assert abs(afe.value - d.value) < 1e-5


@pytest.mark.slow
@pytest.mark.parametrize("m", [GaussInt(1, 1), GaussInt(2, 1)])
def test_psi_against_direct(m):
    psi = HeckePsi.of(m)
    afe = lvalue_psi_afe(psi)
    assert abs(abs(afe.root_number) - 1) < 1e-6
    assert abs(afe.value - lvalue_direct(psi).value) < 1e-4


@pytest.mark.slow
@pytest.mark.xfail(
    strict=True,
    reason="conductor 13689 exceeds the 10^4 oracle regime; the direct oracle stalls near 1.3e-4",
)
def test_psi_norm13_against_direct():
    psi = HeckePsi.of(GaussInt(3, 2))
    assert psi.conductor_norm == 13689
    afe = lvalue_psi_afe(psi).value
    assert abs(afe - lvalue_direct(psi, scale=40, levels=2).value) < 1e-4


def test_psi_conjugate_modulus():
    for m in [GaussInt(1, 1), GaussInt(2, 1), GaussInt(3, 2)]:
        a = lvalue_psi_afe(m).value
        b = lvalue_psi_afe(m.conj()).value
        assert abs(abs(a) - abs(b)) < 1e-8


def test_poisson_principal_mod_one():
    for X in (3.0, 20.0):
        _, _, diff = poisson_check(None, X)
        assert diff < 1e-8


def test_poisson_norm13():
    chi = next(iter(enumerate_cubic_chars(12, 13)))
    _, _, diff = poisson_check(chi, 50.0)
    assert diff < 1e-6


def test_poisson_nontrivial_dual_side():
    # at X = N/8 the dual sum is far from its k = 0 term
    for chi in _sample_chars(100, 4):
        lhs, rhs, diff = poisson_check(chi, chi.norm / 8)
        assert abs(rhs) > 1e-3
        assert diff < 1e-6


def test_w_tilde_real_finite():
    for t in (0.0, 0.3, 1.0, 2.5):
        v = w_tilde_k(t)
        assert isinstance(v, float) and math.isfinite(v)
    # Gaussian W(r) = e^{-r} has W~(t) = pi exp(-pi^2 t^2)
    assert abs(w_tilde_k(0.7) - math.pi * math.exp(-math.pi**2 * 0.49)) < 1e-10
    assert cmath.isclose(w_tilde_k(0.0), math.pi, rel_tol=1e-12)
