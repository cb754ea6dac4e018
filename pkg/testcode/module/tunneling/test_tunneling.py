import logging
import math

import numpy as np
import pytest

import model
import tunneling
from errors import DomainError, PreconditionError

M = 1.0
LAM = 0.2
E = 1.5828


def test_momentum_modulus():
    assert tunneling.momentum_modulus(M, E, E) == pytest.approx(M)
    assert tunneling.momentum_modulus(M, E, E - M) == pytest.approx(0.0, abs=1e-7)
    assert tunneling.momentum_modulus(M, E, 1.0) == pytest.approx(math.sqrt(1.0 - 0.5828 ** 2), rel=1e-12)
    assert tunneling.momentum_modulus(M, E, 1.0) == pytest.approx(0.8126, abs=1e-4)

    with pytest.raises(DomainError):
        tunneling.momentum_modulus(M, E, 0.0)


def test_gamma_pure_vector():
    assert tunneling.gamma_pure_vector(M, LAM) == pytest.approx(7.853982, abs=1e-6)
    assert tunneling.gamma_pure_vector(M, math.pi / 7.0) == pytest.approx(3.5, rel=1e-12)
    assert tunneling.gamma_pure_vector(2.0, LAM) == pytest.approx(4.0 * tunneling.gamma_pure_vector(M, LAM))

    with pytest.raises(DomainError):
        tunneling.gamma_pure_vector(M, 0.0)


def test_barrier_integral_matches_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(10):
        m = rng.uniform(0.3, 3.0)
        lam = rng.uniform(0.05, 1.0)
        energy = m + rng.uniform(0.05, 3.0)
        assert tunneling.barrier_integral(m, lam, energy) == pytest.approx(tunneling.gamma_pure_vector(m, lam),
                                                                           rel=1e-8)


def test_barrier_integral_rejects_low_energy():
    with pytest.raises(DomainError):
        tunneling.barrier_integral(M, LAM, 0.5)


def test_gamma_mixed_reduces_to_pure_vector():
    report = tunneling.gamma_mixed(M, model.PotentialMix(lam=LAM, s=0.0), E)

    assert report.gamma == pytest.approx(tunneling.gamma_pure_vector(M, LAM), abs=1e-10)
    assert report.r3 == report.r2
    assert report.tau_ratio == pytest.approx(6.634e6, rel=1e-3)
    assert report.log_tau_ratio == pytest.approx(2.0 * report.gamma)
    assert report.energy == E and report.s == 0.0


@pytest.mark.parametrize("s", [0.1, 0.25, 0.4])
def test_lifted_barrier_quadrature_matches_closed_form(s):
    mix = model.PotentialMix(lam=LAM, s=s)
    quadrature = tunneling.lifted_barrier_integral(M, mix, E)

    assert quadrature > 0.0
    assert quadrature == pytest.approx(tunneling.lifted_barrier_closed_form(M, mix, E), rel=1e-8)


def test_lifted_continuum_doubles_outer_radius():
    report = tunneling.gamma_mixed(M, model.PotentialMix(lam=LAM, s=0.25), E)

    assert report.r3 == pytest.approx(2.0 * report.r2, rel=1e-12)
    assert report.gamma > tunneling.gamma_pure_vector(M, LAM)


def test_gamma_grows_with_scalar_fraction():
    gammas = [tunneling.gamma_mixed(M, model.PotentialMix(lam=LAM, s=s), E).gamma
              for s in np.linspace(0.0, 0.45, 10)]
    assert all(a < b for a, b in zip(gammas, gammas[1:]))


@pytest.mark.parametrize("s", [0.5, 0.75, 1.0])
def test_strictly_bound_has_no_tunneling(s):
    mix = model.PotentialMix(lam=LAM, s=s)
    with pytest.raises(PreconditionError):
        tunneling.gamma_mixed(M, mix, E)
    with pytest.raises(PreconditionError):
        tunneling.lifted_barrier_integral(M, mix, E)


def test_lifetime_ratio():
    assert tunneling.lifetime_ratio(3.5) == pytest.approx(1096.6, abs=0.1)
    assert tunneling.lifetime_ratio(0.0) == 1.0
    assert tunneling.lifetime_ratio(7.853982) == pytest.approx(6.634e6, rel=1e-3)
    assert tunneling.log_lifetime_ratio(3.5) == 7.0

    with pytest.raises(DomainError):
        tunneling.lifetime_ratio(-0.1)


def test_lifetime_ratio_overflow(caplog):
    with caplog.at_level(logging.WARNING):
        assert tunneling.lifetime_ratio(1000.0) == math.inf
    assert "overflows" in caplog.text
    assert tunneling.log_lifetime_ratio(1000.0) == 2000.0


def test_sauter_transmission():
    assert tunneling.sauter_transmission(M, LAM) == pytest.approx(1.507e-7, rel=1e-3)

    for m, v in [(1.0, 0.2), (0.5, 0.1), (2.0, 0.9)]:
        expected = 1.0 / tunneling.lifetime_ratio(tunneling.gamma_pure_vector(m, v))
        assert tunneling.sauter_transmission(m, v) == pytest.approx(expected, rel=1e-12)

    assert tunneling.sauter_transmission(M, 1e6) == pytest.approx(1.0, abs=1e-5)

    with pytest.raises(DomainError):
        tunneling.sauter_transmission(M, 0.0)


def test_sauter_validity_warning(caplog):
    with caplog.at_level(logging.WARNING):
        tunneling.sauter_transmission(M, 0.5, length=10.0)
    assert caplog.text == ""

    with caplog.at_level(logging.WARNING):
        tunneling.sauter_transmission(M, 2.0)
    assert "validity" in caplog.text

    caplog.clear()
    with caplog.at_level(logging.WARNING):
        tunneling.sauter_transmission(M, 0.1, length=5.0)
    assert "validity" in caplog.text
