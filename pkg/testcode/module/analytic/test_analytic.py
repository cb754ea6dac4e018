import math

import numpy as np
import pytest
from scipy import integrate, special

import analytic
import specfun
from errors import ConsistencyError, DomainError

M = 1.0
LAM = 0.2


@pytest.fixture(scope="module")
def ground():
    return analytic.equal_mix_solution(M, LAM, 1)


@pytest.fixture(scope="module")
def ground_wavefunction(ground):
    radii = np.linspace(0.0, 25.0, 20001)
    return analytic.equal_mix_wavefunction(M, LAM, ground.energy, radii)


def test_ground_state_energy():
    assert analytic.equal_mix_energy(M, LAM, 1) == pytest.approx(1.5828, abs=5e-4)


def test_vanishing_slope_energy_approaches_mass():
    E = analytic.equal_mix_energy(M, 1e-8, 1)
    assert 0.0 < E - M < 1e-4


def test_excited_energy_satisfies_condition():
    E = analytic.equal_mix_energy(M, LAM, 2)
    residual = (E * E - M * M) / (LAM * (M + E)) ** (2.0 / 3.0) - 4.08795
    assert abs(residual) < 1e-5

    exact = (E * E - M * M) / (LAM * (M + E)) ** (2.0 / 3.0) + specfun.airy_ai_zero(2)
    assert abs(exact) < 1e-9


def test_excited_energies_increase():
    energies = [analytic.equal_mix_energy(M, LAM, i) for i in range(1, 6)]
    assert all(a < b for a, b in zip(energies, energies[1:]))


def test_energy_rejects_bad_input():
    with pytest.raises(DomainError):
        analytic.equal_mix_energy(0.0, LAM)
    with pytest.raises(DomainError):
        analytic.equal_mix_energy(M, -1.0)
    with pytest.raises(DomainError):
        analytic.equal_mix_energy(M, LAM, 0)


def test_solution_constants(ground):
    assert ground.energy > M
    assert ground.q2 == pytest.approx(M * M - ground.energy ** 2)
    assert ground.q2 < 0.0
    assert ground.scale ** 3 == pytest.approx(LAM * (M + ground.energy))
    assert abs(ground.origin_value) <= 1e-8
    assert ground.xi(0.0) == pytest.approx(specfun.airy_ai_zero(1), abs=1e-10)


def test_xi_sign_follows_turning_point(ground):
    r1 = (ground.energy - M) / LAM
    r = np.linspace(0.0, 3.0 * r1, 301)
    xi = analytic.xi_of_r(M, ground.energy, LAM, r)

    assert np.all(xi[r < r1 - 1e-9] < 0.0)
    assert np.all(xi[r > r1 + 1e-9] > 0.0)
    assert analytic.xi_of_r(M, ground.energy, LAM, r1) == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(xi, ground.xi(r), atol=1e-12)


def test_wavefunction_boundary_and_norm(ground_wavefunction):
    u, v, r = ground_wavefunction.u, ground_wavefunction.v, ground_wavefunction.r
    peak = np.max(np.abs(u))

    assert abs(u[0]) <= 1e-6 * peak
    assert v[0] == 0.0
    assert integrate.trapezoid(u * u + v * v, r) == pytest.approx(1.0, abs=1e-12)
    assert np.max(u) == peak


def test_ground_state_shape(ground_wavefunction, ground):
    u, r = ground_wavefunction.u, ground_wavefunction.r
    r1 = (ground.energy - M) / LAM

    assert ground_wavefunction.node_count == 0
    slope_signs = np.sign(np.diff(u))
    assert np.count_nonzero(slope_signs[1:] != slope_signs[:-1]) == 1
    assert r[np.argmax(u)] < r1

    beyond = r > r1
    assert np.all(np.diff(u[beyond]) < 0.0)


def test_airy_equation_residual(ground_wavefunction, ground):
    u, r = ground_wavefunction.u, ground_wavefunction.r
    E = ground.energy
    h = r[1] - r[0]

    second = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    residual = second - (M + E) * (M - E + LAM * r[1:-1]) * u[1:-1]
    assert np.max(np.abs(residual)) <= 1e-5 * np.max(np.abs(u))


def test_first_order_system_residual(ground_wavefunction, ground):
    u, v, r = ground_wavefunction.u, ground_wavefunction.v, ground_wavefunction.r
    E = ground.energy
    h = r[1] - r[0]
    inner = slice(1, -1)
    away = r[inner] > 0.5

    du = (u[2:] - u[:-2]) / (2.0 * h)
    dv = (v[2:] - v[:-2]) / (2.0 * h)
    upper = du - u[inner] / r[inner] - (E + M) * v[inner]
    lower = dv + v[inner] / r[inner] + (E - M - LAM * r[inner]) * u[inner]

    scale = max(np.max(np.abs(u)), np.max(np.abs(v)))
    assert np.max(np.abs(upper[away])) <= 1e-5 * scale
    assert np.max(np.abs(lower[away])) <= 1e-5 * scale


def test_wavefunction_rejects_non_eigenvalue():
    with pytest.raises(ConsistencyError):
        analytic.equal_mix_wavefunction(M, LAM, 1.7, np.linspace(0.0, 25.0, 2001))


def test_wavefunction_rejects_bad_radii(ground):
    with pytest.raises(DomainError):
        analytic.equal_mix_wavefunction(M, LAM, ground.energy, np.array([0.0, 2.0, 1.0]))
    with pytest.raises(DomainError):
        analytic.equal_mix_wavefunction(M, LAM, ground.energy, np.array([-1.0, 0.0, 1.0]))


def test_scalar_asymptote():
    assert analytic.scalar_asymptote(LAM, 1.0, 0.0) == 1.0
    assert analytic.scalar_asymptote(LAM, 1.0, 3.0) == pytest.approx(math.exp(-0.9), rel=1e-12)
    assert analytic.scalar_asymptote(LAM, 1.0, 3.0) == pytest.approx(0.40657, abs=1e-5)

    r, h = 4.0, 1e-5
    slope = (math.log(analytic.scalar_asymptote(LAM, 2.0, r + h))
             - math.log(analytic.scalar_asymptote(LAM, 2.0, r - h))) / (2.0 * h)
    assert slope == pytest.approx(-LAM * r, rel=1e-8)


def test_x_of_r():
    E = 1.5828
    assert analytic.x_of_r(M, E, LAM, (E + M) / LAM) == pytest.approx(0.0, abs=1e-12)
    assert analytic.x_of_r(M, E, LAM, (E - M) / LAM) == pytest.approx(2.0 * M)
    assert analytic.x_of_r(M, E, LAM, 0.0) == E + M


def test_continuum_edge_profile():
    E = 1.5828
    assert analytic.vector_profile_continuum_edge(E, M, 3.0, 0.0) == 3.0

    first_zero = analytic.continuum_edge_first_zero(M, E)
    assert first_zero == pytest.approx(-3.734, abs=1e-3)
    assert abs(analytic.vector_profile_continuum_edge(E, M, 1.0, first_zero)) < 1e-10

    x = np.linspace(-8.0, -0.01, 400)
    values = analytic.vector_profile_continuum_edge(E, M, 1.0, x)
    assert np.any(values < 0.0)

    x = np.linspace(0.0, 4.0, 200)
    assert np.all(np.diff(analytic.vector_profile_continuum_edge(E, M, 1.0, x)) > 0.0)


def test_turning_point_profile():
    E = 1.5828
    x = np.linspace(0.5, 4.0, 100)

    growing = analytic.vector_profile_turning_point(E, M, analytic.LocalProfileCoefficients(b=2.0), x)
    assert np.all(np.diff(growing) > 0.0)
    decaying = analytic.vector_profile_turning_point(E, M, analytic.LocalProfileCoefficients(c=1.0), x)
    assert np.all(np.diff(decaying) < 0.0)

    argument = 2.0 * math.sqrt(2.0 / (E - M))
    assert argument == pytest.approx(3.7046, abs=1e-3)
    value = analytic.vector_profile_turning_point(E, M, analytic.LocalProfileCoefficients(b=1.0), 2.0 * M)
    assert isinstance(value, float)
    assert value == pytest.approx(special.i0(argument), rel=1e-10)


def test_turning_point_profile_domain():
    coeffs = analytic.LocalProfileCoefficients(b=1.0, c=1.0)
    with pytest.raises(DomainError):
        analytic.vector_profile_turning_point(1.5828, M, coeffs, 0.0)
    with pytest.raises(DomainError):
        analytic.vector_profile_turning_point(0.9, M, coeffs, 1.0)
    with pytest.raises(ValueError):
        analytic.LocalProfileCoefficients()
