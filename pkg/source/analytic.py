import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import integrate, optimize

import specfun
from errors import ConsistencyError, DomainError
from logging_config import get_logger
from shooting import RadialSolution, count_nodes

"""
Closed-form pieces of the linear-potential problem.

Equal mix (s = 1/2, k = -1): the upper component obeys Airy's equation in
xi = [lambda (m + E)]^(1/3) (r + q2 / (lambda (m + E))) with q2 = m^2 - E^2,
so u = c Ai(xi), and u(0) = 0 makes xi(0) a zero beta_i of Ai:

    (E^2 - m^2) = |beta_i| [lambda (m + E)]^(2/3).

Pure scalar: the tail u ~ A exp(-lambda r^2 / 2).
Pure vector: local Bessel profiles in x = E + m - lambda r near the continuum
edge r2 (x = 0) and near the turning point r1 (x = 2m).
"""

logger = get_logger(__name__)

# root tolerances for the eigenvalue condition
_ENERGY_XTOL = 1e-14
_ENERGY_RTOL = 1e-13

# |Ai(xi(0))| / max|Ai| above which an energy is not an eigenvalue
_EIGEN_TOLERANCE = 1e-4


class EqualMixSolution(BaseModel):
    """
    Equal-mix eigenstate labelled by an Airy zero.

    Attributes:
        energy (float): Eigenenergy, > m.
        scale (float): [lambda (m + E)]^(1/3), the xi scale.
        q2 (float): m^2 - E^2, negative for a bound state.
        zero_index (int): Which zero beta_i of Ai fixed the energy.
    """
    model_config = ConfigDict(frozen=True)

    energy: float
    scale: float = Field(gt=0.0)
    q2: float = Field(lt=0.0)
    zero_index: int = Field(ge=1)

    def xi(self, r):
        """Airy argument at radius r: scale * r + q2 / scale^2."""
        return self.scale * np.asarray(r, dtype=float) + self.q2 / self.scale ** 2

    @property
    def origin_value(self) -> float:
        """Ai at xi(0); vanishes for an eigenstate."""
        return specfun.airy_ai(self.q2 / self.scale ** 2)


class LocalProfileCoefficients(BaseModel):
    """
    Amplitudes of the pure-vector local profiles: a for the continuum-edge
    profile, b and c for the I0 and K0 terms near the turning point.
    """
    model_config = ConfigDict(frozen=True)

    a: float = Field(default=0.0, allow_inf_nan=False)
    b: float = Field(default=0.0, allow_inf_nan=False)
    c: float = Field(default=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _not_all_zero(self) -> "LocalProfileCoefficients":
        if self.a == 0.0 and self.b == 0.0 and self.c == 0.0:
            raise ValueError("at least one profile coefficient must be nonzero")
        return self


def _check_mass_slope(m: float, lam: float) -> None:
    if not (math.isfinite(m) and m > 0.0):
        raise DomainError(f"mass must be finite and > 0, got {m}")
    if not (math.isfinite(lam) and lam > 0.0):
        raise DomainError(f"lambda must be finite and > 0, got {lam}")


def equal_mix_energy(m: float, lam: float, zero_index: int = 1) -> float:
    """
    Solve the equal-mix eigenvalue condition for E.

    f(E) = (E^2 - m^2) - |beta_i| [lambda (m + E)]^(2/3) is negative at E = m
    and grows like E^2, so it has a single root above m. The root is bracketed
    in (m, m + 20 sqrt(lambda) + 10 lambda / m] (the ceiling is widened if
    needed) and solved with Brent's method.

    Args:
        m (float): Mass, > 0.
        lam (float): Slope lambda, > 0.
        zero_index (int, optional): Airy zero index, 1 for the ground state. Defaults to 1.

    Returns:
        float: The energy E > m.

    Raises:
        DomainError: If m or lambda is not positive or zero_index < 1.
    """
    _check_mass_slope(m, lam)
    depth = -specfun.airy_ai_zero(zero_index)

    def condition(E: float) -> float:
        return (E * E - m * m) - depth * (lam * (m + E)) ** (2.0 / 3.0)

    width = 20.0 * math.sqrt(lam) + 10.0 * lam / m
    while condition(m + width) <= 0.0:
        logger.debug("equal-mix bracket ceiling m+%.6g too low, doubling", width)
        width *= 2.0

    return optimize.brentq(condition, m, m + width, xtol=_ENERGY_XTOL, rtol=_ENERGY_RTOL, maxiter=400)


def equal_mix_solution(m: float, lam: float, zero_index: int = 1) -> EqualMixSolution:
    """Eigenenergy plus the xi-scale constants of the Airy form."""
    energy = equal_mix_energy(m, lam, zero_index)
    scale = (lam * (m + energy)) ** (1.0 / 3.0)
    return EqualMixSolution(energy=energy, scale=scale, q2=m * m - energy * energy, zero_index=zero_index)


def xi_of_r(m: float, E: float, lam: float, r):
    """
    Airy argument [lambda (m + E)]^(1/3) (r + q2 / (lambda (m + E))).

    Negative exactly for r < r1 = (E - m) / lambda.
    """
    weight = lam * (m + E)
    value = weight ** (1.0 / 3.0) * (np.asarray(r, dtype=float) + (m * m - E * E) / weight)
    return float(value) if value.ndim == 0 else value


def equal_mix_wavefunction(m: float, lam: float, E: float, radii) -> RadialSolution:
    """
    Closed-form equal-mix wavefunction on the caller's radii.

    u = c Ai(xi(r)) and v = (du/dr - u/r) / (E + m) with du/dr taken from the
    analytic Ai'. v is set to its limit 0 wherever r = 0. The constant c makes
    the trapezoid integral of u^2 + v^2 equal to 1 with max u > 0.

    Args:
        m (float): Mass.
        lam (float): Slope lambda.
        E (float): An eigenvalue from equal_mix_energy.
        radii (array-like): Sorted, nonnegative radii.

    Returns:
        RadialSolution: The normalized wavefunction (grid is None).

    Raises:
        DomainError: If the radii are not sorted and nonnegative or E <= m.
        ConsistencyError: If E is not an eigenvalue.
    """
    _check_mass_slope(m, lam)
    if not E > m:
        raise DomainError(f"equal-mix bound states need E > m, got E={E}")

    r = np.asarray(radii, dtype=float)
    if r.ndim != 1 or r.size < 2 or np.any(r < 0.0) or np.any(np.diff(r) <= 0.0):
        raise DomainError("radii must be a strictly increasing, nonnegative 1-D array")

    scale = (lam * (m + E)) ** (1.0 / 3.0)
    ai, aip = specfun.airy_ai_and_prime(xi_of_r(m, E, lam, r))

    peak = np.max(np.abs(ai))
    origin = abs(specfun.airy_ai(xi_of_r(m, E, lam, 0.0)))
    if peak == 0.0 or origin / peak > _EIGEN_TOLERANCE:
        raise ConsistencyError(f"E={E} is not an equal-mix eigenvalue: |Ai(xi(0))|/max|Ai| = {origin / peak:.3g}")

    v = np.zeros_like(ai)
    positive = r > 0.0
    v[positive] = (scale * aip[positive] - ai[positive] / r[positive]) / (E + m)

    norm = integrate.trapezoid(ai * ai + v * v, r)
    c1 = 1.0 / math.sqrt(norm)
    if ai[np.argmax(np.abs(ai))] < 0.0:
        c1 = -c1

    u = c1 * ai
    return RadialSolution(r=r, u=u, v=c1 * v, energy=E, node_count=count_nodes(u))


def scalar_asymptote(lam: float, amplitude: float, r):
    """Large-r pure-scalar form A exp(-lambda r^2 / 2); its log-derivative is -lambda r."""
    radius = np.asarray(r, dtype=float)
    if np.any(radius < 0.0):
        raise DomainError(f"radius must be >= 0, got {r!r}")
    value = amplitude * np.exp(-0.5 * lam * radius * radius)
    return float(value) if value.ndim == 0 else value


def x_of_r(m: float, E: float, lam: float, r):
    """Barrier variable x = E + m - lambda r: 2m at r1, 0 at r2."""
    value = E + m - lam * np.asarray(r, dtype=float)
    return float(value) if value.ndim == 0 else value


def vector_profile_continuum_edge(E: float, m: float, amplitude: float, x):
    """
    Pure-vector profile near the continuum edge x = 0:
    A J0(2 sqrt(-x/(E+m))) for x < 0 and A I0(2 sqrt(x/(E+m))) for x >= 0.
    Both branches equal A at x = 0.
    """
    if not E + m > 0.0:
        raise DomainError(f"need E + m > 0, got E={E}, m={m}")

    arr = np.asarray(x, dtype=float)
    z = 2.0 * np.sqrt(np.abs(arr) / (E + m))
    value = np.where(arr < 0.0, specfun.bessel_j0(z), specfun.bessel_i0(z)) * amplitude
    return float(value) if value.ndim == 0 else value


def vector_profile_turning_point(E: float, m: float, coeffs: LocalProfileCoefficients, x):
    """
    Pure-vector profile near the turning point x = 2m:
    B I0(z) + C K0(z) with z = 2 sqrt(x/(E-m)).

    Raises:
        DomainError: If any x <= 0 or E <= m.
    """
    if not E > m:
        raise DomainError(f"the turning-point profile needs E > m, got E={E}, m={m}")

    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError(f"the turning-point profile needs x > 0, got {x!r}")

    z = 2.0 * np.sqrt(arr / (E - m))
    value = np.asarray(coeffs.b * specfun.bessel_i0(z) + coeffs.c * specfun.bessel_k0(z))
    return float(value) if value.ndim == 0 else value


def continuum_edge_first_zero(m: float, E: float) -> float:
    """x of the first node of the J0 branch, -(E+m)(j01/2)^2."""
    j01 = optimize.bisect(specfun.bessel_j0, 2.0, 3.0, xtol=1e-14, rtol=1e-15, maxiter=200)
    return -(E + m) * (0.5 * j01) ** 2


def scalar_second_order_residual(m: float, E: float, lam: float, r, u, du, d2u):
    """
    Pure-scalar (k = -1) second-order equation for u:
    (E+m+lambda r) u'' - lambda u' + lambda u/r + (E+m+lambda r)^2 (E-m-lambda r) u.
    """
    r = np.asarray(r, dtype=float)
    p = E + m + lam * r
    return p * d2u - lam * du + lam * u / r + p * p * (E - m - lam * r) * u


def vector_second_order_residual(m: float, E: float, lam: float, r, u, du, d2u):
    """
    Pure-vector (k = -1) second-order equation for u:
    (E+m-lambda r) u'' + lambda u' - lambda u/r + (E+m-lambda r)^2 (E-m-lambda r) u.
    """
    r = np.asarray(r, dtype=float)
    q = E + m - lam * r
    return q * d2u + lam * du - lam * u / r + q * q * (E - m - lam * r) * u
