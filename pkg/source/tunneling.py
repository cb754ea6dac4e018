import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate

import model
from errors import DomainError, PreconditionError
from logging_config import get_logger

"""
Gamow-style barrier penetration for quasi-bound states of a vector-dominated
linear potential.

The barrier integral runs over the forbidden region r1..r2, where
|p| = sqrt(m^2 - (E - lambda r)^2), and, once a scalar part lifts the
negative-energy continuum more slowly, over the extra stretch r2..r3 as well:

    gamma = pi m^2 / (2 lambda) + int_{r2}^{r3} sqrt((E - lambda r)^2 - m^2) dr,
    tau / tau0 = exp(2 gamma).

Both integrands vanish like a square root at r1 and r2, so the quadratures
factor those roots out into scipy's algebraic endpoint weights.
Only tau / tau0 is reported; tau0 is of order 1e-24 s for fermi-scale r1.
"""

logger = get_logger(__name__)

_QUAD_EPSREL = 1e-11


class TunnelingReport(BaseModel):
    """
    Barrier integral and lifetime ratio for one state.

    Attributes:
        gamma (float): Barrier integral, >= 0.
        tau_ratio (float): exp(2 gamma); inf when it overflows.
        log_tau_ratio (float): 2 gamma, kept when tau_ratio saturates.
        r1 (float): Classical turning point.
        r2 (float): Where the pure-vector continuum top meets E.
        r3 (float): Where the mixed continuum top meets E, >= r2.
        s (float): Scalar fraction.
        energy (float): Energy used.
    """
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(ge=0.0)
    tau_ratio: float
    log_tau_ratio: float
    r1: float
    r2: float
    r3: float
    s: float
    energy: float


def momentum_modulus(m: float, E: float, V: float) -> float:
    """
    Under-barrier momentum modulus |p| = sqrt(m^2 - (E - V)^2).

    Raises:
        DomainError: If m^2 < (E - V)^2 (classically allowed).
    """
    radicand = m * m - (E - V) ** 2
    if radicand < -1e-12 * m * m:
        raise DomainError(f"|p| is real only inside the barrier: m^2 - (E - V)^2 = {radicand}")
    return math.sqrt(max(radicand, 0.0))


def gamma_pure_vector(m: float, lam: float) -> float:
    """Closed-form pure-vector barrier integral pi m^2 / (2 lambda), independent of E."""
    if not (m > 0.0 and lam > 0.0):
        raise DomainError(f"need m > 0 and lambda > 0, got m={m}, lambda={lam}")
    return math.pi * m * m / (2.0 * lam)


def barrier_integral(m: float, lam: float, E: float) -> float:
    """
    Quadrature of int_{r1}^{r2} sqrt(m^2 - (E - lambda r)^2) dr.

    The integrand is lambda sqrt((r - r1)(r2 - r)), integrated with the
    weight (r - r1)^(1/2) (r2 - r)^(1/2).

    Raises:
        DomainError: If E <= m.
    """
    points = model.turning_points(m, E, model.PotentialMix(lam=lam, s=0.0))
    value, error = integrate.quad(lambda r: lam, points.r1, points.r2, weight="alg", wvar=(0.5, 0.5),
                                  epsabs=0.0, epsrel=_QUAD_EPSREL)
    logger.debug("barrier integral m=%g lambda=%g E=%g: %.15g (+- %.2g)", m, lam, E, value, error)
    return value


def _lifted_points(m: float, mix: model.PotentialMix, E: float) -> model.TurningPoints:
    if model.classify_binding(mix) is model.BindingClass.STRICTLY_BOUND:
        raise PreconditionError(f"s={mix.s} >= 0.5 is a true bound state; no tunneling")
    return model.turning_points(m, E, mix)


def lifted_barrier_integral(m: float, mix: model.PotentialMix, E: float) -> float:
    """
    Quadrature of int_{r2}^{r3} sqrt((E - lambda r)^2 - m^2) dr, the extra
    barrier a scalar fraction adds. The integrand is
    lambda sqrt(r - r1) sqrt(r - r2); the second root goes into the weight.

    Returns 0 when r3 == r2 (s = 0).

    Raises:
        PreconditionError: If s >= 0.5.
        DomainError: If E <= m.
    """
    points = _lifted_points(m, mix, E)
    if points.r3 == points.r2:
        return 0.0

    lam = mix.lam
    r1 = points.r1
    value, error = integrate.quad(lambda r: lam * math.sqrt(r - r1), points.r2, points.r3,
                                  weight="alg", wvar=(0.5, 0.0), epsabs=0.0, epsrel=_QUAD_EPSREL)
    logger.debug("lifted barrier s=%g E=%g: %.15g (+- %.2g)", mix.s, E, value, error)
    return value


def lifted_barrier_closed_form(m: float, mix: model.PotentialMix, E: float) -> float:
    """
    Closed form of the lifted barrier integral: with w = lambda r - E,
    [w sqrt(w^2 - m^2) / 2 - (m^2 / 2) ln(w + sqrt(w^2 - m^2))] / lambda
    between w = m and w = lambda r3 - E.
    """
    points = _lifted_points(m, mix, E)

    def antiderivative(w: float) -> float:
        root = math.sqrt(max(w * w - m * m, 0.0))
        return 0.5 * w * root - 0.5 * m * m * math.log(w + root)

    upper = mix.lam * points.r3 - E
    return (antiderivative(upper) - antiderivative(m)) / mix.lam


def log_lifetime_ratio(gamma: float) -> float:
    """ln(tau / tau0) = 2 gamma."""
    if gamma < 0.0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    return 2.0 * gamma


def lifetime_ratio(gamma: float) -> float:
    """
    Lifetime in units of tau0, exp(2 gamma).

    Returns inf (with a warning) when exp(2 gamma) overflows; the logarithm is
    available from log_lifetime_ratio.

    Raises:
        DomainError: If gamma < 0.
    """
    exponent = log_lifetime_ratio(gamma)
    try:
        return math.exp(exponent)
    except OverflowError:
        logger.warning("tau/tau0 = exp(%.6g) overflows; reporting inf", exponent)
        return math.inf


def gamma_mixed(m: float, mix: model.PotentialMix, E: float) -> TunnelingReport:
    """
    Barrier integral for a mix with s < 1/2: pi m^2 / (2 lambda) plus the
    lifted-continuum stretch r2..r3 by quadrature.

    The momentum uses the full lambda r for every mix, (E - lambda r)^2 - m^2,
    rather than (E - V)^2 - (m + S)^2.

    Args:
        m (float): Mass.
        mix (PotentialMix): The potential, s < 0.5.
        E (float): Energy of the quasi-bound state, > m.

    Returns:
        TunnelingReport: gamma, the lifetime ratio and the radii used.

    Raises:
        PreconditionError: If s >= 0.5.
        DomainError: If E <= m.
    """
    points = _lifted_points(m, mix, E)
    gamma = gamma_pure_vector(m, mix.lam) + lifted_barrier_integral(m, mix, E)

    return TunnelingReport(gamma=gamma, tau_ratio=lifetime_ratio(gamma), log_tau_ratio=log_lifetime_ratio(gamma),
                           r1=points.r1, r2=points.r2, r3=points.r3, s=mix.s, energy=E)


def sauter_transmission(m: float, v: float, length: Optional[float] = None) -> float:
    """
    Sauter transmission exponent exp(-pi m^2 / v) for a constant field of slope v.

    It equals exp(-2 gamma_pure_vector(m, v)). The estimate holds for
    2m/L < v < m^2; outside that range a warning is logged (the lower bound is
    only checked when the field length L is given).

    Raises:
        DomainError: If v <= 0.
    """
    if not v > 0.0:
        raise DomainError(f"field slope must be > 0, got {v}")

    if v >= m * m or (length is not None and v <= 2.0 * m / length):
        logger.warning("field slope %g outside the Sauter validity range (2m/L, m^2)", v)

    return math.exp(-math.pi * m * m / v)
