import math
import numbers

import numpy as np
from scipy import optimize

from errors import DomainError
from logging_config import get_logger

"""
Special functions the linear-potential solutions are built from:
Airy Ai (with Ai' and the negative zeros of Ai) and the order-zero Bessel
functions J0, I0 and K0.

Ai on [AIRY_SERIES_MIN, AIRY_SERIES_MAX] is carried out from the origin by
short Taylor steps generated from Ai'' = x Ai, so no sum ever cancels badly.
Between AIRY_SERIES_MAX and AIRY_DECAYING_MIN it comes from the integral
representations of K_{1/3} and K_{2/3}, and beyond both ends from the standard
asymptotic expansions. J0, I0 and K0 use Maclaurin series for small arguments
and asymptotic expansions for large ones; K0 also has a middle branch where
K0(x) = int_0^inf exp(-x cosh t) dt is summed with the trapezoid rule. The
asymptotic sums are cut at their smallest term.

Every function accepts a float or an array and returns the same kind.
All functions are pure; nothing is cached.
"""

logger = get_logger(__name__)

# Ai(0) = 3^(-2/3) / Gamma(2/3) and -Ai'(0) = 3^(-1/3) / Gamma(1/3)
AIRY_C1 = 0.355028053887817239
AIRY_C2 = 0.258819403792806798

# Switchover points between branches
AIRY_SERIES_MIN = -8.0
AIRY_SERIES_MAX = 1.0
AIRY_DECAYING_MIN = 8.0
J0_SWITCH = 12.0
I0_SWITCH = 15.0
K0_SERIES_MAX = 2.0
K0_SWITCH = 12.0

AIRY_TAYLOR_STEP = 0.5
AIRY_ZERO_SCAN_STEP = 0.1
AIRY_ZERO_SCAN_CHUNK = 2.0

EULER_GAMMA = 0.57721566490153286

_MAX_TERMS = 200
_TAYLOR_TERMS = 32
_EPS = np.finfo(float).eps
_SQRT_PI = math.sqrt(math.pi)

# trapezoid rule for int_0^inf exp(-z cosh t) cosh(nu t) dt
_QUAD_STEP = 0.1
_QUAD_NODES = np.arange(0.0, 7.5, _QUAD_STEP)
_QUAD_WEIGHTS = np.full(_QUAD_NODES.shape, _QUAD_STEP)
_QUAD_WEIGHTS[0] *= 0.5


def _airy_coefficients(count: int) -> tuple:
    u = np.empty(count)
    v = np.empty(count)
    u[0] = v[0] = 1.0
    for k in range(1, count):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
        v[k] = -(6 * k + 1) / (6 * k - 1) * u[k]
    return u, v


def _bessel_coefficients(count: int) -> np.ndarray:
    # (1^2 3^2 ... (2k-1)^2) / (k! 8^k); the order-zero Hankel coefficients up to sign
    b = np.empty(count)
    b[0] = 1.0
    for k in range(1, count):
        b[k] = b[k - 1] * (2 * k - 1) ** 2 / (8.0 * k)
    return b


_ALT = (-1.0) ** np.arange(40)
_AIRY_U, _AIRY_V = _airy_coefficients(40)
_BESSEL_B = _bessel_coefficients(40)


def _prepare(x) -> tuple:
    """
    Convert the argument to a flat float array and remember how to give it back.

    Raises:
        DomainError: If any element is not finite.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"argument must be finite, got {x!r}")

    return arr.ravel().copy(), arr.shape, arr.ndim == 0


def _restore(values: np.ndarray, shape: tuple, scalar: bool):
    values = values.reshape(shape)
    if scalar:
        return float(values)
    return values


def _asymptotic_sum(coefficients: np.ndarray, w: np.ndarray) -> np.ndarray:
    """
    Sum c_k w^k for a divergent asymptotic series, stopping each element at its
    smallest term (or once the terms no longer change the total).
    """
    total = np.full_like(w, coefficients[0])
    power = np.ones_like(w)
    previous = np.full_like(w, abs(coefficients[0]))
    active = np.ones(w.shape, dtype=bool)

    for c in coefficients[1:]:
        power = power * w
        term = c * power
        size = np.abs(term)
        active &= size < previous
        total = np.where(active, total + term, total)
        active &= size > _EPS * np.abs(total)
        previous = size
        if not active.any():
            break

    return total


def _taylor_coefficients(value: float, slope: float, x0: float) -> list:
    # Taylor coefficients of the solution of y'' = x y about x0
    c = [value, slope, 0.5 * x0 * value]
    for n in range(1, _TAYLOR_TERMS - 2):
        c.append((x0 * c[n] + c[n - 1]) / ((n + 2) * (n + 1)))
    return c


def _taylor_eval(c: list, d) -> tuple:
    """Horner evaluation of the polynomial and its derivative at offset d."""
    total = c[-1]
    slope = 0.0 * d
    for coefficient in reversed(c[:-1]):
        slope = slope * d + total
        total = total * d + coefficient
    return total, slope


def _airy_near_origin(x: np.ndarray) -> tuple:
    """
    Ai and Ai' on [AIRY_SERIES_MIN, AIRY_SERIES_MAX].

    Anchors sit every AIRY_TAYLOR_STEP from the origin down; each anchor's
    (Ai, Ai') comes from the Taylor step off the previous one, and each x is
    evaluated from its nearest anchor. Offsets are at most AIRY_TAYLOR_STEP / 2
    (up to AIRY_SERIES_MAX on the positive side), where the terms fall off
    without cancellation.
    """
    anchor_of = np.maximum(np.rint(-x / AIRY_TAYLOR_STEP), 0.0).astype(int)
    ai = np.empty_like(x)
    aip = np.empty_like(x)

    value, slope = AIRY_C1, -AIRY_C2
    for anchor in range(int(anchor_of.max(initial=0)) + 1):
        x0 = -anchor * AIRY_TAYLOR_STEP
        c = _taylor_coefficients(value, slope, x0)
        here = anchor_of == anchor
        if here.any():
            ai[here], aip[here] = _taylor_eval(c, x[here] - x0)
        value, slope = _taylor_eval(c, -AIRY_TAYLOR_STEP)

    return ai, aip


def _airy_quadrature(x: np.ndarray) -> tuple:
    # Ai = sqrt(x/3) K_{1/3}(zeta) / pi, Ai' = -x K_{2/3}(zeta) / (pi sqrt 3); x > 0
    zeta = 2.0 / 3.0 * x ** 1.5
    with np.errstate(under="ignore"):
        decay = np.exp(-np.outer(zeta, np.cosh(_QUAD_NODES)))
    k13 = decay @ (_QUAD_WEIGHTS * np.cosh(_QUAD_NODES / 3.0))
    k23 = decay @ (_QUAD_WEIGHTS * np.cosh(2.0 * _QUAD_NODES / 3.0))

    ai = np.sqrt(x / 3.0) / math.pi * k13
    aip = -x / (math.pi * math.sqrt(3.0)) * k23

    return ai, aip


def _airy_decaying(z: np.ndarray) -> tuple:
    zeta = 2.0 / 3.0 * z ** 1.5
    w = 1.0 / zeta
    su = _asymptotic_sum(_ALT * _AIRY_U, w)
    sv = _asymptotic_sum(_ALT * _AIRY_V, w)

    with np.errstate(under="ignore"):
        prefactor = np.exp(-zeta) / (2.0 * _SQRT_PI)
        ai = prefactor * su / z ** 0.25
        aip = -prefactor * z ** 0.25 * sv

    return ai, aip


def _airy_oscillating(z: np.ndarray) -> tuple:
    # argument is -z, z > 0
    zeta = 2.0 / 3.0 * z ** 1.5
    w2 = 1.0 / (zeta * zeta)
    half = len(_AIRY_U) // 2

    pu = _asymptotic_sum(_ALT[:half] * _AIRY_U[0::2], w2)
    qu = _asymptotic_sum(_ALT[:half] * _AIRY_U[1::2], w2) / zeta
    pv = _asymptotic_sum(_ALT[:half] * _AIRY_V[0::2], w2)
    qv = _asymptotic_sum(_ALT[:half] * _AIRY_V[1::2], w2) / zeta

    theta = zeta - math.pi / 4.0
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)

    ai = (cos_t * pu + sin_t * qu) / (_SQRT_PI * z ** 0.25)
    aip = z ** 0.25 * (sin_t * pv - cos_t * qv) / _SQRT_PI

    return ai, aip


def airy_ai_and_prime(x) -> tuple:
    """
    Evaluate Ai(x) and Ai'(x) together.

    Taylor steps from the origin cover [AIRY_SERIES_MIN, AIRY_SERIES_MAX],
    the K_{1/3}/K_{2/3} quadrature covers (AIRY_SERIES_MAX, AIRY_DECAYING_MIN],
    and the asymptotic expansions take over outside.

    Args:
        x (float or np.ndarray): Finite argument(s).

    Returns:
        tuple: (Ai(x), Ai'(x)), floats for a scalar argument.

    Raises:
        DomainError: If x is not finite.
    """
    arr, shape, scalar = _prepare(x)
    ai = np.empty_like(arr)
    aip = np.empty_like(arr)

    oscillating = arr < AIRY_SERIES_MIN
    decaying = arr > AIRY_DECAYING_MIN
    near = ~oscillating & (arr <= AIRY_SERIES_MAX)
    quadrature = (arr > AIRY_SERIES_MAX) & ~decaying

    if near.any():
        ai[near], aip[near] = _airy_near_origin(arr[near])
    if quadrature.any():
        ai[quadrature], aip[quadrature] = _airy_quadrature(arr[quadrature])
    if decaying.any():
        ai[decaying], aip[decaying] = _airy_decaying(arr[decaying])
    if oscillating.any():
        ai[oscillating], aip[oscillating] = _airy_oscillating(-arr[oscillating])

    return _restore(ai, shape, scalar), _restore(aip, shape, scalar)


def airy_ai(x):
    """
    Airy function Ai, the solution of u'' = x u that decays for x -> +inf.

    Args:
        x (float or np.ndarray): Finite argument(s).

    Returns:
        float or np.ndarray: Ai(x).
    """
    return airy_ai_and_prime(x)[0]


def airy_ai_prime(x):
    """Derivative Ai'(x)."""
    return airy_ai_and_prime(x)[1]


def _refine_airy_zero(lower: float, upper: float) -> float:
    try:
        result = optimize.root_scalar(airy_ai_and_prime, x0=0.5 * (lower + upper), fprime=True,
                                      method="newton", xtol=1e-14, maxiter=20)
        if result.converged and lower <= result.root <= upper:
            return result.root
    except RuntimeError:
        pass

    logger.debug("newton left [%g, %g]; falling back to brentq", lower, upper)
    return optimize.brentq(airy_ai, lower, upper, xtol=1e-14, rtol=1e-15, maxiter=200)


def airy_ai_zero(index: int) -> float:
    """
    Return the index-th zero of Ai (all zeros are negative).

    Sign changes are counted on a coarse grid of step AIRY_ZERO_SCAN_STEP moving
    down from the origin, one chunk of AIRY_ZERO_SCAN_CHUNK at a time; only the
    index-th is refined, by Newton steps on (Ai, Ai') kept inside its bracket.

    Args:
        index (int): 1-based zero index; 1 is the zero closest to the origin.

    Returns:
        float: The zero, so that zero(i + 1) < zero(i) < 0.

    Raises:
        DomainError: If index is not an integer >= 1.
    """
    if isinstance(index, bool) or not isinstance(index, numbers.Integral) or index < 1:
        raise DomainError(f"Airy zero index must be an integer >= 1, got {index!r}")

    points = int(round(AIRY_ZERO_SCAN_CHUNK / AIRY_ZERO_SCAN_STEP)) + 1
    seen = 0
    top = 0.0
    while True:
        grid = np.linspace(top, top - AIRY_ZERO_SCAN_CHUNK, points)
        values = airy_ai(grid)
        crossings = np.nonzero(values[:-1] * values[1:] < 0.0)[0]
        if seen + len(crossings) >= index:
            i = crossings[index - seen - 1]
            return _refine_airy_zero(grid[i + 1], grid[i])
        seen += len(crossings)
        top = grid[-1]


def _j0_series(x: np.ndarray) -> np.ndarray:
    y = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, _MAX_TERMS):
        term = term * y / (k * k)
        total += term
        if np.max(np.abs(term), initial=0.0) < 1e-18:
            break
    return total


def _i0_series(x: np.ndarray) -> np.ndarray:
    y = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, _MAX_TERMS):
        term = term * y / (k * k)
        total += term
        if np.all(term <= _EPS * 0.1 * total):
            break
    return total


def _j0_asymptotic(x: np.ndarray) -> np.ndarray:
    w2 = 1.0 / (x * x)
    half = len(_BESSEL_B) // 2
    p = _asymptotic_sum(_ALT[:half] * _BESSEL_B[0::2], w2)
    q = -_asymptotic_sum(_ALT[:half] * _BESSEL_B[1::2], w2) / x
    chi = x - math.pi / 4.0
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _i0_asymptotic(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.exp(x) / np.sqrt(2.0 * math.pi * x) * _asymptotic_sum(_BESSEL_B, 1.0 / x)


def _k0_series(x: np.ndarray) -> np.ndarray:
    y = 0.25 * x * x
    term = np.ones_like(x)
    i0 = np.ones_like(x)
    harmonic = 0.0
    tail = np.zeros_like(x)
    for k in range(1, _MAX_TERMS):
        term = term * y / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if np.all(term * harmonic <= _EPS * 0.1 * tail):
            break
    return -(np.log(0.5 * x) + EULER_GAMMA) * i0 + tail


def _k0_quadrature(x: np.ndarray) -> np.ndarray:
    with np.errstate(under="ignore"):
        return np.exp(-np.outer(x, np.cosh(_QUAD_NODES))) @ _QUAD_WEIGHTS


def _k0_asymptotic(x: np.ndarray) -> np.ndarray:
    with np.errstate(under="ignore"):
        return np.sqrt(math.pi / (2.0 * x)) * np.exp(-x) * _asymptotic_sum(_ALT * _BESSEL_B, 1.0 / x)


def bessel_j0(x):
    """
    Bessel function of the first kind of order zero.

    Args:
        x (float or np.ndarray): Finite argument(s); J0 is even.

    Returns:
        float or np.ndarray: J0(x).
    """
    arr, shape, scalar = _prepare(x)
    arr = np.abs(arr)
    out = np.empty_like(arr)

    small = arr <= J0_SWITCH
    if small.any():
        out[small] = _j0_series(arr[small])
    if (~small).any():
        out[~small] = _j0_asymptotic(arr[~small])

    return _restore(out, shape, scalar)


def bessel_i0(x):
    """
    Modified Bessel function of the first kind of order zero.

    Args:
        x (float or np.ndarray): Finite argument(s); I0 is even.

    Returns:
        float or np.ndarray: I0(x), >= 1.
    """
    arr, shape, scalar = _prepare(x)
    arr = np.abs(arr)
    out = np.empty_like(arr)

    small = arr <= I0_SWITCH
    if small.any():
        out[small] = _i0_series(arr[small])
    if (~small).any():
        out[~small] = _i0_asymptotic(arr[~small])

    return _restore(out, shape, scalar)


def bessel_k0(x):
    """
    Modified Bessel function of the second kind of order zero.

    Args:
        x (float or np.ndarray): Argument(s), all > 0.

    Returns:
        float or np.ndarray: K0(x), positive and decreasing.

    Raises:
        DomainError: If any x is not finite or x <= 0 (K0 diverges at the origin).
    """
    arr, shape, scalar = _prepare(x)
    if np.any(arr <= 0.0):
        raise DomainError(f"bessel_k0 requires x > 0, got {x!r}")

    out = np.empty_like(arr)
    series = arr <= K0_SERIES_MAX
    asymptotic = arr > K0_SWITCH
    middle = ~series & ~asymptotic

    if series.any():
        out[series] = _k0_series(arr[series])
    if middle.any():
        out[middle] = _k0_quadrature(arr[middle])
    if asymptotic.any():
        out[asymptotic] = _k0_asymptotic(arr[asymptotic])

    return _restore(out, shape, scalar)
