import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import integrate, optimize

import model
from errors import BracketError, DomainError, NotFoundError, PreconditionError
from logging_config import get_logger

"""
Direct integration of the coupled radial system for reduced wavefunctions
u = r f and v = r g,

    du/dr + (k/r) u - (E - V + m + S) v = 0
    dv/dr - (k/r) v + (E - V - m - S) u = 0,

for any vector/scalar mix, with an eigenvalue search for strictly bound states
(s >= 1/2) and a truncated-domain estimate for quasi-bound levels (s < 1/2).
"""

logger = get_logger(__name__)

# r_min as a fraction of r_max
ORIGIN_FRACTION = 1e-6
OVERFLOW_LIMIT = 1e250

QUASIBOUND_SCAN_POINTS = 120
QUASIBOUND_TRUNCATION_FACTORS = (0.9, 1.0, 1.1)
# deepest truncation into the forbidden region, in units of 1/sqrt(lambda)
FORBIDDEN_DEPTH = 6.0

_ROOT_RTOL = 4.5e-15


class RadialGrid(BaseModel):
    """
    Uniform radial grid [r_min, r_max] with n steps (n + 1 points).

    Attributes:
        r_min (float): First radius, > 0 (the system is singular at r = 0).
        r_max (float): Outer radius, > r_min.
        n (int): Number of steps, >= 100.
    """
    model_config = ConfigDict(frozen=True)

    r_min: float = Field(gt=0.0, allow_inf_nan=False)
    r_max: float = Field(allow_inf_nan=False)
    n: int = Field(ge=100)

    @model_validator(mode="after")
    def _ordered(self) -> "RadialGrid":
        if not self.r_min < self.r_max:
            raise ValueError(f"need r_min < r_max, got {self.r_min} and {self.r_max}")
        return self

    @classmethod
    def from_outer_radius(cls, r_max: float, n: int) -> "RadialGrid":
        """Grid starting at ORIGIN_FRACTION * r_max."""
        return cls(r_min=ORIGIN_FRACTION * r_max, r_max=r_max, n=n)

    @property
    def step(self) -> float:
        return (self.r_max - self.r_min) / self.n

    def radii(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.n + 1)


@dataclass(frozen=True, eq=False)
class RadialSolution:
    """
    Reduced radial wavefunctions on a grid.

    Attributes:
        r (np.ndarray): Radii.
        u (np.ndarray): Upper reduced component r f(r).
        v (np.ndarray): Lower reduced component r g(r).
        energy (float): Energy the solution belongs to.
        node_count (int): Strict sign changes of u on the interior points.
        grid (RadialGrid or None): Grid the solution was integrated on, if uniform.
        diverged (bool): Outward integration overflowed; entries after the
            overflow are NaN.
        divergence_sign (int): Sign of u when the overflow happened, 0 otherwise.
    """
    r: np.ndarray
    u: np.ndarray
    v: np.ndarray
    energy: float
    node_count: int
    grid: Optional[RadialGrid] = None
    diverged: bool = False
    divergence_sign: int = 0


@dataclass(frozen=True)
class QuasiBoundEstimate:
    """
    Quasi-bound level from the truncated-domain estimator.

    Attributes:
        energy (float): Level with the Dirichlet condition at the nominal truncation radius.
        error_bar (float): Spread of the level when the truncation radius moves by +-10%.
        truncation_radius (float): Nominal truncation radius at that energy.
    """
    energy: float
    error_bar: float
    truncation_radius: float


def count_nodes(u: np.ndarray) -> int:
    """
    Count strict sign changes of u on the interior points; exact zeros and
    non-finite entries are skipped.
    """
    interior = np.asarray(u, dtype=float)[1:-1]
    signs = np.sign(interior[np.isfinite(interior)])
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _sign_changes(u: np.ndarray) -> int:
    values = np.asarray(u, dtype=float)
    signs = np.sign(values[np.isfinite(values)])
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _system_matrix(m: float, mix: model.PotentialMix, k: int, E: float, r: np.ndarray) -> np.ndarray:
    """A(r) of y' = A(r) y for y = (u, v), stacked along the first axis."""
    a = np.empty((r.size, 2, 2))
    a[:, 0, 0] = -k / r
    a[:, 0, 1] = E + m - mix.continuum_slope * r
    a[:, 1, 0] = -(E - m - mix.lam * r)
    a[:, 1, 1] = k / r
    return a


def _rk4_propagators(m: float, mix: model.PotentialMix, k: int, E: float, grid: RadialGrid) -> np.ndarray:
    """
    One-step RK4 propagators y_{i+1} = M_i y_i of the linear system.
    """
    r = grid.radii()
    h = grid.step
    eye = np.eye(2)

    start = _system_matrix(m, mix, k, E, r[:-1])
    middle = _system_matrix(m, mix, k, E, r[:-1] + 0.5 * h)
    end = _system_matrix(m, mix, k, E, r[1:])

    k1 = start
    k2 = middle @ (eye + 0.5 * h * k1)
    k3 = middle @ (eye + 0.5 * h * k2)
    k4 = end @ (eye + h * k3)

    return eye + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _launch(m: float, k: int, E: float, r0: float) -> tuple:
    """
    Regular solution near the origin: for k < 0 u ~ r^|k| leads, for k > 0 v ~ r^k leads.
    """
    if k < 0:
        u0 = r0 ** (-k)
        v0 = -(E - m) / (1 - 2 * k) * r0 ** (1 - k)
    else:
        v0 = r0 ** k
        u0 = (E + m) / (2 * k + 1) * r0 ** (k + 1)
    return u0, v0


def integrate_radial(m: float, mix: model.PotentialMix, k: int, E: float, grid: RadialGrid) -> RadialSolution:
    """
    Integrate the radial system outward with classical fourth-order Runge-Kutta.

    The solution is launched from its regular series at grid.r_min and is not
    normalized. A growing solution that overflows is reported through
    `diverged` and `divergence_sign` rather than raised.

    Args:
        m (float): Mass.
        mix (PotentialMix): The potential.
        k (int): Dirac quantum number, nonzero.
        E (float): Trial energy.
        grid (RadialGrid): Integration grid.

    Returns:
        RadialSolution: u and v on every grid point.

    Raises:
        DomainError: If k == 0.
    """
    if k == 0:
        raise DomainError("k must be nonzero")

    steps = _rk4_propagators(m, mix, k, E, grid).reshape(grid.n, 4).tolist()
    u_i, v_i = _launch(m, k, E, grid.r_min)
    us = [u_i]
    vs = [v_i]
    diverged = False
    sign = 0

    for a, b, c, d in steps:
        u_i, v_i = a * u_i + b * v_i, c * u_i + d * v_i
        if not (abs(u_i) < OVERFLOW_LIMIT and abs(v_i) < OVERFLOW_LIMIT):
            diverged = True
            sign = 1 if u_i > 0 else -1 if u_i < 0 else 0
            break
        us.append(u_i)
        vs.append(v_i)

    u = np.full(grid.n + 1, np.nan)
    v = np.full(grid.n + 1, np.nan)
    u[:len(us)] = us
    v[:len(vs)] = vs

    if diverged:
        logger.debug("E=%.12g diverged at r=%.6g with sign %d", E, grid.r_min + len(us) * grid.step, sign)

    return RadialSolution(r=grid.radii(), u=u, v=v, energy=E, node_count=count_nodes(u),
                          grid=grid, diverged=diverged, divergence_sign=sign)


def _tail_value(solution: RadialSolution) -> float:
    """u(r_max), pinned at +-OVERFLOW_LIMIT once the shot has diverged."""
    if solution.diverged:
        return solution.divergence_sign * OVERFLOW_LIMIT
    return float(np.clip(solution.u[-1], -OVERFLOW_LIMIT, OVERFLOW_LIMIT))


def normalize(solution: RadialSolution) -> RadialSolution:
    """
    Scale u and v so that the trapezoid integral of u^2 + v^2 is 1 and the
    largest |u| is positive.
    """
    u = np.nan_to_num(solution.u)
    v = np.nan_to_num(solution.v)
    norm = integrate.trapezoid(u * u + v * v, solution.r)
    scale = 1.0 / math.sqrt(norm)
    if u[np.argmax(np.abs(u))] < 0:
        scale = -scale

    return replace(solution, u=u * scale, v=v * scale)


def _truncate_tail(solution: RadialSolution, m: float, mix: model.PotentialMix) -> RadialSolution:
    """
    Zero the growing tail that any finite-precision eigenvalue picks up: beyond
    the turning point, everything from the smallest |u| outward is set to 0.
    """
    r1 = model.turning_points(m, solution.energy, mix).r1
    beyond = np.nonzero(solution.r > r1)[0]
    if beyond.size == 0:
        return solution

    start = beyond[0]
    magnitude = np.abs(solution.u[start:])
    magnitude = np.where(np.isfinite(magnitude), magnitude, np.inf)
    cut = start + int(np.argmin(magnitude))

    u = solution.u.copy()
    v = solution.v.copy()
    u[cut:] = 0.0
    v[cut:] = 0.0

    return replace(solution, u=u, v=v, node_count=count_nodes(u), diverged=False, divergence_sign=0)


def _isolate_level(shoot, lo: float, hi: float, nodes: int, tol: float) -> tuple:
    """
    Narrow [lo, hi] until it holds only the level with `nodes` nodes, using the
    count of sign changes of u (which equals the number of levels below E).
    """
    count_lo = _sign_changes(shoot(lo).u)
    count_hi = _sign_changes(shoot(hi).u)
    if not count_lo <= nodes < count_hi:
        raise BracketError(f"bracket [{lo}, {hi}] covers node counts {count_lo}..{count_hi - 1}, not {nodes}")

    while (count_lo != nodes or count_hi != nodes + 1) and hi - lo > tol:
        mid = 0.5 * (lo + hi)
        count = _sign_changes(shoot(mid).u)
        if count <= nodes:
            lo, count_lo = mid, count
        else:
            hi, count_hi = mid, count

    logger.debug("level with %d nodes isolated in [%.12g, %.12g]", nodes, lo, hi)
    return lo, hi


def find_bound_state(m: float, mix: model.PotentialMix, k: int, bracket: tuple, grid: RadialGrid,
                     nodes: Optional[int] = None, energy_tol: float = 1e-10) -> RadialSolution:
    """
    Locate a strictly bound eigenstate as the root of u(r_max) in E.

    The root is bracketed by a sign change of u(r_max) and found with Brent's
    method; a diverged shot counts as u(r_max) = +-OVERFLOW_LIMIT, which keeps
    the tail value continuous in E.

    If `nodes` is given the bracket is first narrowed to the level with that
    many nodes. Without it, a bracket holding several levels is narrowed to
    the lowest of them.
    The returned solution has its diverging tail zeroed (see _truncate_tail)
    and is normalized.

    Args:
        m (float): Mass.
        mix (PotentialMix): The potential, s >= 0.5.
        k (int): Dirac quantum number.
        bracket (tuple): (E_lo, E_hi).
        grid (RadialGrid): Integration grid.
        nodes (int, optional): Node count of the wanted level (0 = ground state).
        energy_tol (float, optional): Absolute energy tolerance. Defaults to 1e-10.

    Returns:
        RadialSolution: The normalized eigenstate.

    Raises:
        PreconditionError: If s < 0.5 (use estimate_quasibound_energy instead).
        BracketError: If the bracket does not straddle exactly one sign change.
    """
    if model.classify_binding(mix) is not model.BindingClass.STRICTLY_BOUND:
        raise PreconditionError(f"s={mix.s} < 0.5 has no strictly bound states; use estimate_quasibound_energy")

    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")

    shots = {}

    def shoot(E: float) -> RadialSolution:
        if E not in shots:
            shots[E] = integrate_radial(m, mix, k, E, grid)
        return shots[E]

    if nodes is None:
        count_lo = _sign_changes(shoot(lo).u)
        if _sign_changes(shoot(hi).u) - count_lo > 1:
            logger.debug("bracket [%.12g, %.12g] holds several levels; taking the lowest", lo, hi)
            nodes = count_lo

    if nodes is not None:
        lo, hi = _isolate_level(shoot, lo, hi, nodes, energy_tol)

    sign_lo = np.sign(_tail_value(shoot(lo)))
    sign_hi = np.sign(_tail_value(shoot(hi)))
    if sign_lo == 0 or sign_lo == sign_hi:
        raise BracketError(f"u(r_max) has the same sign at both ends of [{lo}, {hi}]")

    energy = optimize.brentq(lambda E: _tail_value(shoot(E)), lo, hi,
                             xtol=energy_tol, rtol=_ROOT_RTOL, maxiter=200)
    logger.debug("bound state s=%g k=%d: E=%.15g after %d shots", mix.s, k, energy, len(shots))

    return normalize(_truncate_tail(shoot(energy), m, mix))


def truncation_radius(m: float, E: float, mix: model.PotentialMix) -> float:
    """
    Midpoint of the forbidden region between r1 and the continuum edge r3,
    capped at FORBIDDEN_DEPTH / sqrt(lambda) beyond r1 (r3 runs off to
    infinity as s approaches 1/2).
    """
    points = model.turning_points(m, E, mix)
    midpoint = 0.5 * (points.r1 + points.r3)
    return min(midpoint, points.r1 + FORBIDDEN_DEPTH / math.sqrt(mix.lam))


def estimate_quasibound_energy(m: float, mix: model.PotentialMix, k: int, grid_hint: RadialGrid,
                               truncation: float = 1.0) -> float:
    """
    Estimate the lowest quasi-bound level of a vector-dominated mix.

    The outward solution is integrated on [r_min, r_cut] with
    r_cut = truncation * truncation_radius(E), and the lowest E > m with
    u(r_cut) = 0 is bracketed by a scan over (m, m + 10 sqrt(lambda)] and
    refined by bisection. This is an estimate: the true state is a resonance.

    Args:
        m (float): Mass.
        mix (PotentialMix): The potential, s < 0.5.
        k (int): Dirac quantum number.
        grid_hint (RadialGrid): Supplies the number of steps n.
        truncation (float, optional): Factor applied to the truncation radius. Defaults to 1.0.

    Returns:
        float: The estimated energy.

    Raises:
        PreconditionError: If s >= 0.5 (use find_bound_state instead).
        NotFoundError: If no sign change is found in the scan window.
    """
    if model.classify_binding(mix) is model.BindingClass.STRICTLY_BOUND:
        raise PreconditionError(f"s={mix.s} >= 0.5 is strictly bound; use find_bound_state")

    def endpoint(E: float) -> float:
        r_cut = truncation * truncation_radius(m, E, mix)
        solution = integrate_radial(m, mix, k, E, RadialGrid.from_outer_radius(r_cut, grid_hint.n))
        if solution.diverged:
            return float(solution.divergence_sign)
        return solution.u[-1]

    width = 10.0 * math.sqrt(mix.lam)
    energies = m + width * np.arange(1, QUASIBOUND_SCAN_POINTS + 1) / QUASIBOUND_SCAN_POINTS
    previous = endpoint(energies[0])

    for lower, upper in zip(energies[:-1], energies[1:]):
        current = endpoint(upper)
        if previous * current < 0.0:
            energy = optimize.bisect(endpoint, lower, upper, xtol=1e-12, rtol=_ROOT_RTOL, maxiter=200)
            logger.debug("quasi-bound s=%g truncation=%g: E=%.12g", mix.s, truncation, energy)
            return energy
        previous = current

    raise NotFoundError(f"no quasi-bound level in ({m}, {m + width}] for s={mix.s}, lambda={mix.lam}")


def estimate_quasibound(m: float, mix: model.PotentialMix, k: int, grid_hint: RadialGrid) -> QuasiBoundEstimate:
    """
    Quasi-bound estimate with its truncation-sensitivity error bar: the level is
    re-solved with the truncation radius moved by -10% and +10% and the spread
    of the three energies is reported.
    """
    energies = {factor: estimate_quasibound_energy(m, mix, k, grid_hint, truncation=factor)
                for factor in QUASIBOUND_TRUNCATION_FACTORS}
    energy = energies[1.0]
    spread = max(energies.values()) - min(energies.values())

    return QuasiBoundEstimate(energy=energy, error_bar=spread,
                              truncation_radius=truncation_radius(m, energy, mix))
