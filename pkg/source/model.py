import enum
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from errors import DomainError

"""
Domain types for the one-body problem: the particle, the vector/scalar mix of
the linear potential and the Dirac quantum number k, plus the region geometry
(classical turning point, continuum edges, binding class).

Natural units throughout (hbar = c = 1): masses and energies in GeV, the slope
lambda in GeV^2, radii in GeV^-1.
"""


class Particle(BaseModel):
    """
    A particle of mass m moving in the static potential.

    Attributes:
        m (float): Mass, > 0.
    """
    model_config = ConfigDict(frozen=True)

    m: float = Field(gt=0.0, allow_inf_nan=False)


class PotentialMix(BaseModel):
    """
    Attractive linear potential lambda*r split into a scalar fraction s and a
    vector fraction 1 - s.

    Attributes:
        lam (float): Slope lambda, > 0.
        s (float): Scalar fraction in [0, 1].
    """
    model_config = ConfigDict(frozen=True)

    lam: float = Field(gt=0.0, allow_inf_nan=False)
    s: float = Field(ge=0.0, le=1.0)

    @property
    def vector_fraction(self) -> float:
        return 1.0 - self.s

    @property
    def continuum_slope(self) -> float:
        """Net slope (1 - 2s) lambda of the top of the negative-energy continuum."""
        return (1.0 - 2.0 * self.s) * self.lam


class QuantumNumbers(BaseModel):
    """
    Dirac quantum number k, from which j (and l, l') follow.

    k = -(j + 1/2) when j = l + 1/2 and k = +(j + 1/2) when j = l - 1/2.
    The ground state has k = -1 (j = 1/2, l = 0).

    Attributes:
        k (int): Nonzero integer.
    """
    model_config = ConfigDict(frozen=True)

    k: int

    @field_validator("k")
    @classmethod
    def _nonzero(cls, value: int) -> int:
        if value == 0:
            raise ValueError("k must be a nonzero integer")
        return value

    @classmethod
    def from_jl(cls, j: float, l: int) -> "QuantumNumbers":
        """
        Build k from total and orbital angular momentum.

        Args:
            j (float): Total angular momentum, a positive half-integer.
            l (int): Orbital angular momentum, l = j +- 1/2.

        Returns:
            QuantumNumbers: The matching k.

        Raises:
            DomainError: If (j, l) is not an allowed pair.
        """
        if math.isclose(j, l + 0.5):
            return cls(k=-int(round(j + 0.5)))
        if l >= 1 and math.isclose(j, l - 0.5):
            return cls(k=int(round(j + 0.5)))
        raise DomainError(f"no Dirac state with j={j} and l={l}")

    @property
    def j(self) -> float:
        return abs(self.k) - 0.5

    @property
    def l(self) -> int:
        return -self.k - 1 if self.k < 0 else self.k

    @property
    def l_prime(self) -> int:
        """Orbital angular momentum of the lower component."""
        return self.l + 1 if self.k < 0 else self.l - 1


class BindingClass(str, enum.Enum):
    STRICTLY_BOUND = "StrictlyBound"
    QUASI_BOUND = "QuasiBound"


class TurningPoints(BaseModel):
    """
    Radii bounding the allowed, forbidden and lifted-continuum regions.

    Attributes:
        r1 (float): Classical turning point, m + lambda r1 = E.
        r2 (float or None): Where -m + lambda r meets E (pure-vector continuum edge).
        r3 (float or None): Where -m + (1 - 2s) lambda r meets E.
    """
    model_config = ConfigDict(frozen=True)

    r1: float = Field(gt=0.0)
    r2: Optional[float] = None
    r3: Optional[float] = None

    @model_validator(mode="after")
    def _ordered(self) -> "TurningPoints":
        if (self.r2 is None) != (self.r3 is None):
            raise ValueError("r2 and r3 are either both present or both absent")
        if self.r2 is not None and not (self.r1 < self.r2 <= self.r3):
            raise ValueError(f"turning points out of order: {self.r1}, {self.r2}, {self.r3}")
        return self

    @property
    def has_lifted_continuum(self) -> bool:
        return self.r3 is not None


def potentials(mix: PotentialMix, r):
    """
    Vector and scalar parts of the linear potential at radius r.

    Args:
        mix (PotentialMix): Slope and scalar fraction.
        r (float or np.ndarray): Radius (or radii), >= 0.

    Returns:
        tuple: (V, S) with V = (1 - s) lambda r and S = s lambda r.

    Raises:
        DomainError: If any r is negative.
    """
    radius = np.asarray(r, dtype=float)
    if np.any(radius < 0.0):
        raise DomainError(f"radius must be >= 0, got {r!r}")

    total = mix.lam * radius
    scalar = mix.s * total
    vector = total - scalar

    if radius.ndim == 0:
        return float(vector), float(scalar)
    return vector, scalar


def negative_continuum_top(m: float, mix: PotentialMix, r):
    """
    Top of the negative-energy continuum, -m + (1 - 2s) lambda r.

    The vector part lifts it by (1 - s) lambda r and the scalar part lowers it
    by s lambda r, so it stays at -m for an equal mix.
    """
    top = -m + mix.continuum_slope * np.asarray(r, dtype=float)
    if top.ndim == 0:
        return float(top)
    return top


def turning_points(m: float, E: float, mix: PotentialMix) -> TurningPoints:
    """
    Classical turning point and continuum edges for a positive-energy state.

    r1 does not depend on s because V + S = lambda r. r2 and r3 exist only when
    the vector part dominates (s < 1/2); for s >= 1/2 the continuum is never
    lifted and both are reported absent.

    Args:
        m (float): Mass.
        E (float): Energy, must exceed m.
        mix (PotentialMix): The potential.

    Returns:
        TurningPoints: r1 and, for s < 1/2, r2 and r3.

    Raises:
        DomainError: If E <= m.
    """
    if not E > m:
        raise DomainError(f"turning points need E > m, got E={E}, m={m}")

    r1 = (E - m) / mix.lam
    if mix.s >= 0.5:
        return TurningPoints(r1=r1)

    r2 = (E + m) / mix.lam
    r3 = (E + m) / ((1.0 - 2.0 * mix.s) * mix.lam)
    return TurningPoints(r1=r1, r2=r2, r3=r3)


def classify_binding(mix: PotentialMix) -> BindingClass:
    """
    Strictly bound when the scalar fraction is at least one half, otherwise
    the state can tunnel into lifted negative-energy states.
    """
    if mix.s >= 0.5:
        return BindingClass.STRICTLY_BOUND
    return BindingClass.QUASI_BOUND
