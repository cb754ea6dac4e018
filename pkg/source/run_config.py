import os
from typing import Literal, Optional

import dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

import model
from errors import ConfigError
from shooting import RadialGrid

"""
Run configuration: defaults < key=value config file < command-line flags.

A config file holds one `key=value` per line with `#` comments, e.g.

    # equal-mix ground state
    m=1.0
    lambda=0.2
    s=0.5
"""

SWEEP_PARAMETERS = ("s", "lambda", "m")


class RunConfig(BaseModel):
    """
    Every setting a command can use.

    Attributes:
        m (float): Mass in GeV. Defaults to 1.0.
        lam (float): Slope lambda in GeV^2, key `lambda`. Defaults to 0.2.
        s (float): Scalar fraction in [0, 1]. Defaults to 0.5.
        k (int): Dirac quantum number, nonzero. Defaults to -1.
        zero_index (int): Airy zero / radial level index, 1 for the ground state. Defaults to 1.
        r_max (float): Outer grid radius in GeV^-1. Defaults to 25.
        n (int): Grid steps. Defaults to 20000.
        out (str, optional): Output path; stdout when absent.
        energy (float, optional): Energy used for tunneling instead of the estimate.
        param (str, optional): Swept parameter, one of s, lambda, m.
        lo (float, optional): Start of the sweep range.
        hi (float, optional): End of the sweep range.
        steps (int): Sweep points. Defaults to 11.
        jobs (int): Sweep workers (joblib n_jobs). Defaults to 1.
    """
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    m: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)
    lam: float = Field(default=0.2, gt=0.0, allow_inf_nan=False, alias="lambda")
    s: float = Field(default=0.5, ge=0.0, le=1.0)
    k: int = -1
    zero_index: int = Field(default=1, ge=1)
    r_max: float = Field(default=25.0, gt=0.0, allow_inf_nan=False)
    n: int = Field(default=20000, ge=100)
    out: Optional[str] = None
    energy: Optional[float] = Field(default=None, allow_inf_nan=False)
    param: Optional[Literal["s", "lambda", "m"]] = None
    lo: Optional[float] = Field(default=None, allow_inf_nan=False)
    hi: Optional[float] = Field(default=None, allow_inf_nan=False)
    steps: int = Field(default=11, ge=1)
    jobs: int = 1

    @field_validator("k")
    @classmethod
    def _dirac_k(cls, value: int) -> int:
        try:
            return model.QuantumNumbers(k=value).k
        except ValidationError:
            raise ValueError("k must be a nonzero integer") from None

    @field_validator("jobs")
    @classmethod
    def _nonzero(cls, value: int) -> int:
        if value == 0:
            raise ValueError("must be nonzero")
        return value

    @property
    def particle(self) -> model.Particle:
        return model.Particle(m=self.m)

    @property
    def quantum_numbers(self) -> model.QuantumNumbers:
        return model.QuantumNumbers(k=self.k)

    @property
    def mix(self) -> model.PotentialMix:
        return model.PotentialMix(lam=self.lam, s=self.s)

    @property
    def grid(self) -> RadialGrid:
        return RadialGrid.from_outer_radius(self.r_max, self.n)

    def with_value(self, key: str, value) -> "RunConfig":
        """Validated copy with one key (config-file name) replaced."""
        return build_config(self.to_values(), {key: value})

    def to_values(self) -> dict:
        """Settings keyed by config-file name, None values omitted."""
        return self.model_dump(by_alias=True, exclude_none=True)


CONFIG_KEYS = tuple(field.alias or name for name, field in RunConfig.model_fields.items())


def load_config(path: str) -> dict:
    """
    Read a key=value config file.

    Args:
        path (str): File path.

    Returns:
        dict: Raw string values keyed by config name.

    Raises:
        ConfigError: If the file is missing, a line has no value or a key is unknown.
    """
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")

    values = dotenv.dotenv_values(path, interpolate=False)
    for key, value in values.items():
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}' in {path}")
        if value is None:
            raise ConfigError(f"config key '{key}' in {path} has no value")

    return dict(values)


def build_config(file_values: Optional[dict] = None, overrides: Optional[dict] = None) -> RunConfig:
    """
    Merge file values and flag overrides over the defaults and validate.

    Raises:
        ConfigError: On an unknown key or an invalid value, naming the key.
    """
    merged = dict(file_values or {})
    merged.update(overrides or {})

    for key in merged:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key '{key}'")

    try:
        return RunConfig.model_validate(merged)
    except ValidationError as error:
        first = error.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or "config"
        raise ConfigError(f"invalid value for '{key}': {first['msg']}") from error


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(config: RunConfig) -> str:
    """Effective configuration as key=value lines; load_config + build_config read it back unchanged."""
    return "".join(f"{key}={_format_value(value)}\n" for key, value in config.to_values().items())
