import csv
from typing import Iterable, Optional, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict

import model
from shooting import RadialSolution

"""
CSV output: wavefunction profiles and parameter sweeps.
Comma-separated, one header row, `#` comment lines, LF line endings and
full-precision decimal floats.
"""

PROFILE_COLUMNS = ("r", "u", "v", "V", "S")
SWEEP_COLUMNS = ("param", "value", "E", "gamma", "tau_ratio", "r1", "r2", "r3", "binding")


class SweepRow(BaseModel):
    """
    One sweep point; quantities that do not apply (gamma for a strictly bound
    state, r2 and r3 for s >= 0.5, anything after a failed solve) are None.
    None and non-finite values (an overflowing tau_ratio) are written as empty cells.
    """
    model_config = ConfigDict(frozen=True)

    param: str
    value: float
    energy: Optional[float] = None
    gamma: Optional[float] = None
    tau_ratio: Optional[float] = None
    r1: Optional[float] = None
    r2: Optional[float] = None
    r3: Optional[float] = None
    binding: model.BindingClass


def write_profile(stream: TextIO, solution: RadialSolution, m: float, mix: model.PotentialMix, k: int) -> int:
    """
    Write r, u, v and the potentials V, S for every grid point.

    Args:
        stream (TextIO): Open text stream.
        solution (RadialSolution): The wavefunction.
        m (float): Mass.
        mix (PotentialMix): The potential the solution belongs to.
        k (int): Dirac quantum number.

    Returns:
        int: Number of data rows written.
    """
    vector, scalar = model.potentials(mix, solution.r)
    table = np.column_stack([solution.r, solution.u, solution.v, vector, scalar])

    header = (f"# m={m!r} lambda={mix.lam!r} s={mix.s!r} k={k} E={solution.energy!r}\n"
              + ",".join(PROFILE_COLUMNS))
    np.savetxt(stream, table, fmt="%.17g", delimiter=",", newline="\n", header=header, comments="")

    return table.shape[0]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value) if np.isfinite(value) else ""
    return str(value)


def write_sweep(stream: TextIO, rows: Iterable[SweepRow]) -> int:
    """Write sweep rows in the order given; returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)

    count = 0
    for row in rows:
        writer.writerow([row.param, _cell(row.value), _cell(row.energy), _cell(row.gamma), _cell(row.tau_ratio),
                         _cell(row.r1), _cell(row.r2), _cell(row.r3), row.binding.value])
        count += 1

    return count
