import argparse
import contextlib
import sys
from typing import Optional

import numpy as np
from joblib import Parallel, delayed

import logging_config
import profile_io
import run_config
from errors import ConfigError, DiracError
from run_config import RunConfig
from solver_block import SolverBlock, sweep_row

logger = logging_config.get_logger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become ConfigError so main() reports them on one line."""

    def error(self, message: str):
        raise ConfigError(message)


def _output(path: Optional[str]):
    if path is None:
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", newline="", encoding="utf-8")


def _print_lines(lines: list) -> None:
    for line in lines:
        print(line)


def cmd_solve(config: RunConfig) -> list:
    """
    Solve the configured state and print the report. With `out` set, the
    wavefunction is also written as a profile CSV.

    Returns:
        list: The report lines.
    """
    block = SolverBlock(config)
    lines = block.report_lines()
    _print_lines(lines)

    if config.out is not None:
        with _output(config.out) as stream:
            profile_io.write_profile(stream, block.build_profile(), config.m, block.mix_, config.k)

    return lines


def cmd_profile(config: RunConfig) -> int:
    """
    Write the wavefunction profile (r, u, v, V, S) to `out`, or stdout.

    Returns:
        int: Number of data rows.
    """
    block = SolverBlock(config)
    solution = block.build_profile()

    with _output(config.out) as stream:
        return profile_io.write_profile(stream, solution, config.m, block.mix_, config.k)


def cmd_lifetime(config: RunConfig) -> list:
    """
    Print the barrier integral and lifetime ratio of a quasi-bound state.

    Raises:
        PreconditionError: If s >= 0.5.
    """
    lines = SolverBlock(config).lifetime_lines()
    _print_lines(lines)
    return lines


def sweep_values(config: RunConfig) -> np.ndarray:
    """
    Parameter values of a sweep, checked against the parameter's domain.

    Raises:
        ConfigError: If param, lo or hi is missing or an endpoint is invalid.
    """
    if config.param is None or config.lo is None or config.hi is None:
        raise ConfigError("sweep needs --param, --lo and --hi")
    if config.hi < config.lo:
        raise ConfigError(f"sweep range must satisfy lo <= hi, got lo={config.lo}, hi={config.hi}")

    config.with_value(config.param, config.lo)
    config.with_value(config.param, config.hi)

    return np.linspace(config.lo, config.hi, config.steps)


def cmd_sweep(config: RunConfig) -> list:
    """
    Sweep s, lambda or m over [lo, hi] and write one CSV row per value.
    Rows are computed with joblib (n_jobs = jobs) and written in parameter order.

    Returns:
        list: The SweepRow objects.
    """
    values = sweep_values(config)
    rows = Parallel(n_jobs=config.jobs)(delayed(sweep_row)(config, config.param, float(value)) for value in values)

    with _output(config.out) as stream:
        profile_io.write_sweep(stream, rows)

    return rows


COMMANDS = {
    "solve": cmd_solve,
    "profile": cmd_profile,
    "lifetime": cmd_lifetime,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=str, help="Path to a key=value config file")
    common.add_argument("--m", type=float, help="Mass in GeV")
    common.add_argument("--lambda", dest="lambda", type=float, help="Slope of the linear potential in GeV^2")
    common.add_argument("--s", type=float, help="Scalar fraction of the potential, 0 to 1")
    common.add_argument("--k", type=int, help="Dirac quantum number, nonzero")
    common.add_argument("--zero-index", dest="zero_index", type=int, help="Airy zero / radial level, 1 = ground state")
    common.add_argument("--rmax", dest="r_max", type=float, help="Outer grid radius in GeV^-1")
    common.add_argument("--n", type=int, help="Number of grid steps")
    common.add_argument("--out", type=str, help="Output CSV path (stdout when absent)")
    common.add_argument("--dump-config", dest="dump_config", action="store_true",
                        help="Print the effective configuration and exit")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    energy = _ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    energy.add_argument("--energy", type=float, help="Energy in GeV used instead of the quasi-bound estimate")

    parser = _ArgumentParser(description="Radial Dirac equation with a linear vector/scalar potential",
                             parents=[common])
    commands = parser.add_subparsers(dest="command")

    commands.add_parser("solve", parents=[common], help="Eigenvalue or quasi-bound energy")
    commands.add_parser("profile", parents=[common], help="Write the wavefunction as CSV")
    commands.add_parser("lifetime", parents=[common, energy], help="Tunneling lifetime ratio")

    sweep = commands.add_parser("sweep", parents=[common, energy], help="Sweep s, lambda or m",
                                argument_default=argparse.SUPPRESS)
    sweep.add_argument("--param", choices=run_config.SWEEP_PARAMETERS, help="Parameter to sweep")
    sweep.add_argument("--lo", type=float, help="First value")
    sweep.add_argument("--hi", type=float, help="Last value")
    sweep.add_argument("--steps", type=int, help="Number of values")
    sweep.add_argument("--jobs", type=int, help="Parallel workers (joblib n_jobs)")

    return parser


def main(argv: Optional[list] = None) -> int:
    """
    Parse the command line, run one command and return the exit code:
    0 on success, 2 for usage and config errors, 1 for anything else.
    """
    parser = build_parser()

    try:
        args = vars(parser.parse_args(argv))
        command = args.pop("command", None)
        if args.pop("verbose", False):
            logging_config.set_level("DEBUG")
        dump = args.pop("dump_config", False)
        config_path = args.pop("config", None)

        file_values = run_config.load_config(config_path) if config_path is not None else {}
        config = run_config.build_config(file_values, args)

        if dump:
            sys.stdout.write(run_config.dump_config(config))
            return 0
        if command is None:
            raise ConfigError("a command is required: solve, profile, lifetime or sweep")

        COMMANDS[command](config)

    except ConfigError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except (DiracError, ValueError, OSError) as error:
        logger.debug("command failed", exc_info=True)
        print(f"error: {error}", file=sys.stderr)
        return 1

    return 0
