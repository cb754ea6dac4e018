import math
from typing import Optional

import analytic
import model
import shooting
import tunneling
from errors import DiracError, PreconditionError
from logging_config import get_logger
from profile_io import SweepRow
from run_config import RunConfig

logger = get_logger(__name__)


class SolverBlock:
    """
    Drives the solvers for one configuration: the closed-form equal-mix state,
    the shooting eigenstate or quasi-bound estimate, the tunneling report and
    the wavefunction profile. Each step stores its result on the instance and
    triggers the steps it depends on.

    Attributes:
        config_ (RunConfig): The configuration.
        particle_ (Particle): The mass.
        quantum_ (QuantumNumbers): k, with j and l derived from it.
        mix_ (PotentialMix): Slope and scalar fraction.
        grid_ (RadialGrid): Integration grid.
        binding_ (BindingClass): StrictlyBound for s >= 0.5, QuasiBound otherwise.
        analytic_ (EqualMixSolution): Closed-form state (s = 0.5, k = -1 only).
        shooting_ (RadialSolution): Shooting eigenstate (s >= 0.5).
        quasibound_ (QuasiBoundEstimate): Truncated-domain estimate (s < 0.5).
        tunneling_ (TunnelingReport): Barrier integral and lifetime (s < 0.5).
        energy_source_ (str): "user-supplied" or "estimated", for the tunneling energy.
        profile_ (RadialSolution): Wavefunction written by the profile command.
    """

    def __init__(self, config: RunConfig) -> None:
        """
        Args:
            config (RunConfig): Validated configuration.
        """
        self.config_ = config
        self.particle_ = config.particle
        self.quantum_ = config.quantum_numbers
        self.mix_ = config.mix
        self.grid_ = config.grid
        self.binding_ = model.classify_binding(self.mix_)

        self.analytic_ = None
        self.shooting_ = None
        self.quasibound_ = None
        self.tunneling_ = None
        self.energy_source_ = None
        self.profile_ = None

        return

    @property
    def has_closed_form(self) -> bool:
        return self.config_.s == 0.5 and self.quantum_.k == -1

    def solve_analytic(self) -> analytic.EqualMixSolution:
        """
        Closed-form equal-mix state for the configured zero index.

        Raises:
            PreconditionError: Unless s = 0.5 and k = -1.
        """
        if not self.has_closed_form:
            raise PreconditionError("the closed form covers s = 0.5 and k = -1 only")

        if self.analytic_ is None:
            self.analytic_ = analytic.equal_mix_solution(self.particle_.m, self.config_.lam, self.config_.zero_index)

        return self.analytic_

    def default_bracket(self) -> tuple:
        """(m, m + 20 sqrt(lambda) + 10 lambda / m)."""
        m, lam = self.particle_.m, self.config_.lam
        return m, m + 20.0 * math.sqrt(lam) + 10.0 * lam / m

    def solve_shooting(self) -> shooting.RadialSolution:
        """Shooting eigenstate with zero_index - 1 nodes (s >= 0.5)."""
        if self.shooting_ is None:
            self.shooting_ = shooting.find_bound_state(self.particle_.m, self.mix_, self.quantum_.k,
                                                       self.default_bracket(), self.grid_,
                                                       nodes=self.config_.zero_index - 1)

        return self.shooting_

    def estimate_quasibound(self) -> shooting.QuasiBoundEstimate:
        """Quasi-bound level with its truncation error bar (s < 0.5)."""
        if self.quasibound_ is None:
            self.quasibound_ = shooting.estimate_quasibound(self.particle_.m, self.mix_, self.quantum_.k, self.grid_)

        return self.quasibound_

    def solve(self) -> float:
        """
        Energy of the configured state: the shooting eigenvalue for s >= 0.5,
        the quasi-bound estimate otherwise.
        """
        if self.binding_ is model.BindingClass.STRICTLY_BOUND:
            return self.solve_shooting().energy

        return self.estimate_quasibound().energy

    def tunneling_energy(self) -> float:
        """The `energy` setting when given, otherwise the quasi-bound estimate."""
        if self.config_.energy is not None:
            self.energy_source_ = "user-supplied"
            return self.config_.energy

        self.energy_source_ = "estimated"
        return self.estimate_quasibound().energy

    def tunneling_report(self, energy: Optional[float] = None) -> tunneling.TunnelingReport:
        """
        Barrier integral and lifetime ratio at `energy` (tunneling_energy() when omitted).

        Raises:
            PreconditionError: If s >= 0.5.
        """
        if self.binding_ is model.BindingClass.STRICTLY_BOUND:
            raise PreconditionError("state is strictly bound (s ≥ 0.5); no tunneling")

        if energy is not None:
            return tunneling.gamma_mixed(self.particle_.m, self.mix_, energy)

        if self.tunneling_ is None:
            self.tunneling_ = tunneling.gamma_mixed(self.particle_.m, self.mix_, self.tunneling_energy())

        return self.tunneling_

    def build_profile(self) -> shooting.RadialSolution:
        """
        Wavefunction on the configured grid: the normalized eigenstate for
        s >= 0.5, the normalized outward solution at the tunneling energy for
        s < 0.5.
        """
        if self.profile_ is None:
            if self.binding_ is model.BindingClass.STRICTLY_BOUND:
                self.profile_ = self.solve_shooting()
            else:
                solution = shooting.integrate_radial(self.particle_.m, self.mix_, self.quantum_.k,
                                                     self.tunneling_energy(), self.grid_)
                self.profile_ = shooting.normalize(solution)

        return self.profile_

    def _radii_lines(self, energy: float) -> list:
        points = model.turning_points(self.particle_.m, energy, self.mix_)
        lines = [f"r1: {points.r1:.10g} GeV^-1"]
        if points.has_lifted_continuum:
            lines.append(f"r2: {points.r2:.10g} GeV^-1")
            lines.append(f"r3: {points.r3:.10g} GeV^-1")
        return lines

    def report_lines(self) -> list:
        """
        The solve report as `name: value` lines.
        """
        config = self.config_
        lines = [
            f"m: {config.m:.10g} GeV",
            f"lambda: {config.lam:.10g} GeV^2",
            f"s: {config.s:.10g}",
            f"k: {self.quantum_.k}",
            f"j: {self.quantum_.j:g}",
            f"l: {self.quantum_.l}",
            f"binding: {self.binding_.value}",
        ]

        if self.binding_ is model.BindingClass.STRICTLY_BOUND:
            state = self.solve_shooting()
            lines.append("state: strictly bound")
            if self.has_closed_form:
                closed = self.solve_analytic()
                lines.append(f"E_analytic: {closed.energy:.12g} GeV")
                lines.append(f"E_shooting: {state.energy:.12g} GeV")
                lines.append(f"difference: {state.energy - closed.energy:.3e} GeV")
            else:
                lines.append(f"E_shooting: {state.energy:.12g} GeV")
            lines.append(f"nodes: {state.node_count}")
            lines.extend(self._radii_lines(state.energy))
        else:
            estimate = self.estimate_quasibound()
            lines.append("state: quasi-bound")
            lines.append(f"E_quasibound: {estimate.energy:.12g} GeV")
            lines.append(f"error_bar: {estimate.error_bar:.3e} GeV")
            lines.append(f"truncation_radius: {estimate.truncation_radius:.10g} GeV^-1")
            lines.extend(self._radii_lines(estimate.energy))

        return lines

    def lifetime_lines(self) -> list:
        """The lifetime report as `name: value` lines."""
        report = self.tunneling_report()
        return [
            f"s: {report.s:.10g}",
            f"E: {report.energy:.12g} GeV",
            f"energy_source: {self.energy_source_}",
            f"gamma: {report.gamma:.10g}",
            f"tau_ratio: {report.tau_ratio:.6g}",
            f"log_tau_ratio: {report.log_tau_ratio:.10g}",
            f"r1: {report.r1:.10g} GeV^-1",
            f"r2: {report.r2:.10g} GeV^-1",
            f"r3: {report.r3:.10g} GeV^-1",
            "tau0: not computed (of order 1e-24 s for fermi-scale r1)",
        ]


def sweep_row(config: RunConfig, param: str, value: float) -> SweepRow:
    """
    One sweep point: the configuration with `param` set to `value`.
    A point that cannot be solved is logged and returned with empty cells.
    """
    block = SolverBlock(config.with_value(param, value))
    row = {"param": param, "value": value, "binding": block.binding_}

    try:
        if block.binding_ is model.BindingClass.STRICTLY_BOUND:
            energy = block.solve()
        else:
            energy = block.tunneling_energy()
            report = block.tunneling_report(energy)
            row.update(gamma=report.gamma, tau_ratio=report.tau_ratio)

        points = model.turning_points(block.config_.m, energy, block.mix_)
        row.update(energy=energy, r1=points.r1, r2=points.r2, r3=points.r3)

    except DiracError as error:
        logger.warning("sweep %s=%g could not be solved: %s", param, value, error)

    return SweepRow(**row)
