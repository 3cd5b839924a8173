"""Exact complex classical trajectories for Hermitian and PT-symmetric Scarf II scattering states."""

__version__ = "0.1.0"

from .closed_form import Trajectory, TrajectorySpec, momentum_at, position_at, sample_trajectory
from .errors import (BarrierDivergence, BranchPointError, IntegrationError, PoleError, ScarfError,
                     TrajectoryCheckError)
from .factorization import (EnergyWindows, LadderValue, c_of_E, energy_windows, gamma_of_H,
                            ladder_values, poisson_bracket, q_values)
from .ode_oracle import IntegratorConfig, integrate
from .scarf_model import (PhasePoint, ScarfParams, Variant, hamiltonian, potential,
                          potential_derivative)
from .singularity import (SingularityScan, classical_ss_condition, quantum_ss_condition,
                          quantum_ss_energy, scan_classical_ss)

__all__ = [
    "BarrierDivergence", "BranchPointError", "EnergyWindows", "IntegrationError",
    "IntegratorConfig", "LadderValue", "PhasePoint", "PoleError", "ScarfError", "ScarfParams",
    "SingularityScan", "Trajectory", "TrajectoryCheckError", "TrajectorySpec", "Variant",
    "c_of_E", "classical_ss_condition", "energy_windows", "gamma_of_H", "hamiltonian",
    "integrate", "ladder_values", "momentum_at", "poisson_bracket", "position_at", "potential",
    "potential_derivative", "q_values", "quantum_ss_condition", "quantum_ss_energy",
    "sample_trajectory", "scan_classical_ss",
]
