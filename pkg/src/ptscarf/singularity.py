"""Spectral singularity: quantum predicates and the classical energy scan.

Quantum side (PT-symmetric Scarf II, delta = i delta_i):

    E_s = ( |2 delta_i| - (gamma0 + 1/4) ) / 4
    |2 delta_i| > gamma0 + sign(delta_i)/4   and   gamma0 + |2 delta_i| = 4n^2 + 4n + 3/4

Classical side: the condition |2 delta_i| > gamma0, and a scan of the
barrier momentum (Re p at the sample nearest Re x = 0) over real energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .closed_form import TrajectorySpec, sample_trajectory
from .errors import BarrierDivergence, BranchPointError
from .factorization import energy_windows
from .scarf_model import ScarfParams

QUANTIZATION_TOL = 1e-9
REFINE_RESOLUTION = 1e-2
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _require_pt(params: ScarfParams):
    if not params.is_pt:
        raise ValueError("spectral singularities have no analogue in Hermitian systems")


class QuantumSingularity(NamedTuple):
    energy: float
    physical: bool


def quantum_ss_energy(params: ScarfParams) -> QuantumSingularity:
    """Quantum singular energy; ``physical`` is False when it is not positive."""
    _require_pt(params)
    e = 0.25 * (abs(2.0 * params.delta_i) - (params.gamma0 + 0.25))
    return QuantumSingularity(e, e > 0)


def quantum_ss_condition(params: ScarfParams, n_max: int = 10) -> tuple[bool, int | None]:
    """(inequality holds, n with gamma0 + |2 delta_i| = 4n^2 + 4n + 3/4 or None)."""
    _require_pt(params)
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    d, g = params.delta_i, params.gamma0
    holds = abs(2.0 * d) > g + math.copysign(1.0, d) / 4.0
    total = g + abs(2.0 * d)
    for n in range(n_max + 1):
        if abs(total - (4 * n * n + 4 * n + 0.75)) <= QUANTIZATION_TOL:
            return holds, n
    return holds, None


def classical_ss_condition(params: ScarfParams) -> bool:
    _require_pt(params)
    return abs(2.0 * params.delta_i) > params.gamma0


@dataclass(frozen=True)
class SingularityScan:
    """Barrier momentum against energy.

    ``barrier_momentum[k]`` is ``inf`` where ``divergent[k]`` is set, i.e.
    where the trajectory hit the barrier singularity itself.
    """

    energies: np.ndarray
    barrier_momentum: np.ndarray
    divergent: np.ndarray
    peak_energy: float
    peak_value: float
    theta0: complex = 0j

    @property
    def peak_divergent(self) -> bool:
        return math.isinf(self.peak_value)

    @property
    def has_interior_peak(self) -> bool:
        """Maximum away from the grid ends and above 3x the median statistic."""
        k = int(np.argmax(self.barrier_momentum))
        if k == 0 or k == len(self.energies) - 1:
            return False
        return bool(self.barrier_momentum[k] > 3.0 * np.median(self.barrier_momentum))


def barrier_momentum(params: ScarfParams, energy: float, theta0: complex = 0j,
                     t_window: tuple[float, float] = (-2.0, 2.0),
                     samples: int = 4001) -> float:
    """Re p at the sample of minimal |Re x|; ``inf`` on a barrier divergence."""
    spec = TrajectorySpec(params, energy, theta0, t_window[0], t_window[1], samples,
                          allow_outside_windows=True)
    try:
        traj = sample_trajectory(spec, check=False)
    except (BarrierDivergence, BranchPointError):
        return math.inf
    k = int(np.argmin(np.abs(traj.x.real)))
    return float(traj.p[k].real)


def _golden_max(fn, lo, hi, cache, resolution):
    """Golden-section search for the maximum of ``fn`` on [lo, hi]."""
    def f(e):
        if e not in cache:
            cache[e] = fn(e)
        return cache[e]

    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    while b - a > resolution:
        fc, fd = f(c), f(d)
        if math.isinf(fc) or math.isinf(fd):
            break
        if fc >= fd:
            b, d = d, c
            c = b - _GOLDEN * (b - a)
        else:
            a, c = c, d
            d = a + _GOLDEN * (b - a)


def scan_classical_ss(params: ScarfParams, e_grid: Sequence[float], theta0: complex = 0j,
                      t_window: tuple[float, float] = (-2.0, 2.0), samples: int = 4001,
                      refine: bool = True) -> SingularityScan:
    """Scan the barrier momentum over ``e_grid`` and locate its peak.

    Energies outside the admissible windows (c(E) imaginary) are dropped.
    With ``refine`` the peak is bracketed by its grid neighbours and refined
    by golden-section search to 1e-2 in energy; refinement points are merged
    into the returned table. A divergent sample stops refinement and is the
    peak.
    """
    _require_pt(params)
    windows = energy_windows(params)
    grid = sorted({float(e) for e in e_grid if e > 0 and e in windows})
    if not grid:
        raise ValueError("no admissible energies in the scan grid")

    def stat(e):
        return barrier_momentum(params, e, theta0, t_window, samples)

    table = {e: stat(e) for e in grid}
    if refine and len(grid) >= 3:
        k = max(range(len(grid)), key=lambda i: table[grid[i]])
        if not math.isinf(table[grid[k]]) and 0 < k < len(grid) - 1:
            _golden_max(stat, grid[k - 1], grid[k + 1], table, REFINE_RESOLUTION)

    energies = np.array(sorted(table))
    values = np.array([table[e] for e in energies])
    k = int(np.argmax(values))
    return SingularityScan(energies, values, np.isinf(values), float(energies[k]),
                           float(values[k]), complex(theta0))
