"""Exact scattering trajectories x(t), p(t) with continuous branch tracking.

    x(t) = (2/alpha0) asinh( c/sqrt(E) sinh(theta0 + alpha0 sqrt(E) t) + delta/E )
    p(t) = c cosh(theta0 + alpha0 sqrt(E) t) / cosh(alpha0 x(t) / 2)

asinh is multivalued: every solution of sinh(y) = s is

    y_n = (-1)**n w + i pi n,     w = principal asinh(s),  n integer,

so a single integer ``n`` labels the branch. Along a sampled trajectory the
branch at each sample is the one nearest the previous sample's position.
This is what makes real-energy PT trajectories below the singular energy
turn back at the barrier instead of jumping across it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BarrierDivergence, BranchPointError, TrajectoryCheckError
from .factorization import c_of_E, energy_windows
from .scarf_model import POLE_EPS, PhasePoint, ScarfParams, hamiltonian_xp

#: Distance from +-i at which the asinh argument counts as a branch point.
BRANCH_EPS = 1e-12
#: Sampling density at or above which the velocity law is checked.
VELOCITY_CHECK_DENSITY = 1000.0

ENERGY_TOL = 1e-8
VELOCITY_TOL = 1e-4


@dataclass(frozen=True)
class TrajectorySpec:
    """What to sample: potential, energy, initial phase and time grid.

    Real energies must lie in :func:`energy_windows` unless
    ``allow_outside_windows`` is set.
    """

    params: ScarfParams
    energy: complex
    theta0: complex = 0.0
    t_start: float = 0.0
    t_end: float = 1.0
    samples: int = 1001
    allow_outside_windows: bool = False

    def __post_init__(self):
        object.__setattr__(self, "energy", complex(self.energy))
        object.__setattr__(self, "theta0", complex(self.theta0))
        if not self.energy.real > 0:
            raise ValueError(f"energy must have positive real part, got {self.energy}")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if not self.t_end > self.t_start:
            raise ValueError("t_end must exceed t_start")
        if (self.energy.imag == 0 and not self.allow_outside_windows
                and self.energy not in energy_windows(self.params)):
            raise ValueError(
                f"E = {self.energy.real} is outside the admissible windows "
                f"{energy_windows(self.params).intervals}")

    @property
    def c(self) -> complex:
        return c_of_E(self.params, self.energy)

    @property
    def rate(self) -> complex:
        """alpha0 sqrt(E), the growth rate of the phase theta0 + rate * t."""
        return self.params.alpha0 * cmath.sqrt(self.energy)

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)


@dataclass
class Trajectory:
    """Sampled trajectory. ``branch`` is None for ODE-integrated ones."""

    params: ScarfParams
    energy: complex
    theta0: complex | None
    t: np.ndarray
    x: np.ndarray
    p: np.ndarray
    branch: np.ndarray | None = None
    spec: TrajectorySpec | None = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    @property
    def points(self) -> list[PhasePoint]:
        return [PhasePoint(complex(x), complex(p), float(t)) for t, x, p in zip(self.t, self.x, self.p)]

    def energy_residual(self) -> float:
        """sup_t |H(x, p) - E| / |E|."""
        h = hamiltonian_xp(self.params, self.x, self.p)
        return float(np.max(np.abs(h - self.energy)) / abs(self.energy))

    def velocity_residual(self) -> float:
        """max over interior samples of |dx/dt - 2p| / max(1, |p|).

        dx/dt is the five-point central difference on the (uniform) grid, or
        the three-point one when there are fewer than five samples.
        """
        x, h = self.x, self.t[1] - self.t[0]
        if len(x) >= 5:
            v = (x[:-4] - 8 * x[1:-3] + 8 * x[3:-1] - x[4:]) / (12 * h)
            p = self.p[2:-2]
        else:
            v = (x[2:] - x[:-2]) / (2 * h)
            p = self.p[1:-1]
        return float(np.max(np.abs(v - 2 * p) / np.maximum(1.0, np.abs(p))))


def asinh_argument(spec: TrajectorySpec, t):
    E = spec.energy
    phase = spec.theta0 + spec.rate * np.asarray(t, dtype=float)
    return spec.c / cmath.sqrt(E) * np.sinh(phase) + spec.params.coupling / E


def _check_branch_point(t, s):
    if abs(s - 1j) < BRANCH_EPS or abs(s + 1j) < BRANCH_EPS:
        raise BranchPointError(t, complex(s))


def _branch_value(w: complex, n: int) -> complex:
    return (w if n % 2 == 0 else -w) + 1j * math.pi * n


def _nearest_branch(w: complex, y_prev: complex, n_prev: int) -> tuple[complex, int]:
    best_y, best_n, best_d = 0j, n_prev, math.inf
    for n in range(n_prev - 2, n_prev + 3):
        y = _branch_value(w, n)
        d = abs(y - y_prev)
        if d < best_d:
            best_y, best_n, best_d = y, n, d
    return best_y, best_n


def position_at(spec: TrajectorySpec, t: float,
                previous: tuple[complex, int] | None = None) -> tuple[complex, int]:
    """Position at time ``t`` and its branch index.

    Without ``previous`` the principal branch (n = 0) is returned; with
    ``previous = (x_prev, n_prev)`` the branch nearest ``x_prev`` is chosen.
    """
    s = complex(asinh_argument(spec, t))
    _check_branch_point(t, s)
    w = cmath.asinh(s)
    half = 0.5 * spec.params.alpha0
    if previous is None:
        return w / half, 0
    y, n = _nearest_branch(w, previous[0] * half, previous[1])
    return y / half, n


def momentum_at(spec: TrajectorySpec, t: float, x_t: complex,
                pole_eps: float = POLE_EPS) -> complex:
    """p(t) from the closed form, using the tracked position ``x_t``.

    Raises
    ------
    BarrierDivergence
        If ``|cosh(alpha0 x_t / 2)| <= pole_eps``.
    """
    denom = cmath.cosh(0.5 * spec.params.alpha0 * x_t)
    if abs(denom) <= pole_eps:
        raise BarrierDivergence(t, x_t)
    return spec.c * cmath.cosh(spec.theta0 + spec.rate * t) / denom


def sample_trajectory(spec: TrajectorySpec, check: bool = True,
                      pole_eps: float = POLE_EPS) -> Trajectory:
    """Sample the closed form uniformly on [t_start, t_end].

    With ``check`` the result must conserve energy to 1e-8 (relative) and,
    when sampled at 1000 points per unit time or finer, satisfy dx/dt = 2p
    to 1e-4 at interior samples; otherwise TrajectoryCheckError is raised.
    """
    t = spec.times()
    s = asinh_argument(spec, t)
    near = (np.abs(s - 1j) < BRANCH_EPS) | (np.abs(s + 1j) < BRANCH_EPS)
    if np.any(near):
        k = int(np.argmax(near))
        raise BranchPointError(float(t[k]), complex(s[k]))
    w = np.arcsinh(s)

    y = np.empty_like(w)
    branch = np.zeros(len(t), dtype=int)
    y[0], n = w[0], 0
    for k in range(1, len(t)):
        y[k], n = _nearest_branch(complex(w[k]), complex(y[k - 1]), n)
        branch[k] = n
    half = 0.5 * spec.params.alpha0
    x = y / half

    denom = np.cosh(y)
    bad = np.abs(denom) <= pole_eps
    if np.any(bad):
        k = int(np.argmax(bad))
        raise BarrierDivergence(float(t[k]), complex(x[k]))
    p = spec.c * np.cosh(spec.theta0 + spec.rate * t) / denom

    traj = Trajectory(spec.params, spec.energy, spec.theta0, t, x, p, branch, spec)
    if check:
        e_res = traj.energy_residual()
        traj.diagnostics["energy_residual"] = e_res
        if not e_res < ENERGY_TOL:
            raise TrajectoryCheckError(f"energy residual {e_res:.3e} exceeds {ENERGY_TOL}")
        density = (spec.samples - 1) / (spec.t_end - spec.t_start)
        if density >= VELOCITY_CHECK_DENSITY and spec.samples >= 3:
            v_res = traj.velocity_residual()
            traj.diagnostics["velocity_residual"] = v_res
            if not v_res < VELOCITY_TOL:
                raise TrajectoryCheckError(f"velocity residual {v_res:.3e} exceeds {VELOCITY_TOL}")
    return traj
