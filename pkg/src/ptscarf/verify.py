"""Invariant suite behind ``ptscarf verify``."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import factorization as fz
from .closed_form import TrajectorySpec, sample_trajectory
from .ode_oracle import IntegratorConfig, integrate
from .scarf_model import PhasePoint, ScarfParams, hamiltonian, potential

HERMITIAN = ScarfParams.hermitian(2.0, 6.0, 2.0)
PT_REAL = ScarfParams.pt_symmetric(2.0, 6.0, 2.0)
PT_COMPLEX = ScarfParams.pt_symmetric(2.0, 3.0, 2.0)
PT_SS = ScarfParams.pt_symmetric(2.0, 4.0, 12.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34} residual={self.residual:.3e}  tol={self.tolerance:.0e}"


def random_phase_points(rng: np.random.Generator, params: ScarfParams, n: int,
                        margin: float = 0.1) -> list[PhasePoint]:
    """Random complex (x, p) kept at least ``margin`` (in |cosh|) away from poles."""
    pts = []
    while len(pts) < n:
        x = complex(rng.uniform(-3, 3), rng.uniform(-1.2, 1.2))
        if abs(cmath.cosh(0.5 * params.alpha0 * x)) < margin:
            continue
        p = complex(rng.uniform(-4, 4), rng.uniform(-2, 2))
        pts.append(PhasePoint(x, p))
    return pts


def on_shell_points(rng: np.random.Generator, params: ScarfParams, n: int,
                    energies: Iterable[complex]) -> list[PhasePoint]:
    """Points with H = E for each energy, x random and p = sqrt(E - V)."""
    energies = list(energies)
    pts = []
    while len(pts) < n:
        x = complex(rng.uniform(-3, 3), rng.uniform(-0.8, 0.8))
        if abs(cmath.cosh(0.5 * params.alpha0 * x)) < 0.2:
            continue
        E = energies[len(pts) % len(energies)]
        pts.append(PhasePoint(x, cmath.sqrt(E - potential(params, x))))
    return pts


def check_factorization_identity(rng, n=1000) -> CheckResult:
    worst = 0.0
    for params in (HERMITIAN, PT_REAL, PT_SS):
        for pt in random_phase_points(rng, params, n):
            if abs(hamiltonian(params, pt)) < 1e-3:
                continue
            worst = max(worst, fz.factorization_residual(params, pt))
    return CheckResult("factorization-identity", worst < 1e-10, worst, 1e-10)


def check_poisson_canonical(rng, n=20) -> CheckResult:
    worst = 0.0
    H = fz.hamiltonian_function(HERMITIAN)
    for pt in random_phase_points(rng, HERMITIAN, n):
        xp = fz.poisson_bracket(lambda q: q.x, lambda q: q.p, pt)
        hh = fz.poisson_bracket(H, H, pt)
        worst = max(worst, abs(xp - 1.0), abs(hh))
    return CheckResult("poisson-canonical", worst < 1e-8, worst, 1e-8)


def check_poisson_algebra(rng, n=100) -> CheckResult:
    worst = 0.0
    for params, energies in ((HERMITIAN, (8.0, 12.0)), (PT_REAL, (8.0, 0.5)),
                             (PT_COMPLEX, (8 + 0.5j,))):
        for pt in on_shell_points(rng, params, n, energies):
            worst = max(worst, *fz.algebra_residuals(params, pt))
    return CheckResult("poisson-deformed-algebra", worst < 1e-5, worst, 1e-5)


def check_poisson_ladder_bracket(rng, n=20) -> CheckResult:
    """{A+, A-} / A0 is the same at every point of an energy shell."""
    worst = 0.0
    for params, E in ((HERMITIAN, 8.0), (PT_REAL, 8.0)):
        ratios = []
        Fp, Fm = fz.a_plus_function(params), fz.a_minus_function(params)
        for pt in on_shell_points(rng, params, n, (E,)):
            ratios.append(fz.poisson_bracket(Fp, Fm, pt) / (-1j * cmath.sqrt(E)))
        ratios = np.array(ratios)
        ref = fz.ladder_bracket_coefficient(params, E)
        worst = max(worst, float(np.max(np.abs(ratios - ref)) / abs(ref)))
    return CheckResult("poisson-ladder-bracket", worst < 1e-4, worst, 1e-4)


def _closed_form_cases():
    return [
        TrajectorySpec(HERMITIAN, 8.0, 0.0, 0.0, 3.0, 3001),
        TrajectorySpec(PT_REAL, 8.0, 0.3, 0.0, 3.0, 3001),
        TrajectorySpec(PT_COMPLEX, 8 + 0.5j, 0.0, 0.0, 3.0, 3001),
        TrajectorySpec(PT_SS, 9.0, -1.5, 0.0, 3.0, 3001),
    ]


def check_closed_form_vs_oracle(rng=None) -> CheckResult:
    worst = 0.0
    for spec in _closed_form_cases():
        cf = sample_trajectory(spec)
        ode = integrate(spec.params, PhasePoint(cf.x[0], cf.p[0], cf.t[0]), spec.t_end,
                        IntegratorConfig(), cf.t)
        worst = max(worst, float(np.max(np.abs(cf.x - ode.x))))
    return CheckResult("closed-form-vs-oracle", worst < 1e-6, worst, 1e-6)


def check_closed_form_energy(rng=None) -> CheckResult:
    worst = max(sample_trajectory(spec).energy_residual() for spec in _closed_form_cases())
    return CheckResult("closed-form-energy", worst < 1e-8, worst, 1e-8)


def _barrier_cases():
    """Trajectories through the barrier at t = 0, sampled on [-0.5, 0.5].

    Far from the barrier one of A+- is a cancellation between terms of size
    exp(|alpha0 sqrt(E) t|), so |Q+-| is only meaningful near the barrier.
    """
    return [
        TrajectorySpec(HERMITIAN, 8.0, 0.0, -0.5, 0.5, 1001),
        TrajectorySpec(PT_REAL, 8.0, 0.0, -0.5, 0.5, 1001),
        TrajectorySpec(PT_COMPLEX, 8 + 0.5j, 0.0, -0.5, 0.5, 1001),
        TrajectorySpec(PT_SS, 9.0, 0.0, -0.5, 0.5, 1001),
        TrajectorySpec(PT_SS, 15.0, 0.0, -0.5, 0.5, 1001),
    ]


def q_drift(spec: TrajectorySpec, n_samples: int = 101) -> float:
    """max_t ||Q+-(t)| - |Q+-(t0)|| / |Q+-(t0)| along the oracle trajectory."""
    cf = sample_trajectory(spec)
    ts = np.linspace(spec.t_start, spec.t_end, n_samples)
    ode = integrate(spec.params, PhasePoint(cf.x[0], cf.p[0], spec.t_start), spec.t_end,
                    IntegratorConfig(), ts)
    q = np.abs([fz.q_values(spec.params, pt, spec.energy, pt.t) for pt in ode.points])
    return float(np.max(np.abs(q - q[0]) / q[0]))


def check_integrals_of_motion(rng=None) -> CheckResult:
    worst = max(q_drift(spec) for spec in _barrier_cases())
    return CheckResult("integrals-of-motion", worst < 1e-6, worst, 1e-6)


def check_energy_windows(rng=None) -> CheckResult:
    expected = [
        (HERMITIAN, ((3 + np.sqrt(13), np.inf),)),
        (PT_REAL, ((0.0, 3 - np.sqrt(5)), (3 + np.sqrt(5), np.inf))),
        (PT_SS, ((0.0, np.inf),)),
    ]
    worst = 0.0
    for params, ref in expected:
        got = fz.energy_windows(params).intervals
        if len(got) != len(ref):
            return CheckResult("energy-windows", False, np.inf, 1e-9)
        for (a, b), (c, d) in zip(got, ref):
            worst = max(worst, abs(a - c), 0.0 if b == d else abs(b - d))
    return CheckResult("energy-windows", worst < 1e-9, worst, 1e-9)


CHECKS: dict[str, Callable] = {
    "factorization-identity": check_factorization_identity,
    "poisson-canonical": check_poisson_canonical,
    "poisson-deformed-algebra": check_poisson_algebra,
    "poisson-ladder-bracket": check_poisson_ladder_bracket,
    "integrals-of-motion": check_integrals_of_motion,
    "closed-form-vs-oracle": check_closed_form_vs_oracle,
    "closed-form-energy": check_closed_form_energy,
    "energy-windows": check_energy_windows,
}


def run_checks(filter: str | None = None, seed: int = 0) -> list[CheckResult]:
    """Run every check whose name contains ``filter`` (all when None)."""
    results = []
    for name, fn in CHECKS.items():
        if filter and filter not in name:
            continue
        rng = np.random.default_rng(seed)
        try:
            results.append(fn(rng))
        except Exception as exc:  # a crashing check is a failing check
            results.append(CheckResult(f"{name} ({type(exc).__name__}: {exc})", False, np.inf, 0.0))
    return results
