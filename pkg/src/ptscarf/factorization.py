"""Ladder functions, integrals of motion and the deformed Poisson algebra.

For scattering states (E > 0) the phase-space factors are

    A+- = -+ i f(x) p + i sqrt(E) g(x) - i delta / sqrt(E),

with f = cosh(alpha0 x / 2), g = sinh(alpha0 x / 2), and they satisfy

    H = A+ A- + gamma(H),       gamma(H) = gamma0 + delta**2 / H,
    {A+-, H} = +- i alpha(H) A+-,   alpha(H) = i alpha0 sqrt(H).

``Q+- = A+- exp(-+ i alpha(H) t)`` are constants of motion with modulus
``c(E) = sqrt(E - gamma(E))``.

Sign convention
---------------
Only the bound-state form of A+- is fixed a priori; the scattering
substitution sqrt(-E) -> +-i sqrt(E) and the sign of phi(H) leave four
candidates. Exactly two of them satisfy ``A+ A- + gamma(H) = H`` on shell and
they differ by an overall sign. We keep ``(+i sqrt(E), phi = -i delta/sqrt(E))``,
which is the one whose integrals of motion take the values
``q+- = -+ i c(E) exp(-+ theta0)`` along the closed-form trajectories.
``tests/test_factorization.py`` re-derives this choice.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .scarf_model import PhasePoint, ScarfParams, hamiltonian

#: sqrt(-E) is replaced by SQRT_MINUS_H_SIGN * 1j * sqrt(E).
SQRT_MINUS_H_SIGN = 1
#: phi(H) = PHI_H_SIGN * 1j * delta / sqrt(E).
PHI_H_SIGN = -1


def ladder_f(params: ScarfParams, x):
    return np.cosh(0.5 * params.alpha0 * np.asarray(x, dtype=complex))[()]


def ladder_g(params: ScarfParams, x):
    return np.sinh(0.5 * params.alpha0 * np.asarray(x, dtype=complex))[()]


def _check_energy(E) -> complex:
    E = complex(E)
    if E == 0:
        raise ZeroDivisionError("energy must be nonzero")
    return E


def gamma_of_H(params: ScarfParams, E) -> complex:
    """gamma(E) = gamma0 + delta**2 / E (delta**2 = -delta_i**2 for PT)."""
    E = _check_energy(E)
    return params.gamma0 + params.coupling**2 / E


def c_of_E(params: ScarfParams, E) -> complex:
    """Modulus of the integrals of motion, principal sqrt(E - gamma(E))."""
    E = _check_energy(E)
    return cmath.sqrt(E - gamma_of_H(params, E))


def alpha_of_H(params: ScarfParams, E) -> complex:
    """Structure function of the deformed algebra, i alpha0 sqrt(E)."""
    return 1j * params.alpha0 * cmath.sqrt(_check_energy(E))


@dataclass(frozen=True)
class EnergyWindows:
    """Real energies E > 0 for which c(E)**2 > 0.

    ``intervals`` is a sorted tuple of disjoint open intervals ``(lo, hi)``;
    ``hi`` may be ``inf``.
    """

    intervals: tuple[tuple[float, float], ...]
    all_positive: bool = False

    def __contains__(self, E) -> bool:
        E = complex(E)
        if E.imag != 0:
            return False
        return any(lo < E.real < hi for lo, hi in self.intervals)

    @property
    def lower_bound(self) -> float:
        """Threshold of the unbounded window."""
        return self.intervals[-1][0]


def energy_windows(params: ScarfParams) -> EnergyWindows:
    g = params.gamma0
    if not params.is_pt:
        d2 = params.coupling.real**2
        return EnergyWindows((((g + math.sqrt(g * g + 4.0 * d2)) / 2.0, math.inf),))
    d2 = params.delta_i**2
    disc = g * g - 4.0 * d2
    if disc < 0:
        # min over E > 0 of E + delta_i**2/E is 2|delta_i| > gamma0
        return EnergyWindows(((0.0, math.inf),), all_positive=True)
    root = math.sqrt(disc)
    return EnergyWindows(((0.0, (g - root) / 2.0), ((g + root) / 2.0, math.inf)))


class LadderValue(NamedTuple):
    a_plus: complex
    a_minus: complex


def ladder_values(params: ScarfParams, point: PhasePoint, E,
                  sqrt_sign: int | None = None, phi_sign: int | None = None) -> LadderValue:
    """Evaluate A+ and A- at ``point`` for energy ``E``.

    ``E`` is explicit so off-shell evaluation is possible; pass
    ``hamiltonian(params, point)`` for on-shell values. The sign keywords
    default to the module constants and exist for convention checks.
    """
    E = _check_energy(E)
    sqrt_sign = SQRT_MINUS_H_SIGN if sqrt_sign is None else sqrt_sign
    phi_sign = PHI_H_SIGN if phi_sign is None else phi_sign
    root = cmath.sqrt(E)
    f = complex(ladder_f(params, point.x))
    g = complex(ladder_g(params, point.x))
    kinetic = 1j * f * complex(point.p)
    rest = sqrt_sign * 1j * root * g + phi_sign * 1j * params.coupling / root
    return LadderValue(-kinetic + rest, kinetic + rest)


def on_shell_ladder(params: ScarfParams, point: PhasePoint, **signs) -> LadderValue:
    return ladder_values(params, point, hamiltonian(params, point), **signs)


def q_values(params: ScarfParams, point: PhasePoint, E, t: float) -> tuple[complex, complex]:
    """Time-dependent integrals of motion Q+- = A+- exp(-+ i alpha(E) t)."""
    a = ladder_values(params, point, E)
    phase = 1j * alpha_of_H(params, E) * t
    return a.a_plus * cmath.exp(-phase), a.a_minus * cmath.exp(phase)


def factorization_residual(params: ScarfParams, point: PhasePoint, **signs) -> float:
    """Relative residual of A+ A- + gamma(H) = H at an on-shell point."""
    E = hamiltonian(params, point)
    a = ladder_values(params, point, E, **signs)
    lhs = a.a_plus * a.a_minus + gamma_of_H(params, E)
    return abs(lhs - E) / max(1.0, abs(E))


PhaseFunction = Callable[[PhasePoint], complex]


def _step(z: complex, h: float | None) -> float:
    return 1e-6 * max(1.0, abs(z)) if h is None else h


def poisson_bracket(F: PhaseFunction, G: PhaseFunction, point: PhasePoint,
                    h: float | None = None) -> complex:
    """{F, G} = F_x G_p - F_p G_x by central differences.

    F and G must be holomorphic in x and p near ``point``; a real step then
    gives the complex derivative. The default step is
    ``1e-6 * max(1, |coordinate|)``.
    """
    x, p, t = point.x, point.p, point.t
    hx, hp = _step(x, h), _step(p, h)

    def d_dx(fn):
        return (fn(PhasePoint(x + hx, p, t)) - fn(PhasePoint(x - hx, p, t))) / (2 * hx)

    def d_dp(fn):
        return (fn(PhasePoint(x, p + hp, t)) - fn(PhasePoint(x, p - hp, t))) / (2 * hp)

    return d_dx(F) * d_dp(G) - d_dp(F) * d_dx(G)


def a_plus_function(params: ScarfParams, **signs) -> PhaseFunction:
    """A+ as a phase-space function, with E = H(x, p) substituted."""
    return lambda pt: on_shell_ladder(params, pt, **signs).a_plus


def a_minus_function(params: ScarfParams, **signs) -> PhaseFunction:
    return lambda pt: on_shell_ladder(params, pt, **signs).a_minus


def hamiltonian_function(params: ScarfParams) -> PhaseFunction:
    return lambda pt: hamiltonian(params, pt)


def ladder_bracket_coefficient(params: ScarfParams, E) -> complex:
    """k(E) in {A+, A-} = k(E) A0 with A0 = -i sqrt(H).

    Holds with A+- taken as functions of (x, p) through H: k = -i alpha0 (1 - gamma'(E)).
    """
    E = _check_energy(E)
    return -1j * params.alpha0 * (1.0 + params.coupling**2 / E**2)


def algebra_residuals(params: ScarfParams, point: PhasePoint) -> tuple[float, float]:
    """Relative residuals of {A+-, H} = +- i alpha(H) A+- at ``point``."""
    E = hamiltonian(params, point)
    a = ladder_values(params, point, E)
    ia = 1j * alpha_of_H(params, E)
    H = hamiltonian_function(params)
    out = []
    for sign, fn, value in ((1, a_plus_function(params), a.a_plus),
                            (-1, a_minus_function(params), a.a_minus)):
        bracket = poisson_bracket(fn, H, point)
        expected = sign * ia * value
        out.append(abs(bracket - expected) / max(abs(expected), 1e-300))
    return out[0], out[1]
