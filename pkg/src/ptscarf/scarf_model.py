"""Scarf II potential family and the complex-phase-space Hamiltonian.

Units are hbar = 2m = 1, so H(x, p) = p**2 + V(x) with

    V(x) = gamma0 * sech(u)**2 + 2 * delta * sech(u) * tanh(u),   u = alpha0 * x / 2.

The coupling ``delta`` is real for the Hermitian potential and purely
imaginary (``delta = 1j * delta_i``) for the PT-symmetric one. Every function
here accepts a complex scalar or a numpy array of positions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import PoleError

#: Default refusal radius around the poles x = i*pi*(2k+1)/alpha0.
POLE_EPS = 1e-12

# Beyond this |Re u| cosh overflows soon after; use the asymptotic forms.
_ASYMPTOTIC_RE_U = 350.0


class Variant(enum.Enum):
    HERMITIAN = "hermitian"
    PT_SYMMETRIC = "pt"


@dataclass(frozen=True)
class ScarfParams:
    """Parameters of the Scarf II potential.

    Parameters
    ----------
    alpha0 : float
        Inverse length scale, the sech argument is ``alpha0 * x / 2``.
    gamma0 : float
        Strength of the sech**2 term.
    coupling : complex
        ``delta``; real for Hermitian, ``1j * delta_i`` for PT-symmetric.
    variant : Variant
    """

    alpha0: float
    gamma0: float
    coupling: complex
    variant: Variant

    def __post_init__(self):
        object.__setattr__(self, "alpha0", float(self.alpha0))
        object.__setattr__(self, "gamma0", float(self.gamma0))
        object.__setattr__(self, "coupling", complex(self.coupling))
        object.__setattr__(self, "variant", Variant(self.variant))
        if not self.alpha0 > 0:
            raise ValueError(f"alpha0 must be positive, got {self.alpha0}")
        if not self.gamma0 > 0:
            raise ValueError(f"gamma0 must be positive, got {self.gamma0}")
        if self.variant is Variant.HERMITIAN and self.coupling.imag != 0:
            raise ValueError("Hermitian coupling must be real")
        if self.variant is Variant.PT_SYMMETRIC and self.coupling.real != 0:
            raise ValueError("PT-symmetric coupling must be purely imaginary")

    @classmethod
    def hermitian(cls, alpha0: float, gamma0: float, delta: float) -> "ScarfParams":
        return cls(alpha0, gamma0, complex(delta, 0.0), Variant.HERMITIAN)

    @classmethod
    def pt_symmetric(cls, alpha0: float, gamma0: float, delta_i: float) -> "ScarfParams":
        return cls(alpha0, gamma0, complex(0.0, delta_i), Variant.PT_SYMMETRIC)

    @property
    def is_pt(self) -> bool:
        return self.variant is Variant.PT_SYMMETRIC

    @property
    def delta(self) -> complex:
        return self.coupling

    @property
    def delta_i(self) -> float:
        """Imaginary strength delta_I (zero for the Hermitian variant)."""
        return self.coupling.imag

    def as_dict(self) -> dict:
        d = {"variant": self.variant.value, "alpha0": self.alpha0, "gamma0": self.gamma0}
        if self.is_pt:
            d["delta_i"] = self.delta_i
        else:
            d["delta"] = self.coupling.real
        return d


@dataclass(frozen=True)
class PhasePoint:
    x: complex
    p: complex
    t: float = 0.0


def _scalar_out(value, scalar: bool):
    return complex(value) if scalar else value


def _sech_tanh(params: ScarfParams, x, pole_eps: float):
    """Return (sech(u), tanh(u)) for u = alpha0*x/2, refusing near poles."""
    u = 0.5 * params.alpha0 * np.asarray(x, dtype=complex)
    far = np.abs(u.real) > _ASYMPTOTIC_RE_U
    if np.any(far):
        sign = np.sign(u.real)
        u_near = np.where(far, 0.0, u)
        cosh = np.cosh(u_near)
        # sech(u) ~ 2 exp(-|u|), tanh(u) ~ sign(Re u)
        sech = np.where(far, 2.0 * np.exp(-sign * np.where(far, u, 0.0)), 1.0 / cosh)
        tanh = np.where(far, sign + 0j, np.sinh(u_near) / cosh)
        return sech, tanh
    cosh = np.cosh(u)
    modulus = np.abs(cosh)
    if np.any(modulus < pole_eps):
        i = int(np.argmin(modulus))
        raise PoleError(complex(np.ravel(x)[i]), float(np.ravel(modulus)[i]))
    return 1.0 / cosh, np.sinh(u) / cosh


def potential(params: ScarfParams, x, pole_eps: float = POLE_EPS):
    """V(x) = gamma0 sech^2(u) + 2 delta sech(u) tanh(u), u = alpha0 x / 2.

    Raises
    ------
    PoleError
        If ``|cosh(u)| < pole_eps`` at any requested position.
    """
    sech, tanh = _sech_tanh(params, x, pole_eps)
    v = params.gamma0 * sech * sech + 2.0 * params.coupling * sech * tanh
    return _scalar_out(v, np.ndim(x) == 0)


def potential_derivative(params: ScarfParams, x, pole_eps: float = POLE_EPS):
    """Analytic dV/dx.

    Uses d(sech^2)/du = -2 sech^2 tanh and d(sech tanh)/du = sech (sech^2 - tanh^2).
    """
    sech, tanh = _sech_tanh(params, x, pole_eps)
    dv_du = -2.0 * params.gamma0 * sech * sech * tanh + 2.0 * params.coupling * sech * (
        sech * sech - tanh * tanh
    )
    return _scalar_out(0.5 * params.alpha0 * dv_du, np.ndim(x) == 0)


def hamiltonian(params: ScarfParams, point: PhasePoint, pole_eps: float = POLE_EPS) -> complex:
    return complex(point.p) ** 2 + potential(params, point.x, pole_eps)


def hamiltonian_xp(params: ScarfParams, x, p, pole_eps: float = POLE_EPS):
    """Array form of :func:`hamiltonian`."""
    p = np.asarray(p, dtype=complex)
    h = p * p + potential(params, x, pole_eps)
    return _scalar_out(h, np.ndim(x) == 0 and np.ndim(p) == 0)
