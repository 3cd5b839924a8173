"""Brute-force check of the closed form: Hamilton's equations by Dormand-Prince.

The complex system x' = 2p, p' = -V'(x) is integrated as the real system
(Re x, Im x, Re p, Im p), which is equivalent because V is holomorphic.
Steps use the 5(4) Dormand-Prince pair with local extrapolation; samples
come from its quartic continuous extension (Shampine's coefficients).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .closed_form import Trajectory
from .errors import IntegrationError, PoleError
from .scarf_model import PhasePoint, ScarfParams, Variant, hamiltonian, potential_derivative

#: Stop when |cosh(alpha0 x / 2)| falls below this during stepping.
POLE_BAILOUT = 1e-8

_C = np.array([0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
]
_B = np.array([35 / 384, 0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
# fifth- minus fourth-order weights, last entry multiplies the FSAL stage
_E = np.array([-71 / 57600, 0, 71 / 16695, -71 / 1920, 17253 / 339200, -22 / 525, 1 / 40])
_P = np.array([
    [1, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432],
    [0, 0, 0, 0],
    [0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799],
    [0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072],
    [0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632],
    [0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844],
    [0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423],
])


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = 1e-2
    max_steps: int = 10_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_step > 0):
            raise ValueError("tolerances and max_step must be positive")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


def free_particle_params(alpha0: float = 2.0) -> ScarfParams:
    """V = 0 (gamma0 = delta = 0); bypasses validation, for integrator self-tests only."""
    params = object.__new__(ScarfParams)
    for name, value in (("alpha0", float(alpha0)), ("gamma0", 0.0),
                        ("coupling", 0j), ("variant", Variant.HERMITIAN)):
        object.__setattr__(params, name, value)
    return params


def _pack(x: complex, p: complex) -> np.ndarray:
    return np.array([x.real, x.imag, p.real, p.imag])


def _rhs_factory(params: ScarfParams):
    half = 0.5 * params.alpha0

    def rhs(y: np.ndarray) -> np.ndarray:
        x = complex(y[0], y[1])
        # |cosh u| >= |sinh(Re u)|, so poles only matter for small Re u
        if abs(half * x.real) < 1.0:
            modulus = abs(cmath.cosh(half * x))
            if modulus < POLE_BAILOUT:
                raise PoleError(x, modulus)
        dv = potential_derivative(params, x)
        return np.array([2 * y[2], 2 * y[3], -dv.real, -dv.imag])

    return rhs


def _dense(y_old, h, Q, theta):
    powers = np.cumprod(np.full(4, theta))
    return y_old + h * (Q @ powers)


def _initial_step(rhs, y0, f0, direction, config):
    scale = config.abs_tol + np.abs(y0) * config.rel_tol
    d0 = np.linalg.norm(y0 / scale) / 2
    d1 = np.linalg.norm(f0 / scale) / 2
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h0 = min(h0, config.max_step)
    f1 = rhs(y0 + direction * h0 * f0)
    d2 = np.linalg.norm((f1 - f0) / scale) / 2 / h0
    h1 = max(1e-6, h0 * 1e-3) if max(d1, d2) <= 1e-15 else (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, config.max_step)


def integrate(params: ScarfParams, initial: PhasePoint, t_end: float,
              config: IntegratorConfig | None = None,
              sample_times: Sequence[float] | None = None) -> Trajectory:
    """Integrate Hamilton's equations from ``initial`` to ``t_end``.

    ``sample_times`` must lie between ``initial.t`` and ``t_end`` and be
    ordered in the direction of integration (backwards integration is
    allowed). If omitted, only the end point is returned with the start.

    Raises
    ------
    IntegrationError
        Near a pole of V, on step-size underflow, or when ``max_steps`` is
        exceeded. ``partial`` carries the samples reached so far.
    """
    config = config or IntegratorConfig()
    t0 = float(initial.t)
    t_end = float(t_end)
    if sample_times is None:
        sample_times = [t0, t_end]
    ts = np.asarray(sample_times, dtype=float)
    direction = 1.0 if t_end >= t0 else -1.0
    if len(ts) and (np.any(direction * np.diff(ts) < 0)
                    or direction * (ts[0] - t0) < 0 or direction * (t_end - ts[-1]) < 0):
        raise ValueError("sample_times must be ordered within [initial.t, t_end]")

    rhs = _rhs_factory(params)
    out = np.empty((len(ts), 4))
    filled = 0
    y = _pack(complex(initial.x), complex(initial.p))
    t = t0

    def emit_partial(message):
        part = _as_trajectory(params, initial, ts[:filled], out[:filled])
        return IntegrationError(message, partial=part, last_state=PhasePoint(
            complex(y[0], y[1]), complex(y[2], y[3]), t))

    while filled < len(ts) and ts[filled] == t0:
        out[filled] = y
        filled += 1
    if t_end == t0:
        return _as_trajectory(params, initial, ts, out)

    try:
        f = rhs(y)
        h = _initial_step(rhs, y, f, direction, config)
    except PoleError as exc:
        raise emit_partial(f"initial point too close to a pole: {exc}") from exc

    K = np.empty((7, 4))
    steps = 0
    while direction * (t_end - t) > 0:
        if steps >= config.max_steps:
            raise emit_partial(f"max_steps = {config.max_steps} exceeded at t = {t}")
        min_step = 10 * np.spacing(abs(t) + 1.0)
        h = min(h, config.max_step, abs(t_end - t))
        if h < min_step:
            raise emit_partial(f"step size underflow at t = {t}")
        try:
            while True:
                hs = direction * h
                K[0] = f
                for i in range(1, 6):
                    dy = hs * (np.asarray(_A[i]) @ K[:i])
                    K[i] = rhs(y + dy)
                y_new = y + hs * (_B @ K[:6])
                f_new = rhs(y_new)
                K[6] = f_new
                scale = config.abs_tol + np.maximum(np.abs(y), np.abs(y_new)) * config.rel_tol
                err = np.sqrt(np.mean((hs * (_E @ K) / scale) ** 2))
                if err <= 1.0:
                    factor = 10.0 if err == 0 else min(10.0, 0.9 * err ** -0.2)
                    break
                h *= max(0.2, 0.9 * err ** -0.2)
                if h < min_step:
                    raise emit_partial(f"step size underflow at t = {t}")
        except PoleError as exc:
            raise emit_partial(f"approached a pole of V near t = {t}: {exc}") from exc

        t_new = t + hs
        if direction * (t_end - t_new) < 1e-14 * max(1.0, abs(t_end)):
            t_new = t_end
        Q = K.T @ _P
        while filled < len(ts) and direction * (ts[filled] - t_new) <= 0:
            out[filled] = _dense(y, hs, Q, (ts[filled] - t) / hs)
            filled += 1
        y, f, t = y_new, f_new, t_new
        h *= factor
        steps += 1

    while filled < len(ts):
        out[filled] = y
        filled += 1
    return _as_trajectory(params, initial, ts, out)


def _as_trajectory(params, initial, ts, states) -> Trajectory:
    x = states[:, 0] + 1j * states[:, 1]
    p = states[:, 2] + 1j * states[:, 3]
    try:
        energy = hamiltonian(params, initial)
    except PoleError:
        energy = complex("nan")
    return Trajectory(params, energy, None, np.asarray(ts, dtype=float), x, p)
