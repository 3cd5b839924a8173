
import numpy as np
import pytest

from ptscarf.closed_form import (TrajectorySpec, asinh_argument, momentum_at, position_at,
                                 sample_trajectory)
from ptscarf.errors import BarrierDivergence, BranchPointError
from ptscarf.ode_oracle import integrate
from ptscarf.scarf_model import PhasePoint, ScarfParams, hamiltonian


def test_spec_validation(hermitian, pt_ss):
    with pytest.raises(ValueError):
        TrajectorySpec(hermitian, 5.0)  # below the 6.6056 threshold
    with pytest.raises(ValueError):
        TrajectorySpec(hermitian, 8.0, samples=1)
    with pytest.raises(ValueError):
        TrajectorySpec(hermitian, 8.0, t_start=1.0, t_end=1.0)
    with pytest.raises(ValueError):
        TrajectorySpec(hermitian, -1.0 + 1j)
    TrajectorySpec(hermitian, 5.0, allow_outside_windows=True)
    TrajectorySpec(hermitian, 5.0 + 0.1j)  # complex energies are not window-checked
    TrajectorySpec(pt_ss, 0.3)


def test_hermitian_initial_point(hermitian):
    spec = TrajectorySpec(hermitian, 8.0)
    x, n = position_at(spec, 0.0)
    assert n == 0
    assert x == pytest.approx(0.247466461547263453, abs=1e-14)
    p = momentum_at(spec, 0.0, x)
    assert p == pytest.approx(1.18817705157200917, abs=1e-13)
    assert hamiltonian(hermitian, PhasePoint(x, p)) == pytest.approx(8.0, abs=1e-12)


def test_pt_initial_point_is_imaginary(pt_real):
    spec = TrajectorySpec(pt_real, 8.0)
    x, _ = position_at(spec, 0.0)
    assert x.real == pytest.approx(0.0, abs=1e-15)
    assert x.imag == pytest.approx(0.252680255142078653, abs=1e-14)
    assert hamiltonian(pt_real, PhasePoint(x, momentum_at(spec, 0.0, x))) == pytest.approx(8.0, abs=1e-12)


def test_threshold_energy_is_static(hermitian):
    E = (6 + np.sqrt(52)) / 2
    spec = TrajectorySpec(hermitian, E, allow_outside_windows=True)
    for t in (-1.0, 0.0, 2.5):
        x, _ = position_at(spec, t)
        assert x == pytest.approx(np.arcsinh(2 / E), abs=1e-7)
        assert abs(momentum_at(spec, t, x)) < 1e-6


def test_free_asymptotics(hermitian):
    spec = TrajectorySpec(hermitian, 8.0)
    x, _ = position_at(spec, 5.0)
    p = momentum_at(spec, 5.0, x)
    assert 0.99 * np.sqrt(8) <= abs(p) <= 1.01 * np.sqrt(8)


def test_branch_point_and_divergence(pt_ss):
    spec = TrajectorySpec(pt_ss, 12.0)  # asinh argument is exactly i at t = 0
    assert asinh_argument(spec, 0.0) == pytest.approx(1j, abs=1e-15)
    with pytest.raises(BranchPointError):
        position_at(spec, 0.0)
    with pytest.raises(BranchPointError):
        sample_trajectory(TrajectorySpec(pt_ss, 12.0, 0.0, -1, 1, 2001))
    with pytest.raises(BarrierDivergence):
        momentum_at(spec, 0.0, 1j * np.pi / pt_ss.alpha0)


def test_position_continuity_argument(pt_ss):
    """position_at with a previous point picks the nearest branch."""
    spec = TrajectorySpec(pt_ss, 9.0, 0.0, -1, 1)
    x_prev, n = position_at(spec, -1e-3)
    x_next, n2 = position_at(spec, 1e-3, (x_prev, n))
    assert abs(x_next - x_prev) < 0.1 and n2 != 0
    assert abs(position_at(spec, 1e-3)[0] - x_prev) > 1.0  # the principal branch jumps


def test_hermitian_trajectory_is_real(hermitian):
    traj = sample_trajectory(TrajectorySpec(hermitian, 8.0, 0.0, -2, 2, 4001))
    assert np.max(np.abs(traj.x.imag)) < 1e-12
    assert np.max(np.abs(traj.p.imag)) < 1e-12
    assert traj.energy_residual() < 1e-8
    assert traj.velocity_residual() < 1e-4
    assert np.all(np.diff(traj.t) > 0)
    assert np.allclose(np.diff(traj.t), 1e-3, rtol=0, atol=1e-12)


@pytest.mark.parametrize("params,E,theta0", [
    (ScarfParams.hermitian(2, 6, 2), 8.0, 0.0),
    (ScarfParams.hermitian(2, 6, 2), 12.0 + 1j, 0.3j),
    (ScarfParams.pt_symmetric(2, 6, 2), 8.0, 0.2),
    (ScarfParams.pt_symmetric(2, 6, 2), 0.5, -0.4),
    (ScarfParams.pt_symmetric(2, 3, 2), 8.0 + 0.5j, 0.0),
    (ScarfParams.pt_symmetric(2, 4, 12), 6.0, 0.0),
    (ScarfParams.pt_symmetric(2, 4, 12), 20.0, 0.1 - 0.1j),
])
def test_energy_conservation_and_velocity_law(params, E, theta0):
    traj = sample_trajectory(TrajectorySpec(params, E, theta0, -1.5, 1.5, 3001))
    assert traj.energy_residual() < 1e-8
    assert traj.velocity_residual() < 1e-4


@pytest.mark.parametrize("params,E,theta0", [
    (ScarfParams.hermitian(2, 6, 2), 8.0, 0.1),
    (ScarfParams.pt_symmetric(2, 6, 2), 8.0, 0.0),
    (ScarfParams.pt_symmetric(2, 3, 2), 8.0 + 0.5j, 0.2j),
    (ScarfParams.pt_symmetric(2, 4, 12), 9.0, -1.5),  # reflected at the barrier
    (ScarfParams.pt_symmetric(2, 4, 12), 16.0, -1.0),  # transmitted
])
def test_oracle_equivalence(params, E, theta0):
    cf = sample_trajectory(TrajectorySpec(params, E, theta0, 0, 3, 601))
    ode = integrate(params, PhasePoint(cf.x[0], cf.p[0], 0.0), 3.0, sample_times=cf.t)
    assert np.max(np.abs(cf.x - ode.x)) < 1e-6
    assert np.max(np.abs(cf.p - ode.p)) < 1e-6


def test_reflection_below_singular_energy(pt_ss):
    traj = sample_trajectory(TrajectorySpec(pt_ss, 9.0, 0.0, -2, 2, 4001))
    assert traj.x[0].real < -3 and traj.x[-1].real < -3  # comes back
    assert set(np.unique(traj.branch)) == {0, 1}
    above = sample_trajectory(TrajectorySpec(pt_ss, 15.0, 0.0, -2, 2, 4001))
    assert above.x[0].real < -3 and above.x[-1].real > 3  # goes through
    assert set(np.unique(above.branch)) == {0}


def test_fig5_endpoint_matches_high_precision_ode(pt_real):
    # mpmath Taylor integration (30 digits) from the closed-form initial point
    traj = sample_trajectory(TrajectorySpec(pt_real, 8.0, 0.0, 0.0, 2.0, 2001))
    assert traj.x[-1] == pytest.approx(10.7321330944691874 + 1.09160074188684059e-5j, abs=1e-10)
    assert abs(traj.x[1000].imag) > 1e-3


def test_non_crossing_fig5(pt_real):
    trajs = [sample_trajectory(TrajectorySpec(pt_real, 8.0, th, -2, 2, 4001)) for th in (0.0, 0.3, 0.6)]
    for i in range(3):
        for j in range(i + 1, 3):
            assert np.min(np.abs(trajs[i].x - trajs[j].x)) > 1e-6


def test_points_view(hermitian):
    traj = sample_trajectory(TrajectorySpec(hermitian, 8.0, 0.0, 0, 1, 11))
    pts = traj.points
    assert len(pts) == len(traj) == 11
    assert pts[3] == PhasePoint(complex(traj.x[3]), complex(traj.p[3]), float(traj.t[3]))


def test_sampled_matches_pointwise_evaluation(pt_complex):
    spec = TrajectorySpec(pt_complex, 8 + 0.5j, 0.1, -1, 1, 201)
    traj = sample_trajectory(spec)
    prev = None
    for t, x, n in zip(traj.t, traj.x, traj.branch):
        xs, ns = position_at(spec, t, prev)
        assert xs == pytest.approx(x, abs=1e-13) and ns == n
        prev = (xs, ns)
    assert momentum_at(spec, traj.t[50], traj.x[50]) == pytest.approx(traj.p[50], rel=1e-13)
