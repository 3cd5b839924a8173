import time

import numpy as np
import pytest

from ptscarf.scarf_model import ScarfParams
from ptscarf.closed_form import TrajectorySpec, sample_trajectory
from ptscarf.singularity import (barrier_momentum, classical_ss_condition, quantum_ss_condition,
                                 quantum_ss_energy, scan_classical_ss)


def test_quantum_energy(pt_ss):
    e, physical = quantum_ss_energy(pt_ss)
    assert e == pytest.approx((24 - 4.25) / 4, abs=1e-15) and physical
    e, physical = quantum_ss_energy(ScarfParams.pt_symmetric(2, 6, 2))
    assert e < 0 and not physical


def test_hermitian_rejected(hermitian):
    for fn in (quantum_ss_energy, quantum_ss_condition, classical_ss_condition):
        with pytest.raises(ValueError):
            fn(hermitian)
    with pytest.raises(ValueError):
        scan_classical_ss(hermitian, [8.0, 9.0])


def test_quantum_condition(pt_ss):
    assert quantum_ss_condition(pt_ss) == (True, None)  # 4 + 24 = 28 is not quantized
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 0.1, 0.325)) == (True, 0)
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 0.75, 4.0)) == (True, 1)
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 6, 2)) == (False, None)
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 12, 4)) == (False, None)
    # boundary: 0.5 > 0.25 + 1/4 is false, the quantization still matches n = 0
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 0.25, 0.25)) == (False, 0)
    with pytest.raises(ValueError):
        quantum_ss_condition(pt_ss, n_max=-1)


def test_sign_of_coupling_enters_quantum_inequality():
    assert quantum_ss_condition(ScarfParams.pt_symmetric(2, 4.2, -2.05))[0]
    assert not quantum_ss_condition(ScarfParams.pt_symmetric(2, 4.2, 2.05))[0]


def test_classical_condition_boundary():
    assert not classical_ss_condition(ScarfParams.pt_symmetric(2, 4, 2))
    assert classical_ss_condition(ScarfParams.pt_symmetric(2, 4, 2 + 1e-12))
    assert classical_ss_condition(ScarfParams.pt_symmetric(2, 4, -12))


def test_quantum_implies_classical_for_positive_coupling():
    grid = [(g, d) for g in np.linspace(0.1, 10, 10) for d in np.linspace(0.1, 8, 10)]
    for g, d in grid:
        params = ScarfParams.pt_symmetric(2, g, d)
        if quantum_ss_condition(params)[0]:
            assert classical_ss_condition(params)
    # classical without quantum: the window gamma0 < 2 delta_i <= gamma0 + 1/4
    assert classical_ss_condition(ScarfParams.pt_symmetric(2, 4, 2.05))
    assert not quantum_ss_condition(ScarfParams.pt_symmetric(2, 4, 2.05))[0]


@pytest.mark.parametrize("E", [3.0, 6.0, 9.0])
def test_low_energy_trajectories_keep_off_the_barrier(pt_ss, E):
    traj = sample_trajectory(TrajectorySpec(pt_ss, E, 0.0, -2, 2, 4001))
    # closest approach Re x = 2 asinh(...) stays at the turning point
    assert np.min(np.abs(traj.x.real)) > 0.05


@pytest.mark.parametrize("E", [9.0, 11.99, 11.9995])
def test_closest_approach_closes_at_singular_energy(pt_ss, E):
    # at t = 0 the asinh argument is i delta_i / E, so |Re x| = (2/alpha0) acosh(delta_i / E)
    # p spikes too sharply near E_s for the finite-difference velocity check
    traj = sample_trajectory(TrajectorySpec(pt_ss, E, 0.0, -2, 2, 4001), check=False)
    assert traj.energy_residual() < 1e-8
    gap = np.min(np.abs(traj.x.real))
    assert gap == pytest.approx(np.arccosh(12.0 / E), rel=1e-9)
    if E > 11.999:
        assert gap < 1e-2


def test_barrier_momentum_values(pt_ss):
    assert barrier_momentum(pt_ss, 30.0) == pytest.approx(6.05530070819498333, rel=1e-9)
    assert barrier_momentum(pt_ss, 12.0) == np.inf
    # below the singular energy the reflected path has purely imaginary p at the barrier
    assert abs(barrier_momentum(pt_ss, 9.0)) < 1e-12


def test_scan_peak_is_divergent(pt_ss):
    start = time.perf_counter()
    scan = scan_classical_ss(pt_ss, np.arange(0.5, 30.05, 0.1))
    assert time.perf_counter() - start < 30
    assert scan.peak_energy == pytest.approx(12.0, abs=1e-9)
    assert scan.peak_divergent and scan.divergent.sum() == 1
    assert scan.has_interior_peak
    assert np.all(np.diff(scan.energies) > 0)


def test_scan_is_deterministic(pt_ss):
    grid = np.linspace(10, 20, 21)
    a = scan_classical_ss(pt_ss, grid)
    b = scan_classical_ss(pt_ss, grid)
    assert np.array_equal(a.energies, b.energies)
    assert np.array_equal(a.barrier_momentum, b.barrier_momentum)


def test_scan_without_classical_singularity(pt_real):
    scan = scan_classical_ss(pt_real, np.arange(0.5, 30.05, 0.5))
    assert not classical_ss_condition(pt_real)
    assert not scan.has_interior_peak
    assert not scan.divergent.any()
    # energies in the gap (0.76, 5.24) are dropped
    assert not np.any((scan.energies > 0.77) & (scan.energies < 5.23))


def test_scan_rejects_empty_grid(pt_real):
    with pytest.raises(ValueError):
        scan_classical_ss(pt_real, [1.0, 2.0, -3.0])
