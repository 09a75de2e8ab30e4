"""Center-strength system and the algebraic circulation ledger."""

import numpy as np
import pytest

import vortexflow as vf


def system_residual(k, gamma, total, ginf, x):
    a = 2.0 * np.eye(k) - np.ones((k, k)) / k
    rhs = np.asarray(gamma, dtype=float) + (total + ginf) / k
    return np.abs(a @ x - rhs).max()


def test_worked_two_cylinder_example():
    x = vf.solve_center_strengths(2, (0.5, -0.5), 1.0)
    assert x == pytest.approx([0.75, 0.25], abs=1e-15)


def test_closed_form_matches_dense_solve_on_random_systems():
    rng = np.random.default_rng(12)
    for _ in range(300):
        k = int(rng.integers(1, 9))
        gamma = rng.uniform(-3, 3, size=k)
        total = float(rng.uniform(-3, 3))
        ginf = float(rng.uniform(-3, 3))
        x = vf.solve_center_strengths(k, gamma, total, ginf)
        assert system_residual(k, gamma, total, ginf, x) <= 1e-13
        a = 2.0 * np.eye(k) - np.ones((k, k)) / k
        dense = np.linalg.solve(a, gamma + (total + ginf) / k)
        assert np.abs(x - dense).max() <= 1e-12


def test_zero_cylinders_is_rejected():
    with pytest.raises(ValueError):
        vf.solve_center_strengths(0, (), 1.0)


def test_single_cylinder_closed_form():
    # with one cylinder the system is 1x1: x = gamma + total + ginf
    x = vf.solve_center_strengths(1, (0.3,), 1.0, -0.5)
    assert x == pytest.approx([0.8], abs=1e-15)


def test_predicted_ledger_recovers_prescribed_circulations():
    rng = np.random.default_rng(34)
    for _ in range(100):
        k = int(rng.integers(1, 7))
        gamma = rng.uniform(-2, 2, size=k)
        vortex = rng.uniform(-2, 2, size=int(rng.integers(0, 4)))
        ginf = float(rng.uniform(-2, 2))
        x = vf.solve_center_strengths(k, gamma, float(vortex.sum()), ginf)
        ledger = vf.predicted_ledger(x, tuple(vortex), ginf)
        assert np.abs(ledger.per_cylinder - gamma).max() <= 1e-13
        # all circulation is accounted for: cylinders, vortices, and
        # the far field (oriented about infinity) sum to zero
        balance = (ledger.per_cylinder.sum() + vortex.sum()
                   + ledger.at_infinity)
        assert abs(balance) <= 1e-13


def test_lone_vortex_ledger():
    """A unit vortex with no center strengths: -1/K on each cylinder."""
    for k in (1, 2, 3, 5):
        ledger = vf.predicted_ledger(np.zeros(k), (1.0,))
        assert ledger.per_cylinder == pytest.approx([-1.0 / k] * k)
        assert ledger.at_infinity == pytest.approx(0.0)


def test_gamma_infinity_moves_center_strengths_not_the_ledger():
    """Changing the far-field circulation re-solves the center
    strengths so that every prescribed circulation, and hence the whole
    ledger, is unchanged."""
    quiet = vf.solve_center_strengths(2, (0.0, 0.0), 1.0, 0.0)
    spun = vf.solve_center_strengths(2, (0.0, 0.0), 1.0, -1.0)
    assert quiet == pytest.approx([0.5, 0.5], abs=1e-15)
    assert spun == pytest.approx([0.0, 0.0], abs=1e-15)
    for x, ginf in ((quiet, 0.0), (spun, -1.0)):
        ledger = vf.predicted_ledger(x, (1.0,), ginf)
        assert ledger.per_cylinder == pytest.approx([0.0, 0.0], abs=1e-15)
        # clockwise-about-infinity orientation: the far contour reports
        # minus the counterclockwise circulation of everything finite
        assert ledger.at_infinity == pytest.approx(-1.0)
