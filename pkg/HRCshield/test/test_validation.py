import numpy as np
import pytest


def test_one_dof_failsafe():
    from HRCshield.Validation.one_dof_failsafe import one_dof_failsafe
    duration, distance = one_dof_failsafe()
    assert np.isclose(duration, 0.5, atol=0.002)
    assert np.isclose(distance, 0.25, atol=0.002)


def test_velocity_bound_check():
    from HRCshield.Validation.velocity_bound_check import velocity_bound_check
    assert velocity_bound_check(trials=20, samples=50) >= -1e-9


@pytest.mark.slow
def test_velocity_bound_check_full():
    from HRCshield.Validation.velocity_bound_check import velocity_bound_check
    assert velocity_bound_check(trials=1000, samples=10000) >= -1e-9


def test_surface_points():
    from HRCshield import Capsule
    from HRCshield.Validation.velocity_bound_check import surface_points
    capsule = Capsule((0, 0, 0), (0, 0, 0.3), 0.05)
    points = surface_points(capsule, 2000, np.random.default_rng(1))
    # every point lies on the surface: at the radius from the axis segment
    fractions = np.clip(points[:, 2] / 0.3, 0., 1.)
    distances = np.linalg.norm(points - np.outer(fractions, [0, 0, 0.3]), axis=1)
    assert np.allclose(distances, 0.05)
    assert np.any(points[:, 2] > 0.3) and np.any(points[:, 2] < 0.)


def test_angular_bound_check():
    from HRCshield.Validation.angular_bound_check import angular_bound_check
    assert angular_bound_check(trials=10, samples=3) >= -1e-6


@pytest.mark.slow
def test_angular_bound_check_full():
    from HRCshield.Validation.angular_bound_check import angular_bound_check
    assert angular_bound_check(trials=1000) >= -1e-6


def test_verification_speed():
    from HRCshield.Validation.verification_speed import verification_speed
    assert verification_speed(repetitions=3) > 0


@pytest.mark.slow
def test_scenario_audit():
    from HRCshield.Validation.scenario_audit import scenario_audit
    summary, runs = scenario_audit(traces=1000)
    assert runs >= 1000
    assert summary['violations'].sum() == 0
