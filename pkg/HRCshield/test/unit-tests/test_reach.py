import numpy as np
import pytest

from HRCshield import AngularBounds, Capsule, ErrorBounds, LinkReach, MonitoredTrajectory, TrajectoryStep, \
    min_normal_speed, robot_reach
from HRCshield.test.models import planar_robot, spatial_robot

dt = 0.006


def _traj(first: TrajectoryStep, interval: float = dt) -> MonitoredTrajectory:
    q = first.interpolate(interval)[0]
    return MonitoredTrajectory([first, TrajectoryStep(interval, q, np.zeros(first.n), np.zeros(first.n))], 1,
                               dt=interval)


def test_static_robot():
    robot = spatial_robot()
    q = np.array([0.3, -0.2, 0.5])
    reach = robot_reach(_traj(TrajectoryStep(0., q, np.zeros(3), np.zeros(3))), robot)
    assert reach.n_intervals == 1 and reach.n_links == 3
    capsules = robot.forward_kinematics(q)[1]
    for link in range(3):
        occupancy = reach.occupancy(0, link)
        assert np.allclose(occupancy.p1, capsules[link].p1)
        assert np.allclose(occupancy.p2, capsules[link].p2)
        assert np.isclose(occupancy.radius, capsules[link].radius + robot.max_point_speed(link) * dt / 2
                          + robot.links[link].tracking_error)
    assert np.all(reach.energies(0) == 0)
    with pytest.raises(IndexError):
        reach[1, 0]


def test_sweep_contains_end_capsules():
    robot = planar_robot(1, length=0.5)
    steps = [TrajectoryStep(0., [0.], [0.], [0.]), TrajectoryStep(1., [np.pi / 2], [0.], [0.])]
    reach = robot_reach(MonitoredTrajectory(steps, 1, dt=1.), robot)
    occupancy = reach[0, 0].occupancy
    for q in (0., np.pi / 2):
        assert occupancy.contains_capsule(robot.forward_kinematics([q])[1][0])


def test_dense_sampling_containment():
    robot = spatial_robot()
    rng = np.random.default_rng(5)
    for _ in range(20):
        q = rng.uniform(-np.pi, np.pi, 3)
        qdot = rng.uniform(-1., 1., 3) * robot.qdot_max
        first = TrajectoryStep(0., q, qdot, np.zeros(3))
        reach = robot_reach(_traj(first, 0.05), robot)
        for tau in np.linspace(0., 0.05, 101):
            capsules = robot.forward_kinematics(first.interpolate(tau)[0])[1]
            for link in range(3):
                assert reach.occupancy(0, link).contains_capsule(capsules[link], tol=1e-9)


def test_energies():
    robot = spatial_robot()
    first = TrajectoryStep(0., [0.1, 0.2, 0.3], [1., 0.5, -0.5], np.zeros(3))
    reach = robot_reach(_traj(first), robot)
    assert np.allclose(reach.energies(0), robot.effective_energies(first.q, first.qdot))


def _reach(velocity=np.zeros(3), omega=np.zeros(3)):
    anchor = (np.zeros(3), velocity, np.zeros(3), omega, np.zeros(3))
    return LinkReach(0, 0, Capsule((0, 0, 0), (0, 0, 0.3), 0.05), anchor, 0.35, dt)


def test_min_normal_speed_zero():
    bounds = AngularBounds.from_limits(np.zeros((1, 3)), [], [0.35])
    robot = planar_robot(1)
    assert min_normal_speed(_reach(), [0, 0, 1], robot, bounds, ErrorBounds()) == 0


def test_min_normal_speed_translation():
    bounds = AngularBounds.from_limits(np.zeros((1, 3)), [], [0.35])
    robot = planar_robot(1)
    reach = _reach(velocity=np.array([0., 0., 1.]))
    assert np.isclose(min_normal_speed(reach, [0, 0, 1], robot, bounds, ErrorBounds()), 1.)
    speeds = min_normal_speed(reach, np.array([[0, 0, 1], [0, 0, -1], [1, 0, 0]]), robot, bounds, ErrorBounds())
    assert np.allclose(speeds, [1., -1., 0.])
    assert min_normal_speed(reach, [0, 0, 1], robot, bounds, ErrorBounds(w_v_max=0.1)) < 1.
    with pytest.raises(ValueError):
        min_normal_speed(reach, [0, 0, 2], robot, bounds)


def test_min_normal_speed_rotation():
    bounds = AngularBounds.from_limits(np.zeros((1, 3)), [], [0.35])
    robot = planar_robot(1)
    reach = _reach(omega=np.array([0., 0., 2.]))
    # points within 0.35 m of the anchor move at most 0.7 m/s sideways, the centripetal acceleration adds a rate term
    expected = -0.7 - dt / 2 * 0.35 * 2 * 2
    assert np.isclose(min_normal_speed(reach, [1, 0, 0], robot, bounds, ErrorBounds()), expected)
    assert np.isclose(min_normal_speed(reach, [0, 0, 1], robot, bounds, ErrorBounds()), 0.)


def test_min_normal_speed_sampled():
    from HRCshield.Validation.velocity_bound_check import velocity_bound_check
    assert velocity_bound_check(trials=10, samples=25) >= -1e-9
