import numpy as np
import pytest

from HRCshield import PathController, PathLimits, TrajectoryStep, build_monitored, plan_failsafe, \
    robot_model_from_dict
from HRCshield.test.models import desk_path, desk_robot, spatial_robot

dt = 0.006


def _one_dof_robot():
    return robot_model_from_dict({
        'joints': [{'axis': [0., 0., 1.], 'qdot_max': 1., 'qddot_max': 2., 'qdddot_max': 1e6}],
        'links': [{'mass': 1., 'inertia': {'ixx': 1e-3, 'iyy': 1e-3, 'izz': 1e-3}, 'com': [0.25, 0., 0.],
                   'capsule': {'p1': [0., 0., 0.], 'p2': [0.5, 0., 0.], 'radius': 0.05}}]})


def test_stopped_state():
    state = TrajectoryStep(0., [0.1, 0.2, 0.3], np.zeros(3), np.zeros(3))
    failsafe = plan_failsafe(state, spatial_robot(), dt)
    assert len(failsafe) == 1
    assert failsafe[0].is_stopped
    assert np.allclose(failsafe[0].q, state.q)


def test_one_dof_bang_bang():
    failsafe = plan_failsafe(TrajectoryStep(0., [0.], [1.], [0.]), _one_dof_robot(), 0.001)
    assert failsafe[-1].is_stopped
    assert np.isclose(failsafe[-1].t, 0.5, atol=0.005)
    assert np.isclose(failsafe[-1].q[0], 0.25, atol=0.005)
    assert np.all(np.diff([step.q[0] for step in failsafe]) >= -1e-12)
    assert np.all(np.abs([step.qddot[0] for step in failsafe]) <= 2. + 1e-9)


def test_line_failsafe_stays_on_line():
    robot = spatial_robot()
    state = TrajectoryStep(0., [0.1, 0.2, 0.3], [0.5, -0.5, 1.], [0., 0., 0.])
    failsafe = plan_failsafe(state, robot, dt)
    direction = state.qdot / np.linalg.norm(state.qdot)
    for step in failsafe:
        offset = step.q - state.q
        assert np.allclose(offset - (offset @ direction) * direction, 0., atol=1e-12)
        step.check_limits(robot.qdot_max, robot.qddot_max, robot.qdddot_max, tol=1e-6)
    assert failsafe[-1].is_stopped


def test_failsafe_needs_progress():
    robot = desk_robot()
    path = desk_path()
    with pytest.raises(ValueError):
        plan_failsafe(TrajectoryStep(0., np.zeros(6), np.ones(6), np.zeros(6)), robot, dt, path)


def test_random_path_states():
    robot = desk_robot()
    path = desk_path()
    limits = PathLimits.from_path(path, robot)
    controller = PathController(path, limits, dt)
    rng = np.random.default_rng(7)
    state = controller.start()
    for _ in range(25):
        for _ in range(int(rng.integers(1, 80))):
            state = controller.step(state, rng.uniform(0., limits.v_max))[1]
        failsafe = plan_failsafe(state, robot, dt, path, limits)
        assert failsafe[-1].is_stopped
        assert failsafe[0].t == state.t
        assert np.allclose(failsafe[0].q, state.q)
        for step in failsafe:
            step.check_limits(robot.qdot_max, robot.qddot_max, robot.qdddot_max, tol=1e-6)
        assert np.allclose(np.diff([step.t for step in failsafe]), dt)
        # the failsafe continues every intended trajectory which ends in its first state
        intended = controller.intended(state, limits.v_max, 1)
        following = plan_failsafe(intended[-1], robot, dt, path, limits)
        assert len(build_monitored(intended, following, dt)) == len(following) + 1
