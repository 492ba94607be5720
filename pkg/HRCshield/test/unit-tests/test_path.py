import numpy as np
import pytest

from HRCshield import JointPath, LinePath, PathController, PathLimits, TrajectoryStep, advance_progress, \
    brake_profile
from HRCshield.test.models import desk_path, desk_robot

robot = desk_robot()
path = desk_path()
limits = PathLimits.from_path(path, robot)
dt = 0.006


def test_joint_path_invalid():
    with pytest.raises(ValueError):
        JointPath([0.], [[0., 0.]])
    with pytest.raises(ValueError):
        JointPath([0., 0.], [[0., 0.], [1., 1.]])
    with pytest.raises(ValueError):
        JointPath([0., 1., 2.], [[0., 0.], [1., 1.]])


def test_load_waypoints():
    assert path.closed
    assert path.n == 6
    assert path.period == 10.
    assert path.name == 'desk_cycle'
    assert np.allclose(path.position(2.), [0.8, 0.5, 1.3, 0.3, 0.8, 0.5])
    assert np.allclose(path.position(12.), path.position(2.))


def test_open_path_is_mirrored():
    open_path = JointPath([0., 1., 3.], [[0.], [1.], [2.]])
    assert not open_path.closed
    assert open_path.period == 6.
    assert np.allclose(open_path.position(5.), [1.])
    assert np.allclose(open_path.position(3.), [2.])


def test_derivative_bounds():
    bounds = path.derivative_bounds()
    assert bounds.shape == (3, 6)
    samples = np.array([path.derivatives(s)[1:] for s in np.linspace(0, path.period, 2001)])
    assert np.all(np.max(np.abs(samples), axis=0) <= bounds + 1e-9)


def test_line_path():
    state = TrajectoryStep(0., [1., 2.], [0.3, 0.4], [0.6, 0.8])
    line, sdot, sddot = LinePath.from_state(state)
    assert np.isclose(sdot, 0.5)
    assert np.isclose(sddot, 1.)
    assert np.allclose(line.position(0.5), [1.3, 2.4])
    q, qdot, qddot, _ = line.joint_state(0., sdot, sddot)
    assert np.allclose(qdot, state.qdot) and np.allclose(qddot, state.qddot)
    resting, sdot, _ = LinePath.from_state(TrajectoryStep(0., [1., 2.], [0., 0.], [0., 0.]))
    assert sdot == 0
    assert np.allclose(resting.direction, [1., 0.])
    with pytest.raises(ValueError):
        LinePath([0., 0.], [0., 0.])


def test_path_limits():
    assert limits.v_max <= 1.
    with pytest.raises(ValueError):
        PathLimits(1., 0., 1.)
    for s in np.linspace(0, path.period, 501):
        _, qdot, qddot, qdddot = path.joint_state(s, limits.v_max, limits.a_max, limits.j_max)
        assert np.all(np.abs(qdot) <= robot.qdot_max + 1e-9)
        assert np.all(np.abs(qddot) <= robot.qddot_max + 1e-9)
        assert np.all(np.abs(qdddot) <= robot.qdddot_max + 1e-9)


def test_advance_progress():
    assert np.allclose(advance_progress(1., 2., 3., 6., 1.), (1. + 2. + 1.5 + 1., 2. + 3. + 3., 3. + 6.))


def test_brake_profile():
    assert brake_profile(1., 0., 1., 2., 50., dt).size == 0
    with pytest.raises(ValueError):
        brake_profile(0.5, 0., 1., 2., 50., dt)
    for v0, a0, target in ((1., 0., 0.), (0.8, 0.5, 0.2), (0.6, -0.5, 0.)):
        jerks = brake_profile(v0, a0, target, 2., 50., dt)
        state = (0., v0, a0)
        for jerk in jerks:
            assert abs(jerk) <= 50. + 1e-9
            state = advance_progress(*state, jerk, dt)
            assert abs(state[2]) <= 2. + 1e-9
            assert state[1] >= target - 1e-9
        assert np.isclose(state[1], target, atol=1e-9)
        assert np.isclose(state[2], 0., atol=1e-9)


def test_controller_respects_limits():
    controller = PathController(path, limits, dt)
    state = controller.start()
    assert state.is_stopped
    for k in range(3000):
        cap = limits.v_max if (k // 500) % 2 == 0 else 0.3 * limits.v_max
        current, state = controller.step(state, cap)
        current.check_limits(robot.qdot_max, robot.qddot_max, robot.qdddot_max, tol=1e-6)
        assert -1e-12 <= state.sdot <= limits.v_max + 1e-9
        assert abs(state.sddot) <= limits.a_max + 1e-9
    assert state.s > 0
    with pytest.raises(ValueError):
        PathController(path, limits, 0.)


def test_controller_stop_and_intended():
    controller = PathController(path, limits, dt)
    state = controller.start()
    for _ in range(300):
        state = controller.step(state, limits.v_max)[1]
    for _ in range(1000):
        state = controller.step(state, 0.)[1]
    assert np.isclose(state.sdot, 0., atol=1e-9)
    intended = controller.intended(state, limits.v_max, 3)
    assert len(intended) == 4
    assert np.allclose(np.diff([step.t for step in intended]), dt)
    assert intended[1].s >= intended[0].s
