import numpy as np
import pytest

from HRCshield import AngularBounds, ErrorBounds, GeometryClass, JointSpec, LinkSpec, RobotModel, \
    SingularConfigurationError, UnsupportedJointError, Capsule, robot_model_from_dict
from HRCshield.test.models import planar_robot, spatial_robot, desk_robot


def test_joint_spec_invalid():
    with pytest.raises(ValueError):
        JointSpec((0, 0, 2))
    with pytest.raises(ValueError):
        JointSpec(qdot_max=-1)
    with pytest.raises(ValueError):
        JointSpec(qddot_max=0)
    with pytest.raises(ValueError):
        JointSpec(qdddot_max=float('nan'))


def test_link_spec_invalid():
    capsule = Capsule((0, 0, 0), (1, 0, 0), 0.1)
    with pytest.raises(ValueError):
        LinkSpec(0, np.eye(3), (0, 0, 0), capsule)
    with pytest.raises(ValueError):
        LinkSpec(1, -np.eye(3), (0, 0, 0), capsule)
    with pytest.raises(ValueError):
        LinkSpec(1, np.eye(3), (0, 0, 0), capsule, tracking_error=-1)
    assert LinkSpec(1, np.eye(3), (0, 0, 0), capsule, 'edge').geometry == GeometryClass.EDGE


def test_robot_model_invalid():
    joint = JointSpec()
    link = LinkSpec(1, np.eye(3), (0, 0, 0), Capsule((0, 0, 0), (1, 0, 0), 0.1))
    with pytest.raises(ValueError):
        RobotModel([joint, joint], [link])
    with pytest.raises(ValueError):
        RobotModel([joint], [link], topology_exclusions=[(0, 0)])
    with pytest.raises(UnsupportedJointError):
        robot_model_from_dict({'joints': [{'type': 'prismatic', 'qdot_max': 1, 'qddot_max': 1, 'qdddot_max': 1}],
                               'links': []})


def test_error_bounds_invalid():
    with pytest.raises(ValueError):
        ErrorBounds(w_v_max=-0.1)


def test_frames_zero_configuration():
    robot = planar_robot(3, length=0.4)
    frames = robot.link_frames(np.zeros(3))
    assert np.allclose(frames[:, :3, 3], [[0, 0, 0], [0.4, 0, 0], [0.8, 0, 0]])
    assert np.allclose(frames[:, :3, :3], np.eye(3))


def test_frames_planar_rotation():
    robot = planar_robot(2, length=0.5)
    frames = robot.link_frames([np.pi / 2, 0])
    assert np.allclose(frames[1, :3, 3], [0, 0.5, 0])


def test_frames_batch():
    robot = spatial_robot()
    rng = np.random.default_rng(0)
    q = rng.uniform(-np.pi, np.pi, (4, 3))
    batch = robot.link_frames(q)
    for k in range(4):
        assert np.allclose(batch[k], robot.link_frames(q[k]))


def test_frames_matrix_product():
    robot = spatial_robot()
    q = np.array([0.3, -0.7, 1.1])
    expected = np.eye(4)
    for joint, angle in zip(robot.joints, q):
        axis = joint.axis
        skew = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
        rotation = np.eye(4)
        rotation[:3, :3] = np.eye(3) + np.sin(angle) * skew + (1 - np.cos(angle)) * skew @ skew
        expected = expected @ joint.origin @ rotation
    assert np.allclose(robot.link_frames(q)[-1], expected, atol=1e-10)


def test_forward_kinematics():
    robot = planar_robot(2, length=0.5)
    frames, capsules = robot.forward_kinematics([0, np.pi / 2])
    assert np.allclose(capsules[1].p2, [0.5, 0.5, 0])
    with pytest.raises(ValueError):
        robot.forward_kinematics(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        robot.forward_kinematics([0.])


def test_jacobian():
    robot = planar_robot(1, length=0.5)
    jacobian = robot.link_jacobian([0.], 0, [0.5, 0, 0])
    assert np.allclose(jacobian[:3, 0], [0, 0.5, 0])
    assert np.allclose(jacobian[3:, 0], [0, 0, 1])
    robot = planar_robot(3)
    assert np.allclose(robot.link_jacobian([0.1, 0.2, 0.3], 0, [0.5, 0, 0])[:, 1:], 0)
    with pytest.raises(IndexError):
        robot.link_jacobian([0.1, 0.2, 0.3], 3, [0, 0, 0])


def test_inertia_pendulum():
    robot = planar_robot(1, length=0.5, mass=2.)
    # point mass at 0.25 m plus the rotor-free link inertia about z
    assert np.isclose(robot.inertia_matrix([0.])[0, 0], 2. * 0.25 ** 2 + 1e-3)


def test_inertia_positive_definite():
    robot = spatial_robot()
    rng = np.random.default_rng(2)
    inertia = robot.inertia_matrix(rng.uniform(-np.pi, np.pi, 3))
    x = rng.normal(size=(1000, 3))
    assert np.all(np.einsum('ki,ij,kj->k', x, inertia, x) > 0)


def test_kinetic_energy_velocity_propagation():
    robot = spatial_robot()
    rng = np.random.default_rng(4)
    q, qdot = rng.uniform(-np.pi, np.pi, 3), rng.uniform(-2, 2, 3)
    frames = robot.link_frames(q)
    energy = 0
    for i, link in enumerate(robot.links):
        _, velocity, _, omega, _ = robot.point_kinematics(q, qdot, np.zeros(3), i, link.com)
        rotation = frames[i, :3, :3]
        energy += 0.5 * link.mass * velocity @ velocity + 0.5 * omega @ rotation @ link.inertia @ rotation.T @ omega
    assert np.isclose(robot.effective_energy(q, qdot, 2), energy, atol=1e-8)
    assert np.isclose(robot.effective_energy(q, qdot, 2), 0.5 * qdot @ robot.inertia_matrix(q) @ qdot)


def test_effective_energy_independent_of_distal_joints():
    robot = spatial_robot()
    q = np.array([0.2, 0.4, -0.3])
    assert robot.effective_energy(q, np.zeros(3), 1) == 0
    first = robot.effective_energy(q, [1., 0.5, 0.], 1)
    second = robot.effective_energy(q, [1., 0.5, 2.], 1)
    assert first == second
    energies = robot.effective_energies(q, [1., 0.5, 2.])
    assert np.isclose(energies[1], first)


def test_angular_bounds_single_joint():
    bounds = AngularBounds.from_limits(np.array([[1., 2., 3.]]), [], [0.5])
    assert np.allclose((bounds.omega_bar, bounds.omega_dot_bar, bounds.omega_ddot_bar), [[1], [2], [3]])


def test_angular_bounds_two_joints():
    bounds = AngularBounds.from_limits(np.ones((2, 3)), [0.5], [0.5, 0.5])
    assert np.allclose(bounds.omega_bar, [1, 2])
    assert np.allclose(bounds.omega_dot_bar, [1, 3])
    assert np.allclose(bounds.omega_ddot_bar, [1, 6])


def test_angular_bounds_zero_limits():
    bounds = AngularBounds.from_limits(np.zeros((3, 3)), [0.3, 0.3], [0.3, 0.3, 0.3])
    assert np.all(bounds.omega_bar == 0) and np.all(bounds.omega_ddot_bar == 0)
    assert bounds.jerk_bound(2) == 0


def test_jerk_bound_uniform_rotation():
    # a point spinning at constant rate still has a centripetal jerk of l * w**3
    bounds = AngularBounds.from_limits(np.array([[2., 0., 0.]]), [], [0.5])
    assert np.isclose(bounds.jerk_bound(0), 0.5 * 2. ** 3)
    h = 1e-3
    times = np.arange(4) * h
    points = 0.5 * np.stack([np.cos(2. * times), np.sin(2. * times)], axis=1)
    jerk = np.linalg.norm(np.diff(points, n=3, axis=0)[0]) / h ** 3
    assert jerk <= bounds.jerk_bound(0) + 1e-2
    assert jerk > 0.99 * bounds.jerk_bound(0)


def test_reflected_mass_single_joint():
    robot = planar_robot(1, length=0.5, mass=2.)
    inertia = 2. * 0.25 ** 2 + 1e-3
    assert np.isclose(robot.reflected_mass([0.], 0, [0.5, 0, 0], [0, 1, 0]), inertia / 0.25)
    with pytest.raises(SingularConfigurationError):
        robot.reflected_mass([0.], 0, [0.5, 0, 0], [0, 0, 1])
    with pytest.raises(ValueError):
        robot.reflected_mass([0.], 0, [0.5, 0, 0], [0, 2, 0])


def test_reflected_mass_energy():
    robot = spatial_robot()
    q = np.array([0.3, 0.6, -0.9])
    point = robot.forward_kinematics(q)[1][2].p2
    jacobian = robot.link_jacobian(q, 2, point)[:3]
    # joint velocity with the smallest kinetic energy for a unit tip velocity along the direction
    direction = jacobian @ np.array([0., 1., 0.5])
    direction /= np.linalg.norm(direction)
    inertia = robot.inertia_matrix(q)
    qdot = np.linalg.solve(inertia, jacobian.T @ direction)
    qdot /= direction @ jacobian @ qdot
    energy = robot.effective_energy(q, qdot, 2)
    assert np.isclose(0.5 * robot.reflected_mass(q, 2, point, direction), energy, rtol=1e-6)


def test_max_speeds():
    robot = planar_robot(2, length=0.5, qdot_max=1.)
    assert np.isclose(robot.max_point_speed(0), 0.55)
    speeds = robot.max_cartesian_speed([0., 0.], [1., 0.])
    assert np.isclose(speeds[1], 1. + 0.05)
    assert robot.max_cartesian_speed([0., 0.], [0., 0.]).sum() == 0


def test_point_kinematics_pure_rotation():
    robot = planar_robot(1, length=0.5)
    point, velocity, acceleration, omega, _ = robot.point_kinematics([0.], [2.], [0.], 0, [0.5, 0, 0])
    assert np.allclose(point, [0.5, 0, 0])
    assert np.allclose(velocity, [0, 1, 0])
    assert np.allclose(acceleration, [-2, 0, 0])
    assert np.allclose(omega, [0, 0, 2])


def test_desk_robot():
    robot = desk_robot()
    assert robot.n == 6
    assert robot.link_geometry(5) == GeometryClass.EDGE
    assert frozenset((3, 5)) in robot.topology_exclusions
    assert np.allclose(robot.base_position, [0, 0, 0.75])
