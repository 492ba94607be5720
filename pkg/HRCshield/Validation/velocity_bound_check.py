"""
This document checks the lower bound on the normal velocity of a link by sampling: random three joint trajectories
are evaluated densely within every interval and the smallest normal velocity of points sampled on the capsule
surfaces is compared with the bound.
"""

import numpy as np

from HRCshield import TrajectoryStep, MonitoredTrajectory, min_normal_speed, robot_model_from_dict, robot_reach


def three_link_robot():
    joints, links = [], []
    for index, axis in enumerate(([0., 0., 1.], [0., 1., 0.], [0., 1., 0.])):
        joints.append({'axis': axis, 'origin': {'xyz': [0., 0., 0.3 if index else 0.]},
                       'qdot_max': 2., 'qddot_max': 10., 'qdddot_max': 100.})
        links.append({'mass': 2., 'inertia': {'ixx': 0.02, 'iyy': 0.02, 'izz': 0.005}, 'com': [0., 0., 0.15],
                      'capsule': {'p1': [0., 0., 0.], 'p2': [0., 0., 0.3], 'radius': 0.05}})
    return robot_model_from_dict({'name': 'three_link', 'joints': joints, 'links': links})


def random_step(robot, rng: np.random.Generator, dt: float) -> TrajectoryStep:
    """
    This function draws a random cubic step whose velocity and acceleration stay within the limits during dt.
    """
    n = robot.n
    q = rng.uniform(-np.pi, np.pi, n)
    qdot = rng.uniform(-1., 1., n) * robot.qdot_max
    qddot = rng.uniform(-1., 1., n) * robot.qddot_max
    qdddot = rng.uniform(-1., 1., n) * robot.qdddot_max
    slack = robot.qddot_max * dt + robot.qdddot_max * dt ** 2
    qdot = np.clip(qdot, -robot.qdot_max + slack, robot.qdot_max - slack)
    qddot = np.clip(qddot, -robot.qddot_max + robot.qdddot_max * dt, robot.qddot_max - robot.qdddot_max * dt)
    return TrajectoryStep(0., q, qdot, qddot, qdddot)


def surface_points(capsule, count: int, rng: np.random.Generator) -> np.ndarray:
    """
    This function samples points on the surface of a capsule, in the frame the capsule is given in.
    Roughly one in six points lies on one of the two spherical caps.

    Returns
    -------
    np.ndarray
        (count, 3) points
    """
    axis = capsule.p2 - capsule.p1
    length = np.linalg.norm(axis)
    fractions = np.clip(rng.uniform(-0.1, 1.1, count), 0., 1.)
    directions = rng.normal(size=(count, 3))
    if length > 0:
        unit = axis / length
        side = (fractions > 0) & (fractions < 1)
        directions[side] -= np.outer(directions[side] @ unit, unit)
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    return capsule.p1 + np.outer(fractions, axis) + capsule.radius * directions


def velocity_bound_check(trials: int = 100, samples: int = 200, seed: int = 0, dt: float = 0.006) -> float:
    """
    Returns the smallest margin between the sampled normal velocities and their bound (non-negative if sound).
    Every trial evaluates about `samples` (time, surface point) pairs per link.
    """
    robot = three_link_robot()
    rng = np.random.default_rng(seed)
    margin = np.inf
    times = max(int(np.sqrt(samples)), 2)
    count = max(samples // times, 1)
    taus = np.linspace(0., dt, times)
    for _ in range(trials):
        first = random_step(robot, rng, dt)
        end = first.interpolate(dt)
        traj = MonitoredTrajectory([first, TrajectoryStep(dt, end[0], np.zeros(3), np.zeros(3))], 1, dt=dt)
        reach = robot_reach(traj, robot)
        normal = rng.normal(size=3)
        normal /= np.linalg.norm(normal)
        for link in range(robot.n):
            bound = min_normal_speed(reach[0, link], normal, robot)
            points = surface_points(robot.links[link].capsule, count, rng)
            sampled = np.inf
            for tau in taus:
                state = first.interpolate(tau)
                _, velocity, _, omega, _ = robot.point_kinematics(*state, link, np.zeros(3))
                rotation = robot.link_frames(state[0])[link, :3, :3]
                # v = v_o + w x (R p) for every point of the rigid link
                velocities = velocity + np.cross(omega, points @ rotation.T)
                sampled = min(sampled, float(np.min(velocities @ normal)))
            margin = min(margin, sampled - bound)
    print(f"The smallest margin between the sampled normal velocity and its bound is {margin:.3e} m/s.")
    return margin


if __name__ == "__main__":  # pragma: no cover
    velocity_bound_check(trials=1000, samples=10000)
