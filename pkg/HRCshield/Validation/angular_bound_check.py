"""
This document checks the angular velocity, acceleration and jerk bounds of every link against random joint
trajectories within the joint limits. The angular jerk is taken by central finite differences of the angular
acceleration along the cubic expansion of each trajectory.
"""

import numpy as np

from HRCshield import load_robot_model, FOLDER
from HRCshield.Validation.velocity_bound_check import random_step


def angular_bound_check(trials: int = 100, samples: int = 10, seed: int = 0, dt: float = 0.006,
                        h: float = 1e-4) -> float:
    """
    Returns the smallest relative margin between the bounds and the sampled angular motion of all links
    (non-negative if sound).
    """
    robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
    bounds = robot.angular_bounds()
    limits = np.stack((bounds.omega_bar, bounds.omega_dot_bar, bounds.omega_ddot_bar), axis=1)
    rng = np.random.default_rng(seed)
    taus = np.linspace(h, dt - h, samples)
    margin = np.inf
    for _ in range(trials):
        step = random_step(robot, rng, dt)
        for tau in taus:
            for link in range(robot.n):
                _, _, _, omega, omega_dot = robot.point_kinematics(*step.interpolate(tau), link, np.zeros(3))
                after = robot.point_kinematics(*step.interpolate(tau + h), link, np.zeros(3))[4]
                before = robot.point_kinematics(*step.interpolate(tau - h), link, np.zeros(3))[4]
                omega_ddot = (after - before) / (2 * h)
                sampled = np.linalg.norm([omega, omega_dot, omega_ddot], axis=1)
                margin = min(margin, float(np.min((limits[link] - sampled) / np.maximum(limits[link], 1e-12))))
    print(f"The smallest relative margin between the angular motion of a link and its bound is {margin:.3e}.")
    return margin


if __name__ == "__main__":  # pragma: no cover
    angular_bound_check(trials=1000)
