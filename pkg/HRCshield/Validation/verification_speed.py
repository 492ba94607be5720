"""
This document measures the wall time of the verification of one step, for the desk arm with one human of 16 body
parts and the three elements of the desk environment.
"""

import time

import numpy as np

from HRCshield import Capsule, Shield, HumanConfig, HumanSnapshot, PathController, PathLimits, load_environment, \
    load_robot_model, load_waypoints, skeleton, FOLDER
from HRCshield.Simulation.SyntheticHumans import PART_RADII


def verification_speed(repetitions: int = 50) -> float:
    robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
    environment = load_environment(FOLDER.joinpath('data/environments/desk.yaml'))
    path = load_waypoints(FOLDER.joinpath('data/trajectories/desk_cycle.csv'))
    limits = PathLimits.from_path(path, robot)
    shield = Shield(robot, environment, path=path, limits=limits)

    config = HumanConfig(meas_error=0.01, meas_delay=0.03)
    parts = []
    for part_id, (p1, p2) in skeleton(np.array([1.5, 0.]), np.pi, None, np.array([1.0, -0.2, 0.95])).items():
        radius = next(value for key, value in PART_RADII.items() if part_id.endswith(key))
        parts.append(config.make_part(part_id, Capsule(p1, p2, radius)))
    snapshot = HumanSnapshot(0., parts, np.zeros(len(parts)), config)

    controller = PathController(path, limits, shield.setup.dt)
    state = controller.start()
    for _ in range(200):
        state = controller.step(state, limits.v_max)[1]
    monitored = shield.monitored(controller.intended(state, limits.v_max))

    start = time.perf_counter()
    for _ in range(repetitions):
        shield.verify(monitored, snapshot)
    mean = (time.perf_counter() - start) / repetitions * 1e3
    print(f"A verification of {monitored.n_intervals} intervals takes {mean:.2f} ms on average.")
    return mean


if __name__ == "__main__":  # pragma: no cover
    verification_speed()
