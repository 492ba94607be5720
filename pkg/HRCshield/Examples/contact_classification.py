"""
This file shows how the possible contacts are classified and how every relaxation of the clamp detection changes
the verdict.
"""

from HRCshield import Shield, Capsule, Polytope, TrajectoryStep, build_monitored, load_robot_model, robot_reach, \
    FOLDER
import numpy as np


def contact_classification():
    robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
    desk = Polytope.from_box([-0.4, -0.8, 0.0], [1.2, 0.8, 0.75], 'desk')
    shield = Shield(robot)

    # the arm moves its elbow down, towards the desk top
    q = np.array([0., 0.9, 0.9, 0., 0.9, 0.])
    qdot = np.array([0., 0.3, 0., 0., 0., 0.])
    moving = TrajectoryStep(0., q, qdot, np.zeros(6))
    stopped = TrajectoryStep(0.006, q + qdot * 0.006, np.zeros(6), np.zeros(6))
    reach = robot_reach(build_monitored([moving, stopped], [stopped], 0.006), robot)

    hand = Capsule([0.70, 0.0, 0.80], [0.75, 0.0, 0.80], 0.05)
    for relaxation in ('use_diameter_relaxation', 'use_velocity_relaxation', 'use_topology_relaxation'):
        shield.shield_setup(use_diameter_relaxation=True, use_velocity_relaxation=True, use_topology_relaxation=True)
        shield.setup.update_variables(**{relaxation: False})
        excluded = [shield.classify_ecc(reach[0, link], hand, 0.205, desk) for link in range(robot.n)]
        print(f"Without {relaxation}, clamps against the desk are excluded for links "
              f"{[link for link, value in enumerate(excluded) if value]}.")

    shield.shield_setup(use_diameter_relaxation=True, use_velocity_relaxation=True, use_topology_relaxation=True)
    for first, second in ((1, 2), (1, 5), (2, 5)):
        excluded = shield.classify_scc(reach[0, first], reach[0, second], hand, 0.205)
        print(f"A clamp between links {first} and {second} is {'excluded' if excluded else 'possible'}.")


if __name__ == "__main__":  # pragma: no cover
    contact_classification()
