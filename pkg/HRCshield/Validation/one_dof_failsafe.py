"""
This document compares the failsafe of a single joint with its closed form. With an unlimited jerk, a joint moving at
1 rad/s with a deceleration limit of 2 rad/s² stops in 0.5 s after 0.25 rad.
"""

import numpy as np

from HRCshield import TrajectoryStep, plan_failsafe, robot_model_from_dict


def one_dof_robot(qdot_max: float = 1., qddot_max: float = 2., qdddot_max: float = 1e6):
    return robot_model_from_dict({
        'name': 'pendulum',
        'joints': [{'axis': [0., 0., 1.], 'qdot_max': qdot_max, 'qddot_max': qddot_max, 'qdddot_max': qdddot_max}],
        'links': [{'mass': 1., 'inertia': [[1e-3, 0., 0.], [0., 1e-3, 0.], [0., 0., 1e-3]], 'com': [0.5, 0., 0.],
                   'capsule': {'p1': [0., 0., 0.], 'p2': [0.5, 0., 0.], 'radius': 0.05}}]})


def one_dof_failsafe(dt: float = 0.001):
    robot = one_dof_robot()
    failsafe = plan_failsafe(TrajectoryStep(0., [0.], [1.], [0.]), robot, dt)
    duration = failsafe[-1].t - failsafe[0].t
    distance = failsafe[-1].q[0] - failsafe[0].q[0]
    print(f"The joint stops after {duration:.4f} s (closed form 0.5 s) and {distance:.4f} rad (closed form 0.25 rad).")
    print(f"The largest deceleration is {np.max([-step.qddot[0] for step in failsafe]):.4f} rad/s².")
    return duration, distance


if __name__ == "__main__":  # pragma: no cover
    one_dof_failsafe()
