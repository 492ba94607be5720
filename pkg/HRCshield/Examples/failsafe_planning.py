"""
This file plans the failsafe trajectory from a moving state and plots the braking of every joint.
"""

import matplotlib.pyplot as plt
import numpy as np

from HRCshield import PathController, PathLimits, load_robot_model, load_waypoints, plan_failsafe, FOLDER


def failsafe_planning():
    robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
    path = load_waypoints(FOLDER.joinpath('data/trajectories/desk_cycle.csv'))
    limits = PathLimits.from_path(path, robot)
    dt = 0.006

    # accelerate to the nominal speed
    controller = PathController(path, limits, dt)
    state = controller.start()
    for _ in range(300):
        state = controller.step(state, limits.v_max)[1]

    failsafe = plan_failsafe(state, robot, dt, path, limits)
    print(f"The failsafe stops the robot in {failsafe[-1].t - failsafe[0].t:.3f} s.")

    time = np.array([step.t for step in failsafe])
    fig = plt.figure()
    ax = fig.add_subplot(111)
    ax.set_xlabel(r"Time (s)")
    ax.set_ylabel(r"Joint velocity (rad/s)")
    for joint in range(robot.n):
        ax.plot(time, [step.qdot[joint] for step in failsafe], lw=1.5, label=f"joint {joint + 1}")
    ax.legend()
    plt.show()


if __name__ == "__main__":  # pragma: no cover
    failsafe_planning()
