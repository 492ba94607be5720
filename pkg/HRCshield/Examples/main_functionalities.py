"""
This file contains the main functionalities of HRCshield being:
    * loading a robot, its environment and its path
    * verifying a monitored trajectory against a human
    * classifying the possible contacts of a violation
    * running the shield step by step
"""

import numpy as np

# import all the relevant functions
from HRCshield import Shield, Capsule, HumanConfig, PathController, PathLimits, load_environment, load_robot_model, \
    load_waypoints, FOLDER


def main_functionalities():
    robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
    environment = load_environment(FOLDER.joinpath('data/environments/desk.yaml'))
    path = load_waypoints(FOLDER.joinpath('data/trajectories/desk_cycle.csv'))
    limits = PathLimits.from_path(path, robot)
    print(f"The robot follows {path.name} with at most {limits.v_max:.2f} times its nominal speed.")

    # create the shield object
    shield = Shield(robot, environment, path=path, limits=limits)

    # one can activate or deactive the logger, by default it is deactivated
    # shield.activate_logger()
    # shield.deactivate_logger()

    # settings of the shield
    shield.shield_setup(dt=0.006, intended_steps=1)

    # a human hand resting on the desk in front of the robot
    config = HumanConfig(meas_error=0.01, meas_delay=0.03)
    hand = config.make_part('right_hand', Capsule([0.62, 0.0, 0.80], [0.68, 0.0, 0.80], 0.05))

    # the robot accelerates along its path, every step is completed with a failsafe to standstill
    controller = PathController(path, limits, shield.setup.dt)
    state = controller.start()
    shield.reset(state)
    for _ in range(150):
        intended = controller.intended(state, limits.v_max, shield.setup.intended_steps)
        state, verdict = shield.step(intended, [hand])
        if not verdict.safe:
            print(f"Verification failed at t = {state.t:.3f} s: {verdict.first_violation}")
            break
    print(f"The robot is at progress {state.s:.3f} with speed {state.sdot:.3f} after {state.t:.3f} s.")

    # verify a monitored trajectory and list all violations
    shield.shield_setup(enumerate_violations=True)
    monitored = shield.monitored(controller.intended(state, limits.v_max, 1))
    verdict = shield.verify(monitored, [hand])
    print(verdict.to_frame())
    print(f"The largest effective energy during the failsafe is "
          f"{np.max([robot.effective_energies(step.q, step.qdot) for step in monitored.steps]):.3f} J.")


if __name__ == "__main__":  # pragma: no cover
    main_functionalities()
