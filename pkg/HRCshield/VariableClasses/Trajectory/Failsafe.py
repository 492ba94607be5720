"""
This document contains the failsafe planner: a path-consistent, jerk-limited braking manoeuvre to standstill.
"""
from typing import List

import numpy as np

from HRCshield.VariableClasses.Trajectory.Path import LinePath, PathLimits, advance_progress, brake_profile, _Path
from HRCshield.VariableClasses.Trajectory.TrajectoryStep import TrajectoryStep
from HRCshield.logger import shield_logger


def _braking_jerks(sdot: float, sddot: float, limits: PathLimits, dt: float) -> np.ndarray:
    jerks = brake_profile(sdot, sddot, 0., limits.a_max, limits.j_max, dt, max(limits.v_max, sdot))
    if jerks is not None:
        return jerks
    shield_logger.warning(f'No jerk-limited failsafe from sdot={sdot:.4f}, sddot={sddot:.4f}. '
                          f'The jerk limit is dropped for this failsafe.')
    jerks = brake_profile(sdot, sddot, 0., limits.a_max, 1e9, dt, np.inf)
    if jerks is not None:
        return jerks
    shield_logger.warning('No acceleration-limited failsafe either. The acceleration is released in one step.')
    return np.array([-sddot / dt])


def plan_failsafe(state: TrajectoryStep, model, dt: float, path: _Path = None,
                  limits: PathLimits = None) -> List[TrajectoryStep]:
    """
    This function plans the failsafe trajectory from a state: the progress along the path is braked to standstill
    with a piecewise constant jerk, so the robot stays on the path of its intended motion.
    The first returned step is the given state with the braking jerk, the last one is at standstill.

    Parameters
    ----------
    state : TrajectoryStep
        State the failsafe starts in
    model : RobotModel
        Robot with the joint limits
    dt : float
        Time step [s]
    path : JointPath or LinePath
        Path of the state (None means the straight line along the current joint velocity)
    limits : PathLimits
        Progress limits of the path (derived from the path if None)

    Returns
    -------
    list of TrajectoryStep

    Raises
    ------
    ValueError
        When a path is given, but the state carries no path progress
    """
    if path is None:
        path, sdot, sddot = LinePath.from_state(state)
        s = 0.
        if np.any(np.abs(state.qddot - path.direction * sddot) > 1e-9):
            shield_logger.warning('The acceleration is not aligned with the velocity, only its tangential part is '
                                  'braked along the line.')
    else:
        if state.s is None:
            raise ValueError('A failsafe along a path needs a state with path progress.')
        s, sdot, sddot = state.s, state.sdot, state.sddot
    if sdot <= 0:
        sdot, sddot = 0., max(sddot, 0.)
    limits = PathLimits.from_path(path, model) if limits is None else limits

    jerks = _braking_jerks(sdot, sddot, limits, dt)
    if jerks.size == 0:
        return [TrajectoryStep(state.t, state.q, state.qdot, state.qddot, None, state.s, state.sdot, state.sddot,
                               (state.q, state.qdot, state.qddot))]

    first = path.make_step(state.t, s, sdot, sddot, jerks[0], dt)
    steps = [TrajectoryStep(state.t, state.q, state.qdot, state.qddot, first.qdddot, state.s, state.sdot, state.sddot,
                            first.midpoint)]
    progress = advance_progress(s, sdot, sddot, jerks[0], dt)
    for index, jerk in enumerate(jerks[1:], start=1):
        steps.append(path.make_step(state.t + index * dt, progress[0], progress[1], progress[2], jerk, dt))
        progress = advance_progress(*progress, jerk, dt)
    # the schedule ends exactly at standstill
    steps.append(path.make_step(state.t + jerks.size * dt, progress[0], 0., 0., 0., dt))
    return steps
