"""
This document contains the trajectory step and the monitored trajectory (intended steps followed by a failsafe).
"""
from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np

from HRCshield.VariableClasses.BaseClass import BaseClass, ContinuityError, JointLimitViolation
from HRCshield.logger import shield_logger

CONTINUITY_TOL = 1e-9


class TrajectoryStep(BaseClass):
    """
    Robot state at time t together with the joint jerk applied over [t, t + dt].
    Steps generated along a path also carry the path progress and the exact state at the middle of the step.
    """

    __slots__ = 't', 'q', 'qdot', 'qddot', 'qdddot', 's', 'sdot', 'sddot', 'midpoint'
    __allow_none__ = ['s', 'sdot', 'sddot', 'midpoint']

    def __init__(self, t: float, q, qdot, qddot, qdddot=None, s: float = None, sdot: float = None,
                 sddot: float = None, midpoint: Tuple[np.ndarray, np.ndarray, np.ndarray] = None):
        """

        Parameters
        ----------
        t : float
            Time [s]
        q, qdot, qddot : array_like
            Joint position [rad], velocity [rad/s] and acceleration [rad/s²]
        qdddot : array_like
            Joint jerk over [t, t + dt] [rad/s³] (zero if None)
        s, sdot, sddot : float
            Path progress and its derivatives (None if the step is not on a path)
        midpoint : tuple
            Joint position, velocity and acceleration at t + dt/2 (None means a cubic expansion of this step)
        """
        self.t = float(t)
        self.q = np.asarray(q, dtype=float)
        self.qdot = np.asarray(qdot, dtype=float)
        self.qddot = np.asarray(qddot, dtype=float)
        self.qdddot = np.zeros_like(self.q) if qdddot is None else np.asarray(qdddot, dtype=float)
        if not self.q.shape == self.qdot.shape == self.qddot.shape == self.qdddot.shape or self.q.ndim != 1:
            raise ValueError('The joint position, velocity, acceleration and jerk should be vectors of equal length.')
        self.s = s
        self.sdot = sdot
        self.sddot = sddot
        self.midpoint = midpoint

    @property
    def n(self) -> int:
        return self.q.size

    @property
    def is_stopped(self) -> bool:
        return not np.any(self.qdot)

    def state_deviation(self, other: TrajectoryStep) -> float:
        """
        This function returns the largest difference in position, velocity and acceleration between two steps.
        """
        return float(max(np.max(np.abs(self.q - other.q)), np.max(np.abs(self.qdot - other.qdot)),
                         np.max(np.abs(self.qddot - other.qddot))))

    def interpolate(self, tau: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        This function evaluates the cubic expansion of this step at time t + tau.

        Parameters
        ----------
        tau : float
            Time since the start of the step [s]

        Returns
        -------
        q, qdot, qddot : np.ndarray
        """
        q = self.q + self.qdot * tau + self.qddot * tau ** 2 / 2 + self.qdddot * tau ** 3 / 6
        qdot = self.qdot + self.qddot * tau + self.qdddot * tau ** 2 / 2
        qddot = self.qddot + self.qdddot * tau
        return q, qdot, qddot

    def midpoint_state(self, dt: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        This function returns the state at t + dt/2.
        """
        if self.midpoint is not None:
            return self.midpoint
        return self.interpolate(dt / 2)

    def shifted(self, offset: float) -> TrajectoryStep:
        """
        This function returns a copy of the step with its time shifted by -offset.
        """
        return TrajectoryStep(self.t - offset, self.q, self.qdot, self.qddot, self.qdddot, self.s, self.sdot,
                              self.sddot, self.midpoint)

    def check_limits(self, qdot_max: np.ndarray, qddot_max: np.ndarray, qdddot_max: np.ndarray,
                     tol: float = 1e-9) -> None:
        """
        This function checks the step against the joint limits.

        Raises
        ------
        JointLimitViolation
            When a velocity, acceleration or jerk exceeds its limit by more than tol
        """
        for quantity, values, limits in (('velocity', self.qdot, qdot_max), ('acceleration', self.qddot, qddot_max),
                                         ('jerk', self.qdddot, qdddot_max)):
            excess = np.abs(values) - limits
            if np.any(excess > tol):
                joint = int(np.argmax(excess))
                shield_logger.error(f'Joint {joint} exceeds its {quantity} limit at t = {self.t:.4f} s.')
                raise JointLimitViolation(quantity, joint, float(abs(values[joint])), float(limits[joint]))

    def __repr__(self) -> str:
        return f'TrajectoryStep(t={self.t:.4f}, q={np.round(self.q, 4)}, qdot={np.round(self.qdot, 4)})'


class MonitoredTrajectory:
    """
    Intended steps followed by a full failsafe trajectory which ends at standstill.
    The trajectory has len(steps) - 1 intervals; interval a spans [steps[a].t, steps[a + 1].t].
    """

    __slots__ = 'steps', 'split_index', 'goal_ref', 'dt'

    def __init__(self, steps: Sequence[TrajectoryStep], split_index: int, goal_ref: str = "", dt: float = None):
        """

        Parameters
        ----------
        steps : sequence of TrajectoryStep
            Steps with a uniform time grid
        split_index : int
            Number of intended steps, the failsafe starts at steps[split_index]
        goal_ref : str
            Identifier of the goal the intended trajectory heads to
        dt : float
            Time step [s] (taken from the steps if None)

        Raises
        ------
        ValueError
            When the time grid is not strictly increasing and uniform or the last step is not at standstill
        """
        steps = tuple(steps)
        if not steps:
            raise ValueError('A monitored trajectory needs at least one step.')
        if not 0 <= split_index < len(steps):
            raise ValueError(f'The split index {split_index} is outside of the {len(steps)} steps.')
        times = np.array([step.t for step in steps])
        if dt is None:
            dt = float(times[1] - times[0]) if len(steps) > 1 else 0.
        if len(steps) > 1:
            if not dt > 0 or np.any(np.diff(times) <= 0):
                raise ValueError('The time of a monitored trajectory should strictly increase.')
            if np.max(np.abs(np.diff(times) - dt)) > CONTINUITY_TOL:
                raise ValueError(f'The time grid of the monitored trajectory is not uniform with dt = {dt}.')
        if np.any(steps[-1].qdot != 0):
            raise ValueError('A monitored trajectory should end at standstill.')
        self.steps: Tuple[TrajectoryStep, ...] = steps
        self.split_index = int(split_index)
        self.goal_ref = goal_ref
        self.dt = float(dt)

    @property
    def n_intervals(self) -> int:
        return len(self.steps) - 1

    @property
    def intended(self) -> Tuple[TrajectoryStep, ...]:
        return self.steps[:self.split_index]

    @property
    def failsafe(self) -> Tuple[TrajectoryStep, ...]:
        return self.steps[self.split_index:]

    @property
    def times(self) -> np.ndarray:
        return np.array([step.t for step in self.steps])

    def positions(self) -> np.ndarray:
        """(M + 1, N) joint positions of all steps."""
        return np.array([step.q for step in self.steps])

    def __len__(self) -> int:
        return len(self.steps)

    def __repr__(self) -> str:
        return f'MonitoredTrajectory({len(self.steps)} steps, split at {self.split_index}, dt={self.dt})'


def build_monitored(intended: Sequence[TrajectoryStep], failsafe: Sequence[TrajectoryStep], dt: float,
                    goal_ref: str = "", check_continuity: bool = True) -> MonitoredTrajectory:
    """
    This function concatenates intended steps and a failsafe trajectory. The intended sequence contains the D
    intended steps followed by the state they end in, which has to be the first failsafe state.
    The clock is reset so the monitored trajectory starts at t = 0.

    Parameters
    ----------
    intended : sequence of TrajectoryStep
        D + 1 states: the intended steps and their terminal state
    failsafe : sequence of TrajectoryStep
        Failsafe trajectory, starting in the intended terminal state and ending at standstill
    dt : float
        Time step [s]
    goal_ref : str
        Identifier of the goal
    check_continuity : bool
        False to skip the continuity check

    Returns
    -------
    MonitoredTrajectory

    Raises
    ------
    ContinuityError
        When the failsafe does not start in the intended terminal state within 1e-9
    """
    if len(intended) < 1 or len(failsafe) < 1:
        raise ValueError('The intended and failsafe trajectories should both contain at least one state.')
    if check_continuity:
        deviation = max(intended[-1].state_deviation(failsafe[0]), abs(intended[-1].t - failsafe[0].t))
        if deviation > CONTINUITY_TOL:
            shield_logger.error(f'Failsafe start deviates {deviation:.3e} from the intended terminal state.')
            raise ContinuityError(deviation)
    start = intended[0].t
    steps = [step.shifted(start) for step in intended[:-1]] + [step.shifted(start) for step in failsafe]
    return MonitoredTrajectory(steps, len(intended) - 1, goal_ref, dt)


def stopped_trajectory(q, t: float = 0.) -> MonitoredTrajectory:
    """
    This function returns the monitored trajectory of a robot which stays at rest in q.
    """
    q = np.asarray(q, dtype=float)
    zeros = np.zeros_like(q)
    return MonitoredTrajectory([TrajectoryStep(t, q, zeros, zeros)], 0)
