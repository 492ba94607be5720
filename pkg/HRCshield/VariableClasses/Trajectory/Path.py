"""
This document contains the geometric paths the robot follows, the limits on the path progress which keep every
joint within its limits and the jerk-limited controller of the path progress.

The progress s along a JointPath is measured in nominal seconds: the waypoint timing is reproduced at sdot = 1.
"""
from __future__ import annotations

import abc
from pathlib import Path
from typing import Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.interpolate import CubicSpline

from HRCshield.VariableClasses.BaseClass import BaseClass
from HRCshield.VariableClasses.Trajectory.TrajectoryStep import TrajectoryStep


def advance_progress(s: float, sdot: float, sddot: float, jerk: float, tau: float) -> Tuple[float, float, float]:
    """
    This function integrates the path progress exactly for a constant jerk.

    Returns
    -------
    s, sdot, sddot : float
        Progress state after tau seconds
    """
    return (s + sdot * tau + sddot * tau ** 2 / 2 + jerk * tau ** 3 / 6,
            sdot + sddot * tau + jerk * tau ** 2 / 2,
            sddot + jerk * tau)


def brake_profile(v0: float, a0: float, v_target: float, a_max: float, j_max: float, dt: float,
                  v_max: float = np.inf, max_steps: int = 100000) -> Optional[np.ndarray]:
    """
    This function searches the shortest discrete jerk schedule which brings the progress velocity from v0 to
    v_target and the acceleration from a0 to zero. The acceleration follows a trapezoid: n1 steps of constant jerk
    from a0 to -A, n2 steps at -A and n3 steps back to zero, where A follows exactly from the velocity change.

    Parameters
    ----------
    v0, a0 : float
        Initial progress velocity and acceleration
    v_target : float
        Final progress velocity, at most v0
    a_max, j_max : float
        Progress acceleration and jerk limits
    dt : float
        Time step [s]
    v_max : float
        Velocity which may not be exceeded while a positive initial acceleration is reduced
    max_steps : int
        Longest admissible schedule

    Returns
    -------
    np.ndarray or None
        Jerk per step, empty if the target is already reached and None if no schedule exists

    Raises
    ------
    ValueError
        When v_target > v0
    """
    if v_target > v0 + 1e-12:
        raise ValueError(f'The target velocity {v_target} should not exceed the initial velocity {v0}.')
    if abs(v0 - v_target) <= 1e-12 and abs(a0) <= 1e-12:
        return np.zeros(0)
    n1_max = int(np.ceil((a_max + abs(a0)) / (j_max * dt))) + 2
    n3_max = int(np.ceil(a_max / (j_max * dt))) + 2
    n1, n3 = np.meshgrid(np.arange(1, n1_max + 1, dtype=float), np.arange(1, n3_max + 1, dtype=float),
                         indexing='ij')
    numerator = max(v0 - v_target, 0.) + a0 * n1 * dt / 2
    upper = np.minimum(np.minimum(a_max, j_max * n3 * dt), j_max * n1 * dt - a0)
    lower = np.maximum(0., -a0 - j_max * n1 * dt)
    with np.errstate(divide='ignore', invalid='ignore'):
        n2 = np.ceil(numerator / (upper * dt) - (n1 + n3) / 2 - 1e-9)
        n2 = np.where(upper > 0, n2, np.where(np.abs(numerator) <= 1e-12, 0., np.inf))
        n2 = np.maximum(n2, 0.)
        plateau = numerator / ((n1 / 2 + n2 + n3 / 2) * dt)
        jerk_1 = (-plateau - a0) / (n1 * dt)
        peak = np.where((a0 > 0) & (jerk_1 < 0), v0 + a0 ** 2 / (2 * np.abs(jerk_1)), v0)
    total = n1 + n2 + n3
    feasible = (numerator >= -1e-12) & (plateau <= upper + 1e-12) & (plateau >= lower - 1e-12) \
        & (peak <= v_max + 1e-12) & (total <= max_steps)
    if not np.any(feasible):
        return None
    best = np.unravel_index(np.argmin(np.where(feasible, total, np.inf)), total.shape)
    steps_1, steps_2, steps_3 = int(n1[best]), int(n2[best]), int(n3[best])
    plateau = max(float(plateau[best]), 0.)
    return np.concatenate((np.full(steps_1, (-plateau - a0) / (steps_1 * dt)), np.zeros(steps_2),
                           np.full(steps_3, plateau / (steps_3 * dt))))


class _Path(abc.ABC):
    """
    Geometric path in joint space, parametrised by the progress s.
    """

    nominal_speed: float = np.inf

    @abc.abstractmethod
    def derivatives(self, s: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        This function returns q(s) and its first three derivatives with respect to s.
        """

    @abc.abstractmethod
    def derivative_bounds(self) -> np.ndarray:
        """
        This function returns the (3, N) maxima of |q'|, |q''| and |q'''| over the whole path.
        """

    def position(self, s: float) -> np.ndarray:
        return self.derivatives(s)[0]

    def joint_state(self, s: float, sdot: float, sddot: float, sdddot: float = 0.) -> Tuple[np.ndarray, ...]:
        """
        This function maps a progress state onto the joint position, velocity, acceleration and jerk.
        """
        q, d1, d2, d3 = self.derivatives(s)
        qdot = d1 * sdot
        qddot = d2 * sdot ** 2 + d1 * sddot
        qdddot = d3 * sdot ** 3 + 3 * d2 * sdot * sddot + d1 * sdddot
        return q, qdot, qddot, qdddot

    def make_step(self, t: float, s: float, sdot: float, sddot: float, sdddot: float, dt: float) -> TrajectoryStep:
        """
        This function creates the trajectory step for a progress state and the progress jerk applied during the step.
        The state at the middle of the step is evaluated exactly on the path.

        Parameters
        ----------
        t : float
            Time [s]
        s, sdot, sddot : float
            Progress state
        sdddot : float
            Progress jerk during [t, t + dt]
        dt : float
            Time step [s]

        Returns
        -------
        TrajectoryStep
        """
        q, qdot, qddot, qdddot = self.joint_state(s, sdot, sddot, sdddot)
        midpoint = self.joint_state(*advance_progress(s, sdot, sddot, sdddot, dt / 2))[:3]
        return TrajectoryStep(t, q, qdot, qddot, qdddot, s, sdot, sddot, midpoint)


class JointPath(_Path):
    """
    Periodic cubic spline through joint waypoints. Open waypoint lists are mirrored into a back-and-forth loop.
    """

    nominal_speed = 1.

    def __init__(self, times, positions, name: str = "path"):
        """

        Parameters
        ----------
        times : array_like
            (K,) strictly increasing waypoint times [s]
        positions : array_like
            (K, N) joint positions [rad]
        name : str
            Name of the path

        Raises
        ------
        ValueError
            When there are less than two waypoints or the times do not strictly increase
        """
        times = np.asarray(times, dtype=float)
        positions = np.atleast_2d(np.asarray(positions, dtype=float))
        if times.ndim != 1 or times.size < 2 or positions.shape[0] != times.size:
            raise ValueError(f'A path needs at least two waypoints with one time each, not {times.size} times and '
                             f'{positions.shape[0]} positions.')
        if np.any(np.diff(times) <= 0):
            raise ValueError('The waypoint times should strictly increase.')
        self.name = name
        self.closed = bool(np.allclose(positions[0], positions[-1], atol=1e-12, rtol=0))
        if self.closed:
            positions = positions.copy()
            positions[-1] = positions[0]
        else:
            times = np.concatenate((times, times[-1] + (times[-1] - times[-2::-1])))
            positions = np.concatenate((positions, positions[-2::-1]))
        self._start = times[0]
        self.period = float(times[-1] - times[0])
        self._spline = CubicSpline(times, positions, bc_type='periodic', axis=0)
        self._bounds = None

    @property
    def n(self) -> int:
        return self._spline.c.shape[-1]

    def _wrap(self, s: float) -> float:
        return self._start + np.mod(s, self.period)

    def derivatives(self, s: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        x = self._wrap(s)
        return tuple(self._spline(x, nu) for nu in range(4))

    def derivative_bounds(self) -> np.ndarray:
        if self._bounds is not None:
            return self._bounds
        c = self._spline.c
        h = np.diff(self._spline.x)[:, None]
        c0, c1, c2 = c[0], c[1], c[2]
        third = np.max(np.abs(6 * c0), axis=0)
        second = np.max(np.maximum(np.abs(2 * c1), np.abs(6 * c0 * h + 2 * c1)), axis=0)
        first = np.maximum(np.abs(c2), np.abs(3 * c0 * h ** 2 + 2 * c1 * h + c2))
        with np.errstate(divide='ignore', invalid='ignore'):
            vertex = -c1 / (3 * c0)
            inside = (c0 != 0) & (vertex > 0) & (vertex < h)
            extremum = np.abs(c2 - c1 ** 2 / (3 * c0))
        first = np.max(np.where(inside, np.maximum(first, extremum), first), axis=0)
        self._bounds = np.array([first, second, third])
        return self._bounds


class LinePath(_Path):
    """
    Straight joint space line through a configuration, parametrised by arc length.
    """

    def __init__(self, origin, direction):
        self.origin = np.asarray(origin, dtype=float)
        direction = np.asarray(direction, dtype=float)
        norm = np.linalg.norm(direction)
        if not norm > 0:
            raise ValueError('The direction of a line path should not be zero.')
        self.direction = direction / norm

    @classmethod
    def from_state(cls, state: TrajectoryStep) -> Tuple[LinePath, float, float]:
        """
        This function creates the line along the current velocity and the progress state of the robot on it.
        The acceleration is projected onto the line.

        Returns
        -------
        path : LinePath
        sdot, sddot : float
        """
        speed = float(np.linalg.norm(state.qdot))
        if speed > 0:
            direction = state.qdot / speed
        elif np.any(state.qddot):
            direction = state.qddot
        else:
            direction = np.eye(state.n)[0]
        path = cls(state.q, direction)
        return path, speed, float(path.direction @ state.qddot)

    def derivatives(self, s: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        zeros = np.zeros_like(self.origin)
        return self.origin + self.direction * s, self.direction, zeros, zeros

    def derivative_bounds(self) -> np.ndarray:
        return np.array([np.abs(self.direction), np.zeros_like(self.origin), np.zeros_like(self.origin)])


def load_waypoints(path: Union[str, Path], name: str = None) -> JointPath:
    """
    This function loads a joint path from a CSV file with the columns time_s, q1 .. qN.

    Parameters
    ----------
    path : str or Path
        Location of the waypoint file
    name : str
        Name of the path (the file name if None)

    Returns
    -------
    JointPath
    """
    data = pd.read_csv(path)
    if 'time_s' not in data.columns:
        raise ValueError(f'The waypoint file {path} has no time_s column.')
    joints = sorted((column for column in data.columns if column.startswith('q') and column[1:].isdigit()),
                    key=lambda column: int(column[1:]))
    if not joints:
        raise ValueError(f'The waypoint file {path} has no joint columns q1 .. qN.')
    return JointPath(data['time_s'].to_numpy(dtype=float), data[joints].to_numpy(dtype=float),
                     Path(path).stem if name is None else name)


class PathLimits(BaseClass):
    """
    Limits on the progress velocity, acceleration and jerk which keep all joints within their limits.
    """

    __slots__ = 'v_max', 'a_max', 'j_max'

    def __init__(self, v_max: float, a_max: float, j_max: float):
        if not (v_max >= 0 and a_max > 0 and j_max > 0):
            raise ValueError(f'Invalid path limits v_max={v_max}, a_max={a_max}, j_max={j_max}.')
        self.v_max = float(v_max)
        self.a_max = float(a_max)
        self.j_max = float(j_max)

    @classmethod
    def from_path(cls, path: _Path, model, a_cap: float = 100., j_cap: float = 1e4) -> PathLimits:
        """
        This function derives the progress limits from the path derivative bounds and the joint limits.
        With |q'| <= d1, |q''| <= d2 and |q'''| <= d3, the joint velocity d1 V, acceleration d2 V² + d1 A and
        jerk d3 V³ + 3 d2 V A + d1 J stay within the joint limits. A joint which does not move along the path does
        not constrain the progress.

        Parameters
        ----------
        path : JointPath or LinePath
            Path of the robot
        model : RobotModel
            Robot with the joint limits
        a_cap, j_cap : float
            Acceleration and jerk used when no joint constrains them

        Returns
        -------
        PathLimits
        """
        d1, d2, d3 = path.derivative_bounds()
        qdot_max, qddot_max, qdddot_max = model.qdot_max, model.qddot_max, model.qdddot_max
        with np.errstate(divide='ignore', invalid='ignore'):
            v_max = min(path.nominal_speed,
                        np.min(np.where(d1 > 0, qdot_max / d1, np.inf)),
                        np.min(np.where(d2 > 0, np.sqrt(qddot_max / (2 * d2)), np.inf)),
                        np.min(np.where(d3 > 0, np.cbrt(qdddot_max / (4 * d3)), np.inf)))
            a_max = min(np.min(np.where(d1 > 0, (qddot_max - d2 * v_max ** 2) / d1, np.inf)),
                        np.min(np.where(d2 * v_max > 0, qdddot_max / (12 * d2 * v_max), np.inf)))
            j_max = np.min(np.where(d1 > 0, (qdddot_max - d3 * v_max ** 3 - 3 * d2 * v_max * a_max) / d1, np.inf))
        return cls(v_max if np.isfinite(v_max) else 1., a_max if np.isfinite(a_max) else a_cap,
                   j_max if np.isfinite(j_max) else j_cap)


class PathController:
    """
    Jerk-limited tracking of a progress speed cap along a path.
    It keeps the progress state in a set from which a failsafe brakes to standstill without reversing and without
    exceeding the velocity limit.
    """

    def __init__(self, path: _Path, limits: PathLimits, dt: float):
        if not dt > 0:
            raise ValueError(f'The time step should be positive, not {dt}.')
        self.path = path
        self.limits = limits
        self.dt = float(dt)

    def start(self, t: float = 0., s: float = 0.) -> TrajectoryStep:
        """
        This function returns the standstill state at progress s.
        """
        return self.path.make_step(t, s, 0., 0., 0., self.dt)

    def jerk(self, sdot: float, sddot: float, v_cap: float) -> float:
        """
        This function selects the progress jerk for the next step.

        Parameters
        ----------
        sdot, sddot : float
            Current progress velocity and acceleration
        v_cap : float
            Requested progress speed cap

        Returns
        -------
        float
        """
        a_max, j_max, dt = self.limits.a_max, self.limits.j_max, self.dt
        cap = max(min(v_cap, self.limits.v_max), 0.)
        if sdot > cap + 1e-12:
            jerks = brake_profile(sdot, sddot, cap, a_max, j_max, dt, self.limits.v_max)
            jerk = float(jerks[0]) if jerks is not None and len(jerks) else float(np.clip(-sddot / dt, -j_max, j_max))
        else:
            target = min(a_max, np.sqrt(2 * j_max * (cap - sdot)))
            jerk = float(np.clip((target - sddot) / dt, -j_max, j_max))
        _, v_next, a_next = advance_progress(0., sdot, sddot, jerk, dt)
        if a_next > 0 and v_next + a_next ** 2 / (2 * j_max) + a_next * dt / 2 > max(cap, sdot):
            jerk = max(-j_max, (-a_max - sddot) / dt)
        elif a_next < 0 and v_next - a_next ** 2 / (2 * j_max) + a_next * dt / 2 < 0:
            jerk = min(j_max, (a_max - sddot) / dt)
        return jerk

    def step(self, state: TrajectoryStep, v_cap: float) -> Tuple[TrajectoryStep, TrajectoryStep]:
        """
        This function advances the progress for one time step.

        Parameters
        ----------
        state : TrajectoryStep
            Current state on the path
        v_cap : float
            Requested progress speed cap

        Returns
        -------
        current : TrajectoryStep
            Current state with the selected jerk
        following : TrajectoryStep
            State at t + dt
        """
        jerk = self.jerk(state.sdot, state.sddot, v_cap)
        current = self.path.make_step(state.t, state.s, state.sdot, state.sddot, jerk, self.dt)
        s, sdot, sddot = advance_progress(state.s, state.sdot, state.sddot, jerk, self.dt)
        return current, self.path.make_step(state.t + self.dt, s, max(sdot, 0.), sddot, 0., self.dt)

    def intended(self, state: TrajectoryStep, v_cap: float, steps: int = 1) -> list:
        """
        This function returns the intended states: the given number of steps followed by their terminal state.
        """
        states = []
        for _ in range(steps):
            current, state = self.step(state, v_cap)
            states.append(current)
        states.append(state)
        return states
