"""
This document contains the reachable occupancies of the robot links along a monitored trajectory and the lower
bound on the velocity of a link along a normal direction.
"""
from __future__ import annotations

from typing import Dict, Tuple, Union

import numpy as np

from HRCshield.VariableClasses.Geometry import Capsule, Polytope
from HRCshield.VariableClasses.RobotModel import AngularBounds, ErrorBounds
from HRCshield.VariableClasses.Trajectory.TrajectoryStep import MonitoredTrajectory


class LinkReach:
    """
    Occupancy of one link during one interval, together with the kinematics of the capsule anchor (the first
    capsule end point) at the middle of the interval.
    """

    __slots__ = 'interval', 'link', 'occupancy', 'anchor', 'length', 'dt', '_box'

    def __init__(self, interval: int, link: int, occupancy: Capsule, anchor: Tuple[np.ndarray, ...], length: float,
                 dt: float):
        """

        Parameters
        ----------
        interval : int
            Interval index
        link : int
            Link index
        occupancy : Capsule
            Space the link can occupy during the interval
        anchor : tuple
            Position, velocity, acceleration, angular velocity and angular acceleration of the anchor
        length : float
            Largest distance of a capsule point to the anchor [m]
        dt : float
            Duration of the interval [s]
        """
        self.interval = int(interval)
        self.link = int(link)
        self.occupancy = occupancy
        self.anchor = tuple(np.asarray(value, dtype=float) for value in anchor)
        self.length = float(length)
        self.dt = float(dt)
        self._box = None

    @property
    def box(self) -> Polytope:
        """Oriented bounding box of the occupancy."""
        if self._box is None:
            self._box = Polytope.from_capsule(self.occupancy, f'link {self.link}')
        return self._box

    def __repr__(self) -> str:
        return f'LinkReach(interval={self.interval}, link={self.link}, {self.occupancy})'


class RobotReach:
    """
    Occupancies of all links for all intervals of a monitored trajectory.
    The occupancies are evaluated at once, the anchor kinematics and the energies only when they are requested.
    """

    def __init__(self, traj: MonitoredTrajectory, model):
        """

        Parameters
        ----------
        traj : MonitoredTrajectory
            Trajectory to enclose
        model : RobotModel
            Robot following the trajectory
        """
        self.traj = traj
        self.model = model
        self.dt = traj.dt
        p1, p2, radii = model.capsule_points(traj.positions())
        shift = np.maximum(np.linalg.norm(p1[1:] - p1[:-1], axis=-1), np.linalg.norm(p2[1:] - p2[:-1], axis=-1)) / 2
        speed = np.array([model.max_point_speed(i) for i in range(model.n)])
        tracking = np.array([link.tracking_error for link in model.links])
        # (M, N) arrays of the occupancy capsules
        self.p1 = (p1[1:] + p1[:-1]) / 2
        self.p2 = (p2[1:] + p2[:-1]) / 2
        self.radii = radii + shift + speed * self.dt / 2 + tracking
        self.lengths = np.array([np.linalg.norm(link.capsule.p2 - link.capsule.p1) + link.capsule.radius
                                 for link in model.links])
        self._cache: Dict[Tuple[int, int], LinkReach] = {}
        self._energies: Dict[int, np.ndarray] = {}

    @property
    def n_intervals(self) -> int:
        return self.p1.shape[0]

    @property
    def n_links(self) -> int:
        return self.model.n

    def occupancy(self, interval: int, link: int) -> Capsule:
        return Capsule(self.p1[interval, link], self.p2[interval, link], self.radii[interval, link])

    def __getitem__(self, key: Tuple[int, int]) -> LinkReach:
        interval, link = key
        if not (0 <= interval < self.n_intervals and 0 <= link < self.n_links):
            raise IndexError(f'No reach set for interval {interval} and link {link}.')
        if key not in self._cache:
            q, qdot, qddot = self.traj.steps[interval].midpoint_state(self.dt)
            _, velocity, acceleration, omega, omega_dot = \
                self.model.point_kinematics(q, qdot, qddot, link, self.model.links[link].capsule.p1)
            position = self.model.capsule_points(q)[0][link]
            self._cache[key] = LinkReach(interval, link, self.occupancy(interval, link),
                                         (position, velocity, acceleration, omega, omega_dot),
                                         self.lengths[link], self.dt)
        return self._cache[key]

    def step_energies(self, index: int) -> np.ndarray:
        """
        This function returns the effective energy of every link in a step of the trajectory.
        """
        if index not in self._energies:
            step = self.traj.steps[index]
            self._energies[index] = self.model.effective_energies(step.q, step.qdot)
        return self._energies[index]

    def energies(self, interval: int) -> np.ndarray:
        """
        This function returns the effective energy of every link for an interval, the maximum of both end points.
        """
        return np.maximum(self.step_energies(interval), self.step_energies(interval + 1))


def robot_reach(traj: MonitoredTrajectory, model) -> RobotReach:
    """
    This function encloses every link for every interval of a monitored trajectory.
    A point moving at most v with end points x_a and x_b stays within v dt / 2 of the segment between them, so the
    hull of the link capsules at both ends, inflated by half the distance the fastest link point can travel and by
    the tracking error, contains the link during the whole interval.

    Parameters
    ----------
    traj : MonitoredTrajectory
        Trajectory of the robot
    model : RobotModel
        Robot model

    Returns
    -------
    RobotReach
        Reach sets, indexed with [interval, link]
    """
    return RobotReach(traj, model)


def min_normal_speed(reach: LinkReach, normal, model, bounds: AngularBounds = None, err: ErrorBounds = None,
                     dt: float = None) -> Union[float, np.ndarray]:
    """
    This function bounds the velocity of every point of a link along a normal from below, for the whole interval.
    With f(t) the normal velocity of a link point and t_m the middle of the interval,
    f(t) >= f(t_m) - |f'(t_m)| dt / 2 - max|f''| dt² / 8, where every term is bounded over all capsule points from
    the anchor kinematics, the estimation errors and the jerk bound of the link.

    Parameters
    ----------
    reach : LinkReach
        Reach set of the link
    normal : array_like
        Unit normal (3,) or an array (K, 3) of unit normals
    model : RobotModel
        Robot model
    bounds : AngularBounds
        Angular motion bounds (those of the model if None)
    err : ErrorBounds
        Estimation errors (those of the model if None)
    dt : float
        Duration of the interval (that of the reach set if None)

    Returns
    -------
    float or np.ndarray
        Lower bound on the normal velocity [m/s], one per normal

    Raises
    ------
    ValueError
        When a normal is not of unit length
    """
    normal = np.asarray(normal, dtype=float)
    normals = np.atleast_2d(normal)
    if normals.shape[-1] != 3 or np.any(np.abs(np.linalg.norm(normals, axis=1) - 1) > 1e-9):
        raise ValueError('The normal should have unit length.')
    bounds = model.angular_bounds() if bounds is None else bounds
    err = model.error_bounds if err is None else err
    dt = reach.dt if dt is None else dt
    _, velocity, acceleration, omega, omega_dot = reach.anchor
    length = reach.length

    cross_omega = np.linalg.norm(np.cross(normals, omega), axis=1) + err.w_omega_max
    first_order = normals @ velocity - err.w_v_max - length * cross_omega
    rate = np.abs(normals @ acceleration) + err.w_a_max \
        + length * (np.linalg.norm(np.cross(normals, omega_dot), axis=1) + err.w_omega_dot_max
                    + cross_omega * (np.linalg.norm(omega) + err.w_omega_max))
    remainder = bounds.jerk_bound(reach.link)
    result = first_order - dt / 2 * rate - dt ** 2 / 8 * remainder
    return float(result[0]) if normal.ndim == 1 else result
