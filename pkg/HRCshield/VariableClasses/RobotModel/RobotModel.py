"""
This document contains the RobotModel class: a serial chain of revolute joints with rigid links.
It implements the kinematics, the inertia matrix, the effective kinetic energy per link and the reflected mass.
"""
from __future__ import annotations

from pathlib import Path
from typing import List, Tuple, Union, Iterable

import numpy as np
import yaml

from HRCshield.VariableClasses.BaseClass import BaseClass, frozen_array, SingularConfigurationError, \
    UnsupportedJointError
from HRCshield.VariableClasses.Geometry import Capsule
from HRCshield.VariableClasses.RobotModel.ErrorBounds import ErrorBounds, AngularBounds
from HRCshield.VariableClasses.RobotModel.JointSpec import JointSpec, transform_from_xyz_rpy
from HRCshield.VariableClasses.RobotModel.LinkSpec import LinkSpec, GeometryClass
from HRCshield.logger import shield_logger


class RobotModel(BaseClass):
    """
    Kinematic and dynamic model of a serial manipulator. Link i is moved by joint i.
    Link indices are zero based, so the last link of an N joint robot has index N - 1.
    """

    __slots__ = 'name', 'joints', 'links', 'topology_exclusions', 'error_bounds', '_base', '_angular_bounds'

    def __init__(self, joints: List[JointSpec], links: List[LinkSpec], topology_exclusions: Iterable = (),
                 error_bounds: ErrorBounds = None, base: np.ndarray = None, name: str = "robot"):
        """

        Parameters
        ----------
        joints : list of JointSpec
            Joints from base to tip
        links : list of LinkSpec
            Links from base to tip, link i is rotated by joint i
        topology_exclusions : iterable
            Pairs of link indices which cannot clamp a human between them
        error_bounds : ErrorBounds
            Bounds on the velocity and acceleration estimation errors
        base : np.ndarray
            4x4 pose of the robot base in the world frame (identity if None)
        name : str
            Name of the robot

        Raises
        ------
        ValueError
            When the number of joints and links differ or an exclusion pair is invalid
        """
        if len(joints) != len(links) or len(joints) == 0:
            raise ValueError(f'A robot needs as many joints as links, but {len(joints)} joints and '
                             f'{len(links)} links were given.')
        self.name = name
        self.joints: Tuple[JointSpec, ...] = tuple(joints)
        self.links: Tuple[LinkSpec, ...] = tuple(links)
        exclusions = set()
        for pair in topology_exclusions:
            i, j = (int(k) for k in pair)
            if i == j or not (0 <= i < len(links) and 0 <= j < len(links)):
                raise ValueError(f'The topology exclusion {pair} does not reference two different links.')
            exclusions.add(frozenset((i, j)))
        self.topology_exclusions = frozenset(exclusions)
        self.error_bounds: ErrorBounds = ErrorBounds() if error_bounds is None else error_bounds
        self._base = frozen_array(np.eye(4) if base is None else base, (4, 4), 'robot base')

        joint_distances = [float(np.linalg.norm(joint.origin[:3, 3])) for joint in self.joints[1:]]
        link_extents = [link.extent for link in self.links]
        self._angular_bounds = AngularBounds.from_limits(np.array([joint.limits for joint in self.joints]),
                                                         joint_distances, link_extents)
        shield_logger.main_info(f'Robot model {name} with {len(joints)} joints has been created.')

    @property
    def n(self) -> int:
        """Number of joints."""
        return len(self.joints)

    @property
    def base(self) -> np.ndarray:
        return self._base

    @property
    def base_position(self) -> np.ndarray:
        return self._base[:3, 3]

    @property
    def qdot_max(self) -> np.ndarray:
        return np.array([joint.qdot_max for joint in self.joints])

    @property
    def qddot_max(self) -> np.ndarray:
        return np.array([joint.qddot_max for joint in self.joints])

    @property
    def qdddot_max(self) -> np.ndarray:
        return np.array([joint.qdddot_max for joint in self.joints])

    def _check_q(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if q.ndim == 0 or q.shape[-1] != self.n:
            raise ValueError(f'The joint vector should have {self.n} entries, but it has shape {q.shape}.')
        if not np.all(np.isfinite(q)):
            raise ValueError('The joint vector contains non-finite values.')
        return q

    def _check_link(self, link: int) -> int:
        if not 0 <= link < self.n:
            raise IndexError(f'Link index {link} is invalid for a robot with {self.n} links.')
        return int(link)

    def link_frames(self, q) -> np.ndarray:
        """
        This function composes the chain to get the pose of every link frame.
        The joint angles may have leading batch dimensions.

        Parameters
        ----------
        q : array_like
            (..., N) joint angles [rad]

        Returns
        -------
        np.ndarray
            (..., N, 4, 4) link frames in the world frame
        """
        q = self._check_q(q)
        lead = q.shape[:-1]
        frames = np.empty(lead + (self.n, 4, 4))
        current = np.broadcast_to(self._base, lead + (4, 4))
        for i, joint in enumerate(self.joints):
            current = current @ joint.origin @ joint.rotation(q[..., i])
            frames[..., i, :, :] = current
        return frames

    def joint_axes(self, frames: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        This function returns the world positions and world axes of all joints.

        Parameters
        ----------
        frames : np.ndarray
            (..., N, 4, 4) link frames

        Returns
        -------
        origins, axes : np.ndarray
            (..., N, 3) arrays
        """
        axes = np.stack([frames[..., i, :3, :3] @ joint.axis for i, joint in enumerate(self.joints)], axis=-2)
        return frames[..., :3, 3], axes

    def capsule_points(self, q) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        This function returns the world end points and radii of all link capsules.

        Parameters
        ----------
        q : array_like
            (..., N) joint angles [rad]

        Returns
        -------
        p1, p2 : np.ndarray
            (..., N, 3) end points
        radii : np.ndarray
            (N,) radii
        """
        frames = self.link_frames(q)
        local_1 = np.array([link.capsule.p1 for link in self.links])
        local_2 = np.array([link.capsule.p2 for link in self.links])
        rotation, translation = frames[..., :3, :3], frames[..., :3, 3]
        p1 = np.einsum('...ij,...j->...i', rotation, local_1) + translation
        p2 = np.einsum('...ij,...j->...i', rotation, local_2) + translation
        return p1, p2, np.array([link.capsule.radius for link in self.links])

    def forward_kinematics(self, q) -> Tuple[np.ndarray, List[Capsule]]:
        """
        This function calculates the link frames and the world link capsules for one configuration.

        Parameters
        ----------
        q : array_like
            (N,) joint angles [rad]

        Returns
        -------
        frames : np.ndarray
            (N, 4, 4) link frames
        capsules : list of Capsule
            Link capsules in the world frame
        """
        q = self._check_q(q)
        if q.ndim != 1:
            raise ValueError(f'forward_kinematics expects a single configuration, not shape {q.shape}.')
        frames = self.link_frames(q)
        return frames, [link.capsule.transform(frames[i]) for i, link in enumerate(self.links)]

    def link_jacobian(self, q, link: int, point) -> np.ndarray:
        """
        This function calculates the geometric Jacobian of a point attached to a link.

        Parameters
        ----------
        q : array_like
            (N,) joint angles [rad]
        link : int
            Index of the link the point is attached to
        point : array_like
            Point in the world frame [m]

        Returns
        -------
        np.ndarray
            6xN Jacobian, position rows first. Columns of joints after the link are zero.
        """
        link = self._check_link(link)
        origins, axes = self.joint_axes(self.link_frames(q))
        jacobian = np.zeros((6, self.n))
        k = link + 1
        jacobian[:3, :k] = np.cross(axes[:k], np.asarray(point, dtype=float) - origins[:k]).T
        jacobian[3:, :k] = axes[:k].T
        return jacobian

    def inertia_matrix(self, q) -> np.ndarray:
        """
        This function calculates the joint space inertia matrix
        B(q) = sum_i m_i J_P,i^T J_P,i + J_O,i^T R_i I_i R_i^T J_O,i.

        Parameters
        ----------
        q : array_like
            (N,) joint angles [rad]

        Returns
        -------
        np.ndarray
            NxN symmetric positive definite matrix
        """
        frames = self.link_frames(q)
        origins, axes = self.joint_axes(frames)
        inertia = np.zeros((self.n, self.n))
        for i, link in enumerate(self.links):
            k = i + 1
            rotation = frames[i, :3, :3]
            com = rotation @ link.com + frames[i, :3, 3]
            jac_p = np.cross(axes[:k], com - origins[:k]).T
            jac_o = axes[:k].T
            inertia[:k, :k] += link.mass * jac_p.T @ jac_p + jac_o.T @ rotation @ link.inertia @ rotation.T @ jac_o
        return (inertia + inertia.T) / 2

    def effective_energy(self, q, qdot, link: int, inertia: np.ndarray = None) -> float:
        """
        This function calculates the effective kinetic energy of a link, 1/2 qdot^T E B E qdot, where E keeps the
        joints up to and including the link. Velocities of the distal joints have no influence at all.

        Parameters
        ----------
        q : array_like
            (N,) joint angles [rad]
        qdot : array_like
            (N,) joint velocities [rad/s]
        link : int
            Link index
        inertia : np.ndarray
            Precomputed inertia matrix for q (optional)

        Returns
        -------
        float
            Effective energy [J]
        """
        link = self._check_link(link)
        qdot = self._check_q(qdot)
        inertia = self.inertia_matrix(q) if inertia is None else inertia
        k = link + 1
        return float(0.5 * qdot[:k] @ inertia[:k, :k] @ qdot[:k])

    def effective_energies(self, q, qdot) -> np.ndarray:
        """
        This function calculates the effective energy of all links at once.

        Returns
        -------
        np.ndarray
            (N,) energies [J]
        """
        inertia = self.inertia_matrix(q)
        return np.array([self.effective_energy(q, qdot, i, inertia) for i in range(self.n)])

    def angular_bounds(self) -> AngularBounds:
        """
        This function returns the bounds on the angular velocity, acceleration and jerk of every link.

        Returns
        -------
        AngularBounds
        """
        return self._angular_bounds

    def reflected_mass(self, q, link: int, contact_point, direction) -> float:
        """
        This function calculates the mass perceived at a contact point along a direction,
        (u^T J_P B^-1 J_P^T u)^-1.

        Parameters
        ----------
        q : array_like
            (N,) joint angles [rad]
        link : int
            Link of the contact point
        contact_point : array_like
            Contact point in the world frame [m]
        direction : array_like
            Unit contact direction

        Returns
        -------
        float
            Reflected mass [kg]

        Raises
        ------
        ValueError
            When the direction is not of unit length
        SingularConfigurationError
            When the contact point cannot move along the direction
        """
        direction = np.asarray(direction, dtype=float)
        if abs(np.linalg.norm(direction) - 1) > 1e-9:
            raise ValueError(f'The contact direction should have unit length, not {np.linalg.norm(direction)}.')
        jac_p = self.link_jacobian(q, link, contact_point)[:3]
        u_mat, singular, _ = np.linalg.svd(jac_p, full_matrices=False)
        reachable = u_mat[:, singular > 1e-8]
        if np.linalg.norm(reachable.T @ direction) < 1e-8:
            shield_logger.error(f'Singular reflected mass request for link {link}.')
            raise SingularConfigurationError(link)
        projected = jac_p.T @ direction
        return float(1. / (projected @ np.linalg.solve(self.inertia_matrix(q), projected)))

    def point_kinematics(self, q, qdot, qddot, link: int, point_local) -> Tuple[np.ndarray, ...]:
        """
        This function propagates the velocities and accelerations along the chain (Newton-Euler forward pass)
        for a point which is fixed in a link frame.

        Parameters
        ----------
        q, qdot, qddot : array_like
            (N,) joint positions, velocities and accelerations
        link : int
            Link index
        point_local : array_like
            Point in the link frame [m]

        Returns
        -------
        tuple
            world position, velocity, acceleration, angular velocity and angular acceleration of the link
        """
        link = self._check_link(link)
        qdot, qddot = self._check_q(qdot), self._check_q(qddot)
        frames = self.link_frames(q)
        origins, axes = self.joint_axes(frames)
        omega, omega_dot = np.zeros(3), np.zeros(3)
        velocity, acceleration = np.zeros(3), np.zeros(3)
        for j in range(link + 1):
            if j > 0:
                lever = origins[j] - origins[j - 1]
                velocity = velocity + np.cross(omega, lever)
                acceleration = acceleration + np.cross(omega_dot, lever) + np.cross(omega, np.cross(omega, lever))
            omega_dot = omega_dot + qddot[j] * axes[j] + qdot[j] * np.cross(omega, axes[j])
            omega = omega + qdot[j] * axes[j]
        point = frames[link, :3, :3] @ np.asarray(point_local, dtype=float) + frames[link, :3, 3]
        lever = point - origins[link]
        velocity = velocity + np.cross(omega, lever)
        acceleration = acceleration + np.cross(omega_dot, lever) + np.cross(omega, np.cross(omega, lever))
        return point, velocity, acceleration, omega, omega_dot

    def max_point_speed(self, link: int) -> float:
        """
        This function bounds the speed of every capsule point of a link for all joint motions within the
        velocity limits.

        Parameters
        ----------
        link : int
            Link index

        Returns
        -------
        float
            Speed bound [m/s]
        """
        link = self._check_link(link)
        bounds = self._angular_bounds
        levers = np.array([np.sum(bounds.joint_distances[j:link]) + bounds.link_extents[link] for j in range(link + 1)])
        return float(np.sum(self.qdot_max[:link + 1] * levers))

    def max_cartesian_speed(self, q, qdot) -> np.ndarray:
        """
        This function bounds the Cartesian speed of the capsule points of every link in a given state.
        The speed is convex along the capsule axis, so the end points plus the radius times the
        angular speed bound the speed of the whole capsule.

        Parameters
        ----------
        q, qdot : array_like
            (N,) joint positions and velocities

        Returns
        -------
        np.ndarray
            (N,) speed bounds [m/s]
        """
        qdot = self._check_q(qdot)
        frames = self.link_frames(q)
        origins, axes = self.joint_axes(frames)
        p1, p2, radii = self.capsule_points(q)
        speeds = np.zeros(self.n)
        for i in range(self.n):
            k = i + 1
            omega = qdot[:k] @ axes[:k]
            v1 = np.sum(qdot[:k, None] * np.cross(axes[:k], p1[i] - origins[:k]), axis=0)
            v2 = np.sum(qdot[:k, None] * np.cross(axes[:k], p2[i] - origins[:k]), axis=0)
            speeds[i] = max(np.linalg.norm(v1), np.linalg.norm(v2)) + radii[i] * np.linalg.norm(omega)
        return speeds

    def link_geometry(self, link: int) -> GeometryClass:
        return self.links[self._check_link(link)].geometry


def _transform_from_dict(data: dict) -> np.ndarray:
    if data is None:
        return np.eye(4)
    return transform_from_xyz_rpy(data.get('xyz', data.get('position', (0., 0., 0.))), data.get('rpy', (0., 0., 0.)))


def robot_model_from_dict(data: dict) -> RobotModel:
    """
    This function creates a robot model from its dictionary description (see load_robot_model for the schema).

    Parameters
    ----------
    data : dict
        Robot description

    Returns
    -------
    RobotModel

    Raises
    ------
    UnsupportedJointError
        When a joint is not revolute
    """
    joints, links = [], []
    for index, entry in enumerate(data['joints']):
        name = entry.get('name', f'joint_{index}')
        joint_type = entry.get('type', 'revolute')
        if joint_type != 'revolute':
            shield_logger.error(f'Joint {name} of type {joint_type} is not supported.')
            raise UnsupportedJointError(name, joint_type)
        axis = np.asarray(entry.get('axis', (0., 0., 1.)), dtype=float)
        joints.append(JointSpec(axis / np.linalg.norm(axis), _transform_from_dict(entry.get('origin')),
                                entry['qdot_max'], entry['qddot_max'], entry['qdddot_max'], name))
    default_tracking = float(data.get('tracking_error', 0.))
    for index, entry in enumerate(data['links']):
        inertia = entry['inertia']
        if isinstance(inertia, dict):
            inertia = [[inertia['ixx'], inertia.get('ixy', 0.), inertia.get('ixz', 0.)],
                       [inertia.get('ixy', 0.), inertia['iyy'], inertia.get('iyz', 0.)],
                       [inertia.get('ixz', 0.), inertia.get('iyz', 0.), inertia['izz']]]
        capsule = Capsule(entry['capsule']['p1'], entry['capsule']['p2'], entry['capsule']['radius'])
        links.append(LinkSpec(entry['mass'], inertia, entry.get('com', (0., 0., 0.)), capsule,
                              GeometryClass(entry.get('geometry', 'blunt')),
                              entry.get('tracking_error', default_tracking), entry.get('name', f'link_{index}')))
    errors = ErrorBounds(**data.get('error_bounds', {}))
    return RobotModel(joints, links, data.get('topology_exclusions', ()), errors,
                      _transform_from_dict(data.get('base')), data.get('name', 'robot'))


def load_robot_model(path: Union[str, Path]) -> RobotModel:
    """
    This function loads a robot model from a YAML file.

    The file contains the keys name, base (xyz, rpy), tracking_error, error_bounds (w_v_max, w_omega_max, w_a_max,
    w_omega_dot_max), topology_exclusions (list of link index pairs), joints and links.
    Every joint has name, type (revolute), axis, origin (xyz, rpy), qdot_max, qddot_max and qdddot_max.
    Every link has name, mass, inertia (3x3 or ixx..izz), com, capsule (p1, p2, radius), geometry and tracking_error.
    All values are in SI units.

    Parameters
    ----------
    path : str or Path
        Location of the robot file

    Returns
    -------
    RobotModel
    """
    with open(path, 'r') as file:
        data = yaml.safe_load(file)
    return robot_model_from_dict(data)
