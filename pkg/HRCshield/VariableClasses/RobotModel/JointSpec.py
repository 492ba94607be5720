"""
This document contains the JointSpec class with the kinematic description and limits of a revolute joint.
"""
import numpy as np

from HRCshield.VariableClasses.BaseClass import BaseClass, frozen_array


def transform_from_xyz_rpy(xyz=(0., 0., 0.), rpy=(0., 0., 0.)) -> np.ndarray:
    """
    This function creates a homogeneous transformation from a translation and roll-pitch-yaw angles.

    Parameters
    ----------
    xyz : array_like
        Translation [m]
    rpy : array_like
        Roll, pitch and yaw [rad], applied as Rz(yaw) Ry(pitch) Rx(roll)

    Returns
    -------
    np.ndarray
        4x4 transformation
    """
    roll, pitch, yaw = rpy
    cr, sr, cp, sp, cy, sy = np.cos(roll), np.sin(roll), np.cos(pitch), np.sin(pitch), np.cos(yaw), np.sin(yaw)
    frame = np.eye(4)
    frame[:3, :3] = np.array([[cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
                              [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
                              [-sp, cp * sr, cp * cr]])
    frame[:3, 3] = xyz
    return frame


class JointSpec(BaseClass):
    """
    Revolute joint: a fixed origin transformation from the parent link frame, followed by a rotation about an axis.
    """

    __slots__ = 'name', '_axis', '_origin', 'qdot_max', 'qddot_max', 'qdddot_max', '_skew'

    def __init__(self, axis=(0., 0., 1.), origin: np.ndarray = None, qdot_max: float = 1.,
                 qddot_max: float = 1., qdddot_max: float = 1., name: str = ""):
        """

        Parameters
        ----------
        axis : array_like
            Unit rotation axis, expressed in the joint frame
        origin : np.ndarray
            4x4 transformation from the parent link frame to the joint frame (identity if None)
        qdot_max : float
            Maximal joint velocity [rad/s]
        qddot_max : float
            Maximal joint acceleration [rad/s²]
        qdddot_max : float
            Maximal joint jerk [rad/s³]
        name : str
            Name of the joint

        Raises
        ------
        ValueError
            When the axis is not of unit length or a limit is not strictly positive
        """
        self.name = name
        self._axis = frozen_array(axis, (3,), f'axis of joint {name}')
        if abs(np.linalg.norm(self._axis) - 1) > 1e-9:
            raise ValueError(f'The axis of joint {name} should have unit length, but it has length '
                             f'{np.linalg.norm(self._axis)}.')
        self._origin = frozen_array(np.eye(4) if origin is None else origin, (4, 4), f'origin of joint {name}')
        for limit, label in ((qdot_max, 'velocity'), (qddot_max, 'acceleration'), (qdddot_max, 'jerk')):
            if not limit > 0:
                raise ValueError(f'The {label} limit of joint {name} should be positive, not {limit}.')
        self.qdot_max: float = float(qdot_max)
        self.qddot_max: float = float(qddot_max)
        self.qdddot_max: float = float(qdddot_max)
        x, y, z = self._axis
        self._skew = np.array([[0., -z, y], [z, 0., -x], [-y, x, 0.]])

    @property
    def axis(self) -> np.ndarray:
        return self._axis

    @property
    def origin(self) -> np.ndarray:
        return self._origin

    @property
    def limits(self) -> np.ndarray:
        """Velocity, acceleration and jerk limit."""
        return np.array([self.qdot_max, self.qddot_max, self.qdddot_max])

    def rotation(self, angle) -> np.ndarray:
        """
        This function returns the homogeneous rotation about the joint axis (Rodrigues formula).

        Parameters
        ----------
        angle : float or np.ndarray
            Joint angle(s) [rad]

        Returns
        -------
        np.ndarray
            (..., 4, 4) transformations
        """
        angle = np.asarray(angle, dtype=float)
        sin, cos = np.sin(angle)[..., None, None], np.cos(angle)[..., None, None]
        frame = np.zeros(angle.shape + (4, 4))
        frame[..., :3, :3] = np.eye(3) + sin * self._skew + (1 - cos) * (self._skew @ self._skew)
        frame[..., 3, 3] = 1.
        return frame
