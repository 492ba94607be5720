"""
This document contains the bounds on the state estimation errors and the angular motion bounds of the chain.
"""
import numpy as np

from HRCshield.VariableClasses.BaseClass import BaseClass


class ErrorBounds(BaseClass):
    """
    Maximal absolute errors of the estimated linear and angular velocity and acceleration.
    """

    __slots__ = 'w_v_max', 'w_omega_max', 'w_a_max', 'w_omega_dot_max'

    def __init__(self, w_v_max: float = 0., w_omega_max: float = 0., w_a_max: float = 0., w_omega_dot_max: float = 0.):
        """

        Parameters
        ----------
        w_v_max : float
            Linear velocity error [m/s]
        w_omega_max : float
            Angular velocity error [rad/s]
        w_a_max : float
            Linear acceleration error [m/s²]
        w_omega_dot_max : float
            Angular acceleration error [rad/s²]

        Raises
        ------
        ValueError
            When an error bound is negative
        """
        for value, label in ((w_v_max, 'w_v_max'), (w_omega_max, 'w_omega_max'), (w_a_max, 'w_a_max'),
                             (w_omega_dot_max, 'w_omega_dot_max')):
            if not value >= 0:
                raise ValueError(f'The error bound {label} should be non-negative, not {value}.')
        self.w_v_max: float = float(w_v_max)
        self.w_omega_max: float = float(w_omega_max)
        self.w_a_max: float = float(w_a_max)
        self.w_omega_dot_max: float = float(w_omega_dot_max)


class AngularBounds(BaseClass):
    """
    Bounds on the angular velocity, acceleration and jerk of every link, together with the lever lengths of the chain.

    joint_distances[j] is the distance between joint j and joint j + 1, measured in link j.
    link_extents[j] is the largest distance of a capsule point of link j to joint j.
    """

    __slots__ = 'omega_bar', 'omega_dot_bar', 'omega_ddot_bar', 'joint_distances', 'link_extents'

    def __init__(self, omega_bar: np.ndarray, omega_dot_bar: np.ndarray, omega_ddot_bar: np.ndarray,
                 joint_distances: np.ndarray, link_extents: np.ndarray):
        self.omega_bar = np.asarray(omega_bar, dtype=float)
        self.omega_dot_bar = np.asarray(omega_dot_bar, dtype=float)
        self.omega_ddot_bar = np.asarray(omega_ddot_bar, dtype=float)
        self.joint_distances = np.asarray(joint_distances, dtype=float)
        self.link_extents = np.asarray(link_extents, dtype=float)

    @classmethod
    def from_limits(cls, limits: np.ndarray, joint_distances, link_extents):
        """
        This function evaluates the angular bound recursions for a serial chain of revolute joints.

        Parameters
        ----------
        limits : np.ndarray
            (N, 3) velocity, acceleration and jerk limits per joint
        joint_distances : array_like
            (N-1,) distances between consecutive joints [m]
        link_extents : array_like
            (N,) largest capsule point distance of every link to its joint [m]

        Returns
        -------
        AngularBounds
        """
        limits = np.asarray(limits, dtype=float).reshape(-1, 3)
        n = limits.shape[0]
        omega, omega_dot, omega_ddot = np.zeros(n), np.zeros(n), np.zeros(n)
        w, w_dot, w_ddot = 0., 0., 0.
        for k, (qd, qdd, qddd) in enumerate(limits):
            # the increments use the bounds of the previous link (zero for the base)
            w_ddot += qddd + 2 * qdd * w + qd * (w_dot + w ** 2)
            w_dot += qdd + qd * w
            w += qd
            omega[k], omega_dot[k], omega_ddot[k] = w, w_dot, w_ddot
        return cls(omega, omega_dot, omega_ddot, joint_distances, link_extents)

    def chain_lengths(self, link: int) -> np.ndarray:
        """
        This function returns the lever lengths l_0 .. l_link used in the jerk bound of a point on a link.

        Parameters
        ----------
        link : int
            Link index

        Returns
        -------
        np.ndarray
        """
        return np.append(self.joint_distances[:link], self.link_extents[link])

    def jerk_bound(self, link: int) -> float:
        """
        This function bounds the norm of the jerk of any point on a link, for all admissible joint motions.

        Parameters
        ----------
        link : int
            Link index

        Returns
        -------
        float
            Jerk bound [m/s³]
        """
        k = slice(0, link + 1)
        w, w_dot, w_ddot = self.omega_bar[k], self.omega_dot_bar[k], self.omega_ddot_bar[k]
        return float(np.sum(self.chain_lengths(link) * (w_ddot + 3 * w_dot * w + w_dot ** 2 + w ** 3)))
