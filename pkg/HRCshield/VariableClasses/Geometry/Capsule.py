"""
This document contains the Capsule and Ball classes.
A capsule is the set of points within a radius of the segment between p1 and p2.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np

from HRCshield.VariableClasses.BaseClass import BaseClass, frozen_array

EPS_GEOM: float = 1e-9  # m, tolerance of all intersection predicates


class Capsule(BaseClass):
    """
    Immutable capsule (segment swept by a ball). When p1 equals p2, the capsule is a ball.
    """

    __slots__ = '_p1', '_p2', '_radius'

    def __init__(self, p1, p2, radius: float):
        """

        Parameters
        ----------
        p1 : array_like
            First end point of the segment [m]
        p2 : array_like
            Second end point of the segment [m]
        radius : float
            Radius of the capsule [m]

        Raises
        ------
        ValueError
            When the radius is negative or a point is not finite
        """
        if not np.isfinite(radius) or radius < 0:
            raise ValueError(f'The radius of a capsule should be non-negative, not {radius}.')
        self._p1 = frozen_array(p1, (3,), 'capsule end point')
        self._p2 = frozen_array(p2, (3,), 'capsule end point')
        self._radius = float(radius)

    @property
    def p1(self) -> np.ndarray:
        return self._p1

    @property
    def p2(self) -> np.ndarray:
        return self._p2

    @property
    def radius(self) -> float:
        return self._radius

    @property
    def length(self) -> float:
        """Length of the capsule segment [m]."""
        return float(np.linalg.norm(self._p2 - self._p1))

    def inflate(self, delta: float) -> Capsule:
        """
        This function returns the capsule with its radius increased by delta.

        Parameters
        ----------
        delta : float
            Radius increment [m]

        Returns
        -------
        Capsule
        """
        return Capsule(self._p1, self._p2, self._radius + delta)

    def transform(self, frame: np.ndarray) -> Capsule:
        """
        This function maps the capsule through a homogeneous transformation.

        Parameters
        ----------
        frame : np.ndarray
            4x4 homogeneous transformation

        Returns
        -------
        Capsule
        """
        rotation, translation = frame[:3, :3], frame[:3, 3]
        return Capsule(rotation @ self._p1 + translation, rotation @ self._p2 + translation, self._radius)

    def support(self, direction: np.ndarray) -> float:
        """
        This function returns the support function of the capsule, i.e. the maximum of n.p over the capsule.

        Parameters
        ----------
        direction : np.ndarray
            Unit direction n

        Returns
        -------
        float
        """
        return float(max(direction @ self._p1, direction @ self._p2) + self._radius * np.linalg.norm(direction))

    def contains_point(self, point, tol: float = EPS_GEOM) -> bool:
        return bool(point_segment_distance(np.asarray(point, dtype=float), self._p1, self._p2) <= self._radius + tol)

    def contains_capsule(self, other: Capsule, tol: float = EPS_GEOM) -> bool:
        """
        This function checks whether another capsule lies completely inside this capsule.
        The distance to the segment is convex along the other segment, so checking its end points is exact.

        Parameters
        ----------
        other : Capsule
            Capsule to check
        tol : float
            Numerical tolerance [m]

        Returns
        -------
        bool
        """
        return all(point_segment_distance(point, self._p1, self._p2) + other.radius <= self._radius + tol
                   for point in (other.p1, other.p2))

    def sample_points(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """
        This function samples points uniformly in the segment parameter and in the ball around it.

        Parameters
        ----------
        n : int
            Number of points
        rng : np.random.Generator
            Random generator

        Returns
        -------
        np.ndarray
            (n, 3) array of points inside the capsule
        """
        lam = rng.uniform(0, 1, n)
        direction = rng.normal(size=(n, 3))
        direction /= np.maximum(np.linalg.norm(direction, axis=1), 1e-12)[:, None]
        scale = self._radius * rng.uniform(0, 1, n) ** (1 / 3)
        return self._p1 + lam[:, None] * (self._p2 - self._p1) + direction * scale[:, None]

    @staticmethod
    def hull(first: Capsule, second: Capsule) -> Capsule:
        """
        This function returns a capsule which contains both capsules.
        The axis connects the midpoints of the corresponding end points and the radius grows with half of the
        largest end point displacement.

        Parameters
        ----------
        first : Capsule
        second : Capsule

        Returns
        -------
        Capsule
        """
        shift = max(np.linalg.norm(first.p1 - second.p1), np.linalg.norm(first.p2 - second.p2)) / 2
        return Capsule((first.p1 + second.p1) / 2, (first.p2 + second.p2) / 2,
                       max(first.radius, second.radius) + shift)

    def bounding_box(self, name: str = ""):
        """
        This function returns the oriented bounding box of the capsule as a Polytope with 6 faces.
        """
        from HRCshield.VariableClasses.Geometry.Polytope import Polytope
        return Polytope.from_capsule(self, name)

    def __repr__(self) -> str:
        return f'Capsule(p1={self._p1.tolist()}, p2={self._p2.tolist()}, radius={self._radius})'


class Ball(Capsule):
    """
    Ball with a center and a radius, represented as a capsule with coinciding end points.
    """

    __slots__ = ()

    def __init__(self, center, radius: float):
        super().__init__(center, center, radius)

    @property
    def center(self) -> np.ndarray:
        return self._p1

    def __repr__(self) -> str:
        return f'Ball(center={self._p1.tolist()}, radius={self._radius})'


def point_segment_distance(point: np.ndarray, start: np.ndarray, end: np.ndarray) -> np.ndarray:
    """
    This function calculates the distance between points and segments. All arguments broadcast over leading axes.

    Parameters
    ----------
    point : np.ndarray
        (..., 3) points
    start : np.ndarray
        (..., 3) segment start points
    end : np.ndarray
        (..., 3) segment end points

    Returns
    -------
    np.ndarray
        Distances
    """
    direction = end - start
    length_sq = np.sum(direction * direction, axis=-1)
    safe = np.where(length_sq > 1e-24, length_sq, 1.)
    lam = np.where(length_sq > 1e-24, np.clip(np.sum((point - start) * direction, axis=-1) / safe, 0., 1.), 0.)
    return np.linalg.norm(point - start - lam[..., None] * direction, axis=-1)


def segment_closest_points(p1, q1, p2, q2) -> Tuple[np.ndarray, np.ndarray]:
    """
    This function returns the closest points of two (arrays of) segments [p1, q1] and [p2, q2].
    """
    d1 = q1 - p1
    d2 = q2 - p2
    r = p1 - p2
    a = np.sum(d1 * d1, axis=-1)
    e = np.sum(d2 * d2, axis=-1)
    f = np.sum(d2 * r, axis=-1)
    c = np.sum(d1 * r, axis=-1)
    b = np.sum(d1 * d2, axis=-1)
    denom = a * e - b * b

    a_pos = a > 1e-24
    e_pos = e > 1e-24
    safe_a = np.where(a_pos, a, 1.)
    safe_e = np.where(e_pos, e, 1.)
    non_parallel = denom > 1e-12 * a * e
    safe_denom = np.where(non_parallel, denom, 1.)

    s = np.where(non_parallel, np.clip((b * f - c * e) / safe_denom, 0., 1.), 0.)
    t = (b * s + f) / safe_e
    s = np.where(t < 0, np.clip(-c / safe_a, 0., 1.), np.where(t > 1, np.clip((b - c) / safe_a, 0., 1.), s))
    t = np.clip(t, 0., 1.)

    # first segment is a point
    s = np.where(a_pos, s, 0.)
    t = np.where(a_pos, t, np.clip(f / safe_e, 0., 1.))
    # second segment is a point
    s = np.where(e_pos, s, np.where(a_pos, np.clip(-c / safe_a, 0., 1.), 0.))
    t = np.where(e_pos, t, 0.)

    closest_1 = p1 + d1 * s[..., None]
    closest_2 = p2 + d2 * t[..., None]
    return closest_1, closest_2


def _segment_segment_distance(p1, q1, p2, q2) -> np.ndarray:
    closest_1, closest_2 = segment_closest_points(p1, q1, p2, q2)
    return np.linalg.norm(closest_1 - closest_2, axis=-1)


def segment_segment_distance(p1, q1, p2, q2) -> np.ndarray:
    """
    This function calculates the distance between segments [p1, q1] and [p2, q2], broadcast over leading axes.
    The result is exactly symmetric in the two segments.

    Returns
    -------
    np.ndarray
        Distances [m]
    """
    p1, q1, p2, q2 = (np.asarray(x, dtype=np.float64) for x in (p1, q1, p2, q2))
    return np.minimum(_segment_segment_distance(p1, q1, p2, q2), _segment_segment_distance(p2, q2, p1, q1))


def capsule_distances(p1_a, p2_a, r_a, p1_b, p2_b, r_b) -> np.ndarray:
    """
    This function calculates capsule-capsule distances for arrays of capsules, broadcast over leading axes.

    Parameters
    ----------
    p1_a, p2_a : np.ndarray
        (..., 3) end points of the first capsules
    r_a : np.ndarray
        (...) radii of the first capsules
    p1_b, p2_b : np.ndarray
        (..., 3) end points of the second capsules
    r_b : np.ndarray
        (...) radii of the second capsules

    Returns
    -------
    np.ndarray
        Distances [m], clamped at zero
    """
    return np.maximum(segment_segment_distance(p1_a, p2_a, p1_b, p2_b) - np.asarray(r_a) - np.asarray(r_b), 0.)


def capsule_capsule_distance(a: Capsule, b: Capsule) -> float:
    """
    This function calculates the smallest distance between two capsules.

    Parameters
    ----------
    a : Capsule
    b : Capsule

    Returns
    -------
    float
        Distance [m], 0 when the capsules overlap
    """
    return float(capsule_distances(a.p1, a.p2, a.radius, b.p1, b.p2, b.radius))


def capsule_intersects_capsule(a: Capsule, b: Capsule) -> bool:
    """True iff the capsules are closer than EPS_GEOM."""
    return capsule_capsule_distance(a, b) <= EPS_GEOM
