"""
This document contains the distance queries between capsules and polytopes.
"""
from typing import FrozenSet

import numpy as np
from scipy.optimize import minimize_scalar

from HRCshield.VariableClasses.Geometry.Capsule import Capsule, EPS_GEOM, segment_segment_distance
from HRCshield.VariableClasses.Geometry.Polytope import Polytope


def capsule_support(capsule: Capsule, normals: np.ndarray) -> np.ndarray:
    """
    This function evaluates the support function of a capsule for one or more unit normals.

    Parameters
    ----------
    capsule : Capsule
    normals : np.ndarray
        (3,) or (H, 3) unit normals

    Returns
    -------
    np.ndarray
        max over the capsule of n.p for every normal
    """
    return np.maximum(normals @ capsule.p1, normals @ capsule.p2) + capsule.radius


def _segment_clip(start: np.ndarray, end: np.ndarray, polytope: Polytope) -> bool:
    """Liang-Barsky clipping, True if the segment enters the polytope."""
    direction = end - start
    lower, upper = 0., 1.
    numerator = polytope.offsets - polytope.normals @ start
    denominator = polytope.normals @ direction
    for num, den in zip(numerator, denominator):
        if abs(den) < 1e-15:
            if num < 0:
                return False
        elif den > 0:
            upper = min(upper, num / den)
        else:
            lower = max(lower, num / den)
        if lower > upper:
            return False
    return True


def segment_polytope_distance(start: np.ndarray, end: np.ndarray, polytope: Polytope) -> float:
    """
    This function calculates the distance between a segment and a polytope.

    For bounded polytopes, the closest pair is attained at a segment end point or at a polytope edge, so the
    end point projections and the segment-edge distances give the exact result.
    For unbounded polytopes, the convex distance along the segment is minimised numerically.

    Parameters
    ----------
    start : np.ndarray
        Start of the segment
    end : np.ndarray
        End of the segment
    polytope : Polytope

    Returns
    -------
    float
        Distance [m]
    """
    if _segment_clip(start, end, polytope):
        return 0.
    end_points = float(np.min(polytope.exterior_distance(np.vstack((start, end)))))
    if polytope.bounded:
        if polytope.edges.shape[0] == 0:
            return end_points
        edge_distance = segment_segment_distance(start, end, polytope.edges[:, 0], polytope.edges[:, 1])
        return float(min(end_points, np.min(edge_distance)))

    direction = end - start
    result = minimize_scalar(lambda s: float(polytope.exterior_distance(start + s * direction)[0]),
                             bounds=(0., 1.), method='bounded', options={'xatol': 1e-12})
    return float(min(end_points, result.fun))


def capsule_polytope_distance(capsule: Capsule, polytope: Polytope) -> float:
    """
    This function calculates the distance between the surface of a capsule and a polytope.

    Parameters
    ----------
    capsule : Capsule
    polytope : Polytope

    Returns
    -------
    float
        Distance [m], 0 when they intersect
    """
    return max(0., segment_polytope_distance(capsule.p1, capsule.p2, polytope) - capsule.radius)


def capsule_intersects_polytope(capsule: Capsule, polytope: Polytope) -> bool:
    """True iff the capsule is closer than EPS_GEOM to the polytope."""
    if np.any(-capsule_support(capsule, -polytope.normals) - polytope.offsets > EPS_GEOM):
        return False
    return capsule_polytope_distance(capsule, polytope) <= EPS_GEOM


def signed_distance_point(point, polytope: Polytope) -> float:
    """
    This function calculates the signed distance of a point to a polytope.

    Parameters
    ----------
    point : array_like
        Point [m]
    polytope : Polytope

    Returns
    -------
    float
        Negative inside, positive outside [m]
    """
    return float(polytope.signed_distance(np.asarray(point, dtype=float)[None, :])[0])


def active_halfspaces(capsule: Capsule, polytope: Polytope) -> FrozenSet[int]:
    """
    This function returns the indices of the halfspaces which are violated by at least one point of the capsule.

    Parameters
    ----------
    capsule : Capsule
    polytope : Polytope

    Returns
    -------
    frozenset
        Indices h with max over the capsule of N[h].p > d[h]
    """
    support = capsule_support(capsule, polytope.normals)
    return frozenset(int(h) for h in np.flatnonzero(support > polytope.offsets))
