"""
This document contains the Polytope class, a convex set in halfspace representation N p <= d.
Bounded and unbounded sets (walls, floors) are both supported.
"""
from __future__ import annotations

from itertools import combinations
from typing import Tuple

import numpy as np
from scipy.optimize import linprog

from HRCshield.VariableClasses.BaseClass import BaseClass, frozen_array
from HRCshield.VariableClasses.Geometry.Capsule import Capsule, EPS_GEOM


class Polytope(BaseClass):
    """
    Immutable convex polytope {p | N p <= d} with unit length normals.
    """

    __slots__ = '_normals', '_offsets', 'name', '_projectors', '_bounded', '_vertices', '_edges'

    def __init__(self, normals, offsets, name: str = ""):
        """

        Parameters
        ----------
        normals : array_like
            (H, 3) outward unit normals
        offsets : array_like
            (H,) offsets d
        name : str
            Name of the element

        Raises
        ------
        ValueError
            When a normal is not of unit length, the shapes do not match or the set is empty
        """
        normals = np.atleast_2d(np.array(normals, dtype=np.float64))
        offsets = np.atleast_1d(np.array(offsets, dtype=np.float64))
        if normals.ndim != 2 or normals.shape[1] != 3 or normals.shape[0] != offsets.shape[0]:
            raise ValueError(f'The normals {normals.shape} and offsets {offsets.shape} of polytope {name} do not match.')
        norms = np.linalg.norm(normals, axis=1)
        if np.any(np.abs(norms - 1) > 1e-9):
            raise ValueError(f'All normals of polytope {name} should have unit length, but their norms are {norms}.')
        self._normals = frozen_array(normals, name='polytope normals')
        self._offsets = frozen_array(offsets, name='polytope offsets')
        self.name = name
        self._bounded = self._check_bounded()
        self._projectors = self._build_projectors()
        if self._bounded:
            self._vertices, self._edges = self._enumerate_features()
        else:
            self._vertices, self._edges = np.zeros((0, 3)), np.zeros((0, 2, 3))

    @classmethod
    def from_box(cls, lower, upper, name: str = "") -> Polytope:
        """
        This function creates an axis-aligned box.

        Parameters
        ----------
        lower : array_like
            Lower corner [m]
        upper : array_like
            Upper corner [m]
        name : str
            Name of the element

        Returns
        -------
        Polytope
        """
        lower, upper = np.asarray(lower, dtype=float), np.asarray(upper, dtype=float)
        if np.any(upper < lower):
            raise ValueError(f'The upper corner {upper} of box {name} lies below the lower corner {lower}.')
        eye = np.eye(3)
        return cls(np.vstack((eye, -eye)), np.concatenate((upper, -lower)), name)

    @classmethod
    def halfspace(cls, normal, offset: float, name: str = "") -> Polytope:
        """
        This function creates the halfspace {p | n.p <= offset}. The normal is normalised.
        """
        normal = np.asarray(normal, dtype=float)
        norm = np.linalg.norm(normal)
        return cls(normal[None, :] / norm, [offset / norm], name)

    @classmethod
    def oriented_box(cls, center, axes, half_extents, name: str = "") -> Polytope:
        """
        This function creates a box with orthonormal axes (columns of axes) around a center.
        """
        center, axes = np.asarray(center, dtype=float), np.asarray(axes, dtype=float)
        half_extents = np.asarray(half_extents, dtype=float)
        normals = np.vstack((axes.T, -axes.T))
        offsets = np.concatenate((axes.T @ center + half_extents, -(axes.T @ center) + half_extents))
        return cls(normals, offsets, name)

    @classmethod
    def from_capsule(cls, capsule: Capsule, name: str = "") -> Polytope:
        """
        This function creates the tightest oriented bounding box of a capsule (6 faces).

        Parameters
        ----------
        capsule : Capsule

        Returns
        -------
        Polytope
        """
        axis = capsule.p2 - capsule.p1
        length = np.linalg.norm(axis)
        u = axis / length if length > 1e-12 else np.array([1., 0., 0.])
        helper = np.array([1., 0., 0.]) if abs(u[0]) < 0.9 else np.array([0., 1., 0.])
        v = np.cross(u, helper)
        v /= np.linalg.norm(v)
        w = np.cross(u, v)
        r = capsule.radius
        return cls.oriented_box((capsule.p1 + capsule.p2) / 2, np.column_stack((u, v, w)),
                                (length / 2 + r, r, r), name)

    @property
    def normals(self) -> np.ndarray:
        return self._normals

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def bounded(self) -> bool:
        return self._bounded

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def edges(self) -> np.ndarray:
        """(E, 2, 3) array with the end points of all edges of a bounded polytope."""
        return self._edges

    def _check_bounded(self) -> bool:
        for direction in np.vstack((np.eye(3), -np.eye(3))):
            result = linprog(-direction, A_ub=self._normals, b_ub=self._offsets, bounds=[(None, None)] * 3,
                             method='highs')
            if result.status == 2:
                raise ValueError(f'The polytope {self.name} is empty.')
            if result.status == 3:
                return False
        return True

    def _build_projectors(self) -> list:
        projectors = []
        for size in (1, 2, 3):
            for subset in combinations(range(self._normals.shape[0]), size):
                rows = self._normals[list(subset)]
                gram = rows @ rows.T
                if abs(np.linalg.det(gram)) < 1e-10:
                    continue
                projectors.append((np.array(subset), rows, rows.T @ np.linalg.inv(gram)))
        return projectors

    def _enumerate_features(self) -> Tuple[np.ndarray, np.ndarray]:
        tol = 1e-9 * (1 + np.max(np.abs(self._offsets)))
        vertices = []
        for subset, rows, _ in self._projectors:
            if len(subset) != 3:
                continue
            vertex = np.linalg.solve(rows, self._offsets[subset])
            if np.all(self._normals @ vertex <= self._offsets + tol):
                if not any(np.linalg.norm(vertex - other) < 1e-9 for other in vertices):
                    vertices.append(vertex)
        vertices = np.array(vertices).reshape(-1, 3)

        edges = []
        slack = np.abs(vertices @ self._normals.T - self._offsets)
        for i, j in combinations(range(self._normals.shape[0]), 2):
            direction = np.cross(self._normals[i], self._normals[j])
            if np.linalg.norm(direction) < 1e-9:
                continue
            on_edge = vertices[(slack[:, i] < tol) & (slack[:, j] < tol)]
            if on_edge.shape[0] < 2:
                continue
            position = on_edge @ direction
            start, end = on_edge[np.argmin(position)], on_edge[np.argmax(position)]
            if np.linalg.norm(end - start) > 1e-12:
                edges.append((start, end))
        return vertices, np.array(edges).reshape(-1, 2, 3)

    def contains(self, points, tol: float = 0.) -> np.ndarray:
        """
        This function checks whether points lie inside the polytope.

        Parameters
        ----------
        points : array_like
            (3,) or (K, 3) points
        tol : float
            Tolerance on the halfspace inequalities

        Returns
        -------
        np.ndarray or bool
        """
        points = np.asarray(points, dtype=float)
        inside = np.all(points @ self._normals.T <= self._offsets + tol, axis=-1)
        return bool(inside) if points.ndim == 1 else inside

    def exterior_distance(self, points) -> np.ndarray:
        """
        This function calculates the Euclidean distance of points to the polytope (0 inside).
        The projection is found exactly by enumerating all active sets of one to three independent halfspaces.

        Parameters
        ----------
        points : array_like
            (K, 3) points

        Returns
        -------
        np.ndarray
            (K,) distances [m]
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        tol = 1e-9 * (1 + np.max(np.abs(self._offsets)))
        best = np.where(self.contains(points.reshape(-1, 3)).reshape(-1), 0., np.inf)
        for subset, rows, projector in self._projectors:
            residual = points @ rows.T - self._offsets[subset]
            candidate = points - residual @ projector.T
            feasible = np.all(candidate @ self._normals.T <= self._offsets + tol, axis=1)
            distance = np.linalg.norm(points - candidate, axis=1)
            best = np.where(feasible, np.minimum(best, distance), best)
        return best

    def signed_distance(self, points) -> np.ndarray:
        """
        This function calculates the signed distance of points: negative inside, positive outside.
        Inside, the magnitude is the smallest slack of the halfspaces, which is the distance to the boundary.

        Parameters
        ----------
        points : array_like
            (K, 3) points

        Returns
        -------
        np.ndarray
            (K,) signed distances [m]
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        slack = self._offsets - points @ self._normals.T
        inside = np.all(slack >= 0, axis=1)
        return np.where(inside, -np.min(slack, axis=1), self.exterior_distance(points))

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.name == other.name \
            and np.array_equal(self._normals, other.normals) and np.array_equal(self._offsets, other.offsets)

    def __repr__(self) -> str:
        return f'Polytope(name={self.name!r}, faces={self._normals.shape[0]}, bounded={self._bounded})'
