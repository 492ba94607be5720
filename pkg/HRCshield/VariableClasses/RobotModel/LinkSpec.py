"""
This document contains the LinkSpec class and the contact geometry classes of the robot links.
"""
from enum import Enum

import numpy as np

from HRCshield.VariableClasses.BaseClass import BaseClass, frozen_array
from HRCshield.VariableClasses.Geometry import Capsule


class GeometryClass(str, Enum):
    """
    Worst-case contact shape of a link.
    """
    BLUNT = 'blunt'
    WEDGE = 'wedge'
    EDGE = 'edge'
    SHEET = 'sheet'


class LinkSpec(BaseClass):
    """
    Rigid link with its inertial parameters and its capsule, all expressed in the link frame.
    Motor masses and inertias are assumed to be included in the link.
    """

    __slots__ = 'name', 'mass', '_inertia', '_com', 'capsule', 'geometry', 'tracking_error'

    def __init__(self, mass: float, inertia, com, capsule: Capsule, geometry: GeometryClass = GeometryClass.BLUNT,
                 tracking_error: float = 0., name: str = ""):
        """

        Parameters
        ----------
        mass : float
            Mass of the link [kg]
        inertia : array_like
            3x3 inertia tensor about the centre of mass, in the link frame [kg m²]
        com : array_like
            Centre of mass in the link frame [m]
        capsule : Capsule
            Capsule enclosing the link, in the link frame
        geometry : GeometryClass
            Worst-case contact shape of the link
        tracking_error : float
            Bound on the Cartesian tracking error of the link [m]
        name : str
            Name of the link

        Raises
        ------
        ValueError
            When the mass is not positive or the inertia is not symmetric positive definite
        """
        self.name = name
        if not mass > 0:
            raise ValueError(f'The mass of link {name} should be positive, not {mass}.')
        self.mass: float = float(mass)
        inertia = frozen_array(inertia, (3, 3), f'inertia of link {name}')
        if not np.allclose(inertia, inertia.T, atol=1e-12) or np.min(np.linalg.eigvalsh(inertia)) <= 0:
            raise ValueError(f'The inertia tensor of link {name} should be symmetric positive definite.')
        self._inertia = inertia
        self._com = frozen_array(com, (3,), f'centre of mass of link {name}')
        self.capsule: Capsule = capsule
        self.geometry: GeometryClass = GeometryClass(geometry)
        if tracking_error < 0:
            raise ValueError(f'The tracking error of link {name} should be non-negative, not {tracking_error}.')
        self.tracking_error: float = float(tracking_error)

    @property
    def inertia(self) -> np.ndarray:
        return self._inertia

    @property
    def com(self) -> np.ndarray:
        return self._com

    @property
    def extent(self) -> float:
        """Largest distance between the link frame origin and a point of the capsule [m]."""
        return float(max(np.linalg.norm(self.capsule.p1), np.linalg.norm(self.capsule.p2)) + self.capsule.radius)
