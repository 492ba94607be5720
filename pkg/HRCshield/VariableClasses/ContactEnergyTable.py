"""
This document contains the admissible contact energies per body region, robot geometry and contact type.
"""
from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np
import pandas as pd

from HRCshield.VariableClasses.BaseClass import MissingThresholdError
from HRCshield.VariableClasses.HumanModel import BodyKind
from HRCshield.VariableClasses.RobotModel import GeometryClass
from HRCshield.logger import shield_logger


class ContactType(str, Enum):
    """
    Constrained (clamping) or unconstrained (free) contact.
    """
    CLAMP = 'clamp'
    FREE = 'free'


_GEOMETRIES = (GeometryClass.BLUNT, GeometryClass.WEDGE, GeometryClass.EDGE, GeometryClass.SHEET)
# clamp thresholds followed by free thresholds, in the order of _GEOMETRIES [J]
_DEFAULT_ROWS = {BodyKind.HAND: (0.49, 0.05, 0.02, 0.11, 0.49, 2.0, 0.375, 0.9),
                 BodyKind.LOWER_ARM: (1.3, 0.05, 0.02, 0.11, 1.3, 2.0, 0.375, 0.9),
                 BodyKind.UPPER_ARM: (1.5, 0.05, 0.02, 0.11, 1.5, 0.5, 0.2, 0.5),
                 BodyKind.TORSO: (1.6, 0.05, 0.02, 0.11, 1.6, 0.5, 0.2, 0.5),
                 BodyKind.HEAD: (0.11, 0.05, 0.02, 0.11, 0.11, 0.11, 0.11, 0.11)}

Key = Tuple[BodyKind, GeometryClass, ContactType]


def _default_entries() -> Dict[Key, float]:
    entries = {}
    for kind, row in _DEFAULT_ROWS.items():
        for index, geometry in enumerate(_GEOMETRIES):
            entries[(kind, geometry, ContactType.CLAMP)] = row[index]
            entries[(kind, geometry, ContactType.FREE)] = row[index + 4]
    return entries


class ContactEnergyTable:
    """
    Map from (body kind, robot geometry, contact type) to the admissible contact energy [J].
    Body parts of kind other get the most restrictive energy of all measured kinds, unless the table sets them.
    """

    __slots__ = '_entries',

    def __init__(self, entries: Dict[Key, float] = None):
        """

        Parameters
        ----------
        entries : dict
            Thresholds [J], the default table if None

        Raises
        ------
        ValueError
            When a threshold is negative or not finite
        """
        entries = _default_entries() if entries is None else entries
        table = {}
        for (kind, geometry, contact), value in entries.items():
            if not (np.isfinite(value) and value >= 0):
                raise ValueError(f'The threshold for {kind}, {geometry} and {contact} should be non-negative, '
                                 f'not {value}.')
            table[(BodyKind(kind), GeometryClass(geometry), ContactType(contact))] = float(value)
        for geometry in GeometryClass:
            for contact in ContactType:
                key = (BodyKind.OTHER, geometry, contact)
                known = [value for (k, g, c), value in table.items() if g == geometry and c == contact]
                if key not in table and known:
                    table[key] = min(known)
        self._entries: Dict[Key, float] = table

    @classmethod
    def default(cls) -> ContactEnergyTable:
        return cls()

    @classmethod
    def from_csv(cls, path: Union[str, Path], base: ContactEnergyTable = None) -> ContactEnergyTable:
        """
        This function reads threshold overrides from a CSV file with the columns body_kind, geometry, contact and
        energy_J. The overrides replace the entries of the base table.

        Parameters
        ----------
        path : str or Path
            Location of the override file
        base : ContactEnergyTable
            Table which is overridden (the default table if None)

        Returns
        -------
        ContactEnergyTable
        """
        data = pd.read_csv(path)
        missing = {'body_kind', 'geometry', 'contact', 'energy_J'} - set(data.columns)
        if missing:
            raise ValueError(f'The energy table {path} misses the columns {sorted(missing)}.')
        entries = dict((base or cls())._measured_entries())
        for row in data.itertuples(index=False):
            entries[(BodyKind(row.body_kind), GeometryClass(row.geometry), ContactType(row.contact))] = \
                float(row.energy_J)
        shield_logger.info(f'{len(data)} contact energy overrides loaded from {Path(path).name}.')
        return cls(entries)

    def _measured_entries(self) -> Dict[Key, float]:
        return {key: value for key, value in self._entries.items() if key[0] != BodyKind.OTHER}

    def energy_threshold(self, kind: BodyKind, geometry: GeometryClass, contact: ContactType) -> float:
        """
        This function returns the admissible contact energy.

        Parameters
        ----------
        kind : BodyKind
            Body region
        geometry : GeometryClass
            Geometry of the robot link
        contact : ContactType
            Contact type

        Returns
        -------
        float
            Threshold [J]

        Raises
        ------
        MissingThresholdError
            When the table has no entry for the combination
        """
        try:
            return self._entries[(BodyKind(kind), GeometryClass(geometry), ContactType(contact))]
        except (KeyError, ValueError):
            raise MissingThresholdError(str(kind), str(geometry), str(contact))

    def to_frame(self) -> pd.DataFrame:
        """
        This function returns the table as a DataFrame with the columns of the override files.
        """
        rows = [(kind.value, geometry.value, contact.value, value)
                for (kind, geometry, contact), value in sorted(self._entries.items(),
                                                                key=lambda item: tuple(k.value for k in item[0]))]
        return pd.DataFrame(rows, columns=['body_kind', 'geometry', 'contact', 'energy_J'])

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ContactEnergyTable) and self._entries == other._entries


def force_from_energy(stiffness: float, energy: float) -> float:
    """
    This function converts a contact energy into the force of a linear spring contact, F = sqrt(2 K T).

    Parameters
    ----------
    stiffness : float
        Contact stiffness of the body part [N/m]
    energy : float
        Contact energy [J]

    Returns
    -------
    float
        Force [N]

    Raises
    ------
    ValueError
        When the stiffness is not positive or the energy is negative
    """
    if not stiffness > 0:
        raise ValueError(f'The stiffness should be positive, not {stiffness}.')
    if energy < 0:
        raise ValueError(f'The energy should be non-negative, not {energy}.')
    return float(np.sqrt(2 * stiffness * energy))
