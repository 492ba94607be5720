"""
This document contains the Environment class: the static, unmovable elements a human can be clamped against.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterator, Sequence, Tuple, Union

import yaml

from HRCshield.VariableClasses.Geometry import Polytope
from HRCshield.logger import shield_logger


class Environment:
    """
    Static environment, a collection of convex polytopes.
    """

    __slots__ = 'elements',

    def __init__(self, elements: Sequence[Polytope] = ()):
        self.elements: Tuple[Polytope, ...] = tuple(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Polytope]:
        return iter(self.elements)

    def __getitem__(self, index: int) -> Polytope:
        return self.elements[index]

    def __eq__(self, other) -> bool:
        return isinstance(other, Environment) and self.elements == other.elements

    def __repr__(self) -> str:
        return f'Environment({[element.name for element in self.elements]})'


def environment_from_dict(data: dict) -> Environment:
    """
    This function creates an environment from its dictionary description (see load_environment for the schema).

    Parameters
    ----------
    data : dict
        Environment description

    Returns
    -------
    Environment

    Raises
    ------
    ValueError
        When an element is neither a box nor a set of half-spaces
    """
    elements = []
    for index, entry in enumerate((data or {}).get('elements', [])):
        name = entry.get('name', f'element_{index}')
        if 'box' in entry:
            elements.append(Polytope.from_box(entry['box']['min'], entry['box']['max'], name))
        elif 'normals' in entry and 'offsets' in entry:
            elements.append(Polytope(entry['normals'], entry['offsets'], name))
        else:
            shield_logger.error(f'Environment element {name} has no box and no normals/offsets.')
            raise ValueError(f'Environment element {name} should either have a box or normals and offsets.')
    return Environment(elements)


def load_environment(path: Union[str, Path]) -> Environment:
    """
    This function loads an environment from a YAML file. The file holds a list of elements, each with a name and
    either a box (min and max corner) or normals and offsets of the half-spaces n x <= d.

    Parameters
    ----------
    path : str or Path
        Location of the environment file

    Returns
    -------
    Environment
    """
    with open(path, 'r') as file:
        environment = environment_from_dict(yaml.safe_load(file))
    shield_logger.info(f'Environment with {len(environment)} elements loaded from {Path(path).name}.')
    return environment
