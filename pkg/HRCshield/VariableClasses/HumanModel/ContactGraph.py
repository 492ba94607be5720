"""
This document contains the contact graph between body parts and the combined body parts built from it.
Body parts whose occupancies intersect can clamp each other, so a robot link pushing one of them can also load the
others. Every connected component is therefore treated as a single, combined body part.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Set, Tuple

import numpy as np

from HRCshield.VariableClasses.Geometry import Capsule, EPS_GEOM, capsule_distances
from HRCshield.VariableClasses.HumanModel.BodyPart import BodyPart, BodyKind, HumanConfig


class CombinedBodyPart:
    """
    Union of body parts connected in the contact graph.
    """

    __slots__ = 'members', 'occupancy'

    def __init__(self, members: Sequence[BodyPart], occupancy: Sequence[Capsule]):
        """

        Parameters
        ----------
        members : sequence of BodyPart
            Connected body parts
        occupancy : sequence of Capsule
            Occupancies of the members, in the same order
        """
        self.members: Tuple[BodyPart, ...] = tuple(members)
        self.occupancy: Tuple[Capsule, ...] = tuple(occupancy)

    @property
    def diameter(self) -> float:
        """Sum of the member diameters [m]."""
        return float(sum(member.diameter for member in self.members))

    @property
    def kinds(self) -> Tuple[BodyKind, ...]:
        return tuple(member.kind for member in self.members)

    @property
    def part_id(self) -> str:
        return '+'.join(f'{member.human_id}/{member.part_id}' for member in self.members)

    def threshold(self, table, geometry, contact) -> float:
        """
        This function returns the most restrictive threshold of all members.

        Parameters
        ----------
        table : ContactEnergyTable
        geometry : GeometryClass
            Contact geometry of the link
        contact : ContactType

        Returns
        -------
        float
            Threshold [J]
        """
        return min(table.energy_threshold(kind, geometry, contact) for kind in self.kinds)

    def __repr__(self) -> str:
        return f'CombinedBodyPart({self.part_id}, diameter={self.diameter:.3f})'


def build_contact_graph(parts: Sequence[BodyPart], occupancies: Sequence[Capsule],
                        config: HumanConfig) -> Dict[int, Set[int]]:
    """
    This function builds the undirected contact graph between body parts.
    Two parts are connected when their occupancies intersect and they are not a safe pair of the same human.

    Parameters
    ----------
    parts : sequence of BodyPart
        Body parts of all humans
    occupancies : sequence of Capsule
        Occupancy of every body part for a common interval
    config : HumanConfig
        Contains the safe pairs

    Returns
    -------
    dict
        Adjacency sets, keyed by the index of the part
    """
    graph: Dict[int, Set[int]] = {index: set() for index in range(len(parts))}
    if len(parts) < 2:
        return graph
    p1 = np.array([capsule.p1 for capsule in occupancies])
    p2 = np.array([capsule.p2 for capsule in occupancies])
    radii = np.array([capsule.radius for capsule in occupancies])
    distance = capsule_distances(p1[:, None], p2[:, None], radii[:, None], p1[None, :], p2[None, :], radii[None, :])
    safe = config.safe_pair_keys(parts)
    for i, j in zip(*np.nonzero(np.triu(distance <= EPS_GEOM, k=1))):
        if frozenset((parts[i].key, parts[j].key)) not in safe:
            graph[int(i)].add(int(j))
            graph[int(j)].add(int(i))
    return graph


def connected_components(graph: Dict[int, Set[int]]) -> List[List[int]]:
    """
    This function finds the connected components with an iterative depth-first search.
    The components and their members are sorted, so the result is deterministic.

    Parameters
    ----------
    graph : dict
        Adjacency sets

    Returns
    -------
    list of list of int
    """
    visited: Set[int] = set()
    components = []
    for start in sorted(graph):
        if start in visited:
            continue
        stack, component = [start], []
        visited.add(start)
        while stack:
            node = stack.pop()
            component.append(node)
            for neighbour in graph[node]:
                if neighbour not in visited:
                    visited.add(neighbour)
                    stack.append(neighbour)
        components.append(sorted(component))
    return components


def combined_body_parts(graph: Dict[int, Set[int]], parts: Sequence[BodyPart],
                        occupancies: Sequence[Capsule]) -> List[CombinedBodyPart]:
    """
    This function creates one combined body part per connected component with more than one member.

    Parameters
    ----------
    graph : dict
        Contact graph from build_contact_graph
    parts : sequence of BodyPart
        Body parts in the order of the graph indices
    occupancies : sequence of Capsule
        Occupancies in the order of the graph indices

    Returns
    -------
    list of CombinedBodyPart
    """
    return [CombinedBodyPart([parts[i] for i in component], [occupancies[i] for i in component])
            for component in connected_components(graph) if len(component) > 1]
