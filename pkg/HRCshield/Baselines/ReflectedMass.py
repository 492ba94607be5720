"""
This document contains the reflected mass baseline: the admissible link speed follows from the clamp threshold of
the closest body part and the mass the robot reflects towards it.
"""
from typing import Sequence

import numpy as np

from HRCshield.Baselines._Governor import _SpeedGovernor, MethodId
from HRCshield.VariableClasses import BodyPart, ContactEnergyTable, ContactType, HumanSnapshot, RobotModel, \
    SingularConfigurationError, TrajectoryStep, segment_closest_points
from HRCshield.logger import shield_logger


def max_speed(model: RobotModel, q, candidates: Sequence[BodyPart], table: ContactEnergyTable) -> float:
    """
    This function calculates the largest admissible Cartesian speed of the robot, v = sqrt(2 T_clamp / m_refl).
    For every link, the reflected mass is evaluated at the point of the link closest to the nearest body part,
    along the normal towards that part. Links which cannot move along that normal are not limited.

    Parameters
    ----------
    model : RobotModel
        Robot model
    q : array_like
        (N,) joint angles [rad]
    candidates : sequence of BodyPart
        Body parts which can be hit
    table : ContactEnergyTable
        Admissible contact energies

    Returns
    -------
    float
        Speed limit [m/s], inf without candidates
    """
    if not len(candidates):
        return np.inf
    p1, p2, radii = model.capsule_points(q)
    h_p1 = np.array([part.capsule.p1 for part in candidates])
    h_p2 = np.array([part.capsule.p2 for part in candidates])
    h_radii = np.array([part.capsule.radius for part in candidates])
    limit = np.inf
    for link in range(model.n):
        on_link, on_part = segment_closest_points(p1[link][None], p2[link][None], h_p1, h_p2)
        gaps = np.linalg.norm(on_part - on_link, axis=-1) - radii[link] - h_radii
        nearest = int(np.argmin(gaps))
        normal = on_part[nearest] - on_link[nearest]
        if np.linalg.norm(normal) < 1e-9:
            normal = candidates[nearest].capsule.p1 - on_link[nearest]
            if np.linalg.norm(normal) < 1e-9:
                continue
        normal = normal / np.linalg.norm(normal)
        try:
            mass = model.reflected_mass(q, link, on_link[nearest] + radii[link] * normal, normal)
        except SingularConfigurationError:
            shield_logger.debug(f'Link {link} cannot move towards {candidates[nearest]}.')
            continue
        threshold = table.energy_threshold(candidates[nearest].kind, model.link_geometry(link), ContactType.CLAMP)
        limit = min(limit, float(np.sqrt(2 * threshold / mass)))
    return limit


class ReflectedMass(_SpeedGovernor):
    """
    Limits the Cartesian speed of all links to the admissible reflected-mass speed of the closest body part.
    """

    method = MethodId.REFLECTED_MASS

    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        limit = max_speed(self.model, state.q, snapshot.parts, self.table)
        if not np.isfinite(limit):
            return self.limits.v_max
        if limit <= 0:
            return 0.
        return self.cartesian_cap(state, limit)
