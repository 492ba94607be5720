from typing import Sequence

from HRCshield.Baselines._Governor import _SpeedGovernor, MethodId, min_part_distance
from HRCshield.VariableClasses import BodyPart, HumanSnapshot, TrajectoryStep


class SSMZone(_SpeedGovernor):
    """
    Static speed and separation monitoring: the robot stops while a body part is inside a protective zone around
    its base and moves at its nominal speed otherwise.
    """

    method = MethodId.SSM_ZONE

    def __init__(self, *args, zone_radius: float = 1.17, **kwargs):
        """

        Parameters
        ----------
        zone_radius : float
            Radius of the protective zone around the robot base [m]
        """
        super().__init__(*args, **kwargs)
        if not zone_radius > 0:
            raise ValueError(f'The zone radius should be positive, not {zone_radius}.')
        self.zone_radius = float(zone_radius)

    def stop(self, parts: Sequence[BodyPart], base) -> bool:
        """
        This function returns True if a body part is within the zone radius of the base (boundary included).

        Parameters
        ----------
        parts : sequence of BodyPart
            Measured body parts
        base : array_like
            Position of the robot base [m]

        Returns
        -------
        bool
        """
        return min_part_distance(parts, base) <= self.zone_radius

    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        return 0. if self.stop(snapshot.parts, self.model.base_position) else self.limits.v_max
