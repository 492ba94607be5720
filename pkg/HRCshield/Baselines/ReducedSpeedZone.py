from HRCshield.Baselines._Governor import MethodId, min_part_distance
from HRCshield.Baselines.ReducedSpeedPFL import ReducedSpeedPFL
from HRCshield.VariableClasses import HumanSnapshot, TrajectoryStep


class ReducedSpeedZone(ReducedSpeedPFL):
    """
    Nominal speed while all body parts are outside of the zone around the base, reduced speed otherwise.
    """

    method = MethodId.REDUCED_SPEED_ZONE

    def __init__(self, *args, zone_radius: float = 0.73, **kwargs):
        super().__init__(*args, **kwargs)
        if not zone_radius > 0:
            raise ValueError(f'The zone radius should be positive, not {zone_radius}.')
        self.zone_radius = float(zone_radius)

    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        if min_part_distance(snapshot.parts, self.model.base_position) > self.zone_radius:
            return self.limits.v_max
        return self.cartesian_cap(state, self.v_limit)
