from HRCshield.Baselines._Governor import _SpeedGovernor, MethodId
from HRCshield.VariableClasses import HumanSnapshot, TrajectoryStep


class NoShield(_SpeedGovernor):
    """
    Follows the path at its nominal speed and ignores the humans.
    """

    method = MethodId.NO_SHIELD

    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        return self.limits.v_max
