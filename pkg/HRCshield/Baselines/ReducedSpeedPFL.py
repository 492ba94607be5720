from HRCshield.Baselines._Governor import _SpeedGovernor, MethodId
from HRCshield.VariableClasses import HumanSnapshot, TrajectoryStep


class ReducedSpeedPFL(_SpeedGovernor):
    """
    Power and force limiting by a permanently reduced speed: no capsule point moves faster than v_limit.
    """

    method = MethodId.REDUCED_SPEED_PFL

    def __init__(self, *args, v_limit: float = 0.25, **kwargs):
        """

        Parameters
        ----------
        v_limit : float
            Cartesian speed limit of all links [m/s]
        """
        super().__init__(*args, **kwargs)
        if not v_limit > 0:
            raise ValueError(f'The speed limit should be positive, not {v_limit}.')
        self.v_limit = float(v_limit)

    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        return self.cartesian_cap(state, self.v_limit)
