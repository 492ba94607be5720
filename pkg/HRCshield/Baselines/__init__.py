from ._Governor import MethodId, PROVABLY_SAFE_METHODS, min_part_distance, scale_step
from .NoShield import NoShield
from .SSMZone import SSMZone
from .ReducedSpeedPFL import ReducedSpeedPFL
from .ReducedSpeedZone import ReducedSpeedZone
from .ReflectedMass import ReflectedMass, max_speed
from .ShieldGovernors import DynamicSSM, EnergyShield, EnergyShieldNoCfree
from .registry import GOVERNORS, make_governor
