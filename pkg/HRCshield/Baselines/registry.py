from typing import Dict, Type, Union

from HRCshield.Baselines._Governor import _Governor, MethodId
from HRCshield.Baselines.NoShield import NoShield
from HRCshield.Baselines.ReducedSpeedPFL import ReducedSpeedPFL
from HRCshield.Baselines.ReducedSpeedZone import ReducedSpeedZone
from HRCshield.Baselines.ReflectedMass import ReflectedMass
from HRCshield.Baselines.SSMZone import SSMZone
from HRCshield.Baselines.ShieldGovernors import DynamicSSM, EnergyShield, EnergyShieldNoCfree

GOVERNORS: Dict[MethodId, Type[_Governor]] = {governor.method: governor for governor in
                                              (NoShield, SSMZone, ReducedSpeedPFL, DynamicSSM, ReducedSpeedZone,
                                               ReflectedMass, EnergyShieldNoCfree, EnergyShield)}


def make_governor(method: Union[MethodId, str], *args, **kwargs) -> _Governor:
    """
    This function creates the governor of a method.

    Parameters
    ----------
    method : MethodId or str
        Identifier of the method
    args, kwargs
        Arguments of the governor (see _Governor)

    Returns
    -------
    _Governor

    Raises
    ------
    ValueError
        When the method does not exist
    """
    try:
        method = MethodId(method)
    except ValueError:
        raise ValueError(f'The method {method} does not exist! Choose from {[m.value for m in MethodId]}.')
    return GOVERNORS[method](*args, **kwargs)
