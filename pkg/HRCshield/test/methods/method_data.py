"""
This document contains all the method data used in the test_methods document.
"""
from HRCshield.test.methods.TestMethodClass import *
from HRCshield import FOLDER, MethodId, PROVABLY_SAFE_METHODS

list_of_test_objects = TestMethodClass()

scenarios = FOLDER.joinpath('data/scenarios')
horizon = 1.5

# the provably safe methods never touch a human above its threshold
for file in sorted(scenarios.glob('*.yaml')):
    for method in sorted(PROVABLY_SAFE_METHODS, key=lambda method: method.value):
        list_of_test_objects.add(RunObject(file, method, horizon))

# a distant human does not slow any method down
for method in (MethodId.NO_SHIELD, MethodId.SSM_ZONE, MethodId.DYNAMIC_SSM, MethodId.ENERGY_SHIELD_NO_CFREE,
               MethodId.ENERGY_SHIELD):
    list_of_test_objects.add(RunObject(scenarios.joinpath('far_observer.yaml'), method, horizon, efficiency=100.,
                                       name=f'Far observer, full speed ({method.value})'))

# the unshielded robot keeps its nominal speed next to a human
list_of_test_objects.add(RunObject(scenarios.joinpath('table_work.yaml'), MethodId.NO_SHIELD, horizon,
                                   violations=None, efficiency=100., seed=4, name='Table work, no shield'))
