"""
This document contains the open-loop replay of a scenario with one safety method.
"""
from typing import Union

import numpy as np
import pandas as pd

from HRCshield.Baselines import MethodId, make_governor
from HRCshield.Simulation.Audit import audit_run
from HRCshield.Simulation.Scenario import Scenario
from HRCshield.VariableClasses import PathController, PathLimits, RunResult, TraceReplay
from HRCshield.logger import shield_logger


def nominal_progress(path, limits: PathLimits, dt: float, steps: int) -> float:
    """
    This function returns the path progress of an unshielded run after a number of steps.
    """
    controller = PathController(path, limits, dt)
    state = controller.start()
    for _ in range(steps):
        state = controller.step(state, limits.v_max)[1]
    return float(state.s)


def run_scenario(scenario: Scenario, method: Union[MethodId, str] = None, seed: int = None, dt: float = None,
                 horizon: float = None, audit: bool = True) -> RunResult:
    """
    This function replays a scenario with a safety method.
    Every step, the governor receives the latest human measurements and selects the next robot state.

    Parameters
    ----------
    scenario : Scenario
        Scenario to run
    method : MethodId or str
        Safety method (the method of the scenario if None)
    seed : int
        Seed of the synthetic humans (the scenario seed if None)
    dt : float
        Time step [s] (that of the scenario if None)
    horizon : float
        Simulated time [s] (that of the scenario if None)
    audit : bool
        True to audit the executed motion against the true human poses

    Returns
    -------
    RunResult
    """
    method = scenario.method if method is None else MethodId(method)
    seed = scenario.seed if seed is None else int(seed)
    dt = scenario.dt if dt is None else float(dt)
    horizon = scenario.horizon if horizon is None else float(horizon)
    model = scenario.robot

    replay = TraceReplay(scenario.human_trace(seed), scenario.human_config)
    limits = PathLimits.from_path(scenario.path, model)
    governor = make_governor(method, model, scenario.path, limits, dt, scenario.environment, scenario.table,
                             scenario.human_config)
    state = governor.controller.start()
    governor.reset(state)

    steps = int(round(horizon / dt))
    rows, verify_times = [], []
    for step in range(steps + 1):
        engaged, verify_time = False, np.nan
        if step < steps:
            following = governor.next_state(state, replay.snapshot(state.t))
            engaged = governor.engaged
            if governor.last_verify_time_us is not None:
                verify_time = governor.last_verify_time_us
                verify_times.append(verify_time)
        rows.append((step, state.t, state.s, state.sdot, state.sddot, engaged, verify_time,
                     *state.q, *state.qdot, *model.effective_energies(state.q, state.qdot)))
        if step < steps:
            state = following

    n = model.n
    columns = ['step', 'time_s', 's', 'sdot', 'sddot', 'engaged', 'verify_time_us'] \
        + [f'q{i + 1}' for i in range(n)] + [f'qdot{i + 1}' for i in range(n)] + [f'energy{i + 1}_J' for i in range(n)]
    log = pd.DataFrame(rows, columns=columns)

    nominal = nominal_progress(scenario.path, limits, dt, steps)
    efficiency = 100. if method == MethodId.NO_SHIELD or nominal <= 0 else float(100. * state.s / nominal)
    result = RunResult(scenario.name, method.value, seed, dt, state.s, log, np.array(verify_times), efficiency)
    if audit:
        result.audit = audit_run(result, scenario, replay)
    shield_logger.main_info(f'{scenario.name} with {method.value} (seed {seed}): efficiency {efficiency:.1f} %'
                            + ('' if result.audit is None else f', {result.audit}') + '.')
    return result
