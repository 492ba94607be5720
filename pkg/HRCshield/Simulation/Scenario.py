"""
This document contains the Scenario class and the loader of the YAML scenario files.
"""
from __future__ import annotations

from pathlib import Path
from typing import Union

import pandas as pd
import yaml

from HRCshield.Baselines import MethodId
from HRCshield.Simulation.SyntheticHumans import MOTIONS, PART_IDS, synthetic_trace
from HRCshield.VariableClasses import BaseClass, ContactEnergyTable, Environment, HumanConfig, RobotModel, \
    JointPath, load_environment, load_human_trace, load_robot_model, load_waypoints
from HRCshield.logger import shield_logger


class Scenario(BaseClass):
    """
    Everything a simulated run needs: the robot, its surroundings, its path, the humans and the run settings.
    """

    __slots__ = 'name', 'robot', 'environment', 'path', 'humans', 'method', 'dt', 'horizon', 'seed', \
        'human_config', 'table', 'sample_time', 'fuzz', 'source'

    def __init__(self, name: str, robot: RobotModel, environment: Environment, path: JointPath, humans: dict,
                 method: MethodId = MethodId.ENERGY_SHIELD, dt: float = 0.006, horizon: float = 20.,
                 seed: int = 0, human_config: HumanConfig = None, table: ContactEnergyTable = None,
                 sample_time: float = 0.03, fuzz: float = 0., source: Path = None):
        """

        Parameters
        ----------
        name : str
            Name of the scenario
        robot : RobotModel
            Robot model
        environment : Environment
            Static elements around the robot
        path : JointPath
            Path the robot follows
        humans : dict
            Either {'trace': path to a human trace} or {'motion': name of a synthetic motion}, the latter with
            an optional 'parts' list of the tracked part ids
        method : MethodId
            Default method of the scenario
        dt : float
            Time step [s]
        horizon : float
            Simulated time [s]
        seed : int
            Seed of the synthetic humans
        human_config : HumanConfig
            Human motion model
        table : ContactEnergyTable
            Admissible contact energies
        sample_time : float
            Sample time of the synthetic humans [s]
        fuzz : float
            Standard deviation of the random perturbation of the synthetic humans [m]
        source : Path
            File the scenario was loaded from

        Raises
        ------
        ValueError
            When the human description or a run setting is invalid
        """
        if ('trace' in humans) == ('motion' in humans):
            raise ValueError(f'The humans of scenario {name} should have either a trace or a motion.')
        if 'motion' in humans and humans['motion'] not in MOTIONS:
            raise ValueError(f'The motion {humans["motion"]} does not exist! Choose from {sorted(MOTIONS)}.')
        if 'parts' in humans and ('motion' not in humans or not humans['parts']
                                  or not set(humans['parts']) <= set(PART_IDS)):
            raise ValueError(f'The tracked parts of scenario {name} should be a non-empty subset of {PART_IDS} '
                             f'for a synthetic motion.')
        if not dt > 0 or not horizon > 0 or not sample_time > 0:
            raise ValueError(f'The time step ({dt}), horizon ({horizon}) and sample time ({sample_time}) should be '
                             f'positive.')
        self.name = name
        self.robot = robot
        self.environment = environment
        self.path = path
        self.humans = dict(humans)
        self.method = MethodId(method)
        self.dt = float(dt)
        self.horizon = float(horizon)
        self.seed = int(seed)
        self.human_config: HumanConfig = HumanConfig() if human_config is None else human_config
        self.table: ContactEnergyTable = ContactEnergyTable() if table is None else table
        self.sample_time = float(sample_time)
        self.fuzz = float(fuzz)
        self.source = source

    def human_trace(self, seed: int = None) -> pd.DataFrame:
        """
        This function returns the human trace of the scenario: the recorded one or a synthetic one for a seed.

        Parameters
        ----------
        seed : int
            Seed of the synthetic humans (the scenario seed if None)

        Returns
        -------
        pd.DataFrame
        """
        if 'trace' in self.humans:
            return load_human_trace(self.humans['trace'])
        return synthetic_trace(self.humans['motion'], self.horizon + self.human_config.meas_delay + self.dt,
                               self.sample_time, self.seed if seed is None else seed, self.fuzz,
                               self.human_config.max_speed, self.humans.get('parts'))

    def __repr__(self) -> str:
        return f'Scenario({self.name}, {self.method.value}, horizon={self.horizon} s)'


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    This function loads a scenario from a YAML file.

    The file contains the keys name, robot, environment and trajectory (paths relative to the scenario file),
    humans (trace: path, or motion: name with an optional parts list of tracked part ids), method, dt, horizon,
    seed, sample_time, fuzz, human_config (max_speed, meas_error, meas_delay, diameters) and energy_table (path to a
    CSV with overrides).

    Parameters
    ----------
    path : str or Path
        Location of the scenario file

    Returns
    -------
    Scenario
    """
    path = Path(path)
    with open(path, 'r') as file:
        data = yaml.safe_load(file)
    folder = path.parent

    def resolve(value) -> Path:
        return folder.joinpath(value)

    humans = dict(data['humans'])
    if 'trace' in humans:
        humans['trace'] = resolve(humans['trace'])
    table = ContactEnergyTable.from_csv(resolve(data['energy_table'])) if data.get('energy_table') \
        else ContactEnergyTable()
    environment = load_environment(resolve(data['environment'])) if data.get('environment') else Environment()
    scenario = Scenario(data.get('name', path.stem), load_robot_model(resolve(data['robot'])), environment,
                        load_waypoints(resolve(data['trajectory'])), humans,
                        data.get('method', MethodId.ENERGY_SHIELD), data.get('dt', 0.006), data.get('horizon', 20.),
                        data.get('seed', 0), HumanConfig(**data.get('human_config', {})), table,
                        data.get('sample_time', 0.03), data.get('fuzz', 0.), path)
    shield_logger.info(f'{scenario} loaded from {path}.')
    return scenario
