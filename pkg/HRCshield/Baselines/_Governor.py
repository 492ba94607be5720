"""
This document contains the method identifiers and the abstract governor class from which all safety methods inherit.
A governor selects the next state of the robot along its path, given the latest human measurements.
"""
import abc
from abc import ABC
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from HRCshield.VariableClasses import ContactEnergyTable, Environment, HumanConfig, HumanSnapshot, BodyPart, \
    PathController, PathLimits, RobotModel, TrajectoryStep, point_segment_distance


class MethodId(str, Enum):
    NO_SHIELD = 'no_shield'
    SSM_ZONE = 'ssm_zone'
    REDUCED_SPEED_PFL = 'reduced_speed_pfl'
    DYNAMIC_SSM = 'dynamic_ssm'
    REDUCED_SPEED_ZONE = 'reduced_speed_zone'
    REFLECTED_MASS = 'reflected_mass'
    ENERGY_SHIELD_NO_CFREE = 'energy_shield_no_cfree'
    ENERGY_SHIELD = 'energy_shield'


# methods whose audits should never contain a violation
PROVABLY_SAFE_METHODS = frozenset((MethodId.ENERGY_SHIELD, MethodId.ENERGY_SHIELD_NO_CFREE, MethodId.DYNAMIC_SSM,
                                   MethodId.SSM_ZONE))


def min_part_distance(parts: Sequence[BodyPart], point) -> float:
    """
    This function returns the distance between a point and the closest body part surface.

    Parameters
    ----------
    parts : sequence of BodyPart
        Body parts
    point : array_like
        Point [m]

    Returns
    -------
    float
        Distance [m], inf without body parts
    """
    if not len(parts):
        return np.inf
    p1 = np.array([part.capsule.p1 for part in parts])
    p2 = np.array([part.capsule.p2 for part in parts])
    radii = np.array([part.capsule.radius for part in parts])
    distances = point_segment_distance(np.asarray(point, dtype=float), p1, p2) - radii
    return float(max(np.min(distances), 0.))


def scale_step(step: TrajectoryStep, model: RobotModel, v_limit: float = 0.25) -> TrajectoryStep:
    """
    This function slows a step down in time, so no capsule point of the robot moves faster than v_limit.
    With a time scale k, the joint velocity, acceleration and jerk scale with k, k² and k³.

    Parameters
    ----------
    step : TrajectoryStep
        Step to scale
    model : RobotModel
        Robot model
    v_limit : float
        Cartesian speed limit [m/s]

    Returns
    -------
    TrajectoryStep
        Scaled step (the step itself when it is already slow enough)
    """
    if not v_limit > 0:
        raise ValueError(f'The speed limit should be positive, not {v_limit}.')
    speed = float(np.max(model.max_cartesian_speed(step.q, step.qdot)))
    if speed <= v_limit:
        return step
    k = v_limit / speed
    progress = [None if value is None else value * k ** power
                for value, power in ((step.sdot, 1), (step.sddot, 2))]
    return TrajectoryStep(step.t, step.q, step.qdot * k, step.qddot * k ** 2, step.qdddot * k ** 3, step.s, *progress)


class _Governor(ABC):
    """
    Contains the path controller of a safety method.
    """

    method: MethodId = None

    def __init__(self, model: RobotModel, path, limits: PathLimits, dt: float, environment: Environment = None,
                 table: ContactEnergyTable = None, human_config: HumanConfig = None):
        """

        Parameters
        ----------
        model : RobotModel
            Robot model
        path : JointPath
            Path the robot follows
        limits : PathLimits
            Progress limits of the path
        dt : float
            Time step [s]
        environment : Environment
            Static elements around the robot
        table : ContactEnergyTable
            Admissible contact energies
        human_config : HumanConfig
            Motion model of the humans
        """
        self.model = model
        self.path = path
        self.limits = limits
        self.dt = float(dt)
        self.environment: Environment = Environment() if environment is None else environment
        self.table: ContactEnergyTable = ContactEnergyTable() if table is None else table
        self.human_config: HumanConfig = HumanConfig() if human_config is None else human_config
        self.controller = PathController(path, limits, dt)
        # True when the last step was slowed down, stopped or replaced by a failsafe
        self.engaged: bool = False
        self.last_verify_time_us: Optional[float] = None

    def reset(self, state: TrajectoryStep) -> None:
        """
        This function (re)starts the governor in a state.
        """
        self.engaged = False
        self.last_verify_time_us = None

    @abc.abstractmethod
    def next_state(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> TrajectoryStep:
        """
        This function returns the state of the robot one time step later.

        Parameters
        ----------
        state : TrajectoryStep
            Current state on the path
        snapshot : HumanSnapshot
            Latest human measurements

        Returns
        -------
        TrajectoryStep
        """

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self.method.value})'


class _SpeedGovernor(_Governor, ABC):
    """
    Governor which only limits the progress speed along the path.
    """

    @abc.abstractmethod
    def speed_cap(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> float:
        """
        This function returns the progress speed cap for the next step.

        Parameters
        ----------
        state : TrajectoryStep
            Current state on the path
        snapshot : HumanSnapshot
            Latest human measurements

        Returns
        -------
        float
            Cap on the progress speed [-]
        """

    def next_state(self, state: TrajectoryStep, snapshot: HumanSnapshot) -> TrajectoryStep:
        cap = self.speed_cap(state, snapshot)
        self.engaged = cap < self.limits.v_max
        return self.controller.step(state, cap)[1]

    def cartesian_cap(self, state: TrajectoryStep, v_limit: float) -> float:
        """
        This function converts a Cartesian speed limit of all links into a progress speed cap.
        The nominal motion is time-rescaled with scale_step at the path samples covered while braking from the current
        speed, and the slowest rescaled progress speed is the cap.
        """
        v_max = self.limits.v_max
        lookahead = state.sdot ** 2 / (2 * self.limits.a_max) + state.sdot * self.dt
        cap = v_max
        for s in np.linspace(state.s, state.s + lookahead, 5 if lookahead > 0 else 1):
            nominal = TrajectoryStep(state.t, *self.path.joint_state(s, v_max, 0.), s, v_max, 0.)
            cap = min(cap, scale_step(nominal, self.model, v_limit).sdot)
        return float(cap)
