"""
This file contains all the code for the safety shield: the classification of possible contacts, the verification of
monitored trajectories against the admissible contact energies and the shield state machine.
"""
from __future__ import annotations

import logging
import time
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from HRCshield.VariableClasses import ShieldSetup, ContactMode, Environment, ContactEnergyTable, ContactType, \
    Verdict, ViolationRecord, ConstraintTag, ContactClass
from HRCshield.VariableClasses.BaseClass import BaseClass, ContinuityError, GridMismatchError
from HRCshield.VariableClasses.Geometry import Capsule, Polytope, EPS_GEOM, capsule_distances, \
    capsule_capsule_distance, capsule_intersects_capsule, capsule_intersects_polytope, capsule_polytope_distance, \
    active_halfspaces
from HRCshield.VariableClasses.HumanModel import BodyPart, HumanConfig, HumanSnapshot, build_contact_graph, \
    combined_body_parts
from HRCshield.VariableClasses.RobotModel import RobotModel
from HRCshield.VariableClasses.Trajectory import TrajectoryStep, MonitoredTrajectory, LinkReach, RobotReach, \
    PathLimits, build_monitored, plan_failsafe, robot_reach, min_normal_speed, CONTINUITY_TOL
from HRCshield.logger.shield_logger import shield_logger

Occupancy = Union[Capsule, Sequence[Capsule]]
VelocityCheck = Callable[[LinkReach, np.ndarray], np.ndarray]


def _as_capsules(occupancy: Occupancy) -> Tuple[Capsule, ...]:
    return (occupancy,) if isinstance(occupancy, Capsule) else tuple(occupancy)


class Shield(BaseClass):
    """Main shield class"""

    def __init__(self, model: RobotModel, environment: Environment = None, table: ContactEnergyTable = None,
                 human_config: HumanConfig = None, path=None, limits: PathLimits = None,
                 shield_setup: ShieldSetup = None):
        """

        Parameters
        ----------
        model : RobotModel
            Robot which is shielded
        environment : Environment
            Static elements a human can be clamped against
        table : ContactEnergyTable
            Admissible contact energies (the default table if None)
        human_config : HumanConfig
            Motion model of the humans
        path : JointPath
            Path of the intended motion, the failsafe brakes along it (the current velocity direction if None)
        limits : PathLimits
            Progress limits along the path (derived from the path if None)
        shield_setup : ShieldSetup
            Run-time settings

        Examples
        --------

        load a robot and its surroundings

        >>> robot = load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))
        >>> environment = load_environment(FOLDER.joinpath('data/environments/desk.yaml'))

        create the shield and start it in a stopped state

        >>> shield = Shield(robot, environment)
        >>> shield.reset(TrajectoryStep(0, np.zeros(6), np.zeros(6), np.zeros(6)))

        """
        self.model = model
        self.environment: Environment = Environment() if environment is None else environment
        self.table: ContactEnergyTable = ContactEnergyTable() if table is None else table
        self.human_config: HumanConfig = HumanConfig() if human_config is None else human_config
        self.path = path
        self.limits = limits if limits is not None or path is None else PathLimits.from_path(path, model)

        self._shield_setup: ShieldSetup = ShieldSetup()
        self.shield_setup(shield_setup)

        # state machine
        self._verified: Optional[MonitoredTrajectory] = None
        self._offset: float = 0.
        self._position: int = 0
        self.last_verdict: Optional[Verdict] = None
        self.last_verify_time_us: float = 0.

        shield_logger.main_info("Shield object has been created.")

    @staticmethod
    def activate_logger() -> None:
        """
        This function activates the logging.

        Returns
        -------
        None
        """
        shield_logger.setLevel("MAIN_INFO")

    @staticmethod
    def deactivate_logger() -> None:
        """
        This function deactivates the logging.

        Returns
        -------
        None
        """
        shield_logger.setLevel(logging.INFO)

    def shield_setup(self, shield_setup: ShieldSetup = None, **kwargs) -> None:
        """
        This function sets the options of the verification.

        Parameters
        ----------
        shield_setup : ShieldSetup
            An instance of the ShieldSetup class. When this argument differs from None, all the other parameters are
            set based on this shield_setup
        kwargs
            Dictionary with all the other options, see the ShieldSetup class.

        Returns
        -------
        None
        """
        if shield_setup is not None:
            self._shield_setup = shield_setup
            return
        self._shield_setup.update_variables(**kwargs)

    @property
    def setup(self) -> ShieldSetup:
        return self._shield_setup

    def _default_velocity_check(self, reach: LinkReach, normals: np.ndarray) -> np.ndarray:
        return np.atleast_1d(min_normal_speed(reach, normals, self.model))

    def classify_ecc(self, reach: LinkReach, occupancy: Occupancy, diameter: float, element: Polytope,
                     v_check: VelocityCheck = None) -> bool:
        """
        This function checks whether a clamp of a body part between a link and an environment element is excluded.

        A clamp is excluded when the body part cannot reach the element, when the gap between the link and the
        element is larger than the body part or when the link is outside of the element and moves away from all
        faces it is outside of.

        Parameters
        ----------
        reach : LinkReach
            Reach set of the link
        occupancy : Capsule or sequence of Capsule
            Occupancy of the (combined) body part
        diameter : float
            Diameter of the body part [m]
        element : Polytope
            Environment element
        v_check : callable
            Lower bound on the normal velocities of the link for an array of normals

        Returns
        -------
        bool
            True if the clamp is excluded
        """
        if not any(capsule_intersects_polytope(capsule, element) for capsule in _as_capsules(occupancy)):
            return True
        if self._shield_setup.use_diameter_relaxation \
                and capsule_polytope_distance(reach.occupancy, element) > diameter:
            return True
        if self._shield_setup.use_velocity_relaxation and not capsule_intersects_polytope(reach.occupancy, element):
            active = sorted(active_halfspaces(reach.occupancy, element))
            if active:
                v_check = self._default_velocity_check if v_check is None else v_check
                return bool(np.all(v_check(reach, element.normals[active]) >= 0))
        return False

    def classify_scc(self, reach_i: LinkReach, reach_l: LinkReach, occupancy: Occupancy, diameter: float,
                     v_check: VelocityCheck = None) -> bool:
        """
        This function checks whether a clamp of a body part between two links is excluded.

        A clamp is excluded when the links are a topology pair, when the body part does not touch both links, when
        the gap between the links is larger than the body part or when the links are apart and link i moves away
        from the bounding box of link l faster than link l can follow, for every face of the box link i is outside of.

        Parameters
        ----------
        reach_i : LinkReach
            Reach set of the link which is checked
        reach_l : LinkReach
            Reach set of the other link
        occupancy : Capsule or sequence of Capsule
            Occupancy of the (combined) body part
        diameter : float
            Diameter of the body part [m]
        v_check : callable
            Lower bound on the normal velocities of a link for an array of normals

        Returns
        -------
        bool
            True if the clamp is excluded
        """
        if reach_i.link == reach_l.link:
            raise ValueError('A self-constrained contact needs two different links.')
        if self._shield_setup.use_topology_relaxation \
                and frozenset((reach_i.link, reach_l.link)) in self.model.topology_exclusions:
            return True
        capsules = _as_capsules(occupancy)
        if not any(capsule_intersects_capsule(capsule, reach_i.occupancy) for capsule in capsules) \
                or not any(capsule_intersects_capsule(capsule, reach_l.occupancy) for capsule in capsules):
            return True
        if self._shield_setup.use_diameter_relaxation \
                and capsule_capsule_distance(reach_i.occupancy, reach_l.occupancy) > diameter:
            return True
        if self._shield_setup.use_velocity_relaxation \
                and not capsule_intersects_capsule(reach_i.occupancy, reach_l.occupancy):
            active = sorted(active_halfspaces(reach_i.occupancy, reach_l.box))
            if active:
                v_check = self._default_velocity_check if v_check is None else v_check
                normals = reach_l.box.normals[active]
                # link i moves away along n at least as fast as any point of link l can follow
                return bool(np.all(v_check(reach_i, normals) >= -v_check(reach_l, -normals)))
        return False

    def _constraint_class(self, reach: RobotReach, interval: int, link: int, occupancy: Occupancy, diameter: float,
                          touching: np.ndarray) -> ContactClass:
        """
        This function returns ECC if a clamp against the environment is possible, SCC if a clamp between two links
        is possible and unconstrained otherwise.
        """
        reach_i = reach[interval, link]
        for element in self.environment:
            if not self.classify_ecc(reach_i, occupancy, diameter, element):
                return ContactClass.ECC
        for other in range(reach.n_links):
            if other == link or not touching[other]:
                continue
            if not self.classify_scc(reach_i, reach[interval, other], occupancy, diameter):
                return ContactClass.SCC
        return ContactClass.UNCONSTRAINED

    def _check(self, reach: RobotReach, interval: int, link: int, part_id: str, kinds, occupancy: Occupancy,
               diameter: float, touching: np.ndarray, combined: bool) -> Optional[ViolationRecord]:
        """
        This function checks one (interval, link, body part) triple which is in contact.
        Combined body parts are only loaded when they are clamped, so in full mode their free contacts are safe.
        """
        mode = self._shield_setup.contact_mode
        if mode == ContactMode.CONTACT_ONLY:
            return ViolationRecord(interval, link, part_id, ConstraintTag.CONTACT, ContactClass.UNCONSTRAINED)
        energy = float(reach.energies(interval)[link])
        geometry = self.model.link_geometry(link)
        clamp = min(self.table.energy_threshold(kind, geometry, ContactType.CLAMP) for kind in kinds)
        if mode == ContactMode.CLAMP_ONLY or combined:
            if energy < clamp:
                return None
            contact_class = self._constraint_class(reach, interval, link, occupancy, diameter, touching)
            if mode == ContactMode.FULL and contact_class == ContactClass.UNCONSTRAINED:
                return None
            return ViolationRecord(interval, link, part_id, ConstraintTag.CLAMP_ENERGY, contact_class, energy, clamp)

        free = min(self.table.energy_threshold(kind, geometry, ContactType.FREE) for kind in kinds)
        if energy < min(clamp, free):
            return None
        contact_class = self._constraint_class(reach, interval, link, occupancy, diameter, touching)
        if contact_class != ContactClass.UNCONSTRAINED:
            if energy < clamp:
                return None
            return ViolationRecord(interval, link, part_id, ConstraintTag.CLAMP_ENERGY, contact_class, energy, clamp)
        if energy < free:
            return None
        return ViolationRecord(interval, link, part_id, ConstraintTag.FREE_ENERGY, contact_class, energy, free)

    def verify(self, traj: MonitoredTrajectory, humans: Union[HumanSnapshot, Sequence[BodyPart]] = None,
               reach: RobotReach = None) -> Verdict:
        """
        This function verifies a monitored trajectory against the humans.

        For every interval, link and body part (individual and combined) which can be in contact, the effective
        energy of the link, the maximum of both interval end points, has to stay below the free threshold for an
        unconstrained contact and below the clamp threshold when a clamp is possible. Combined body parts are only
        checked for clamps. The trajectory is unsafe as soon as one check fails.

        Parameters
        ----------
        traj : MonitoredTrajectory
            Trajectory to verify, with its clock reset to the time of the human snapshot
        humans : HumanSnapshot or sequence of BodyPart
            Latest human measurements (a sequence is treated as fresh measurements)
        reach : RobotReach
            Precomputed reach sets of the trajectory

        Returns
        -------
        Verdict

        Raises
        ------
        GridMismatchError
            When the reach sets do not cover the intervals of the trajectory
        """
        if reach is None:
            reach = robot_reach(traj, self.model)
        elif reach.n_intervals != traj.n_intervals:
            shield_logger.error('The reach sets do not match the monitored trajectory.')
            raise GridMismatchError(traj.n_intervals, reach.n_intervals)
        if humans is None:
            humans = HumanSnapshot.empty(0., self.human_config)
        elif not isinstance(humans, HumanSnapshot):
            humans = HumanSnapshot(0., humans, np.zeros(len(humans)), self.human_config)
        if not len(humans):
            return Verdict(True)

        enumerate_all = self._shield_setup.enumerate_violations
        check_combined = self._shield_setup.contact_mode != ContactMode.CONTACT_ONLY
        parts = humans.parts
        times = traj.times
        violations: List[ViolationRecord] = []
        for interval in range(traj.n_intervals):
            h_p1, h_p2, h_radii = humans.occupancy_arrays(times[interval], times[interval + 1])
            contact = capsule_distances(reach.p1[interval][:, None], reach.p2[interval][:, None],
                                        reach.radii[interval][:, None], h_p1[None], h_p2[None],
                                        h_radii[None]) <= EPS_GEOM
            if not np.any(contact):
                continue
            occupancies = [Capsule(h_p1[j], h_p2[j], h_radii[j]) for j in range(len(parts))]
            combined = combined_body_parts(build_contact_graph(parts, occupancies, self.human_config), parts,
                                           occupancies) if check_combined else []
            index = {id(part): j for j, part in enumerate(parts)}
            for link in range(reach.n_links):
                for j, part in enumerate(parts):
                    if not contact[link, j]:
                        continue
                    record = self._check(reach, interval, link, f'{part.human_id}/{part.part_id}', (part.kind,),
                                         occupancies[j], part.diameter, contact[:, j], False)
                    if record is not None:
                        violations.append(record)
                        if not enumerate_all:
                            return Verdict(False, violations)
                for group in combined:
                    members = [index[id(member)] for member in group.members]
                    touching = np.any(contact[:, members], axis=1)
                    if not touching[link]:
                        continue
                    record = self._check(reach, interval, link, group.part_id, group.kinds, group.occupancy,
                                         group.diameter, touching, True)
                    if record is not None:
                        violations.append(record)
                        if not enumerate_all:
                            return Verdict(False, violations)
        return Verdict.from_violations(violations)

    def reset(self, state: TrajectoryStep) -> None:
        """
        This function (re)starts the shield in a stopped state.

        Raises
        ------
        ValueError
            When the state is not at standstill
        """
        if not state.is_stopped:
            raise ValueError('The shield can only start from a state at standstill.')
        self._verified = MonitoredTrajectory([state.shifted(state.t)], 0)
        self._offset = state.t
        self._position = 0
        self.last_verdict = None

    @property
    def current_state(self) -> Optional[TrajectoryStep]:
        if self._verified is None:
            return None
        return self._verified.steps[self._position].shifted(-self._offset)

    @property
    def executing_failsafe(self) -> bool:
        """True if the last step did not execute an intended step."""
        return self.last_verdict is not None and not self.last_verdict.safe

    def monitored(self, intended: Sequence[TrajectoryStep]) -> MonitoredTrajectory:
        """
        This function completes intended states with their failsafe.

        Parameters
        ----------
        intended : sequence of TrajectoryStep
            Intended steps followed by their terminal state

        Returns
        -------
        MonitoredTrajectory
        """
        failsafe = plan_failsafe(intended[-1], self.model, self._shield_setup.dt, self.path, self.limits)
        return build_monitored(intended, failsafe, self._shield_setup.dt)

    def step(self, intended: Sequence[TrajectoryStep],
             humans: Union[HumanSnapshot, Sequence[BodyPart]] = None) -> Tuple[TrajectoryStep, Verdict]:
        """
        This function advances the shield by one time step.
        The intended steps, completed with a failsafe, are verified. When they are safe, the first intended step is
        executed and the monitored trajectory is stored. Otherwise the robot follows the failsafe of the last
        verified monitored trajectory.

        Parameters
        ----------
        intended : sequence of TrajectoryStep
            Intended steps followed by their terminal state, starting in the current state
        humans : HumanSnapshot or sequence of BodyPart
            Latest human measurements

        Returns
        -------
        next_state : TrajectoryStep
            State of the robot after the executed step
        verdict : Verdict
            Verdict of the intended steps

        Raises
        ------
        ValueError
            When the shield was not reset
        ContinuityError
            When the intended steps do not start in the current state
        """
        if self._verified is None:
            raise ValueError('The shield has to be reset in a stopped state before it can step.')
        current = self.current_state
        deviation = current.state_deviation(intended[0])
        if deviation > CONTINUITY_TOL:
            shield_logger.error(f'The intended steps start {deviation:.3e} away from the current state.')
            raise ContinuityError(deviation)

        start = time.perf_counter()
        candidate = self.monitored(intended)
        verdict = self.verify(candidate, humans)
        self.last_verify_time_us = (time.perf_counter() - start) * 1e6

        if verdict.safe:
            self._verified, self._offset, self._position = candidate, intended[0].t, 0
        elif not self.executing_failsafe:
            shield_logger.info(f'Failsafe engaged at t = {intended[0].t:.3f} s: {verdict.first_violation}.')
        self.last_verdict = verdict
        self._position = min(self._position + 1, len(self._verified) - 1)
        return self.current_state, verdict
