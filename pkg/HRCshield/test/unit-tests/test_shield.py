import numpy as np
import pytest

from HRCshield import BodyKind, Capsule, ConstraintTag, ContactClass, ContactEnergyTable, ContactMode, ContactType, \
    ContinuityError, Environment, GeometryClass, GridMismatchError, HumanConfig, HumanSnapshot, LinkReach, \
    MonitoredTrajectory, PathController, Polytope, Shield, ShieldSetup, TrajectoryStep, Verdict, build_contact_graph, \
    combined_body_parts, robot_model_from_dict, robot_reach, stopped_trajectory
from HRCshield.logger import shield_logger
from HRCshield.test.models import desk_path, desk_robot, hand, spatial_robot, table_environment

dt = 0.006


def _arm(geometry: str = 'wedge'):
    """
    Single link of 0.5 m rotating about z, its effective energy is 0.063 qdot².
    """
    return robot_model_from_dict({
        'joints': [{'axis': [0., 0., 1.], 'qdot_max': 2., 'qddot_max': 5., 'qdddot_max': 50.}],
        'links': [{'mass': 2., 'inertia': {'ixx': 1e-3, 'iyy': 1e-3, 'izz': 1e-3}, 'com': [0.25, 0., 0.],
                   'capsule': {'p1': [0., 0., 0.], 'p2': [0.5, 0., 0.], 'radius': 0.05}, 'geometry': geometry}]})


def _swing(shield: Shield, qdot: float = 1.5):
    first = TrajectoryStep(0., [0.], [qdot], [0.])
    return shield.monitored([first, TrajectoryStep(dt, *first.interpolate(dt))])


def _wall(lower_y: float = -0.6, upper_y: float = -0.28) -> Environment:
    return Environment([Polytope.from_box([-1., lower_y, -1.], [1., upper_y, 1.], 'wall')])


def _reach(link: int, p1, p2, radius: float = 0.05) -> LinkReach:
    zeros = np.zeros(3)
    return LinkReach(0, link, Capsule(p1, p2, radius), (zeros, zeros, zeros, zeros, zeros), 0.35, dt)


def _always(value: float):
    return lambda reach, normals: np.full(len(normals), value)


def test_logging():
    shield = Shield(_arm())
    assert shield_logger.level == 20
    shield.activate_logger()
    assert shield_logger.level == 15
    shield.deactivate_logger()
    assert shield_logger.level == 20


def test_stopped_robot_is_safe():
    shield = Shield(_arm())
    traj = stopped_trajectory([0.])
    assert shield.verify(traj, [hand([0.3, 0., 0.])]).safe


def test_no_humans():
    shield = Shield(_arm())
    traj = _swing(shield)
    assert shield.verify(traj) == Verdict(True)
    assert shield.verify(traj, []).safe


def test_free_contact_per_mode():
    shield = Shield(_arm('wedge'))
    traj = _swing(shield)
    humans = [hand([0.3, -0.09, 0.])]
    # 0.142 J is below the free threshold (2 J) but above the clamp threshold (0.05 J) of a wedge
    assert shield.verify(traj, humans).safe

    shield.shield_setup(contact_mode=ContactMode.CLAMP_ONLY)
    verdict = shield.verify(traj, humans)
    assert not verdict.safe
    assert len(verdict.violations) == 1
    record = verdict.first_violation
    assert record.constraint == ConstraintTag.CLAMP_ENERGY
    assert record.contact_class == ContactClass.UNCONSTRAINED
    assert record.link == 0
    assert record.part == 'human/right_hand'
    assert np.isclose(record.threshold, 0.05)
    assert record.energy >= record.threshold

    shield.shield_setup(contact_mode=ContactMode.CONTACT_ONLY)
    record = shield.verify(traj, humans).first_violation
    assert record.constraint == ConstraintTag.CONTACT


def test_blunt_link_is_below_clamp_threshold():
    shield = Shield(_arm('blunt'), shield_setup=ShieldSetup(contact_mode=ContactMode.CLAMP_ONLY))
    assert shield.verify(_swing(shield), [hand([0.3, -0.09, 0.])]).safe


def test_hand_far_away():
    shield = Shield(_arm(), shield_setup=ShieldSetup(contact_mode=ContactMode.CONTACT_ONLY))
    assert shield.verify(_swing(shield), [hand([3., 3., 0.])]).safe


def test_environment_clamp():
    humans = [hand([0.3, -0.09, 0.])]
    # the gap between the link and the wall (0.22 m) is larger than a hand
    shield = Shield(_arm(), _wall())
    traj = _swing(shield)
    assert shield.verify(traj, humans).safe

    shield.shield_setup(use_diameter_relaxation=False)
    verdict = shield.verify(traj, humans)
    assert not verdict.safe
    assert verdict.first_violation.constraint == ConstraintTag.CLAMP_ENERGY
    assert verdict.first_violation.contact_class == ContactClass.ECC

    # a narrow gap cannot be excluded
    shield = Shield(_arm(), _wall(upper_y=-0.2))
    verdict = shield.verify(traj, humans)
    assert not verdict.safe
    assert verdict.first_violation.contact_class == ContactClass.ECC


def test_relaxations_only_remove_violations():
    humans = [hand([0.3, -0.09, 0.])]
    settings = [{}, {'use_diameter_relaxation': False}, {'use_velocity_relaxation': False},
                {'use_diameter_relaxation': False, 'use_velocity_relaxation': False, 'use_topology_relaxation': False}]
    for environment in (Environment(), _wall(), _wall(upper_y=-0.2)):
        verdicts = []
        for setting in settings:
            shield = Shield(_arm(), environment, shield_setup=ShieldSetup(enumerate_violations=True, **setting))
            verdicts.append(shield.verify(_swing(shield), humans))
        full = {(record.interval, record.link) for record in verdicts[0].violations}
        for verdict in verdicts[1:]:
            assert full <= {(record.interval, record.link) for record in verdict.violations}
            assert verdicts[0].safe or not verdict.safe


def test_clamp_only_is_more_conservative():
    humans = [hand([0.3, -0.09, 0.]), hand([0.2, 0.1, 0.], human_id='visitor')]
    for geometry in ('blunt', 'wedge', 'edge', 'sheet'):
        full = Shield(_arm(geometry), _wall(), shield_setup=ShieldSetup(enumerate_violations=True))
        clamp = Shield(_arm(geometry), _wall(), shield_setup=ShieldSetup(enumerate_violations=True,
                                                                         contact_mode=ContactMode.CLAMP_ONLY))
        contact = Shield(_arm(geometry), _wall(), shield_setup=ShieldSetup(contact_mode=ContactMode.CONTACT_ONLY))
        traj = _swing(full)
        safe = [shield.verify(traj, humans).safe for shield in (full, clamp, contact)]
        assert safe[0] or not safe[1]
        assert safe[1] or not safe[2]
        assert not safe[2]


def test_enumerate_violations():
    humans = [hand([0.3, -0.09, 0.])]
    shield = Shield(_arm(), shield_setup=ShieldSetup(contact_mode=ContactMode.CONTACT_ONLY))
    traj = _swing(shield)
    assert len(shield.verify(traj, humans).violations) == 1
    shield.shield_setup(enumerate_violations=True)
    verdict = shield.verify(traj, humans)
    assert len(verdict.violations) > 1
    assert [record.interval for record in verdict.violations] == sorted(record.interval
                                                                        for record in verdict.violations)
    frame = verdict.to_frame()
    assert len(frame) == len(verdict.violations)
    assert set(frame['constraint']) == {'contact'}


def test_verify_is_deterministic():
    shield = Shield(_arm(), _wall(upper_y=-0.2), shield_setup=ShieldSetup(enumerate_violations=True))
    traj = _swing(shield)
    humans = [hand([0.3, -0.09, 0.]), hand([0.1, 0.1, 0.], human_id='visitor')]
    assert shield.verify(traj, humans) == shield.verify(traj, humans)
    assert shield.verify(traj, humans) == shield.verify(traj, humans, robot_reach(traj, shield.model))


def test_grid_mismatch():
    shield = Shield(_arm())
    traj = _swing(shield)
    other = _swing(shield, 0.5)
    assert other.n_intervals != traj.n_intervals
    with pytest.raises(GridMismatchError):
        shield.verify(traj, [hand([0.3, 0., 0.])], robot_reach(other, shield.model))


def test_classify_ecc():
    shield = Shield(spatial_robot())
    table = Polytope.from_box([-1., -1., -0.1], [1., 1., 0.], 'table')
    reach = _reach(0, [0., 0., 0.3], [0.5, 0., 0.3])
    part = Capsule([0.2, 0., 0.], [0.25, 0., 0.], 0.05)
    # the part does not touch the table
    assert shield.classify_ecc(reach, Capsule([0.2, 0., 0.2], [0.25, 0., 0.2], 0.05), 0.5, table, _always(-1.))
    # the gap of 0.25 m is wider than the part
    assert shield.classify_ecc(reach, part, 0.205, table, _always(-1.))
    # a wide part is clamped unless the link moves away from the table top
    assert not shield.classify_ecc(reach, part, 0.5, table, _always(-1.))
    assert shield.classify_ecc(reach, part, 0.5, table, _always(1.))
    assert shield.classify_ecc(reach, [part, Capsule([0., 0., 0.2], [0., 0., 0.25], 0.01)], 0.5, table, _always(0.))

    shield.shield_setup(use_velocity_relaxation=False)
    assert not shield.classify_ecc(reach, part, 0.5, table, _always(1.))
    shield.shield_setup(use_diameter_relaxation=False)
    assert not shield.classify_ecc(reach, part, 0.205, table, _always(1.))

    # a link which touches the table cannot move away from it
    shield.shield_setup(use_velocity_relaxation=True, use_diameter_relaxation=True)
    assert not shield.classify_ecc(_reach(0, [0., 0., 0.02], [0.5, 0., 0.02]), part, 0.205, table, _always(1.))


def test_classify_scc():
    shield = Shield(spatial_robot())
    reach_0 = _reach(0, [0., 0., 0.], [0.5, 0., 0.])
    reach_1 = _reach(1, [0., 0.3, 0.], [0.5, 0.3, 0.])
    reach_2 = _reach(2, [0., 0.3, 0.], [0.5, 0.3, 0.])
    part = Capsule([0.2, 0., 0.], [0.2, 0.3, 0.], 0.05)

    with pytest.raises(ValueError):
        shield.classify_scc(reach_0, _reach(0, [0., 0.3, 0.], [0.5, 0.3, 0.]), part, 0.205)

    # links 0 and 1 are a topology pair
    assert shield.classify_scc(reach_0, reach_1, part, 0.205, _always(-1.))
    # the part has to touch both links
    assert shield.classify_scc(reach_0, reach_2, Capsule([0.2, 0., 0.], [0.2, 0.1, 0.], 0.05), 0.205,
                               _always(-1.))
    # the gap of 0.2 m is narrower than a hand, wider than a lower arm
    assert not shield.classify_scc(reach_0, reach_2, part, 0.205, _always(-1.))
    assert shield.classify_scc(reach_0, reach_2, part, 0.121, _always(-1.))
    # link 0 escapes when it moves away faster than link 2 can follow
    assert shield.classify_scc(reach_0, reach_2, part, 0.205, _always(1.))
    assert not shield.classify_scc(reach_0, reach_2, part, 0.205,
                                   lambda reach, normals: np.full(len(normals), -1. if reach.link == 2 else 0.5))
    assert shield.classify_scc(reach_0, reach_2, part, 0.205,
                               lambda reach, normals: np.full(len(normals), -0.5 if reach.link == 2 else 0.5))

    shield.shield_setup(use_topology_relaxation=False)
    assert not shield.classify_scc(reach_0, reach_1, part, 0.205, _always(-1.))


def test_step_without_reset():
    robot = desk_robot()
    path = desk_path()
    shield = Shield(robot, path=path)
    controller = PathController(path, shield.limits, dt)
    with pytest.raises(ValueError):
        shield.step(controller.intended(controller.start(), shield.limits.v_max))
    with pytest.raises(ValueError):
        shield.reset(TrajectoryStep(0., np.zeros(6), np.ones(6), np.zeros(6)))
    assert shield.current_state is None


def test_step_discontinuous():
    path = desk_path()
    shield = Shield(desk_robot(), path=path)
    controller = PathController(path, shield.limits, dt)
    shield.reset(controller.start())
    with pytest.raises(ContinuityError):
        shield.step(controller.intended(controller.start(s=0.5), shield.limits.v_max))


def test_step_executes_intended():
    path = desk_path()
    shield = Shield(desk_robot(), path=path)
    controller = PathController(path, shield.limits, dt)
    state = controller.start()
    shield.reset(state)
    for _ in range(20):
        intended = controller.intended(state, shield.limits.v_max)
        state, verdict = shield.step(intended)
        assert verdict.safe
        assert not shield.executing_failsafe
        assert np.isclose(state.t, intended[1].t)
        assert np.allclose(state.q, intended[1].q)
        assert np.allclose(state.qdot, intended[1].qdot)
    assert state.sdot > 0
    assert shield.last_verify_time_us > 0


def test_step_engages_failsafe():
    robot = desk_robot()
    path = desk_path()
    shield = Shield(robot, path=path, shield_setup=ShieldSetup(contact_mode=ContactMode.CONTACT_ONLY))
    controller = PathController(path, shield.limits, dt)
    state = controller.start()
    shield.reset(state)
    for _ in range(100):
        intended = controller.intended(state, shield.limits.v_max)
        state, _ = shield.step(intended)
    assert state.sdot > 0
    expected = shield.monitored(intended)

    # a hand appears on the tip of the robot
    tip = robot.capsule_points(state.q)[1][-1]
    humans = [hand(tip)]
    state, verdict = shield.step(controller.intended(state, shield.limits.v_max), humans)
    assert not verdict.safe
    assert shield.executing_failsafe
    assert verdict.first_violation.constraint == ConstraintTag.CONTACT
    assert np.allclose(state.q, expected.steps[2].q)
    assert np.isclose(state.t, expected.steps[2].t + intended[0].t)

    for _ in range(500):
        if state.is_stopped:
            break
        state, _ = shield.step(controller.intended(state, shield.limits.v_max), humans)
    assert state.is_stopped
    state.check_limits(robot.qdot_max, robot.qddot_max, robot.qdddot_max, tol=1e-6)

    # the shield restarts from the standstill
    shield.reset(state)
    assert shield.last_verdict is None
    assert np.allclose(shield.current_state.q, state.q)


def _clamp_table(rng) -> ContactEnergyTable:
    # random clamp thresholds in the energy range of the spatial arm, free contacts never limit
    entries = {}
    for kind in BodyKind:
        if kind == BodyKind.OTHER:
            continue
        for geometry in GeometryClass:
            entries[(kind, geometry, ContactType.CLAMP)] = rng.uniform(0., 0.1)
            entries[(kind, geometry, ContactType.FREE)] = 1e6
    return ContactEnergyTable(entries)


def _cluster(rng, robot, q, config: HumanConfig):
    """
    Body parts of two humans around a random point next to a random link.
    """
    names = ['head', 'torso', 'right_upper_arm', 'right_lower_arm', 'right_hand', 'left_hand', 'neck']
    capsule = robot.forward_kinematics(q)[1][rng.integers(robot.n)]
    center = capsule.p1 + rng.uniform() * (capsule.p2 - capsule.p1) + rng.normal(size=3) * 0.08
    parts = []
    for human_id in ('a', 'b'):
        for part_id in rng.choice(names, size=rng.integers(1, 4), replace=False):
            p1 = center + rng.normal(size=3) * 0.06
            p2 = p1 + rng.normal(size=3) * 0.05
            parts.append(config.make_part(str(part_id), Capsule(p1, p2, rng.uniform(0.02, 0.06)), human_id))
    return parts


@pytest.mark.slow
def test_combined_part_dominates_members():
    # a clamp violation of a member always shows up as a violation of the combined part it belongs to
    robot = spatial_robot()
    environment = table_environment(top=-0.05)
    config = HumanConfig()
    rng = np.random.default_rng(17)
    instances = member_violations = 0
    for _ in range(20000):
        if instances >= 1000:
            break
        q = rng.uniform(-np.pi, np.pi, 3)
        parts = _cluster(rng, robot, q, config)
        snapshot = HumanSnapshot(0., parts, np.zeros(len(parts)), config)
        occupancies = [Capsule(p1, p2, radius) for p1, p2, radius in zip(*snapshot.occupancy_arrays(0., dt))]
        groups = combined_body_parts(build_contact_graph(parts, occupancies, config), parts, occupancies)
        if not groups:
            continue
        instances += 1

        index = {id(part): j for j, part in enumerate(parts)}
        for group in groups:
            assert len(group.members) > 1
            assert group.diameter > max(member.diameter for member in group.members)
            for member in group.members:
                assert any(capsule.contains_capsule(occupancies[index[id(member)]]) for capsule in group.occupancy)

        shield = Shield(robot, environment, _clamp_table(rng), config)
        shield.shield_setup(enumerate_violations=True)
        first = TrajectoryStep(0., q, rng.uniform(-1., 1., 3) * robot.qdot_max, np.zeros(3))
        traj = MonitoredTrajectory([first, TrajectoryStep(dt, first.interpolate(dt)[0], np.zeros(3), np.zeros(3))],
                                   1, dt=dt)
        flagged = {(record.link, record.part) for record in shield.verify(traj, snapshot).violations}
        for group in groups:
            for member in group.members:
                for link in range(robot.n):
                    if (link, f'{member.human_id}/{member.part_id}') in flagged:
                        member_violations += 1
                        assert (link, group.part_id) in flagged
    assert instances == 1000
    assert member_violations > 0
