"""
This document contains the small robots, humans and environments shared by the tests.
"""
import numpy as np

from HRCshield import Capsule, Environment, HumanConfig, Polytope, RobotModel, robot_model_from_dict, load_waypoints, \
    load_robot_model, load_environment, FOLDER


def planar_robot(n: int = 2, length: float = 0.5, mass: float = 2., radius: float = 0.05,
                 qdot_max: float = 1., qddot_max: float = 5., qdddot_max: float = 50., **kwargs) -> RobotModel:
    """
    Planar chain of links along x which all rotate about z.
    """
    joints, links = [], []
    for i in range(n):
        joints.append({'axis': [0., 0., 1.], 'origin': {'xyz': [length if i else 0., 0., 0.]},
                       'qdot_max': qdot_max, 'qddot_max': qddot_max, 'qdddot_max': qdddot_max})
        links.append({'mass': mass, 'inertia': {'ixx': 1e-3, 'iyy': 1e-3, 'izz': 1e-3}, 'com': [length / 2, 0., 0.],
                      'capsule': {'p1': [0., 0., 0.], 'p2': [length, 0., 0.], 'radius': radius}})
    return robot_model_from_dict({'name': f'planar_{n}', 'joints': joints, 'links': links, **kwargs})


def spatial_robot() -> RobotModel:
    """
    Three joint arm with a vertical first axis and two horizontal axes.
    """
    joints, links = [], []
    for i, axis in enumerate(([0., 0., 1.], [0., 1., 0.], [0., 1., 0.])):
        joints.append({'axis': axis, 'origin': {'xyz': [0., 0., 0.3 if i else 0.]},
                       'qdot_max': 2., 'qddot_max': 10., 'qdddot_max': 100.})
        links.append({'mass': 2. - 0.5 * i, 'inertia': {'ixx': 0.02, 'iyy': 0.02, 'izz': 0.005},
                      'com': [0.02, 0., 0.15], 'capsule': {'p1': [0., 0., 0.], 'p2': [0., 0., 0.3], 'radius': 0.05}})
    return robot_model_from_dict({'name': 'spatial_3', 'joints': joints, 'links': links,
                                  'topology_exclusions': [[0, 1], [1, 2]]})


def desk_robot() -> RobotModel:
    return load_robot_model(FOLDER.joinpath('data/robots/desk_arm.yaml'))


def desk_environment() -> Environment:
    return load_environment(FOLDER.joinpath('data/environments/desk.yaml'))


def table_environment(top: float = 0.) -> Environment:
    return Environment([Polytope.from_box([-1., -1., top - 0.1], [1., 1., top], 'table')])


def hand(center, config: HumanConfig = None, radius: float = 0.05, human_id: str = 'human'):
    config = HumanConfig() if config is None else config
    center = np.asarray(center, dtype=float)
    return config.make_part('right_hand', Capsule(center, center + np.array([0.05, 0., 0.]), radius), human_id)


def desk_path():
    return load_waypoints(FOLDER.joinpath('data/trajectories/desk_cycle.csv'))
