import numpy as np
import pytest

from HRCshield import Environment, Polytope, environment_from_dict, load_environment, FOLDER


def test_environment_from_dict():
    environment = environment_from_dict({'elements': [{'name': 'table', 'box': {'min': [0, 0, 0], 'max': [1, 1, 1]}},
                                                      {'normals': [[0, 0, 1]], 'offsets': [0]}]})
    assert len(environment) == 2
    assert environment[0] == Polytope.from_box([0, 0, 0], [1, 1, 1], 'table')
    assert environment[1].name == 'element_1'
    assert not environment[1].bounded
    assert [element.name for element in environment] == ['table', 'element_1']


def test_environment_invalid():
    with pytest.raises(ValueError):
        environment_from_dict({'elements': [{'name': 'cloud'}]})
    with pytest.raises(ValueError):
        environment_from_dict({'elements': [{'normals': [[0, 0, 3]], 'offsets': [0]}]})


def test_empty_environment():
    assert len(environment_from_dict(None)) == 0
    assert environment_from_dict({}) == Environment()


def test_load_desk():
    environment = load_environment(FOLDER.joinpath('data/environments/desk.yaml'))
    assert [element.name for element in environment] == ['desk', 'floor', 'wall']
    assert environment[0].contains([0.5, 0, 0.5])
    assert environment[1].contains([3, 3, -0.1])
    assert not environment[2].contains([0, 0, 1])
    for element in environment:
        assert np.allclose(np.linalg.norm(element.normals, axis=1), 1)
