import matplotlib.pyplot as plt
import pytest


def test_main_functionalities(monkeypatch):
    monkeypatch.setattr(plt, 'show', lambda: None)
    from HRCshield.Examples.main_functionalities import main_functionalities
    main_functionalities()


def test_contact_classification(monkeypatch):
    monkeypatch.setattr(plt, 'show', lambda: None)
    from HRCshield.Examples.contact_classification import contact_classification
    contact_classification()


def test_energy_thresholds():
    from HRCshield.Examples.energy_thresholds import energy_thresholds
    energy_thresholds()


def test_failsafe_planning(monkeypatch):
    monkeypatch.setattr(plt, 'show', lambda: None)
    from HRCshield.Examples.failsafe_planning import failsafe_planning
    failsafe_planning()


@pytest.mark.slow
def test_compare_methods(monkeypatch):
    monkeypatch.setattr(plt, 'show', lambda: None)
    from HRCshield.Examples.compare_methods import compare_methods
    compare_methods(horizon=1.)
