import numpy as np
import pandas as pd
import pytest

from HRCshield import AUDIT_COLUMNS, AuditReport, FOLDER, RunResult
from HRCshield.Simulation.cli import main, parse_args, unsafe_runs

SCENARIOS = FOLDER.joinpath('data/scenarios')


def _result(method: str, violation: bool) -> RunResult:
    records = pd.DataFrame([(0, 0., 5, 'human_0', 'right_hand', 'unconstrained', 1., 0.49, violation)],
                           columns=AUDIT_COLUMNS)
    return RunResult('scenario', method, 0, 0.006, 1., pd.DataFrame(), np.array([]), 50., AuditReport(records))


def test_parse_args():
    args = parse_args(['run', '--scenario', 'a.yaml', '--method', 'ssm_zone', '--audit'])
    assert args.command == 'run'
    assert args.method == 'ssm_zone'
    assert args.audit
    assert args.seed is None
    args = parse_args(['compare', '--scenario-dir', 'scenarios'])
    assert args.methods == 'all'
    assert args.seeds == 1
    assert args.workers == 1
    with pytest.raises(SystemExit):
        parse_args([])
    with pytest.raises(SystemExit):
        parse_args(['run', '--scenario', 'a.yaml', '--method', 'bogus'])


def test_unsafe_runs():
    results = [_result('energy_shield', True), _result('energy_shield', False), _result('no_shield', True),
               _result('dynamic_ssm', True)]
    assert unsafe_runs(results) == [results[0], results[3]]
    unaudited = RunResult('scenario', 'energy_shield', 0, 0.006, 1., pd.DataFrame())
    assert unsafe_runs([unaudited]) == []


def test_run(tmp_path):
    out = tmp_path.joinpath('log.csv')
    code = main(['run', '--scenario', str(SCENARIOS.joinpath('far_observer.yaml')), '--method', 'no_shield',
                 '--horizon', '0.06', '--audit', '--out', str(out)])
    assert code == 0
    log = pd.read_csv(out)
    assert len(log) == 11
    assert 'energy1_J' in log.columns


def test_compare(tmp_path):
    out = tmp_path.joinpath('report.csv')
    code = main(['compare', '--scenario-dir', str(SCENARIOS), '--methods', 'no_shield,ssm_zone', '--seeds', '2',
                 '--horizon', '0.03', '--out', str(out)])
    assert code == 0
    summary = pd.read_csv(out)
    assert len(summary) == 14
    assert set(summary['method']) == {'no_shield', 'ssm_zone'}
    assert summary['violations'].sum() == 0


def test_compare_errors(tmp_path):
    with pytest.raises(SystemExit):
        main(['compare', '--scenario-dir', str(tmp_path)])
    with pytest.raises(SystemExit):
        main(['compare', '--scenario-dir', str(SCENARIOS), '--methods', 'no_shield,bogus'])
