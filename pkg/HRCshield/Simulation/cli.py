"""
Command line interface of the simulation harness.

    sim run --scenario data/scenarios/table_work.yaml --method energy_shield --audit
    sim compare --scenario-dir data/scenarios --methods all --seeds 3 --workers 4 --out report.csv

The exit code is 1 when an audited run of a provably safe method contains a violation.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from HRCshield.Baselines import MethodId, PROVABLY_SAFE_METHODS
from HRCshield.Simulation.Report import report
from HRCshield.Simulation.Scenario import load_scenario
from HRCshield.Simulation.Simulator import run_scenario
from HRCshield.VariableClasses import RunResult
from HRCshield.logger import shield_logger

Job = Tuple[str, str, int]


def parse_args(argv: Sequence[str] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog='sim', description='Replay human-robot scenarios with safety methods.')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run one scenario with one method.')
    run.add_argument('--scenario', required=True, type=Path, help='Scenario YAML file.')
    run.add_argument('--method', choices=[method.value for method in MethodId], default=None,
                     help='Safety method (default: the method of the scenario).')
    run.add_argument('--dt', type=float, default=None, help='Time step in s (default: that of the scenario).')
    run.add_argument('--horizon', type=float, default=None, help='Simulated time in s (default: that of the scenario).')
    run.add_argument('--seed', type=int, default=None, help='Seed of the synthetic humans.')
    run.add_argument('--audit', action='store_true', help='Audit the executed motion against the true humans.')
    run.add_argument('--out', type=Path, default=None, help='CSV file for the per-step log.')

    compare = commands.add_parser('compare', help='Run all scenarios of a folder with several methods.')
    compare.add_argument('--scenario-dir', required=True, type=Path, help='Folder with scenario YAML files.')
    compare.add_argument('--methods', default='all', help="Comma separated method ids or 'all'.")
    compare.add_argument('--seeds', type=int, default=1, help='Number of seeds per scenario and method.')
    compare.add_argument('--horizon', type=float, default=None, help='Simulated time in s.')
    compare.add_argument('--workers', type=int, default=1, help='Number of worker processes.')
    compare.add_argument('--out', type=Path, default=None, help='CSV file for the report.')
    return parser.parse_args(argv)


def _methods(value: str) -> List[MethodId]:
    if value == 'all':
        return list(MethodId)
    try:
        return [MethodId(method.strip()) for method in value.split(',')]
    except ValueError as error:
        raise SystemExit(f'Unknown method in {value!r}: {error}')


def _run_job(job: Job, horizon: Optional[float] = None) -> RunResult:
    scenario, method, seed = job
    return run_scenario(load_scenario(scenario), method, seed, horizon=horizon, audit=True)


def _run_job_star(arguments: Tuple[Job, Optional[float]]) -> RunResult:
    return _run_job(*arguments)


def unsafe_runs(results: Sequence[RunResult]) -> List[RunResult]:
    """
    This function returns the audited runs of provably safe methods with at least one violation.
    """
    return [result for result in results
            if MethodId(result.method) in PROVABLY_SAFE_METHODS and result.violations]


def main(argv: Sequence[str] = None) -> int:
    args = parse_args(argv)
    if args.command == 'run':
        result = run_scenario(load_scenario(args.scenario), args.method, args.seed, args.dt, args.horizon, args.audit)
        if args.out is not None:
            result.log.to_csv(args.out, index=False)
        results = [result]
        report(results)
    else:
        scenarios = sorted(str(path) for path in args.scenario_dir.glob('*.yaml'))
        if not scenarios:
            raise SystemExit(f'No scenario files in {args.scenario_dir}.')
        jobs = [((scenario, method.value, seed), args.horizon) for scenario in scenarios
                for method in _methods(args.methods) for seed in range(args.seeds)]
        shield_logger.info(f'Running {len(jobs)} jobs on {args.workers} workers.')
        if args.workers > 1:
            # map keeps the job order, so the report does not depend on the scheduling
            with ProcessPoolExecutor(max_workers=args.workers) as executor:
                results = list(executor.map(_run_job_star, jobs))
        else:
            results = [_run_job_star(job) for job in jobs]
        report(results, args.out)

    unsafe = unsafe_runs(results)
    for result in unsafe:
        shield_logger.error(f'{result.scenario} with {result.method} (seed {result.seed}) has '
                            f'{result.violations} violations.')
    return 1 if unsafe else 0


if __name__ == '__main__':  # pragma: no cover
    raise SystemExit(main())
