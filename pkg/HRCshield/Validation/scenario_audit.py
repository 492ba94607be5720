"""
This document runs the energy shield on the bundled scenarios with synthetic humans, one fuzzed human trace per
seed, and audits the executed motion against the true human poses. The shield should never execute a motion with a
contact above its threshold.
"""
import math
from concurrent.futures import ProcessPoolExecutor

from HRCshield import MethodId, load_scenario, report, FOLDER
from HRCshield.Simulation.cli import _run_job_star


def scenario_audit(traces: int = 1000, horizon: float = 3., workers: int = 4):
    """
    Returns the report of the audited runs, at least `traces` runs spread evenly over the scenarios.
    """
    scenarios = [str(path) for path in sorted(FOLDER.joinpath('data/scenarios').glob('*.yaml'))
                 if 'motion' in load_scenario(path).humans]
    seeds = math.ceil(traces / len(scenarios))
    jobs = [((scenario, MethodId.ENERGY_SHIELD.value, seed), horizon) for scenario in scenarios
            for seed in range(seeds)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_job_star, jobs, chunksize=8))
    else:
        results = [_run_job_star(job) for job in jobs]
    summary = report(results)
    print(f"{len(results)} audited runs, {sum(result.violations for result in results)} violations.")
    return summary, len(results)


if __name__ == "__main__":  # pragma: no cover
    scenario_audit()
