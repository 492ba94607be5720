"""
This file compares all safety methods on one of the bundled scenarios and plots the run of the shield.
"""

from HRCshield import MethodId, load_scenario, plot_run, report, run_scenario, FOLDER


def compare_methods(scenario: str = 'table_work', horizon: float = 2.):
    scenario = load_scenario(FOLDER.joinpath(f'data/scenarios/{scenario}.yaml'))
    results = [run_scenario(scenario, method, horizon=horizon) for method in MethodId]
    summary = report(results)
    print(summary)

    plot_run(results[-1])


if __name__ == "__main__":  # pragma: no cover
    compare_methods()
