"""
This document contains the comparison report of simulated runs and the plot of a single run.
"""
from pathlib import Path
from typing import Sequence, Tuple, Union

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from HRCshield.VariableClasses import RunResult
from HRCshield.logger import shield_logger

REPORT_COLUMNS = ['scenario', 'method', 'efficiency_mean', 'efficiency_std', 'contacts', 'violations',
                  'mean_verify_time_us']


def report(results: Sequence[RunResult], out: Union[str, Path] = None) -> pd.DataFrame:
    """
    This function summarises runs per scenario and method. The efficiency is averaged over the seeds, the contacts
    and violations are summed.

    Parameters
    ----------
    results : sequence of RunResult
        Simulated runs
    out : str or Path
        CSV file the report is written to (not written if None)

    Returns
    -------
    pd.DataFrame
        One row per scenario and method, with the columns of REPORT_COLUMNS
    """
    frame = pd.DataFrame([(result.scenario, result.method, result.efficiency,
                           np.nan if result.contacts is None else result.contacts,
                           np.nan if result.violations is None else result.violations,
                           result.mean_verify_time_us if result.verify_times.size else np.nan)
                          for result in results],
                         columns=['scenario', 'method', 'efficiency', 'contacts', 'violations', 'verify_time_us'])
    grouped = frame.groupby(['scenario', 'method'], sort=True)
    summary = pd.DataFrame({'efficiency_mean': grouped['efficiency'].mean(),
                            'efficiency_std': grouped['efficiency'].std(ddof=0),
                            'contacts': grouped['contacts'].sum(min_count=1),
                            'violations': grouped['violations'].sum(min_count=1),
                            'mean_verify_time_us': grouped['verify_time_us'].mean()}).reset_index()[REPORT_COLUMNS]
    if out is not None:
        summary.to_csv(out, index=False)
        shield_logger.info(f'Report written to {out}.')
    shield_logger.main_info('\n' + summary.to_string(index=False, float_format=lambda value: f'{value:.2f}'))
    return summary


def plot_run(result: RunResult, show: bool = True) -> Tuple[plt.Figure, Tuple[plt.Axes, plt.Axes]]:
    """
    This function plots the path progress and the effective energy of every link of a run.

    Parameters
    ----------
    result : RunResult
        Simulated run
    show : bool
        True to show the figure

    Returns
    -------
    fig, (ax_progress, ax_energy)
        Figure object
    """
    log = result.log
    time = log['time_s'].to_numpy()
    fig = plt.figure()
    ax_progress = fig.add_subplot(211)
    ax_energy = fig.add_subplot(212, sharex=ax_progress)

    ax_progress.set_ylabel(r"Progress (-)")
    ax_progress.plot(time, log['s'], "k-", lw=1.5, label="s")
    ax_progress.plot(time, log['sdot'], "b-", lw=1, label=r"$\dot{s}$")
    engaged = log['engaged'].to_numpy(dtype=bool)
    if np.any(engaged):
        ax_progress.fill_between(time, 0, 1, where=engaged, color="r", alpha=0.15, step="post",
                                 transform=ax_progress.get_xaxis_transform(), label="engaged")
    ax_progress.legend()

    ax_energy.set_xlabel(r"Time (s)")
    ax_energy.set_ylabel(r"Effective energy (J)")
    for column in [column for column in log.columns if column.startswith('energy')]:
        ax_energy.plot(time, log[column], lw=1, label=f"link {column[6:-2]}")
    audit = result.audit
    if audit is not None and audit.violations:
        violations = audit.records[audit.records['violation'].astype(bool)]
        ax_energy.plot(violations['time_s'], violations['energy_J'], "rx", label="violation")
    ax_energy.legend(ncol=2)
    ax_progress.set_title(f"{result.scenario}: {result.method}")
    if show:
        plt.show()
    return fig, (ax_progress, ax_energy)
