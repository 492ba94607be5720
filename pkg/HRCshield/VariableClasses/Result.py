"""
This file implements the result classes of a simulated run and of its audit.
"""
from __future__ import annotations

from typing import Optional

import numpy as np
import pandas as pd

AUDIT_COLUMNS = ['step', 'time_s', 'link', 'human_id', 'part_id', 'contact_class', 'energy_J', 'threshold_J',
                 'violation']


class AuditReport:
    """
    Contacts between the executed robot and the true human poses, with the energy check of every contact.
    """

    def __init__(self, records: pd.DataFrame = None):
        """

        Parameters
        ----------
        records : pd.DataFrame
            One row per contacting (step, link, body part) with the columns of AUDIT_COLUMNS
        """
        self._records = pd.DataFrame(columns=AUDIT_COLUMNS) if records is None else records[AUDIT_COLUMNS]

    @property
    def records(self) -> pd.DataFrame:
        return self._records

    @property
    def contacts(self) -> int:
        """Number of steps with at least one contact."""
        return int(self._records['step'].nunique())

    @property
    def violations(self) -> int:
        """Number of contacts above their threshold."""
        return int(self._records['violation'].astype(bool).sum())

    def __repr__(self) -> str:
        return f'AuditReport(contacts={self.contacts}, violations={self.violations})'


class RunResult:
    """
    Outcome of one simulated run of a scenario with one method.
    """

    def __init__(self, scenario: str, method: str, seed: int, dt: float, progress: float, log: pd.DataFrame,
                 verify_times: np.ndarray = np.array([]), efficiency: float = np.nan, audit: AuditReport = None):
        """

        Parameters
        ----------
        scenario : str
            Name of the scenario
        method : str
            Identifier of the method
        seed : int
            Seed of the synthetic humans
        dt : float
            Time step [s]
        progress : float
            Path progress at the end of the run [nominal s]
        log : pd.DataFrame
            Per-step log
        verify_times : np.ndarray
            Wall time of every verification [µs]
        efficiency : float
            Progress relative to the unshielded run [%]
        audit : AuditReport
            Audit of the run (None if it was not audited)
        """
        self.scenario = scenario
        self.method = method
        self.seed = seed
        self.dt = dt
        self.progress = float(progress)
        self.log = log
        self.verify_times = np.asarray(verify_times, dtype=float)
        self.efficiency = efficiency
        self.audit: Optional[AuditReport] = audit

    @property
    def mean_verify_time_us(self) -> float:
        return float(np.mean(self.verify_times)) if self.verify_times.size else 0.

    @property
    def violations(self) -> Optional[int]:
        return None if self.audit is None else self.audit.violations

    @property
    def contacts(self) -> Optional[int]:
        return None if self.audit is None else self.audit.contacts

    def __repr__(self) -> str:
        return f'RunResult({self.scenario}, {self.method}, efficiency={self.efficiency:.1f} %)'
