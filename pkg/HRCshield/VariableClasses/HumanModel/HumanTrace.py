"""
This document contains the human motion traces: loading, replay of delayed measurements and the measurement buffer.
"""
from __future__ import annotations

import threading
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from HRCshield.VariableClasses.Geometry import Capsule
from HRCshield.VariableClasses.HumanModel.BodyPart import BodyPart, HumanConfig, predict_occupancy
from HRCshield.logger import shield_logger

TRACE_COLUMNS = ['time_s', 'human_id', 'part_id', 'p1x', 'p1y', 'p1z', 'p2x', 'p2y', 'p2z', 'radius_m']
_GEOMETRY_COLUMNS = TRACE_COLUMNS[3:]


def check_human_trace(trace: pd.DataFrame) -> pd.DataFrame:
    """
    This function checks a human trace and returns it sorted by time.

    Parameters
    ----------
    trace : pd.DataFrame
        Trace with the columns of TRACE_COLUMNS

    Returns
    -------
    pd.DataFrame

    Raises
    ------
    ValueError
        When a column is missing, a value is invalid or time does not strictly increase per body part
    """
    missing = [column for column in TRACE_COLUMNS if column not in trace.columns]
    if missing:
        raise ValueError(f'The human trace misses the columns {missing}.')
    trace = trace[TRACE_COLUMNS].copy()
    trace['human_id'] = trace['human_id'].astype(str)
    trace['part_id'] = trace['part_id'].astype(str)
    numeric = trace[['time_s'] + _GEOMETRY_COLUMNS].to_numpy(dtype=float)
    if not np.all(np.isfinite(numeric)):
        raise ValueError('The human trace contains non-finite values.')
    if np.any(trace['radius_m'] < 0):
        raise ValueError('The human trace contains negative radii.')
    steps = trace.groupby(['human_id', 'part_id'], sort=False)['time_s'].diff().dropna()
    if np.any(steps <= 0):
        raise ValueError('The time of the human trace should strictly increase for every body part.')
    return trace.sort_values(['time_s', 'human_id', 'part_id'], kind='stable').reset_index(drop=True)


def load_human_trace(path: Union[str, Path]) -> pd.DataFrame:
    """
    This function loads a human motion trace from a CSV file with a header row and the columns
    time_s, human_id, part_id, p1x, p1y, p1z, p2x, p2y, p2z and radius_m.

    Parameters
    ----------
    path : str or Path
        Location of the trace

    Returns
    -------
    pd.DataFrame
    """
    return check_human_trace(pd.read_csv(path, dtype={'human_id': str, 'part_id': str}))


class HumanSnapshot:
    """
    Measured body parts available at a time, with the age of every measurement at that time.
    """

    __slots__ = 'time', 'parts', 'staleness', 'config'

    def __init__(self, time: float, parts: Sequence[BodyPart], staleness: Sequence[float], config: HumanConfig):
        """

        Parameters
        ----------
        time : float
            Time of the snapshot [s]
        parts : sequence of BodyPart
            Latest available measurement of every body part
        staleness : sequence of float
            Time between the measurement reception reference and the snapshot, per part [s]
        config : HumanConfig
            Human motion model
        """
        self.time = float(time)
        self.parts: Tuple[BodyPart, ...] = tuple(parts)
        self.staleness = np.asarray(staleness, dtype=float)
        self.config = config

    @classmethod
    def empty(cls, time: float, config: HumanConfig) -> HumanSnapshot:
        return cls(time, (), (), config)

    def __len__(self) -> int:
        return len(self.parts)

    def occupancies(self, t_a: float, t_b: float) -> List[Capsule]:
        """
        This function predicts the occupancy of every body part for an interval relative to the snapshot time.

        Parameters
        ----------
        t_a : float
            Start of the interval [s]
        t_b : float
            End of the interval [s]

        Returns
        -------
        list of Capsule
        """
        return [predict_occupancy(part, self.config, t_a + age, t_b + age)
                for part, age in zip(self.parts, self.staleness)]

    def occupancy_arrays(self, t_a: float, t_b: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        This function returns the same occupancies as occupancies, as (P, 3) end point arrays and (P,) radii.
        """
        if t_a < 0 or t_b < t_a:
            raise ValueError(f'The prediction interval [{t_a}, {t_b}] should satisfy 0 <= t_a <= t_b.')
        if not self.parts:
            return np.zeros((0, 3)), np.zeros((0, 3)), np.zeros(0)
        p1 = np.array([part.capsule.p1 for part in self.parts])
        p2 = np.array([part.capsule.p2 for part in self.parts])
        radii = np.array([part.capsule.radius for part in self.parts]) + self.config.meas_error \
            + self.config.max_speed * (t_b + self.staleness + self.config.meas_delay)
        return p1, p2, radii


class TraceReplay:
    """
    Open-loop replay of a human trace. A measurement taken at time t becomes available at t + meas_delay.
    """

    def __init__(self, trace: pd.DataFrame, config: HumanConfig):
        """

        Parameters
        ----------
        trace : pd.DataFrame
            Checked human trace
        config : HumanConfig
            Human motion model
        """
        self.config = config
        self._tracks: Dict[Tuple[str, str], Tuple[np.ndarray, np.ndarray]] = {}
        trace = check_human_trace(trace)
        for key, group in trace.groupby(['human_id', 'part_id'], sort=True):
            self._tracks[key] = (group['time_s'].to_numpy(dtype=float), group[_GEOMETRY_COLUMNS].to_numpy(dtype=float))
        shield_logger.info(f'Human trace with {len(self._tracks)} body parts loaded.')

    @property
    def keys(self) -> List[Tuple[str, str]]:
        return list(self._tracks)

    def _part(self, key: Tuple[str, str], row: np.ndarray) -> BodyPart:
        return self.config.make_part(key[1], Capsule(row[:3], row[3:6], row[6]), key[0])

    def snapshot(self, time: float) -> HumanSnapshot:
        """
        This function returns the latest measurements available at a time, i.e. the latest measurements taken
        at or before time - meas_delay.

        Parameters
        ----------
        time : float
            Current time [s]

        Returns
        -------
        HumanSnapshot
        """
        reference = time - self.config.meas_delay
        parts, staleness = [], []
        for key, (times, rows) in self._tracks.items():
            index = int(np.searchsorted(times, reference + 1e-12, side='right')) - 1
            if index < 0:
                continue
            parts.append(self._part(key, rows[index]))
            staleness.append(max(reference - times[index], 0.))
        return HumanSnapshot(time, parts, staleness, self.config)

    def true_parts(self, time: float) -> List[BodyPart]:
        """
        This function returns the true pose of all body parts at a time, interpolated linearly between samples.
        Parts which are not yet in the trace are absent; after the last sample, the last pose is held.

        Parameters
        ----------
        time : float
            Time [s]

        Returns
        -------
        list of BodyPart
        """
        parts = []
        for key, (times, rows) in self._tracks.items():
            if time < times[0] - 1e-12:
                continue
            if time >= times[-1]:
                row = rows[-1]
            else:
                index = int(np.searchsorted(times, time, side='right'))
                fraction = (time - times[index - 1]) / (times[index] - times[index - 1])
                row = (1 - fraction) * rows[index - 1] + fraction * rows[index]
            parts.append(self._part(key, row))
        return parts


class MeasurementBuffer:
    """
    Hand-off of human snapshots from one writer (the perception) to any number of readers.
    Snapshots are immutable, so readers receive them by value.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._latest: Optional[HumanSnapshot] = None

    def publish(self, snapshot: HumanSnapshot) -> None:
        with self._lock:
            if self._latest is not None and snapshot.time < self._latest.time:
                raise ValueError(f'Snapshot at {snapshot.time} s is older than the buffered one at '
                                 f'{self._latest.time} s.')
            self._latest = snapshot

    def latest(self) -> Optional[HumanSnapshot]:
        with self._lock:
            return self._latest
