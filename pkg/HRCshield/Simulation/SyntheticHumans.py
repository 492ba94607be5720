"""
This document contains scripted human motions around a desk robot, sampled into human traces.
Every motion maps a time and a random displacement of the humans onto, per human, the position of the pelvis on
the floor, the heading and the wrist targets.
The robot base is at the origin of the desk top; the humans stand around the desk.
"""
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from HRCshield.VariableClasses import TRACE_COLUMNS, check_human_trace

# pose of one human: (human_id, pelvis xy, heading [rad], left wrist target, right wrist target)
Pose = Tuple[str, np.ndarray, float, Optional[np.ndarray], Optional[np.ndarray]]
Motion = Callable[[float, np.ndarray], List[Pose]]

PART_RADII = {'head': 0.1, 'neck': 0.06, 'torso': 0.17, 'pelvis': 0.15,
              'upper_arm': 0.05, 'lower_arm': 0.045, 'hand': 0.05,
              'thigh': 0.08, 'shin': 0.06, 'foot': 0.05}

_SHOULDER_HEIGHT = 1.42
_SEGMENT = 0.29  # upper and lower arm length [m]


def _smoothstep(x: float) -> float:
    x = min(max(x, 0.), 1.)
    return x * x * (3 - 2 * x)


def _arm(shoulder: np.ndarray, target: Optional[np.ndarray], lateral: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    This function returns the elbow and wrist of an arm reaching for a target (hanging down if there is none).
    """
    if target is None:
        wrist = shoulder + np.array([0., 0., -2 * _SEGMENT]) + 0.05 * lateral
    else:
        reach = target - shoulder
        distance = np.linalg.norm(reach)
        wrist = shoulder + reach * min(1., 2 * _SEGMENT * 0.999 / max(distance, 1e-9))
    middle = (shoulder + wrist) / 2
    bend = np.sqrt(max(_SEGMENT ** 2 - np.sum((wrist - shoulder) ** 2) / 4, 0.))
    return middle + np.array([0., 0., -bend]), wrist


def skeleton(pelvis: np.ndarray, heading: float, left: Optional[np.ndarray] = None,
             right: Optional[np.ndarray] = None) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """
    This function creates the 16 capsule axes of a standing human.

    Parameters
    ----------
    pelvis : np.ndarray
        (2,) position of the human on the floor [m]
    heading : float
        Direction the human faces [rad]
    left, right : np.ndarray
        (3,) wrist targets (None for a hanging arm)

    Returns
    -------
    dict
        Part id: (p1, p2)
    """
    forward = np.array([np.cos(heading), np.sin(heading), 0.])
    lateral = np.array([-np.sin(heading), np.cos(heading), 0.])
    base = np.array([pelvis[0], pelvis[1], 0.])
    up = np.array([0., 0., 1.])
    parts = {'pelvis': (base + 0.85 * up - 0.1 * lateral, base + 0.85 * up + 0.1 * lateral),
             'torso': (base + 1.0 * up, base + 1.3 * up),
             'neck': (base + 1.47 * up, base + 1.53 * up),
             'head': (base + 1.63 * up, base + 1.73 * up)}
    for side, sign, target in (('left', 1., left), ('right', -1., right)):
        shoulder = base + _SHOULDER_HEIGHT * up + sign * 0.2 * lateral
        elbow, wrist = _arm(shoulder, target, sign * lateral)
        direction = (wrist - elbow) / max(np.linalg.norm(wrist - elbow), 1e-9)
        parts[f'{side}_upper_arm'] = (shoulder, elbow)
        parts[f'{side}_lower_arm'] = (elbow, wrist)
        parts[f'{side}_hand'] = (wrist + 0.05 * direction, wrist + 0.1 * direction)
        hip = base + 0.8 * up + sign * 0.1 * lateral
        knee = base + 0.45 * up + sign * 0.1 * lateral
        ankle = base + 0.1 * up + sign * 0.1 * lateral
        parts[f'{side}_thigh'] = (hip, knee)
        parts[f'{side}_shin'] = (knee, ankle)
        parts[f'{side}_foot'] = (ankle - 0.05 * up, ankle - 0.05 * up + 0.15 * forward)
    return parts


PART_IDS = sorted(skeleton(np.zeros(2), 0.))


def _radius(part_id: str) -> float:
    for key, radius in PART_RADII.items():
        if part_id.endswith(key):
            return radius
    return 0.07


def crossing_reach(t: float, displacement: np.ndarray) -> List[Pose]:
    """A human walks past the desk, stops in front of it to reach over the desk top and walks on."""
    offset = displacement[:2]
    y = float(np.clip(-3. + 1.2 * t, -3., 0.)) if t < 2.5 else (0. if t < 6.5 else min(1.2 * (t - 6.5), 3.))
    reach = _smoothstep((t - 3.) / 1.) - _smoothstep((t - 5.) / 1.)
    pelvis = np.array([1.55, y]) + offset
    target = np.array([1.35 - 0.55 * reach, y - 0.2, 0.95 - 0.1 * reach]) + np.append(offset, 0.)
    return [('human_0', pelvis, np.pi, None, target if 0 < reach else None)]


def table_work(t: float, displacement: np.ndarray) -> List[Pose]:
    """A human stands at the desk and works with both hands on the desk top."""
    offset = displacement[:2]
    phase = 2 * np.pi * t / 3.
    centre = np.array([1.05, 0.25, 0.88]) + np.append(offset, 0.)
    left = centre + np.array([0.1 * np.cos(phase), 0.15 + 0.1 * np.sin(phase), 0.])
    right = centre + np.array([0.1 * np.cos(phase + np.pi), -0.15 + 0.1 * np.sin(phase + np.pi), 0.])
    return [('human_0', np.array([1.5, 0.25]) + offset, np.pi, left, right)]


def handover_zone(t: float, displacement: np.ndarray) -> List[Pose]:
    """A human approaches the robot, holds out a hand for a handover and leaves again."""
    offset = displacement[:2]
    x = 3. - 1.45 * _smoothstep(t / 3.) + 1.45 * _smoothstep((t - 8.) / 3.)
    reach = _smoothstep((t - 3.5) / 1.) - _smoothstep((t - 6.5) / 1.)
    pelvis = np.array([x, 0.]) + offset
    target = np.array([x - 0.25 - 0.45 * reach, -0.2, 1.0]) + np.append(offset, 0.)
    return [('human_0', pelvis, np.pi, None, target if reach > 0 else None)]


def dual_arm_clutter(t: float, displacement: np.ndarray) -> List[Pose]:
    """Two humans work on the desk top from two sides, with arms crossing the workspace at different phases."""
    offset = displacement[:4]
    phase = 2 * np.pi * t / 4.
    first_centre = np.array([1.0, -0.35, 0.9]) + np.append(offset[:2], 0.)
    second_centre = np.array([0.35, 1.0, 0.9]) + np.append(offset[2:], 0.)
    first = ('human_0', np.array([1.5, -0.35]) + offset[:2], np.pi,
             first_centre + np.array([0., 0.2, 0.]),
             first_centre + np.array([-0.15 * (1 + np.sin(phase)), 0., 0.05 * np.cos(phase)]))
    second = ('human_1', np.array([0.35, 1.5]) + offset[2:], -np.pi / 2,
              second_centre + np.array([0.15 * np.sin(phase + 1.), -0.15 * (1 + np.cos(phase + 1.)), 0.]),
              None)
    return [first, second]


def far_observer(t: float, displacement: np.ndarray) -> List[Pose]:
    """A human watches the robot from a distance and sways a little."""
    offset = displacement[:2]
    return [('human_0', np.array([3.0 + 0.1 * np.sin(0.8 * t), 1.0 + 0.05 * np.sin(1.3 * t)]) + offset,
             np.pi, None, None)]


def hand_beside_path(t: float, displacement: np.ndarray) -> List[Pose]:
    """A human holds the right hand still next to the transfer path of the robot, just beyond the gripper."""
    offset = displacement[:2]
    pelvis = np.array([1.576, 0.]) + offset
    target = np.array([1.128, 0., 1.251]) + np.append(offset, 0.)
    return [('human_0', pelvis, np.pi, None, target)]


MOTIONS: Dict[str, Motion] = {'crossing_reach': crossing_reach,
                              'table_work': table_work,
                              'handover_zone': handover_zone,
                              'dual_arm_clutter': dual_arm_clutter,
                              'far_observer': far_observer,
                              'hand_beside_path': hand_beside_path}


def limit_speed(times: np.ndarray, points: np.ndarray, max_speed: float) -> np.ndarray:
    """
    This function limits the speed of a sampled point: every displacement is clipped to max_speed times the sample
    interval, so the piecewise linear motion between the samples never exceeds max_speed.

    Parameters
    ----------
    times : np.ndarray
        (K,) sample times [s]
    points : np.ndarray
        (K, 3) sampled positions [m]
    max_speed : float
        Speed limit [m/s]

    Returns
    -------
    np.ndarray
        (K, 3) limited positions
    """
    limited = np.array(points, dtype=float, copy=True)
    steps = np.diff(times) * max_speed
    for k in range(1, len(limited)):
        delta = points[k] - limited[k - 1]
        distance = np.linalg.norm(delta)
        if distance > steps[k - 1]:
            delta = delta * steps[k - 1] / distance
        limited[k] = limited[k - 1] + delta
    return limited


def synthetic_trace(motion: str, horizon: float, sample_time: float = 0.03, seed: int = 0, fuzz: float = 0.,
                    max_speed: float = 1.6, parts: Sequence[str] = None) -> pd.DataFrame:
    """
    This function samples a scripted motion into a human trace.

    Parameters
    ----------
    motion : str
        Name of the motion (see MOTIONS)
    horizon : float
        Duration of the trace [s]
    sample_time : float
        Time between two samples [s]
    seed : int
        Seed of the random perturbation
    fuzz : float
        Standard deviation of the random displacement of the humans [m], 0 for the scripted motion
    max_speed : float
        Speed limit of every capsule end point [m/s]
    parts : sequence of str
        Part ids the tracker reports (all 16 parts if None)

    Returns
    -------
    pd.DataFrame
        Human trace with the columns of TRACE_COLUMNS

    Raises
    ------
    ValueError
        When the motion does not exist or a tracked part is unknown
    """
    if motion not in MOTIONS:
        raise ValueError(f'The motion {motion} does not exist! Choose from {sorted(MOTIONS)}.')
    if parts is not None and (not parts or not set(parts) <= set(PART_IDS)):
        raise ValueError(f'The tracked parts {parts} should be a non-empty subset of {PART_IDS}.')
    times = np.arange(0., horizon + sample_time, sample_time)
    # one displacement per run, so the perturbed motion stays smooth
    displacement = np.random.default_rng(seed).normal(0., 1., 8) * fuzz
    tracks: Dict[Tuple[str, str], List[np.ndarray]] = {}
    for t in times:
        for human_id, pelvis, heading, left, right in MOTIONS[motion](t, displacement):
            for part_id, (p1, p2) in skeleton(pelvis, heading, left, right).items():
                if parts is not None and part_id not in parts:
                    continue
                tracks.setdefault((human_id, part_id), []).append(np.concatenate((p1, p2)))
    frames = []
    for (human_id, part_id), rows in sorted(tracks.items()):
        rows = np.array(rows)
        p1 = limit_speed(times, rows[:, :3], max_speed * (1 - 1e-9))
        p2 = limit_speed(times, rows[:, 3:], max_speed * (1 - 1e-9))
        frames.append(pd.DataFrame({'time_s': times, 'human_id': human_id, 'part_id': part_id,
                                    'p1x': p1[:, 0], 'p1y': p1[:, 1], 'p1z': p1[:, 2],
                                    'p2x': p2[:, 0], 'p2y': p2[:, 1], 'p2z': p2[:, 2],
                                    'radius_m': _radius(part_id)}))
    return check_human_trace(pd.concat(frames, ignore_index=True)[TRACE_COLUMNS])
