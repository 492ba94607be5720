"""
This document contains the body part description of a human and the occupancy prediction of a body part.
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from HRCshield.VariableClasses.BaseClass import BaseClass
from HRCshield.VariableClasses.Geometry import Capsule
from HRCshield.logger import shield_logger


class BodyKind(str, Enum):
    """
    Body regions with their own contact energy thresholds.
    """
    HAND = 'hand'
    LOWER_ARM = 'lower_arm'
    UPPER_ARM = 'upper_arm'
    TORSO = 'torso'
    HEAD = 'head'
    OTHER = 'other'


# placeholder 95th percentile diameters [m], a deployment has to override them with its own anthropometric data
DEFAULT_DIAMETERS: Dict[BodyKind, float] = {BodyKind.HAND: 0.205,
                                            BodyKind.LOWER_ARM: 0.121,
                                            BodyKind.UPPER_ARM: 0.112,
                                            BodyKind.TORSO: 0.40,
                                            BodyKind.HEAD: 0.205,
                                            BodyKind.OTHER: 0.15}

# part id: (kind, limb)
DEFAULT_SKELETON: Dict[str, Tuple[BodyKind, Optional[str]]] = {
    'head': (BodyKind.HEAD, None),
    'neck': (BodyKind.OTHER, None),
    'torso': (BodyKind.TORSO, None),
    'pelvis': (BodyKind.OTHER, None),
    'left_upper_arm': (BodyKind.UPPER_ARM, 'left'),
    'left_lower_arm': (BodyKind.LOWER_ARM, 'left'),
    'left_hand': (BodyKind.HAND, 'left'),
    'right_upper_arm': (BodyKind.UPPER_ARM, 'right'),
    'right_lower_arm': (BodyKind.LOWER_ARM, 'right'),
    'right_hand': (BodyKind.HAND, 'right'),
    'left_thigh': (BodyKind.OTHER, 'left_leg'),
    'left_shin': (BodyKind.OTHER, 'left_leg'),
    'left_foot': (BodyKind.OTHER, 'left_leg'),
    'right_thigh': (BodyKind.OTHER, 'right_leg'),
    'right_shin': (BodyKind.OTHER, 'right_leg'),
    'right_foot': (BodyKind.OTHER, 'right_leg')}

_ADJACENT_KINDS = (frozenset((BodyKind.HAND, BodyKind.LOWER_ARM)), frozenset((BodyKind.LOWER_ARM, BodyKind.UPPER_ARM)))


class BodyPart(BaseClass):
    """
    Measured body part of a human.
    """

    __slots__ = 'part_id', 'kind', 'diameter', 'capsule', 'human_id', 'limb'

    def __init__(self, part_id: str, kind: BodyKind, diameter: float, capsule: Capsule, human_id: str = "human",
                 limb: str = None):
        """

        Parameters
        ----------
        part_id : str
            Identifier of the body part (unique per human)
        kind : BodyKind
            Body region used for the thresholds
        diameter : float
            Diameter of the body part [m]
        capsule : Capsule
            Measured capsule in the world frame
        human_id : str
            Identifier of the human
        limb : str
            Limb the part belongs to (None for the trunk)

        Raises
        ------
        ValueError
            When the diameter is not positive
        """
        if not diameter > 0:
            raise ValueError(f'The diameter of body part {part_id} should be positive, not {diameter}.')
        self.part_id: str = str(part_id)
        self.kind: BodyKind = BodyKind(kind)
        self.diameter: float = float(diameter)
        self.capsule: Capsule = capsule
        self.human_id: str = str(human_id)
        self.limb: Optional[str] = limb

    @property
    def key(self) -> Tuple[str, str]:
        return self.human_id, self.part_id

    def __repr__(self) -> str:
        return f'BodyPart({self.human_id}/{self.part_id}, {self.kind.value})'


class HumanConfig(BaseClass):
    """
    Motion model of the humans and the set of body part pairs which cannot clamp each other.
    """

    __slots__ = 'max_speed', 'meas_error', 'meas_delay', 'safe_pairs', 'diameters'

    def __init__(self, max_speed: float = 1.6, meas_error: float = 0., meas_delay: float = 0.,
                 safe_pairs: Iterable = None, diameters: Dict = None):
        """

        Parameters
        ----------
        max_speed : float
            Maximal speed of every point of the human [m/s]
        meas_error : float
            Maximal measurement error of the body part positions [m]
        meas_delay : float
            Delay between the measurement and its availability [s]
        safe_pairs : iterable
            Pairs of part ids of the same human which cannot be clamped together.
            None means adjacent parts of the same limb (hand and lower arm, lower arm and upper arm).
        diameters : dict
            Diameter per body kind [m], defaults to DEFAULT_DIAMETERS

        Raises
        ------
        ValueError
            When the speed is not positive or the error or delay is negative
        """
        if not max_speed > 0:
            raise ValueError(f'The maximal human speed should be positive, not {max_speed}.')
        if meas_error < 0 or meas_delay < 0:
            raise ValueError(f'The measurement error ({meas_error}) and delay ({meas_delay}) should be non-negative.')
        self.max_speed: float = float(max_speed)
        self.meas_error: float = float(meas_error)
        self.meas_delay: float = float(meas_delay)
        self.safe_pairs = None if safe_pairs is None else frozenset(frozenset(pair) for pair in safe_pairs)
        diameters = {} if diameters is None else {BodyKind(kind): float(value) for kind, value in diameters.items()}
        self.diameters: Dict[BodyKind, float] = {**DEFAULT_DIAMETERS, **diameters}

    def safe_pair_keys(self, parts: Iterable[BodyPart]) -> FrozenSet[FrozenSet[Tuple[str, str]]]:
        """
        This function returns the safe pairs among the given body parts, keyed by (human_id, part_id).
        Without explicit safe pairs, this is default_safe_pairs(parts).

        Parameters
        ----------
        parts : iterable of BodyPart
            Body parts of all humans

        Returns
        -------
        frozenset
            Pairs of (human_id, part_id) keys
        """
        if self.safe_pairs is None:
            return default_safe_pairs(parts)
        parts = list(parts)
        return frozenset(frozenset((first.key, second.key)) for index, first in enumerate(parts)
                         for second in parts[index + 1:] if first.human_id == second.human_id
                         and frozenset((first.part_id, second.part_id)) in self.safe_pairs)

    def is_safe_pair(self, first: BodyPart, second: BodyPart) -> bool:
        """
        This function checks whether two body parts belong to the set of safe pairs.
        Parts of different humans never form a safe pair.

        Parameters
        ----------
        first : BodyPart
        second : BodyPart

        Returns
        -------
        bool
        """
        return frozenset((first.key, second.key)) in self.safe_pair_keys((first, second))

    def make_part(self, part_id: str, capsule: Capsule, human_id: str = "human") -> BodyPart:
        """
        This function creates a body part with the kind, limb and diameter of the default skeleton.
        Unknown part ids are of kind other.

        Parameters
        ----------
        part_id : str
            Identifier of the part
        capsule : Capsule
            Measured capsule
        human_id : str
            Identifier of the human

        Returns
        -------
        BodyPart
        """
        kind, limb = DEFAULT_SKELETON.get(part_id, (BodyKind.OTHER, None))
        return BodyPart(part_id, kind, self.diameters[kind], capsule, human_id, limb)


def predict_occupancy(part: BodyPart, config: HumanConfig, t_a: float, t_b: float) -> Capsule:
    """
    This function over-approximates the space a body part can occupy until t_b.
    The measured capsule is inflated by the measurement error plus the distance travelled at maximal speed
    since the measurement was taken.

    Parameters
    ----------
    part : BodyPart
        Measured body part
    config : HumanConfig
        Human motion model
    t_a : float
        Start of the interval, relative to the reception of the measurement [s]
    t_b : float
        End of the interval, relative to the reception of the measurement [s]

    Returns
    -------
    Capsule
        Occupancy for the interval [t_a, t_b]

    Raises
    ------
    ValueError
        When a time is negative or t_b < t_a
    """
    if t_a < 0 or t_b < t_a:
        shield_logger.error(f'Invalid prediction interval [{t_a}, {t_b}].')
        raise ValueError(f'The prediction interval [{t_a}, {t_b}] should satisfy 0 <= t_a <= t_b.')
    return part.capsule.inflate(config.meas_error + config.max_speed * (t_b + config.meas_delay))


def default_safe_pairs(parts: Iterable[BodyPart]) -> FrozenSet[FrozenSet[Tuple[str, str]]]:
    """
    This function returns the pairs of body parts which cannot clamp each other: adjacent parts (hand and lower arm,
    lower arm and upper arm) of the same limb of the same human.

    Parameters
    ----------
    parts : iterable of BodyPart
        Body parts of all humans

    Returns
    -------
    frozenset
        Pairs of (human_id, part_id) keys
    """
    parts = list(parts)
    pairs = set()
    for index, first in enumerate(parts):
        for second in parts[index + 1:]:
            if first.human_id == second.human_id and first.limb is not None and first.limb == second.limb \
                    and frozenset((first.kind, second.kind)) in _ADJACENT_KINDS:
                pairs.add(frozenset((first.key, second.key)))
    return frozenset(pairs)
