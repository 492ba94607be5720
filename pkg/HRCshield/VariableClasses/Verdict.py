"""
This document contains the outcome of a verification: the verdict and the records of violated constraints.
"""
from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence, Tuple

import pandas as pd


class ConstraintTag(str, Enum):
    FREE_ENERGY = 'free-energy'
    CLAMP_ENERGY = 'clamp-energy'
    CONTACT = 'contact'


class ContactClass(str, Enum):
    """
    Environmentally constrained, self-constrained or unconstrained contact.
    """
    ECC = 'ECC'
    SCC = 'SCC'
    UNCONSTRAINED = 'unconstrained'


class ViolationRecord:
    """
    One failed (interval, link, body part) check.
    """

    __slots__ = 'interval', 'link', 'part', 'constraint', 'contact_class', 'energy', 'threshold'

    def __init__(self, interval: int, link: int, part: str, constraint: ConstraintTag, contact_class: ContactClass,
                 energy: float = 0., threshold: float = 0.):
        """

        Parameters
        ----------
        interval : int
            Interval index
        link : int
            Link index
        part : str
            Identifier of the (combined) body part
        constraint : ConstraintTag
            Constraint which failed
        contact_class : ContactClass
            Contact class the constraint belongs to
        energy : float
            Effective energy of the link [J]
        threshold : float
            Threshold which was exceeded [J]
        """
        self.interval = int(interval)
        self.link = int(link)
        self.part = part
        self.constraint = ConstraintTag(constraint)
        self.contact_class = ContactClass(contact_class)
        self.energy = float(energy)
        self.threshold = float(threshold)

    def as_tuple(self) -> tuple:
        return (self.interval, self.link, self.part, self.constraint.value, self.contact_class.value, self.energy,
                self.threshold)

    def __eq__(self, other) -> bool:
        return isinstance(other, ViolationRecord) and self.as_tuple() == other.as_tuple()

    def __repr__(self) -> str:
        return (f'ViolationRecord(interval={self.interval}, link={self.link}, part={self.part}, '
                f'{self.constraint.value}, {self.contact_class.value})')


class Verdict:
    """
    Result of the verification of a monitored trajectory. A safe verdict has no violation records.
    """

    __slots__ = 'safe', 'violations'

    def __init__(self, safe: bool, violations: Sequence[ViolationRecord] = ()):
        violations = tuple(violations)
        if safe and violations:
            raise ValueError('A safe verdict cannot have violations.')
        if not safe and not violations:
            raise ValueError('An unsafe verdict needs at least one violation.')
        self.safe = bool(safe)
        self.violations: Tuple[ViolationRecord, ...] = violations

    @classmethod
    def from_violations(cls, violations: Sequence[ViolationRecord]) -> Verdict:
        return cls(not violations, violations)

    @property
    def first_violation(self) -> Optional[ViolationRecord]:
        return self.violations[0] if self.violations else None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([record.as_tuple() for record in self.violations],
                            columns=['interval', 'link', 'part', 'constraint', 'contact_class', 'energy_J',
                                     'threshold_J'])

    def __bool__(self) -> bool:
        return self.safe

    def __eq__(self, other) -> bool:
        return isinstance(other, Verdict) and self.safe == other.safe and self.violations == other.violations

    def __repr__(self) -> str:
        return f'Verdict(safe={self.safe}, first_violation={self.first_violation})'
