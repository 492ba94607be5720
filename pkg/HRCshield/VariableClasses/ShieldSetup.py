"""
This document contains the ShieldSetup class.
This class contains all the run-time settings of the shield.
"""
import copy
from enum import Enum

from HRCshield.VariableClasses.BaseClass import BaseClass


class ContactMode(str, Enum):
    """
    Variant of the safety constraint.

    * full: unconstrained contacts are checked against the free thresholds, possible clamping against the clamp ones
    * clamp_only: every possible contact is checked against the clamp thresholds
    * contact_only: every possible contact is a violation
    """
    FULL = 'full'
    CLAMP_ONLY = 'clamp_only'
    CONTACT_ONLY = 'contact_only'


class ShieldSetup(BaseClass):
    """
    This class contains all the settings related to the verification of the shield.
    """

    __slots__ = 'dt', 'intended_steps', 'enumerate_violations', 'use_diameter_relaxation', \
                'use_velocity_relaxation', 'use_topology_relaxation', '_contact_mode', '_backup'

    def __init__(self, dt: float = 0.006, intended_steps: int = 1, enumerate_violations: bool = False,
                 use_diameter_relaxation: bool = True, use_velocity_relaxation: bool = True,
                 use_topology_relaxation: bool = True, contact_mode: ContactMode = ContactMode.FULL):
        """

        Parameters
        ----------
        dt : float
            Time step of the controller [s]
        intended_steps : int
            Number of intended steps in every monitored trajectory
        enumerate_violations : bool
            True to collect all violations instead of stopping at the first one
        use_diameter_relaxation : bool
            True if a clamp is excluded when the gap is larger than the diameter of the body part
        use_velocity_relaxation : bool
            True if a clamp is excluded when the link moves away from the other side
        use_topology_relaxation : bool
            True if link pairs of the robot topology cannot clamp
        contact_mode : ContactMode
            Variant of the safety constraint

        Switching a relaxation off can only make the verdicts more conservative.
        """
        self.dt: float = 0.006
        self.intended_steps: int = 1
        self.enumerate_violations: bool = False
        self.use_diameter_relaxation: bool = True
        self.use_velocity_relaxation: bool = True
        self.use_topology_relaxation: bool = True
        self._contact_mode: ContactMode = ContactMode.FULL

        self._backup: ShieldSetup = None

        # set the variables in this class by passing down the values given in this function
        self._set_shield_setup(kwargs=locals())

    def update_variables(self, **kwargs) -> None:
        """
        This function updates the variables in the current class.

        Parameters
        ----------
        kwargs
            Keyword arguments with all the variables that need to be changed with the corresponding new values

        Returns
        -------
        None
        """
        self._set_shield_setup(kwargs)

    def _set_shield_setup(self, kwargs) -> None:
        """
        This method sets all the variables in the ShieldSetup class.

        Parameters
        ----------
        kwargs
            All the keyword arguments of the init class or all the variables in the class itself.

        Returns
        -------
        None

        Raises
        ------
        ValueError
            When a variable does not exist or has an invalid value
        """
        variables = self.__slots__
        for key, val in kwargs.items():
            if key in ('contact_mode', '_contact_mode'):
                if val is not None:
                    self.contact_mode = val
            elif key in variables:
                if val is None or key == '_backup':
                    continue
                if key == 'dt' and not val > 0:
                    raise ValueError(f'The time step should be positive, not {val}.')
                if key == 'intended_steps' and (int(val) != val or val < 1):
                    raise ValueError(f'The number of intended steps should be a positive integer, not {val}.')
                self.__setattr__(key, val)
            elif key != 'self':
                raise ValueError(f'The variable {key} is not a valid option!')

    @property
    def contact_mode(self) -> ContactMode:
        return self._contact_mode

    @contact_mode.setter
    def contact_mode(self, mode) -> None:
        try:
            self._contact_mode = ContactMode(mode)
        except ValueError:
            raise ValueError(f'The contact mode {mode} does not exist!')

    def make_backup(self) -> None:
        """
        This function sets the backup variable of the class.
        This is done by making a copy of the current class.

        Returns
        -------
        None
        """
        self._backup = copy.copy(self)

    def restore_backup(self) -> None:
        """
        This function restores the class to a previous backup using the self.backup variable.

        Returns
        -------
        None

        Raises
        ------
        ValueError
            A value error is raised when this function is called before a backup has been made
        """
        if self._backup is None:
            raise ValueError("No backup has been made.")

        kwargs = {}
        for var in self.__slots__:
            kwargs[var] = self._backup.__getattribute__(var)
        self._set_shield_setup(kwargs)

    def __eq__(self, other):
        if not isinstance(other, ShieldSetup):
            return False
        for i in self.__slots__:
            if i == '_backup':
                continue
            if getattr(self, i) != getattr(other, i):
                return False
        return True
