"""
This document contains the information for the BaseClass.
This class is used as a super class for different variable classes.
It also contains the custom exceptions of HRCshield.
"""
from __future__ import annotations

from typing import List

import numpy as np


class BaseClass:
    """
    This class contains basic functionality of different classes within HRCshield.

    This class should only be altered whenever a highly general method should be implemented.
    """

    __allow_none__ = []

    def check_values(self) -> bool:
        """
        This functions checks if the class attributes differ from None.

        Returns
        -------
        bool
            True if all values are correct. False otherwise
        """
        if hasattr(self, "__slots__"):
            variables: List[str] = list(self.__slots__)
        else:
            variables: List[str] = [attr for attr in dir(self) if not callable(getattr(self, attr)) and not attr.startswith("__")]

        return all(getattr(self, var) is not None for var in variables if var not in self.__class__.__allow_none__)

    def __eq__(self, other) -> bool:
        if not isinstance(other, self.__class__):
            return False
        for var in self.__slots__:
            left, right = getattr(self, var), getattr(other, var)
            if isinstance(left, np.ndarray) or isinstance(right, np.ndarray):
                if not np.array_equal(left, right):
                    return False
            elif left != right:
                return False
        return True


def frozen_array(values, shape: tuple = None, name: str = "value") -> np.ndarray:
    """
    This function converts values to a read-only float array and checks that it is finite.

    Parameters
    ----------
    values : array_like
        Values to convert
    shape : tuple
        Expected shape (None means no check)
    name : str
        Name used in the error message

    Returns
    -------
    np.ndarray
        Read-only float64 array

    Raises
    ------
    ValueError
        When the shape is wrong or the array contains non-finite values
    """
    array = np.array(values, dtype=np.float64)
    if shape is not None and array.shape != shape:
        raise ValueError(f'The {name} should have shape {shape}, but it has shape {array.shape}.')
    if not np.all(np.isfinite(array)):
        raise ValueError(f'The {name} contains non-finite values.')
    array.flags.writeable = False
    return array


class SingularConfigurationError(ValueError):
    """
    This Error occurs when a reflected mass is requested along a direction in which the contact point
    cannot move in the current configuration.
    """
    def __init__(self, link: int):
        super().__init__(f'The contact point on link {link} cannot move along the requested direction. '
                         f'The configuration is singular for this direction.')


class ContinuityError(ValueError):
    """
    This Error occurs when a failsafe trajectory does not start in the terminal state of the intended trajectory.
    """
    def __init__(self, deviation: float):
        super().__init__(f'The failsafe trajectory does not continue the intended trajectory '
                         f'(maximal state deviation {deviation:.3e}).')


class GridMismatchError(ValueError):
    """
    This Error occurs when reach sets and the monitored trajectory do not share the same interval grid.
    """
    def __init__(self, expected: int, received: int):
        super().__init__(f'The reach sets cover {received} intervals, but the trajectory has {expected} intervals.')


class MissingThresholdError(KeyError):
    """
    This Error occurs when the contact energy table has no entry for a lookup.
    """
    def __init__(self, kind: str, geometry: str, contact: str):
        super().__init__(f'No contact energy threshold for body part {kind}, geometry {geometry} and contact {contact}.')


class UnsupportedJointError(ValueError):
    """
    This Error occurs when a robot description contains a joint which is not revolute.
    """
    def __init__(self, joint: str, joint_type: str):
        super().__init__(f'Joint {joint} is of type {joint_type}. Only revolute joints are supported.')


class JointLimitViolation(ValueError):
    """
    This Error occurs when an intended trajectory exceeds the joint limits of the robot.
    """
    def __init__(self, quantity: str, joint: int, value: float, limit: float):
        super().__init__(f'The intended trajectory exceeds the {quantity} limit of joint {joint} '
                         f'({value:.4f} > {limit:.4f}).')
