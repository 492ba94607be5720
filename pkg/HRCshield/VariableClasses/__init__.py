from .BaseClass import BaseClass, frozen_array, SingularConfigurationError, ContinuityError, GridMismatchError, \
    MissingThresholdError, UnsupportedJointError, JointLimitViolation
from .Geometry import *
from .RobotModel import *
from .HumanModel import *
from .Trajectory import *
from .Environment import Environment, environment_from_dict, load_environment
from .ContactEnergyTable import ContactEnergyTable, ContactType, force_from_energy
from .Verdict import Verdict, ViolationRecord, ConstraintTag, ContactClass
from .ShieldSetup import ShieldSetup, ContactMode
from .Result import RunResult, AuditReport, AUDIT_COLUMNS
