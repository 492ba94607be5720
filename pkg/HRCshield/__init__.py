import pathlib

from HRCshield.Shield import Shield
from HRCshield.VariableClasses import *
from HRCshield.Baselines import *
from HRCshield.Simulation import *
FOLDER: pathlib.Path = pathlib.Path(__file__).parent  # solve problem with importing HRCshield from sub-folders
from HRCshield.logger import shield_logger
