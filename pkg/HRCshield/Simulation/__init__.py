from .SyntheticHumans import MOTIONS, PART_IDS, skeleton, limit_speed, synthetic_trace
from .Scenario import Scenario, load_scenario
from .Audit import audit_run
from .Simulator import run_scenario, nominal_progress
from .Report import report, plot_run, REPORT_COLUMNS
