from .TrajectoryStep import TrajectoryStep, MonitoredTrajectory, build_monitored, stopped_trajectory, CONTINUITY_TOL
from .Path import JointPath, LinePath, PathLimits, PathController, load_waypoints, brake_profile, advance_progress
from .Failsafe import plan_failsafe
from .Reach import LinkReach, RobotReach, robot_reach, min_normal_speed
