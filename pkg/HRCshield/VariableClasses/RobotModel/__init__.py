from .JointSpec import JointSpec, transform_from_xyz_rpy
from .LinkSpec import LinkSpec, GeometryClass
from .ErrorBounds import ErrorBounds, AngularBounds
from .RobotModel import RobotModel, load_robot_model, robot_model_from_dict
