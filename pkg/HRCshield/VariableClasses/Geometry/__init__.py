from .Capsule import Capsule, Ball, EPS_GEOM, capsule_capsule_distance, capsule_distances, \
    capsule_intersects_capsule, segment_segment_distance, point_segment_distance, segment_closest_points
from .Polytope import Polytope
from .distances import capsule_polytope_distance, capsule_intersects_polytope, signed_distance_point, \
    active_halfspaces, capsule_support, segment_polytope_distance
