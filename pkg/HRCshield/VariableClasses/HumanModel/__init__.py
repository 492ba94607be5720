from .BodyPart import BodyKind, BodyPart, HumanConfig, predict_occupancy, default_safe_pairs, DEFAULT_DIAMETERS, \
    DEFAULT_SKELETON
from .ContactGraph import CombinedBodyPart, build_contact_graph, combined_body_parts, connected_components
from .HumanTrace import TRACE_COLUMNS, load_human_trace, check_human_trace, HumanSnapshot, TraceReplay, \
    MeasurementBuffer
