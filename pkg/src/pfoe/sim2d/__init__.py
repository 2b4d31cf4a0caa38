from .dynamics import CONTROL_CYCLE, ROBOT_RADIUS, MotionNoise, Pose, normalize_angle, step_dynamics
from .geometry import point_segment_distance, raycast, sweep_disc
from .sensors import SensorModel, sense
from .simulator import Simulator
from .world import (
    ENVIRONMENT_NAMES,
    Region,
    UnknownEnvironmentError,
    WorldMap,
    WorldParseError,
    load_environment,
    parse_world_text,
)

__all__ = [
    "CONTROL_CYCLE",
    "ROBOT_RADIUS",
    "MotionNoise",
    "Pose",
    "normalize_angle",
    "step_dynamics",
    "point_segment_distance",
    "raycast",
    "sweep_disc",
    "SensorModel",
    "sense",
    "Simulator",
    "ENVIRONMENT_NAMES",
    "Region",
    "UnknownEnvironmentError",
    "WorldMap",
    "WorldParseError",
    "load_environment",
    "parse_world_text",
]
