from .app import DEFAULT_PORT, create_app
from .models import (
    AckModel,
    BenchRequest,
    BenchResponse,
    EnvironmentInfo,
    ErrorFrameModel,
    ExperimentRequest,
    ExperimentResponse,
    FrameModel,
    KeysModel,
    OutcomeModel,
    PoseModel,
    ReplayRequest,
    ReplayResponse,
    TeachRequest,
    TeachResponse,
)
from .ops import do_bench, do_experiment, do_replay, do_teach, list_environments
from .session import ProtocolError, SessionConfig, SessionCore, belief_bins, keys_to_action

__all__ = [name for name in dir() if not name.startswith("_")]
