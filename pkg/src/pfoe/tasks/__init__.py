from .evaluators import (
    DNF,
    FAILURE,
    MISCHOICE,
    SUCCESS,
    CountingEvalParams,
    StallEvent,
    StallParams,
    TrialOutcome,
    count_swings,
    evaluate_choice,
    evaluate_counting,
    find_stall_events,
    mid_session_stalls,
    segment_counting_cycles,
)
from .experiment import (
    ConfigError,
    ExperimentConfig,
    Report,
    TrialRow,
    choice_table,
    counting_table,
    parse_config,
    pretty_table,
    report_to_tsv,
    run_experiment,
)
from .replays import ReplayResult, replay_choice, replay_counting, replay_freerun
from .runner import (
    ReplayDriver,
    TeachResult,
    Trace,
    TraceParseError,
    TraceStep,
    deserialize_trace,
    run_teacher,
    serialize_trace,
)
from .teachers import (
    POCKETS,
    TaskSpec,
    TeacherStep,
    UnknownTaskError,
    counting_cycle_steps,
    scripted_teacher,
)

__all__ = [name for name in dir() if not name.startswith("_")]
