"""PFoE: teach-and-replay decision making with a particle filter over episode time."""

from .episode import (
    Action,
    Episode,
    EpisodeError,
    EpisodeParseError,
    EpisodeTooShortError,
    Event,
    Observation,
    ZERO_ACTION,
    deserialize,
    load_episode,
    record_event,
    save_episode,
    serialize,
    trim,
)
from .filter import (
    DEFAULT_PARTICLES,
    KernelParams,
    Particle,
    ParticleSet,
    PfoeFilter,
    belief_at,
    filter_step,
    init_particles,
    likelihood,
    measurement_update,
    motion_update,
    resample,
)
from .oracle import ExactBelief, exact_correct, exact_predict, tv_distance
from .policy import mean_policy, mode_policy

__version__ = "0.1.0"
