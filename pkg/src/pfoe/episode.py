"""Episodes: the recorded (action, observation) sequences of a teaching phase.

An episode is an ordered sequence of events e_1..e_T, one event per control
cycle. Indexing is 1-based throughout; index 0 is reserved and never carries
an event. Episodes are immutable values once teaching ends and are safe to
share read-only across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# Sanity bounds on commanded velocities; override at module level if a
# platform needs faster motion.
V_LINEAR_MAX = 1.0
V_ANGULAR_MAX = math.pi

FILE_MAGIC = "pfoe-episode"
FILE_VERSION = "v1"

SENSOR_CHANNELS = ("z_lf", "z_ls", "z_rs", "z_rf")


class EpisodeError(ValueError):
    """Invalid episode data."""


class EpisodeTooShortError(EpisodeError):
    """Trimming would leave no events."""


class EpisodeParseError(EpisodeError):
    """Malformed episode file. Carries the offending 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Action:
    """Commanded linear (m/s) and angular (rad/s) velocity for one cycle."""

    v_linear: float
    v_angular: float

    def __post_init__(self):
        object.__setattr__(self, "v_linear", float(self.v_linear))
        object.__setattr__(self, "v_angular", float(self.v_angular))
        if not (math.isfinite(self.v_linear) and math.isfinite(self.v_angular)):
            raise EpisodeError("action velocities must be finite")
        if abs(self.v_linear) > V_LINEAR_MAX:
            raise EpisodeError(f"|v_linear| exceeds {V_LINEAR_MAX}: {self.v_linear}")
        if abs(self.v_angular) > V_ANGULAR_MAX:
            raise EpisodeError(f"|v_angular| exceeds {V_ANGULAR_MAX}: {self.v_angular}")


ZERO_ACTION = Action(0.0, 0.0)


@dataclass(frozen=True)
class Observation:
    """Four range-sensor intensity counts: left-forward, left-side, right-side,
    right-forward. Channels are strictly positive integers so the log-scale
    likelihood is always defined; raw zeros must be clamped at recording time
    (see :meth:`clamped`)."""

    z_lf: int
    z_ls: int
    z_rs: int
    z_rf: int

    def __post_init__(self):
        for name in SENSOR_CHANNELS:
            value = getattr(self, name)
            ivalue = int(value)
            if ivalue != value:
                raise EpisodeError(f"{name} must be an integer, got {value!r}")
            if ivalue < 1:
                raise EpisodeError(f"{name} must be >= 1, got {ivalue}")
            object.__setattr__(self, name, ivalue)

    @classmethod
    def clamped(cls, z_lf: int, z_ls: int, z_rs: int, z_rf: int) -> "Observation":
        """Build an observation from raw readings, clamping each channel to >= 1."""
        return cls(*(max(1, int(v)) for v in (z_lf, z_ls, z_rs, z_rf)))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.z_lf, self.z_ls, self.z_rs, self.z_rf)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=np.int64)


@dataclass(frozen=True)
class Event:
    """One (action, observation) pair at a single control cycle."""

    action: Action
    observation: Observation


@dataclass(eq=True)
class Episode:
    """Ordered event sequence e_1..e_T with a fixed control-cycle duration.

    Treat instances as immutable: all operations return new episodes.
    """

    events: tuple[Event, ...] = ()
    cycle_duration: float = 0.1

    def __post_init__(self):
        self.events = tuple(self.events)
        if not (math.isfinite(self.cycle_duration) and self.cycle_duration > 0):
            raise EpisodeError(f"cycle_duration must be positive, got {self.cycle_duration}")

    def __len__(self) -> int:
        return len(self.events)

    def event_at(self, t: int) -> Event:
        """Event at 1-based index t (t=0 carries no event)."""
        if not 1 <= t <= len(self.events):
            raise IndexError(f"episode index {t} out of range 1..{len(self.events)}")
        return self.events[t - 1]

    @property
    def duration_seconds(self) -> float:
        return len(self.events) * self.cycle_duration

    @cached_property
    def actions_array(self) -> np.ndarray:
        """(T, 2) array of actions; row i holds a_{i+1} as (v_linear, v_angular)."""
        return np.array(
            [(e.action.v_linear, e.action.v_angular) for e in self.events],
            dtype=np.float64,
        ).reshape(len(self.events), 2)

    @cached_property
    def observations_array(self) -> np.ndarray:
        """(T, 4) int array of observations; row i holds z_{i+1}."""
        return np.array(
            [e.observation.as_tuple() for e in self.events], dtype=np.int64
        ).reshape(len(self.events), 4)


def record_event(episode: Episode, action: Action, observation: Observation) -> Episode:
    """Append one event; the new event sits at index T+1."""
    return Episode(episode.events + (Event(action, observation),), episode.cycle_duration)


def trim(episode: Episode, head_seconds: float, tail_seconds: float) -> Episode:
    """Drop floor(head/cycle) events from the front and floor(tail/cycle) from
    the back, re-indexing the remainder 1..T'.

    Raises EpisodeTooShortError if nothing would remain.
    """
    if head_seconds < 0 or tail_seconds < 0:
        raise EpisodeError("trim durations must be non-negative")
    # Epsilon guards quotients like 0.7/0.1 = 6.999... from losing a cycle.
    drop_head = math.floor(head_seconds / episode.cycle_duration + 1e-9)
    drop_tail = math.floor(tail_seconds / episode.cycle_duration + 1e-9)
    remaining = len(episode) - drop_head - drop_tail
    if remaining < 1:
        raise EpisodeTooShortError(
            f"trimming {drop_head}+{drop_tail} events from a length-{len(episode)} "
            "episode would leave nothing"
        )
    events = episode.events[drop_head : len(episode) - drop_tail]
    return Episode(events, episode.cycle_duration)


def serialize(episode: Episode) -> str:
    """Render the one-line-per-event text format.

    Header: ``pfoe-episode v1 cycle=<seconds>``; each following line is
    ``t v_linear v_angular z_lf z_ls z_rs z_rf``. Floats use repr so the
    round trip is lossless.
    """
    lines = [f"{FILE_MAGIC} {FILE_VERSION} cycle={episode.cycle_duration!r}"]
    for t, event in enumerate(episode.events, start=1):
        a, z = event.action, event.observation
        lines.append(
            f"{t} {a.v_linear!r} {a.v_angular!r} {z.z_lf} {z.z_ls} {z.z_rs} {z.z_rf}"
        )
    return "\n".join(lines) + "\n"


def deserialize(text: str) -> Episode:
    """Parse the episode file format; inverse of :func:`serialize`."""
    lines = text.splitlines()
    if not lines:
        raise EpisodeParseError(1, "empty input, expected header")
    header = lines[0].split()
    if len(header) != 3 or header[0] != FILE_MAGIC or header[1] != FILE_VERSION:
        raise EpisodeParseError(1, f"expected '{FILE_MAGIC} {FILE_VERSION} cycle=<s>' header")
    if not header[2].startswith("cycle="):
        raise EpisodeParseError(1, "missing cycle= field in header")
    try:
        cycle = float(header[2][len("cycle="):])
    except ValueError:
        raise EpisodeParseError(1, f"bad cycle value {header[2]!r}") from None

    events = []
    expected_t = 1
    for line_no, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = raw.split()
        if len(fields) != 7:
            raise EpisodeParseError(line_no, f"expected 7 fields, got {len(fields)}")
        try:
            t = int(fields[0])
        except ValueError:
            raise EpisodeParseError(line_no, f"bad index {fields[0]!r}") from None
        if t != expected_t:
            raise EpisodeParseError(line_no, f"expected index {expected_t}, got {t}")
        try:
            action = Action(float(fields[1]), float(fields[2]))
        except (ValueError, EpisodeError) as exc:
            raise EpisodeParseError(line_no, f"bad action: {exc}") from None
        channels = []
        for name, field in zip(SENSOR_CHANNELS, fields[3:7]):
            try:
                value = int(field)
            except ValueError:
                raise EpisodeParseError(line_no, f"bad {name} value {field!r}") from None
            if value < 1:
                raise EpisodeParseError(line_no, f"{name} must be >= 1, got {value}")
            channels.append(value)
        events.append(Event(action, Observation(*channels)))
        expected_t += 1
    try:
        return Episode(tuple(events), cycle)
    except EpisodeError as exc:
        raise EpisodeParseError(1, str(exc)) from None


def save_episode(path, episode: Episode) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(episode))


def load_episode(path) -> Episode:
    with open(path, "r", encoding="utf-8") as fh:
        return deserialize(fh.read())
