"""Task evaluators: pure functions of a recorded trace.

Outcome labels follow the experiment protocol: ``success``/``failure`` for
per-cycle judgments (counting), plus ``DNF`` (robot stalls without reaching
a pocket) and ``mischoice`` (wrong pocket) for the choice task.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..sim2d import WorldMap, normalize_angle
from .runner import Trace

SUCCESS = "success"
FAILURE = "failure"
DNF = "DNF"
MISCHOICE = "mischoice"

POCKET_NAMES = ("A", "B", "C")


@dataclass(frozen=True)
class TrialOutcome:
    label: str
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.label not in (SUCCESS, FAILURE, DNF, MISCHOICE):
            raise ValueError(f"unknown outcome label {self.label!r}")

    @property
    def ok(self) -> bool:
        return self.label == SUCCESS


@dataclass(frozen=True)
class CountingEvalParams:
    """Swing detection: near the wall, a count fires when the nose heading
    leaves the wall-facing direction past ``fire_deg`` and re-arms once it
    returns within ``arm_deg`` (hysteresis against jitter)."""

    near_margin: float = 0.08   # within this of the contact distance counts as "at the wall"
    arm_deg: float = 20.0
    fire_deg: float = 26.0
    far_x: float = 0.15         # back half of the approach lane
    forward_v: float = 0.05     # commanded speed that marks an approach start


def count_swings(trace: Trace, world: WorldMap, params: CountingEvalParams = CountingEvalParams()) -> int:
    """Number of nose-leaving events near the wall."""
    contact_x = 0.44  # wall at x=0.5, robot radius 0.06
    facing = world.start_pose.theta
    arm = math.radians(params.arm_deg)
    fire = math.radians(params.fire_deg)
    armed = False
    count = 0
    for s in trace.steps:
        near = s.pose.x >= contact_x - params.near_margin
        dev = abs(normalize_angle(s.pose.theta - facing))
        if not near:
            armed = False
            continue
        if armed and dev >= fire:
            count += 1
            armed = False
        elif dev < arm:
            armed = True
    return count


def evaluate_counting(
    trace: Trace,
    n: int,
    world: WorldMap,
    params: CountingEvalParams = CountingEvalParams(),
) -> TrialOutcome:
    """Judge one replay cycle: success iff exactly n swings were counted."""
    count = count_swings(trace, world, params)
    label = SUCCESS if count == n else FAILURE
    return TrialOutcome(label, {"count": count, "expected": n})


def segment_counting_cycles(
    trace: Trace,
    params: CountingEvalParams = CountingEvalParams(),
) -> list[tuple[int, int]]:
    """Split a continuous counting replay into complete cycles.

    A cycle starts when the robot, sitting in the far half of the lane, is
    commanded forward (rising edge). Another start can only fire after the
    robot has actually visited the wall, so command wobble near a boundary
    cannot shear off degenerate fragments. The tail after the last start is
    an incomplete cycle and is dropped.
    """
    contact_x = 0.44
    starts = []
    previous = False
    visited_wall = True  # the first start needs no prior wall visit
    for i, s in enumerate(trace.steps):
        if s.pose.x >= contact_x - params.near_margin:
            visited_wall = True
        approaching = s.pose.x < params.far_x and s.action.v_linear > params.forward_v
        if approaching and not previous and visited_wall:
            starts.append(i)
            visited_wall = False
        previous = approaching
    return [(a, b) for a, b in zip(starts, starts[1:])]


@dataclass(frozen=True)
class StallParams:
    """A stall is a window of near-zero commanded motion."""

    v_eps: float = 0.01
    w_eps: float = 0.05
    seconds: float = 5.0


def evaluate_choice(
    trace: Trace,
    target_pocket: str,
    world: WorldMap,
    stall: StallParams = StallParams(),
) -> TrialOutcome:
    """Judge one choice trial.

    The first terminal event wins: entering the target pocket (success),
    entering another pocket (mischoice), or commanded speed staying under
    the stall thresholds for the stall window (DNF). A trace that ends
    without any terminal event is a DNF (the trainer would eventually
    replace the robot).
    """
    if target_pocket not in POCKET_NAMES:
        raise ValueError(f"target pocket must be one of {POCKET_NAMES}")
    pockets = [world.region(name) for name in POCKET_NAMES]
    stall_steps = max(1, int(round(stall.seconds / trace.cycle_duration)))
    stalled = 0
    for s in trace.steps:
        if s.carried:
            stalled = 0
            continue
        for pocket in pockets:
            if pocket.contains(s.pose.x, s.pose.y):
                label = SUCCESS if pocket.name == target_pocket else MISCHOICE
                return TrialOutcome(
                    label,
                    {"pocket": pocket.name, "duration_s": (s.step + 1) * trace.cycle_duration},
                )
        if abs(s.action.v_linear) < stall.v_eps and abs(s.action.v_angular) < stall.w_eps:
            stalled += 1
            if stalled >= stall_steps:
                return TrialOutcome(DNF, {"reason": "stall", "duration_s": (s.step + 1) * trace.cycle_duration})
        else:
            stalled = 0
    return TrialOutcome(DNF, {"reason": "timeout", "duration_s": len(trace.steps) * trace.cycle_duration})


@dataclass(frozen=True)
class StallEvent:
    start: int
    length: int


def mid_session_stalls(
    events: list["StallEvent"],
    trace: Trace,
    margin_seconds: float = 5.0,
) -> list["StallEvent"]:
    """Drop stall events at the run boundaries, where the taught session
    itself pauses (preparation and finishing); what remains are stops in the
    middle of the cyclic behavior, where the taught motion never rests."""
    margin = int(round(margin_seconds / trace.cycle_duration))
    lo, hi = margin, len(trace.steps) - margin
    return [e for e in events if e.start >= lo and e.start + e.length <= hi]


def find_stall_events(
    trace: Trace,
    v_eps: float = 0.02,
    w_eps: float = 0.05,
    min_seconds: float = 1.0,
) -> list[StallEvent]:
    """Windows of >= min_seconds where the commanded action is near zero.

    Carried steps and steps whose nearest taught context is a deliberate
    pause are not the interesting case, so windows that consist purely of
    carried steps are skipped; the caller filters taught pauses if the
    episode contains any.
    """
    min_steps = max(1, int(round(min_seconds / trace.cycle_duration)))
    events = []
    run_start = None
    for i, s in enumerate(trace.steps):
        quiet = (
            not s.carried
            and abs(s.action.v_linear) < v_eps
            and abs(s.action.v_angular) < w_eps
        )
        if quiet:
            if run_start is None:
                run_start = i
        else:
            if run_start is not None and i - run_start >= min_steps:
                events.append(StallEvent(run_start, i - run_start))
            run_start = None
    if run_start is not None and len(trace.steps) - run_start >= min_steps:
        events.append(StallEvent(run_start, len(trace.steps) - run_start))
    return events
