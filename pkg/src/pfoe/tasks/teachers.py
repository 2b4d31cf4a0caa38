"""Scripted teachers: deterministic stand-ins for the human trainer.

Each teacher emits one quantized action per control cycle (the teleop action
set: 0.2 m/s forward/backward, +-pi/2 rad/s turns, combinable) with small
seeded timing jitter standing in for human variation. Steps flagged with
``lift`` mark cycles where the trainer carries the robot back to the start;
the teach runner teleports the robot and records floor observations there
while the recording keeps running.

Teachers pad the start and end of a session with idle cycles, the "silent
events at preparation and finishing" that the standard five-second trim is
meant to remove.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..episode import Action, ZERO_ACTION

FORWARD = Action(0.2, 0.0)
BACKWARD = Action(-0.2, 0.0)
TURN_LEFT = Action(0.0, math.pi / 2)
TURN_RIGHT = Action(0.0, -math.pi / 2)

# Segment lengths in cycles (0.1 s each), sized for the built-in worlds.
# The retreat runs past the sensors' effective range, so every turnaround
# happens in the observation-flat far zone, like the real corridor runs.
COUNTING_PAD_STEPS = 90
COUNTING_BREATH_STEPS = 0
COUNTING_APPROACH_STEPS = 32
COUNTING_SWING_STEPS = 5
COUNTING_RETREAT_STEPS = 30

CHOICE_PAD_STEPS = 55
CHOICE_TO_JUNCTION_STEPS = 23
CHOICE_TURN_STEPS = 10
CHOICE_INTO_POCKET_STEPS = 26
CHOICE_STRAIGHT_STEPS = 50
CHOICE_POCKET_PAUSE_STEPS = 10
CHOICE_CARRY_STEPS = 20

CORRIDOR_LONG_STEPS = 64
CORRIDOR_SHORT_STEPS = 44
CORRIDOR_TURN_STEPS = 10
CORRIDOR_PAD_STEPS = 40

POCKETS = ("A", "B", "C")


class UnknownTaskError(ValueError):
    pass


@dataclass(frozen=True)
class TeacherStep:
    action: Action
    lift: bool = False


@dataclass(frozen=True)
class TaskSpec:
    """Parsed task name: counting:<n>, choice:<pocket>, wall_follow, rect_corridor."""

    kind: str
    param: object = None

    @classmethod
    def parse(cls, text: str) -> "TaskSpec":
        kind, _, arg = text.partition(":")
        if kind == "counting":
            try:
                n = int(arg)
            except ValueError:
                raise UnknownTaskError(f"counting needs an integer count, got {text!r}") from None
            if n < 1:
                raise UnknownTaskError(f"counting needs n >= 1, got {n}")
            return cls("counting", n)
        if kind == "choice":
            if arg not in POCKETS:
                raise UnknownTaskError(f"choice needs a pocket in {POCKETS}, got {text!r}")
            return cls("choice", arg)
        if kind in ("wall_follow", "rect_corridor"):
            if arg:
                raise UnknownTaskError(f"{kind} takes no parameter, got {text!r}")
            return cls(kind)
        raise UnknownTaskError(f"unknown task {text!r}")

    @property
    def environment(self) -> str:
        return {
            "counting": "counting_wall",
            "choice": "choice_maze",
            "wall_follow": "rect_corridor",
            "rect_corridor": "rect_corridor",
        }[self.kind]

    def __str__(self) -> str:
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


def counting_cycle_steps(n: int) -> int:
    """Nominal cycles per taught counting cycle, jitter excluded."""
    return COUNTING_APPROACH_STEPS + 2 * COUNTING_SWING_STEPS * n + COUNTING_RETREAT_STEPS


def choice_run_steps(pocket: str) -> int:
    run = CHOICE_STRAIGHT_STEPS if pocket == "B" else (
        CHOICE_TO_JUNCTION_STEPS + CHOICE_TURN_STEPS + CHOICE_INTO_POCKET_STEPS
    )
    return run + CHOICE_POCKET_PAUSE_STEPS


def _jittered(base: int, rng: np.random.Generator, spread: int = 1) -> int:
    return max(1, base + int(rng.integers(-spread, spread + 1)))


def _repeat(action: Action, count: int, lift: bool = False) -> list[TeacherStep]:
    return [TeacherStep(action, lift)] * count


def _counting_stream(n: int, cycles: int, rng: np.random.Generator) -> list[TeacherStep]:
    # A human trainer cannot repeat a 0.5 s swing exactly: amplitudes vary
    # swing to swing (out and back stay symmetric, the trainer re-faces the
    # wall by eye), segment timings drift a cycle or two, and a short breath
    # separates repetitions.
    steps: list[TeacherStep] = _repeat(ZERO_ACTION, COUNTING_PAD_STEPS)
    for _ in range(cycles):
        steps += _repeat(FORWARD, _jittered(COUNTING_APPROACH_STEPS, rng))
        for swing in range(n):
            out = TURN_LEFT if swing % 2 == 0 else TURN_RIGHT
            back = TURN_RIGHT if swing % 2 == 0 else TURN_LEFT
            half = _jittered(COUNTING_SWING_STEPS, rng)
            steps += _repeat(out, half)
            steps += _repeat(back, half)
        steps += _repeat(BACKWARD, _jittered(COUNTING_RETREAT_STEPS, rng))
        if COUNTING_BREATH_STEPS:
            steps += _repeat(ZERO_ACTION, _jittered(COUNTING_BREATH_STEPS, rng))
    steps += _repeat(ZERO_ACTION, COUNTING_PAD_STEPS)
    return steps


def _choice_run(pocket: str, rng: np.random.Generator) -> list[TeacherStep]:
    if pocket == "B":
        steps = _repeat(FORWARD, _jittered(CHOICE_STRAIGHT_STEPS, rng))
    else:
        turn = TURN_LEFT if pocket == "A" else TURN_RIGHT
        steps = _repeat(FORWARD, _jittered(CHOICE_TO_JUNCTION_STEPS, rng))
        steps += _repeat(turn, CHOICE_TURN_STEPS)
        steps += _repeat(FORWARD, _jittered(CHOICE_INTO_POCKET_STEPS, rng))
    steps += _repeat(ZERO_ACTION, CHOICE_POCKET_PAUSE_STEPS)
    return steps


def _choice_stream(pocket: str, runs: int, rng: np.random.Generator) -> list[TeacherStep]:
    steps: list[TeacherStep] = _repeat(ZERO_ACTION, CHOICE_PAD_STEPS)
    for run in range(runs):
        if run:
            steps += _repeat(ZERO_ACTION, CHOICE_CARRY_STEPS, lift=True)
        steps += _choice_run(pocket, rng)
    steps += _repeat(ZERO_ACTION, CHOICE_PAD_STEPS)
    return steps


def _corridor_lap(rng: np.random.Generator) -> list[TeacherStep]:
    steps: list[TeacherStep] = []
    for length in (CORRIDOR_LONG_STEPS, CORRIDOR_SHORT_STEPS, CORRIDOR_LONG_STEPS, CORRIDOR_SHORT_STEPS):
        steps += _repeat(FORWARD, _jittered(length, rng))
        steps += _repeat(TURN_LEFT, CORRIDOR_TURN_STEPS)
    return steps


def _corridor_stream(laps: int, rng: np.random.Generator) -> list[TeacherStep]:
    steps: list[TeacherStep] = _repeat(ZERO_ACTION, CORRIDOR_PAD_STEPS)
    for _ in range(laps):
        steps += _corridor_lap(rng)
    steps += _repeat(ZERO_ACTION, CORRIDOR_PAD_STEPS)
    return steps


def scripted_teacher(task: TaskSpec | str, cycles: int, rng) -> list[TeacherStep]:
    """Action stream for the named task; cycles = taught repetitions
    (counting cycles, choice runs, corridor laps). cycles=0 yields an empty
    stream."""
    if isinstance(task, str):
        task = TaskSpec.parse(task)
    if cycles < 0:
        raise ValueError("cycles must be >= 0")
    if cycles == 0:
        return []
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    if task.kind == "counting":
        return _counting_stream(task.param, cycles, rng)
    if task.kind == "choice":
        return _choice_stream(task.param, cycles, rng)
    if task.kind == "wall_follow":
        return _corridor_stream(1, rng)
    if task.kind == "rect_corridor":
        return _corridor_stream(cycles, rng)
    raise UnknownTaskError(f"unknown task kind {task.kind!r}")
