"""Closed-loop teach and replay runners.

A teach run executes a scripted teacher through the simulator and records
the episode; lift segments teleport the robot back to the start while the
recording keeps running (the trainer carrying the robot, sensors reading
the floor value). A replay run closes the loop: sense, update the filter,
decide, act. Every run derives its simulator, filter, and harness rngs from
one seed, so traces are reproducible byte-for-byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..episode import (
    Action,
    Episode,
    Observation,
    ZERO_ACTION,
    record_event,
)
from ..filter import DEFAULT_PARTICLES, KernelParams, PfoeFilter
from ..policy import mean_policy, mode_policy
from ..sim2d import MotionNoise, Pose, SensorModel, Simulator, WorldMap, normalize_angle
from .teachers import TeacherStep

POLICIES = {"mode": mode_policy, "mean": mean_policy}

LIFTED_OBSERVATION = Observation(1, 1, 1, 1)

TRACE_MAGIC = "pfoe-trace"
TRACE_VERSION = "v1"


class TraceParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TraceStep:
    step: int
    pose: Pose
    action: Action
    observation: Observation
    mode_t: int
    mode_mass: float
    carried: bool = False


@dataclass
class Trace:
    """Time-ordered replay record: pose, commanded action, observation, and
    the belief summary (mode index and its mass) at every control cycle."""

    steps: list[TraceStep] = field(default_factory=list)
    cycle_duration: float = 0.1

    def __len__(self) -> int:
        return len(self.steps)


def serialize_trace(trace: Trace) -> str:
    lines = [f"{TRACE_MAGIC} {TRACE_VERSION} cycle={trace.cycle_duration!r}"]
    for s in trace.steps:
        z = s.observation
        lines.append(
            f"{s.step} {s.pose.x!r} {s.pose.y!r} {s.pose.theta!r} "
            f"{s.action.v_linear!r} {s.action.v_angular!r} "
            f"{z.z_lf} {z.z_ls} {z.z_rs} {z.z_rf} "
            f"{s.mode_t} {s.mode_mass!r} {int(s.carried)}"
        )
    return "\n".join(lines) + "\n"


def deserialize_trace(text: str) -> Trace:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"{TRACE_MAGIC} {TRACE_VERSION} cycle="):
        raise TraceParseError(1, f"expected '{TRACE_MAGIC} {TRACE_VERSION} cycle=<s>' header")
    cycle = float(lines[0].split("cycle=", 1)[1])
    steps = []
    for line_no, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        f = raw.split()
        if len(f) != 13:
            raise TraceParseError(line_no, f"expected 13 fields, got {len(f)}")
        try:
            steps.append(
                TraceStep(
                    step=int(f[0]),
                    pose=Pose(float(f[1]), float(f[2]), float(f[3])),
                    action=Action(float(f[4]), float(f[5])),
                    observation=Observation(int(f[6]), int(f[7]), int(f[8]), int(f[9])),
                    mode_t=int(f[10]),
                    mode_mass=float(f[11]),
                    carried=bool(int(f[12])),
                )
            )
        except ValueError as exc:
            raise TraceParseError(line_no, str(exc)) from None
    return Trace(steps, cycle)


def _lerp_pose(a: Pose, b: Pose, frac: float) -> Pose:
    dtheta = normalize_angle(b.theta - a.theta)
    return Pose(
        a.x + frac * (b.x - a.x),
        a.y + frac * (b.y - a.y),
        a.theta + frac * dtheta,
    )


def _seed_sequence(seed) -> np.random.SeedSequence:
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def _jittered_start(world: WorldMap, rng: np.random.Generator) -> Pose:
    base = world.start_pose
    return Pose(
        base.x + 0.01 * rng.standard_normal(),
        base.y + 0.01 * rng.standard_normal(),
        base.theta + 0.03 * rng.standard_normal(),
    )


@dataclass
class TeachResult:
    episode: Episode
    final_pose: Pose
    trace: Trace


def run_teacher(
    world: WorldMap,
    steps: list[TeacherStep],
    seed=None,
    noise: MotionNoise = MotionNoise(),
    sensor_model: SensorModel = SensorModel(),
    cycle_duration: float = 0.1,
) -> TeachResult:
    """Execute a teacher stream and record the raw (untrimmed) episode.

    The returned trace mirrors the recording (mode fields zeroed; there is
    no belief during teaching) so evaluators can judge the taught behavior.
    """
    ss = _seed_sequence(seed)
    sim_rng, harness_rng = (np.random.default_rng(c) for c in ss.spawn(2))
    sim = Simulator(world, seed=sim_rng, noise=noise, sensor_model=sensor_model, dt=cycle_duration)
    episode = Episode((), cycle_duration)
    trace = Trace([], cycle_duration)

    def record(action: Action, z: Observation, carried: bool) -> None:
        nonlocal episode
        episode = record_event(episode, action, z)
        trace.steps.append(
            TraceStep(len(trace.steps), sim.pose, action, z, 0, 0.0, carried)
        )

    i = 0
    while i < len(steps):
        if steps[i].lift:
            # Carry segment: teleport toward a jittered start pose while the
            # recording continues with floor observations.
            j = i
            while j < len(steps) and steps[j].lift:
                j += 1
            length = j - i
            origin, target = sim.pose, _jittered_start(world, harness_rng)
            for k in range(1, length + 1):
                sim.teleport(_lerp_pose(origin, target, k / length))
                record(ZERO_ACTION, LIFTED_OBSERVATION, carried=True)
            i = j
        else:
            sim.step(steps[i].action)
            record(steps[i].action, sim.sense(), carried=False)
            i += 1
    return TeachResult(episode, sim.pose, trace)


class ReplayDriver:
    """Sense, update the belief, decide, act; one call per control cycle."""

    def __init__(
        self,
        episode: Episode,
        world: WorldMap,
        policy: str = "mode",
        particles: int = DEFAULT_PARTICLES,
        params: KernelParams = KernelParams(),
        seed=None,
        noise: MotionNoise = MotionNoise(),
        sensor_model: SensorModel = SensorModel(),
        start_pose: Pose | None = None,
    ):
        if policy not in POLICIES:
            raise ValueError(f"unknown policy {policy!r}; expected one of {sorted(POLICIES)}")
        ss = _seed_sequence(seed)
        sim_rng, filter_rng, harness_rng = (np.random.default_rng(c) for c in ss.spawn(3))
        self.episode = episode
        self.world = world
        self.policy_fn = POLICIES[policy]
        self.sim = Simulator(world, seed=sim_rng, noise=noise, sensor_model=sensor_model, start_pose=start_pose)
        self.filter = PfoeFilter(episode, particles, params, seed=filter_rng)
        self.harness_rng = harness_rng
        self.prev_action = ZERO_ACTION
        self.trace = Trace([], episode.cycle_duration)

    def _record(self, action: Action, z: Observation, carried: bool) -> TraceStep:
        mode_t, mode_mass = self.filter.particles.mode()
        step = TraceStep(
            step=len(self.trace.steps),
            pose=self.sim.pose,
            action=action,
            observation=z,
            mode_t=mode_t,
            mode_mass=mode_mass,
            carried=carried,
        )
        self.trace.steps.append(step)
        return step

    def step(self) -> TraceStep:
        z = self.sim.sense()
        self.filter.step(self.prev_action, z)
        action = self.policy_fn(self.filter.particles, self.episode)
        self.sim.step(action)
        self.prev_action = action
        return self._record(action, z, carried=False)

    def carry_to_start(self, steps: int) -> None:
        """Trainer intervention: lift the robot and place it at the start;
        the filter keeps running on floor observations."""
        origin, target = self.sim.pose, _jittered_start(self.world, self.harness_rng)
        for k in range(1, steps + 1):
            self.filter.step(ZERO_ACTION, LIFTED_OBSERVATION)
            self.sim.teleport(_lerp_pose(origin, target, k / steps))
            self.prev_action = ZERO_ACTION
            self._record(ZERO_ACTION, LIFTED_OBSERVATION, carried=True)
