"""Task-level replay orchestration: run the closed loop, cut it into trials,
and judge each trial."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..episode import Episode
from ..filter import DEFAULT_PARTICLES, KernelParams
from ..sim2d import MotionNoise, Pose, SensorModel, WorldMap
from .evaluators import (
    DNF,
    FAILURE,
    MISCHOICE,
    SUCCESS,
    CountingEvalParams,
    StallParams,
    TrialOutcome,
    evaluate_counting,
    segment_counting_cycles,
)
from .runner import ReplayDriver, Trace
from .teachers import CHOICE_CARRY_STEPS, TaskSpec, counting_cycle_steps

CHOICE_TRIAL_TIMEOUT_STEPS = 300


@dataclass
class ReplayResult:
    trace: Trace
    outcomes: list[TrialOutcome]
    trial_slices: list[tuple[int, int]] = field(default_factory=list)

    @property
    def success_count(self) -> int:
        return sum(1 for o in self.outcomes if o.label == SUCCESS)


def _sub_trace(trace: Trace, start: int, end: int) -> Trace:
    return Trace(trace.steps[start:end], trace.cycle_duration)


def replay_counting(
    episode: Episode,
    world: WorldMap,
    n: int,
    policy: str = "mode",
    trials: int = 10,
    particles: int = DEFAULT_PARTICLES,
    params: KernelParams = KernelParams(),
    seed=None,
    noise: MotionNoise = MotionNoise(),
    sensor_model: SensorModel = SensorModel(),
    start_pose: Pose | None = None,
    eval_params: CountingEvalParams = CountingEvalParams(),
) -> ReplayResult:
    """Continuous replay of the counting behavior, judged per cycle.

    The replay runs long enough for `trials` complete cycles plus margin;
    cycles the robot never produces are failures.
    """
    driver = ReplayDriver(
        episode, world, policy, particles, params, seed, noise, sensor_model, start_pose
    )
    # Pause remnants at the episode head let the belief dwell in the far
    # zone between cycles; budget extra steps per cycle for that dwell.
    max_steps = int((trials + 2.5) * (counting_cycle_steps(n) + 30)) + 80
    for _ in range(max_steps):
        driver.step()
    slices = segment_counting_cycles(driver.trace, eval_params)[:trials]
    outcomes = [
        evaluate_counting(_sub_trace(driver.trace, a, b), n, world, eval_params)
        for a, b in slices
    ]
    while len(outcomes) < trials:
        outcomes.append(TrialOutcome(FAILURE, {"count": 0, "expected": n, "missing": 1}))
    return ReplayResult(driver.trace, outcomes, slices)


def replay_choice(
    episode: Episode,
    world: WorldMap,
    target_pocket: str,
    policy: str = "mean",
    trials: int = 10,
    particles: int = DEFAULT_PARTICLES,
    params: KernelParams = KernelParams(),
    seed=None,
    noise: MotionNoise = MotionNoise(),
    sensor_model: SensorModel = SensorModel(),
    stall: StallParams = StallParams(),
    timeout_steps: int = CHOICE_TRIAL_TIMEOUT_STEPS,
) -> ReplayResult:
    """Consecutive choice trials with carry-resets in between.

    The filter runs continuously across trials, exactly like the recorded
    session: before every trial the robot is lifted back to the start while
    the belief keeps updating on floor observations.
    """
    driver = ReplayDriver(
        episode, world, policy, particles, params, seed, noise, sensor_model
    )
    pockets = [world.region(name) for name in ("A", "B", "C")]
    stall_steps = max(1, int(round(stall.seconds / episode.cycle_duration)))
    outcomes: list[TrialOutcome] = []
    slices: list[tuple[int, int]] = []
    for _ in range(trials):
        driver.carry_to_start(CHOICE_CARRY_STEPS)
        start_idx = len(driver.trace.steps)
        stalled = 0
        outcome = None
        for k in range(timeout_steps):
            step = driver.step()
            hit = next((p for p in pockets if p.contains(step.pose.x, step.pose.y)), None)
            if hit is not None:
                label = SUCCESS if hit.name == target_pocket else MISCHOICE
                outcome = TrialOutcome(
                    label, {"pocket": hit.name, "duration_s": (k + 1) * episode.cycle_duration}
                )
                break
            quiet = abs(step.action.v_linear) < stall.v_eps and abs(step.action.v_angular) < stall.w_eps
            stalled = stalled + 1 if quiet else 0
            if stalled >= stall_steps:
                outcome = TrialOutcome(
                    DNF, {"reason": "stall", "duration_s": (k + 1) * episode.cycle_duration}
                )
                break
        if outcome is None:
            outcome = TrialOutcome(
                DNF, {"reason": "timeout", "duration_s": timeout_steps * episode.cycle_duration}
            )
        outcomes.append(outcome)
        slices.append((start_idx, len(driver.trace.steps)))
    return ReplayResult(driver.trace, outcomes, slices)


def replay_freerun(
    episode: Episode,
    world: WorldMap,
    steps: int,
    policy: str = "mode",
    particles: int = DEFAULT_PARTICLES,
    params: KernelParams = KernelParams(),
    seed=None,
    noise: MotionNoise = MotionNoise(),
    sensor_model: SensorModel = SensorModel(),
    start_pose: Pose | None = None,
) -> ReplayResult:
    """Uninterrupted replay for a fixed number of cycles; no judgment."""
    driver = ReplayDriver(
        episode, world, policy, particles, params, seed, noise, sensor_model, start_pose
    )
    for _ in range(steps):
        driver.step()
    return ReplayResult(driver.trace, [], [(0, len(driver.trace.steps))])
