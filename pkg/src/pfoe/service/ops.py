"""Service operations: the one place teach/replay/experiment/bench execute.

Both the HTTP routes and the CLI call these functions; the CLI stays a thin
client that only moves files and formats output.
"""

from __future__ import annotations

import numpy as np

from ..bench import bench_table, run_bench
from ..episode import deserialize, serialize, trim
from ..filter import KernelParams
from ..sim2d import ENVIRONMENT_NAMES, load_environment
from ..tasks.experiment import (
    parse_config,
    pretty_table,
    report_to_tsv,
    run_experiment,
)
from ..tasks.replays import replay_choice, replay_counting, replay_freerun
from ..tasks.runner import run_teacher, serialize_trace
from ..tasks.teachers import TaskSpec, counting_cycle_steps, scripted_teacher
from .models import (
    BenchRequest,
    BenchResponse,
    BenchRowModel,
    EnvironmentInfo,
    ExperimentRequest,
    ExperimentResponse,
    ExperimentRow,
    OutcomeModel,
    PoseModel,
    ReplayRequest,
    ReplayResponse,
    TeachRequest,
    TeachResponse,
)


def list_environments() -> list[EnvironmentInfo]:
    infos = []
    for name in ENVIRONMENT_NAMES:
        world = load_environment(name)
        infos.append(
            EnvironmentInfo(
                name=name,
                segments=[[a[0], a[1], b[0], b[1]] for a, b in world.segments],
                regions={
                    r.name: [r.x_min, r.y_min, r.x_max, r.y_max]
                    for r in world.regions.values()
                },
                start_pose=PoseModel(
                    x=world.start_pose.x, y=world.start_pose.y, theta=world.start_pose.theta
                ),
            )
        )
    return infos


def do_teach(req: TeachRequest) -> TeachResponse:
    world = load_environment(req.env)
    task = TaskSpec.parse(req.task)
    stream = scripted_teacher(task, req.cycles, np.random.default_rng(req.seed))
    taught = run_teacher(world, stream, seed=req.seed)
    raw = taught.episode
    trimmed = trim(raw, req.trim_head, req.trim_tail) if (req.trim_head or req.trim_tail) else raw
    return TeachResponse(
        episode_text=serialize(trimmed),
        t_raw=len(raw),
        t_trimmed=len(trimmed),
        cycle_duration=trimmed.cycle_duration,
    )


def do_replay(req: ReplayRequest) -> ReplayResponse:
    world = load_environment(req.env)
    task = TaskSpec.parse(req.task)
    episode = deserialize(req.episode_text)
    params = KernelParams(delta=req.delta)
    if task.kind == "counting":
        result = replay_counting(
            episode, world, task.param, req.policy, req.trials,
            req.particles, params, req.seed,
        )
    elif task.kind == "choice":
        result = replay_choice(
            episode, world, task.param, req.policy, req.trials,
            req.particles, params, req.seed,
        )
    else:
        steps = max(1, req.trials) * (counting_cycle_steps(2) + 40)
        result = replay_freerun(
            episode, world, steps, req.policy, req.particles, params, req.seed
        )
    return ReplayResponse(
        outcomes=[OutcomeModel(label=o.label, metrics=o.metrics) for o in result.outcomes],
        trace_text=serialize_trace(result.trace),
    )


def do_experiment(req: ExperimentRequest) -> ExperimentResponse:
    config = parse_config(req.config_text)
    if req.seed is not None:
        config = type(config)(**{**config.__dict__, "seed": req.seed})
    report = run_experiment(config)
    return ExperimentResponse(
        rows=[
            ExperimentRow(
                task=r.task, variant=r.variant, policy=r.policy,
                set_index=r.set_index, trial_index=r.trial_index,
                outcome=r.outcome, metrics=r.metrics,
            )
            for r in report.rows
        ],
        table_text=pretty_table(report),
        tsv_text=report_to_tsv(report),
    )


def do_bench(req: BenchRequest) -> BenchResponse:
    rows = run_bench(req.particles, req.steps, tuple(req.cycles), req.seed)
    return BenchResponse(
        rows=[
            BenchRowModel(
                cycles=r.cycles, episode_length=r.episode_length, steps=r.steps,
                motion_ms=r.motion_ms, measurement_ms=r.measurement_ms,
                resample_ms=r.resample_ms, decision_ms=r.decision_ms,
                total_ms=r.total_ms,
            )
            for r in rows
        ],
        table_text=bench_table(rows),
    )
