"""Experiment runner: teach-and-replay campaigns with aggregate tables.

A campaign runs `sets` independent teach-and-replay sessions for every task
variant (counting numbers or choice pockets) and policy, each with its own
seed stream derived from the master seed, and reports one row per trial.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..episode import trim
from ..filter import KernelParams
from ..sim2d import MotionNoise, SensorModel, load_environment
from .evaluators import DNF, MISCHOICE, SUCCESS, TrialOutcome
from .replays import ReplayResult, replay_choice, replay_counting
from .runner import run_teacher
from .teachers import POCKETS, TaskSpec, scripted_teacher


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    task: str = "counting"
    variants: tuple = (1, 2, 4, 6, 8)
    policies: tuple[str, ...] = ("mode",)
    sets: int = 5
    trials: int = 10
    cycles: int = 3
    seed: int = 0
    particles: int = 1000
    delta: float = 0.1
    trim_seconds: float = 5.0
    noise_scale: float = 1.0
    sensor_sigma: float | None = None

    def __post_init__(self):
        if self.task not in ("counting", "choice"):
            raise ConfigError(f"task must be counting or choice, got {self.task!r}")
        if self.task == "counting" and not all(isinstance(v, int) and v >= 1 for v in self.variants):
            raise ConfigError("counting variants must be integers >= 1")
        if self.task == "choice" and not all(v in POCKETS for v in self.variants):
            raise ConfigError(f"choice variants must be pockets in {POCKETS}")
        for p in self.policies:
            if p not in ("mode", "mean"):
                raise ConfigError(f"unknown policy {p!r}")
        if self.sets < 0 or self.trials < 0 or self.cycles < 1:
            raise ConfigError("sets/trials must be >= 0 and cycles >= 1")


def parse_config(text: str) -> ExperimentConfig:
    """Flat key=value format, one pair per line, # comments."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()

    kwargs: dict = {}
    task = values.pop("task", "counting")
    kwargs["task"] = task
    if "n" in values and "pockets" in values:
        raise ConfigError("give either n= (counting) or pockets= (choice), not both")
    if "n" in values:
        kwargs["variants"] = tuple(int(v) for v in values.pop("n").split(","))
    if "pockets" in values:
        kwargs["variants"] = tuple(v.strip() for v in values.pop("pockets").split(","))
    if "variants" not in kwargs and task == "choice":
        kwargs["variants"] = POCKETS
    if "policy" in values:
        kwargs["policies"] = tuple(v.strip() for v in values.pop("policy").split(","))
    for key, cast in (
        ("sets", int), ("trials", int), ("cycles", int), ("seed", int),
        ("particles", int), ("delta", float), ("trim_seconds", float),
        ("noise_scale", float), ("sensor_sigma", float),
    ):
        if key in values:
            try:
                kwargs[key] = cast(values.pop(key))
            except ValueError:
                raise ConfigError(f"bad value for {key}") from None
    if values:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(values))}")
    return ExperimentConfig(**kwargs)


@dataclass(frozen=True)
class TrialRow:
    task: str
    variant: str
    policy: str
    set_index: int
    trial_index: int
    outcome: str
    metrics: dict


@dataclass
class Report:
    config: ExperimentConfig
    rows: list[TrialRow] = field(default_factory=list)

    def select(self, **match) -> list[TrialRow]:
        return [
            r for r in self.rows
            if all(getattr(r, k) == v for k, v in match.items())
        ]

    def success_rate(self, **match) -> float:
        rows = self.select(**match)
        if not rows:
            return float("nan")
        return sum(1 for r in rows if r.outcome == SUCCESS) / len(rows)


def _metrics_str(metrics: dict) -> str:
    return ";".join(f"{k}={metrics[k]}" for k in sorted(metrics)) or "-"


def report_to_tsv(report: Report) -> str:
    lines = ["task\tvariant\tpolicy\tset\ttrial\toutcome\tmetrics"]
    for r in report.rows:
        lines.append(
            f"{r.task}\t{r.variant}\t{r.policy}\t{r.set_index}\t{r.trial_index}\t"
            f"{r.outcome}\t{_metrics_str(r.metrics)}"
        )
    return "\n".join(lines) + "\n"


def counting_table(report: Report) -> str:
    """Success counts per set, one row per n (the shape of the paper-style
    success table)."""
    cfg = report.config
    head = "n     " + "".join(f"set {s+1}  " for s in range(cfg.sets)) + "all"
    lines = [head, "-" * len(head)]
    for n in cfg.variants:
        per_set = []
        for s in range(cfg.sets):
            rows = report.select(variant=str(n), set_index=s)
            per_set.append(sum(1 for r in rows if r.outcome == SUCCESS))
        total = sum(per_set)
        count = cfg.sets * cfg.trials
        pct = 100.0 * total / count if count else 0.0
        lines.append(
            f"{n:<6}" + "".join(f"{v:<7}" for v in per_set) + f"{total}/{count} ({pct:.0f}%)"
        )
    return "\n".join(lines)


def choice_table(report: Report) -> str:
    """Per-policy success/DNF/mischoice totals."""
    lines = []
    header = f"{'':24}" + "".join(f"{p:>10}" for p in report.config.policies)
    lines.append(header)
    lines.append("-" * len(header))
    totals = {p: len(report.select(policy=p)) for p in report.config.policies}
    for label in (SUCCESS, DNF, MISCHOICE):
        cells = []
        for p in report.config.policies:
            k = sum(1 for r in report.select(policy=p) if r.outcome == label)
            total = totals[p] or 1
            cells.append(f"{k}/{totals[p]} ({100.0 * k / total:.0f}%)")
        lines.append(f"{label + ' trials':24}" + "".join(f"{c:>10}" for c in cells))
    return "\n".join(lines)


def pretty_table(report: Report) -> str:
    return counting_table(report) if report.config.task == "counting" else choice_table(report)


def _campaign_noise(config: ExperimentConfig) -> tuple[MotionNoise, SensorModel]:
    noise = MotionNoise().scaled(config.noise_scale)
    sensor = SensorModel()
    if config.sensor_sigma is not None:
        sensor = replace(sensor, sigma=config.sensor_sigma)
    return noise, sensor


def _set_seed(config: ExperimentConfig, variant_idx: int, set_idx: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([config.seed, variant_idx, set_idx])


def run_experiment(config: ExperimentConfig, on_result=None) -> Report:
    """Run the full campaign. `on_result(variant, policy, set_idx, result)`
    is an optional progress hook."""
    report = Report(config)
    noise, sensor = _campaign_noise(config)
    params = KernelParams(delta=config.delta)
    for vi, variant in enumerate(config.variants):
        task = TaskSpec.parse(f"counting:{variant}" if config.task == "counting" else f"choice:{variant}")
        world = load_environment(task.environment)
        for set_idx in range(config.sets):
            ss = _set_seed(config, vi, set_idx)
            teach_seed, *replay_seeds = ss.spawn(1 + len(config.policies))
            stream = scripted_teacher(task, config.cycles, np.random.default_rng(teach_seed))
            taught = run_teacher(world, stream, seed=teach_seed, noise=noise, sensor_model=sensor)
            episode = trim(taught.episode, config.trim_seconds, config.trim_seconds)
            for pi, policy in enumerate(config.policies):
                if config.trials == 0:
                    continue
                if config.task == "counting":
                    result: ReplayResult = replay_counting(
                        episode, world, int(variant), policy, config.trials,
                        config.particles, params, replay_seeds[pi], noise, sensor,
                        start_pose=taught.final_pose,
                    )
                else:
                    result = replay_choice(
                        episode, world, str(variant), policy, config.trials,
                        config.particles, params, replay_seeds[pi], noise, sensor,
                    )
                for ti, outcome in enumerate(result.outcomes):
                    report.rows.append(
                        TrialRow(config.task, str(variant), policy, set_idx, ti,
                                 outcome.label, outcome.metrics)
                    )
                if on_result is not None:
                    on_result(variant, policy, set_idx, result)
    return report
