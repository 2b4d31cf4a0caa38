"""Per-procedure timing of one filter cycle.

Measures motion update, measurement update, resampling, and the mode
decision separately, over episodes taught with different numbers of cycles,
to show that per-step cost depends on the particle count and not on the
episode length.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .episode import Episode, trim
from .filter import KernelParams, init_particles, measurement_update, motion_update, resample
from .policy import mode_policy
from .sim2d import load_environment
from .tasks.runner import run_teacher
from .tasks.teachers import scripted_teacher

PROCEDURES = ("motion_ms", "measurement_ms", "resample_ms", "decision_ms")


@dataclass(frozen=True)
class BenchRow:
    cycles: int
    episode_length: int
    steps: int
    motion_ms: float
    measurement_ms: float
    resample_ms: float
    decision_ms: float

    @property
    def total_ms(self) -> float:
        return self.motion_ms + self.measurement_ms + self.resample_ms + self.decision_ms


def bench_episode(cycles: int, seed: int = 0) -> Episode:
    """Counting-task episode taught with the given number of cycles."""
    world = load_environment("counting_wall")
    stream = scripted_teacher("counting:2", cycles, np.random.default_rng(seed))
    taught = run_teacher(world, stream, seed=seed)
    return trim(taught.episode, 5.0, 5.0)


def bench_filter(
    episode: Episode,
    particles: int = 1000,
    steps: int = 1000,
    params: KernelParams = KernelParams(),
    seed: int = 0,
    cycles: int = 0,
    repeats: int = 3,
) -> BenchRow:
    """Time each procedure over `steps` filter cycles on one episode.

    The observation stream walks the episode's own observations, so the
    measurement update does representative work. The run is split into
    `repeats` blocks and the fastest block is reported, which rejects
    transient scheduler and GC interference.
    """
    rng = np.random.default_rng(seed)
    ps = init_particles(episode, particles, rng)
    T = len(episode)
    observations = [episode.event_at(t).observation for t in range(1, T + 1)]
    for k in range(20):  # warm caches before timing
        ps = resample(measurement_update(motion_update(ps, params, rng), observations[k % T], episode), rng)
    block_steps = max(1, steps // max(1, repeats))
    best = None
    done = 0
    while done < steps:
        chunk = min(block_steps, steps - done)
        totals = [0.0, 0.0, 0.0, 0.0]
        for k in range(done, done + chunk):
            z = observations[k % T]
            t0 = time.perf_counter()
            ps = motion_update(ps, params, rng)
            t1 = time.perf_counter()
            ps = measurement_update(ps, z, episode)
            t2 = time.perf_counter()
            ps = resample(ps, rng)
            t3 = time.perf_counter()
            mode_policy(ps, episode)
            t4 = time.perf_counter()
            totals[0] += t1 - t0
            totals[1] += t2 - t1
            totals[2] += t3 - t2
            totals[3] += t4 - t3
        done += chunk
        per_step = [t / chunk for t in totals]
        if best is None or sum(per_step) < sum(best):
            best = per_step
    return BenchRow(cycles, T, steps, *(1000.0 * t for t in best))


def run_bench(
    particles: int = 1000,
    steps: int = 1000,
    cycles: tuple[int, ...] = (3, 10, 20),
    seed: int = 0,
) -> list[BenchRow]:
    """One BenchRow per teaching length; steps=0 yields an empty report."""
    if steps <= 0:
        return []
    rows = []
    for m in cycles:
        episode = bench_episode(m, seed)
        rows.append(bench_filter(episode, particles, steps, seed=seed, cycles=m))
    return rows


def bench_table(rows: list[BenchRow]) -> str:
    """Procedure-by-length table, milliseconds per step."""
    if not rows:
        return "(empty bench report)"
    labels = {
        "motion_ms": "update with an action",
        "measurement_ms": "update with an observation",
        "resample_ms": "resampling",
        "decision_ms": "decision making (mode policy)",
    }
    head = f"{'procedure':32}" + "".join(f"{f'{r.cycles} cycles (T={r.episode_length})':>22}" for r in rows)
    lines = [head, "-" * len(head)]
    for key, label in labels.items():
        lines.append(f"{label:32}" + "".join(f"{getattr(r, key):>22.4f}" for r in rows))
    lines.append(f"{'total':32}" + "".join(f"{r.total_ms:>22.4f}" for r in rows))
    return "\n".join(lines)
