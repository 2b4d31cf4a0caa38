"""Shared fixtures: deterministic synthetic episodes for filter/oracle tests."""

from __future__ import annotations

import numpy as np

from pfoe.episode import Action, Episode, Event, Observation


def make_synthetic_episode(length: int = 100, cycle: float = 0.1) -> Episode:
    """Episode with a deterministic, informative observation pattern.

    Channel values vary with coprime periods so most index pairs are
    distinguishable by the likelihood, while a few repeat (multi-modal
    beliefs, like a looped teaching run).
    """
    events = []
    for t in range(1, length + 1):
        action = Action(0.1 if t % 2 else 0.0, 0.0 if t % 2 else 0.5)
        obs = Observation(
            10 + (7 * t) % 50,
            20 + (3 * t) % 30,
            5 + t % 17,
            1 + (t * t) % 90,
        )
        events.append(Event(action, obs))
    return Episode(tuple(events), cycle)


def synthetic_observation(episode: Episode, k: int) -> Observation:
    """Deterministic replay observation stream: walks the episode with stride 7."""
    t = (3 + 7 * k) % len(episode) + 1
    return episode.event_at(t).observation


def random_episode(rng: np.random.Generator, length: int, cycle: float = 0.1) -> Episode:
    events = []
    for _ in range(length):
        action = Action(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(-1.5, 1.5)))
        obs = Observation(*(int(v) for v in rng.integers(1, 5000, size=4)))
        events.append(Event(action, obs))
    return Episode(tuple(events), cycle)
