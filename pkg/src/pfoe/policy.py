"""Decision policies: map a belief over episode indices to the next action.

Both policies look only at indices 1..T-1 because index T has no successor
action; the mean policy renormalizes over that range. With all mass at a
single index both policies return the identical successor action.
"""

from __future__ import annotations

import numpy as np

from .episode import Action, Episode
from .filter import ParticleSet


def _candidate_belief(ps: ParticleSet, episode: Episode) -> np.ndarray:
    if len(episode) < 2:
        raise ValueError("policies need an episode of length >= 2")
    if ps.episode_length != len(episode):
        raise ValueError("particle set and episode lengths differ")
    return ps.belief_vector()[: len(episode) - 1]


def mode_policy(ps: ParticleSet, episode: Episode) -> Action:
    """Action following the most probable index; ties break to the smallest t."""
    bel = _candidate_belief(ps, episode)
    t_hat = int(np.argmax(bel)) + 1
    return episode.event_at(t_hat + 1).action


def mean_policy(ps: ParticleSet, episode: Episode) -> Action:
    """Belief-weighted average of successor actions, component-wise.

    Falls back to a uniform weighting if no mass sits on 1..T-1 (all
    particles at t=T).
    """
    bel = _candidate_belief(ps, episode)
    total = bel.sum()
    if total <= 0.0:
        bel = np.full(bel.size, 1.0 / bel.size)
    else:
        bel = bel / total
    successors = episode.actions_array[1:]
    v = bel @ successors
    return Action(float(v[0]), float(v[1]))
