"""Exact discrete belief propagation over episode indices.

This is the forward pass of the hidden Markov chain the particle filter
approximates: the same mixture kernel (including the overflow-to-uniform
rule) and the same observation likelihood, computed without sampling. It
defines the filter's target distribution and serves as the ground-truth
oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .episode import Episode, Observation
from .filter import KernelParams, ParticleSet, _likelihood_rows

_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ExactBelief:
    """Probability vector over episode indices; probs[i] is the mass at t=i+1."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d vector")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > _SUM_TOL:
            raise ValueError("probs must be non-negative and sum to 1")

    @property
    def episode_length(self) -> int:
        return self.probs.size

    def prob_at(self, t: int) -> float:
        if not 1 <= t <= self.probs.size:
            raise IndexError(f"index {t} out of range 1..{self.probs.size}")
        return float(self.probs[t - 1])

    @classmethod
    def uniform(cls, episode_length: int) -> "ExactBelief":
        return cls(np.full(episode_length, 1.0 / episode_length))

    @classmethod
    def point_mass(cls, episode_length: int, t: int) -> "ExactBelief":
        probs = np.zeros(episode_length)
        probs[t - 1] = 1.0
        return cls(probs)


def exact_predict(bel: ExactBelief, params: KernelParams) -> ExactBelief:
    """Apply the motion kernel exactly: each source mass splits (1-delta)*p_o
    to destination t+1+offset (out-of-range destinations redistribute
    uniformly over 1..T) plus delta to the uniform component."""
    T = bel.episode_length
    moved = np.zeros(T)
    lost = 0.0
    for offset, p in zip(params.alpha_offsets, params.alpha_probs):
        shift = 1 + offset
        if shift >= T or shift <= -T:
            lost += p
            continue
        if shift >= 0:
            moved[shift:] += p * bel.probs[: T - shift]
            lost += p * bel.probs[T - shift :].sum()
        else:
            moved[:shift] += p * bel.probs[-shift:]
            lost += p * bel.probs[:-shift].sum()
    out = (1.0 - params.delta) * moved
    out += ((1.0 - params.delta) * lost + params.delta) / T
    return ExactBelief(out / out.sum())


def exact_correct(bel: ExactBelief, z: Observation, episode: Episode) -> ExactBelief:
    """Bayes update: probs(t) proportional to likelihood(z_t, z) * bel(t)."""
    if bel.episode_length != len(episode):
        raise ValueError("belief length does not match episode length")
    lik = _likelihood_rows(episode.observations_array, z.as_array())
    post = lik * bel.probs
    total = post.sum()
    if total <= 0.0:
        return ExactBelief.uniform(bel.episode_length)
    return ExactBelief(post / total)


def tv_distance(bel: ExactBelief, ps: ParticleSet) -> float:
    """Total variation distance between an exact belief and a particle belief."""
    if bel.episode_length != ps.episode_length:
        raise ValueError(
            f"length mismatch: belief T={bel.episode_length}, particles T={ps.episode_length}"
        )
    return 0.5 * float(np.abs(bel.probs - ps.belief_vector()).sum())
