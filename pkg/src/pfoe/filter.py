"""Particle filter over episode indices.

The filter tracks a belief over which taught time step the robot's current
situation resembles. Each particle is an episode index 1..T with a weight;
one control cycle applies, in order: a motion update (stochastic advance
along the time axis), a measurement update (reweighting by observation
similarity), and a systematic resampling.

Randomness: every stochastic operation takes an explicit numpy Generator.
Per motion update the generator is consumed as (1) one uniform per particle
for the mixture branch, (2) one offset draw per particle, (3) one uniform
index per redrawn particle; a resampling consumes a single uniform offset.
Identical seeds and inputs therefore yield bit-identical particle sets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .episode import Episode, Observation

DEFAULT_PARTICLES = 1000
_WEIGHT_SUM_TOL = 1e-9


def ensure_rng(seed_or_rng) -> np.random.Generator:
    """Accept a Generator, a seed, or None (fresh entropy)."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


@dataclass(frozen=True)
class Particle:
    """One time-step hypothesis: episode index t with weight w."""

    t: int
    w: float


@dataclass(frozen=True)
class KernelParams:
    """Motion-update mixture: with probability 1-delta the particle moves to
    t+1+offset for an offset drawn from (alpha_offsets, alpha_probs); with
    probability delta it is redrawn uniformly from 1..T. The default is the
    30/30/30/10 kernel: destinations {t, t+1, t+2} each 1/3, delta = 0.1.
    """

    delta: float = 0.1
    alpha_offsets: tuple[int, ...] = (-1, 0, 1)
    alpha_probs: tuple[float, ...] = (1 / 3, 1 / 3, 1 / 3)

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must be in [0, 1], got {self.delta}")
        if len(self.alpha_offsets) != len(self.alpha_probs) or not self.alpha_offsets:
            raise ValueError("alpha_offsets and alpha_probs must be equal-length and non-empty")
        probs = np.asarray(self.alpha_probs, dtype=np.float64)
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > _WEIGHT_SUM_TOL:
            raise ValueError("alpha_probs must be non-negative and sum to 1")


class ParticleSet:
    """N particles stored as parallel arrays (t: int64 indices 1..T, w: float64).

    Instances are treated as immutable snapshots; operations return new sets.
    """

    __slots__ = ("t", "w", "episode_length")

    def __init__(self, t, w, episode_length: int, *, validate: bool = True):
        self.t = np.asarray(t, dtype=np.int64)
        self.w = np.asarray(w, dtype=np.float64)
        self.episode_length = int(episode_length)
        if validate:
            if self.t.ndim != 1 or self.t.shape != self.w.shape:
                raise ValueError("t and w must be 1-d arrays of equal length")
            if self.t.size == 0:
                raise ValueError("particle set must not be empty")
            if self.episode_length < 1:
                raise ValueError("episode_length must be >= 1")
            if self.t.min() < 1 or self.t.max() > self.episode_length:
                raise ValueError("particle indices must lie in 1..T")
            if np.any(~np.isfinite(self.w)) or np.any(self.w < 0):
                raise ValueError("weights must be finite and non-negative")

    @property
    def n(self) -> int:
        return self.t.size

    def belief_vector(self) -> np.ndarray:
        """Length-T vector; entry i is the belief mass at episode index i+1."""
        counts = np.bincount(self.t, weights=self.w, minlength=self.episode_length + 1)
        return counts[1:]

    def mode(self) -> tuple[int, float]:
        """(index, mass) of the belief mode; ties break to the smallest index."""
        bel = self.belief_vector()
        i = int(np.argmax(bel))
        return i + 1, float(bel[i])

    def particles(self) -> list[Particle]:
        return [Particle(int(t), float(w)) for t, w in zip(self.t, self.w)]


def init_particles(episode: Episode, n: int, rng=None) -> ParticleSet:
    """Place n particles uniformly at random on 1..T with weights 1/n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    T = len(episode)
    if T < 1:
        raise ValueError("episode must contain at least one event")
    rng = ensure_rng(rng)
    t = rng.integers(1, T + 1, size=n)
    w = np.full(n, 1.0 / n)
    return ParticleSet(t, w, T, validate=False)


def motion_update(ps: ParticleSet, params: KernelParams, rng) -> ParticleSet:
    """Redraw every particle index from the mixture kernel; weights unchanged.

    Destinations that fall outside 1..T (going over the time axis) are
    replaced by a uniform draw from 1..T within the same update.
    """
    rng = ensure_rng(rng)
    n, T = ps.n, ps.episode_length
    branch = rng.random(n)
    offsets = np.asarray(params.alpha_offsets, dtype=np.int64)
    probs = np.asarray(params.alpha_probs)
    if np.ptp(probs) < 1e-15:
        picks = rng.integers(0, offsets.size, size=n)
    else:
        picks = rng.choice(offsets.size, size=n, p=probs)
    dest = ps.t + 1 + offsets[picks]
    redraw = (branch < params.delta) | (dest > T) | (dest < 1)
    k = int(redraw.sum())
    if k:
        dest[redraw] = rng.integers(1, T + 1, size=k)
    return ParticleSet(dest, ps.w, T, validate=False)


def likelihood(z_a: Observation, z_b: Observation) -> float:
    """Similarity of two observations: product over channels of
    1 / (|log10 za_j - log10 zb_j| + 1). Equals 1 iff all channels match;
    always in (0, 1]."""
    return float(_likelihood_rows(z_a.as_array()[None, :], z_b.as_array())[0])


def _likelihood_rows(stored: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Vector form: stored is (m, 4) channel counts, z is (4,); returns (m,)."""
    diff = np.abs(np.log10(stored) - np.log10(z))
    return np.prod(1.0 / (diff + 1.0), axis=-1)


def measurement_update(ps: ParticleSet, z: Observation, episode: Episode) -> ParticleSet:
    """Multiply each weight by the likelihood of the particle's stored
    observation against z, then normalize. The likelihood is strictly
    positive, so the zero-sum guard (reset to uniform) is unreachable in
    normal operation."""
    stored = episode.observations_array[ps.t - 1]
    w = ps.w * _likelihood_rows(stored, z.as_array())
    total = w.sum()
    if total <= 0.0:
        w = np.full(ps.n, 1.0 / ps.n)
    else:
        w = w / total
    return ParticleSet(ps.t, w, ps.episode_length, validate=False)


def resample(ps: ParticleSet, rng) -> ParticleSet:
    """Systematic (low-variance) resampling: one uniform offset in [0, 1/N),
    N evenly spaced selection points against the cumulative weights. Every
    particle is copied floor(N*w) or ceil(N*w) times; output weights are 1/N.
    """
    rng = ensure_rng(rng)
    n = ps.n
    points = rng.random() / n + np.arange(n) / n
    cum = np.cumsum(ps.w)
    idx = np.searchsorted(cum, points, side="right")
    idx = np.minimum(idx, n - 1)
    return ParticleSet(ps.t[idx], np.full(n, 1.0 / n), ps.episode_length, validate=False)


def belief_at(ps: ParticleSet, t: int) -> float:
    """Total weight of particles at episode index t."""
    if not 1 <= t <= ps.episode_length:
        raise IndexError(f"index {t} out of range 1..{ps.episode_length}")
    return float(ps.w[ps.t == t].sum())


def filter_step(
    ps: ParticleSet,
    action,
    z: Observation,
    episode: Episode,
    params: KernelParams,
    rng,
) -> ParticleSet:
    """One control cycle: motion update, measurement update, resampling.

    The action argument is part of the interface for kernels that condition
    on it; the default kernel ignores its value.
    """
    del action
    rng = ensure_rng(rng)
    ps = motion_update(ps, params, rng)
    ps = measurement_update(ps, z, episode)
    return resample(ps, rng)


class PfoeFilter:
    """Stateful wrapper owning the particle set and rng for one replay run."""

    def __init__(
        self,
        episode: Episode,
        n: int = DEFAULT_PARTICLES,
        params: KernelParams = KernelParams(),
        seed=None,
    ):
        self.episode = episode
        self.params = params
        self.rng = ensure_rng(seed)
        self.particles = init_particles(episode, n, self.rng)

    def step(self, action, z: Observation) -> ParticleSet:
        self.particles = filter_step(
            self.particles, action, z, self.episode, self.params, self.rng
        )
        return self.particles
