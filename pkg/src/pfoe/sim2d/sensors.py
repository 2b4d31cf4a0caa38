"""Four-channel IR-style range sensor model.

Each channel casts a ray at its mounting angle and converts the wall
distance into an intensity count through a power law with log-normal noise:
reading = round(A_j * d^-gamma * exp(sigma * eps)), clamped to >= 1. Gains
differ per channel so each sensor carries its own bias on the log scale,
like the real units. No wall within range reads the floor value 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..episode import Observation
from .dynamics import Pose
from .geometry import raycast

_MIN_DISTANCE = 1e-3


@dataclass(frozen=True)
class SensorModel:
    # Defaults emulate short-range IR units: thousands of counts at contact,
    # a soft floor near the effective range, nothing beyond it. Gains differ
    # per channel (each sensor has its own bias on the log scale).
    gains: tuple[float, float, float, float] = (0.9, 0.75, 1.0, 0.85)
    angles: tuple[float, float, float, float] = (
        math.radians(15),
        math.radians(50),
        math.radians(-50),
        math.radians(-15),
    )
    gamma: float = 3.0
    sigma: float = 0.25
    max_range: float = 0.45

    def __post_init__(self):
        if any(g <= 0 for g in self.gains):
            raise ValueError("gains must be positive")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.max_range <= 0:
            raise ValueError("max_range must be positive")

    def intensity(self, channel: int, distance: float) -> float:
        """Noise-free intensity of one channel at the given wall distance."""
        return self.gains[channel] * max(distance, _MIN_DISTANCE) ** (-self.gamma)


def sense(pose: Pose, world, model: SensorModel, rng: np.random.Generator) -> Observation:
    """One reading of all four channels; consumes four normal draws per call."""
    eps = rng.standard_normal(4)
    readings = []
    for j in range(4):
        d = raycast(pose.x, pose.y, pose.theta + model.angles[j], world.segments, model.max_range)
        if d is None:
            raw = 0.0
        else:
            raw = model.intensity(j, d) * math.exp(model.sigma * eps[j])
        readings.append(max(1, round(raw)))
    return Observation(*readings)
