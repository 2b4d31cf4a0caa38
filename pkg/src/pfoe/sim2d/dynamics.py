"""Differential-drive kinematics with slip noise and wall contact."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..episode import Action
from .geometry import sweep_disc

ROBOT_RADIUS = 0.06
CONTROL_CYCLE = 0.1


def normalize_angle(theta: float) -> float:
    """Wrap into (-pi, pi]."""
    r = math.remainder(theta, math.tau)
    if r <= -math.pi:
        r += math.tau
    return r


@dataclass(frozen=True)
class Pose:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.theta)):
            raise ValueError("pose components must be finite")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "theta", normalize_angle(float(self.theta)))


@dataclass(frozen=True)
class MotionNoise:
    """Per-step multiplicative slip on linear/angular displacement (tires are
    slippy: the linear mean sits below 1) plus additive heading jitter."""

    linear_slip_mean: float = 0.98
    linear_slip_sd: float = 0.02
    angular_slip_mean: float = 0.98
    angular_slip_sd: float = 0.02
    heading_jitter_sd: float = 0.004

    def __post_init__(self):
        for name in ("linear_slip_mean", "linear_slip_sd", "angular_slip_mean",
                     "angular_slip_sd", "heading_jitter_sd"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @classmethod
    def zero(cls) -> "MotionNoise":
        return cls(1.0, 0.0, 1.0, 0.0, 0.0)

    def scaled(self, factor: float) -> "MotionNoise":
        """Same means, standard deviations scaled by factor."""
        return MotionNoise(
            self.linear_slip_mean,
            self.linear_slip_sd * factor,
            self.angular_slip_mean,
            self.angular_slip_sd * factor,
            self.heading_jitter_sd * factor,
        )


def step_dynamics(
    pose: Pose,
    action: Action,
    dt: float,
    noise: MotionNoise,
    rng: np.random.Generator,
    segments=(),
    radius: float = ROBOT_RADIUS,
) -> Pose:
    """One integration step of the unicycle model.

    Midpoint-heading integration: theta' = theta + w*dt*eta_a + eps_theta and
    the translation uses cos/sin of the mid-step heading. Translation stops
    at the first wall contact (disc model); rotation is never blocked.

    Consumes exactly three normal draws per call, even when noise is zero,
    so seeded streams stay aligned across noise configurations.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    eps = rng.standard_normal(3)
    if action.v_linear == 0.0 and action.v_angular == 0.0:
        return pose  # a stationary robot does not drift
    eta_l = max(0.0, noise.linear_slip_mean + noise.linear_slip_sd * eps[0])
    eta_a = max(0.0, noise.angular_slip_mean + noise.angular_slip_sd * eps[1])
    dtheta = action.v_angular * dt * eta_a + noise.heading_jitter_sd * eps[2]
    theta_mid = pose.theta + 0.5 * dtheta
    dist = action.v_linear * dt * eta_l
    dx, dy = dist * math.cos(theta_mid), dist * math.sin(theta_mid)
    if segments and (dx or dy):
        s = sweep_disc(pose.x, pose.y, dx, dy, radius, segments)
        dx, dy = s * dx, s * dy
    return Pose(pose.x + dx, pose.y + dy, pose.theta + dtheta)
