"""Seeded simulator instance: one robot in one world."""

from __future__ import annotations

import numpy as np

from ..episode import Action, Observation
from .dynamics import CONTROL_CYCLE, ROBOT_RADIUS, MotionNoise, Pose, step_dynamics
from .sensors import SensorModel, sense
from .world import WorldMap


class Simulator:
    """Owns the robot pose and the rng; one step() per control cycle.

    Per cycle the rng is consumed as three normals (dynamics) plus four
    normals (sensing), so trajectories and observations are reproducible
    bit-for-bit from the seed.
    """

    def __init__(
        self,
        world: WorldMap,
        seed=None,
        noise: MotionNoise = MotionNoise(),
        sensor_model: SensorModel = SensorModel(),
        radius: float = ROBOT_RADIUS,
        dt: float = CONTROL_CYCLE,
        start_pose: Pose | None = None,
    ):
        self.world = world
        self.noise = noise
        self.sensor_model = sensor_model
        self.radius = radius
        self.dt = dt
        self.rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        self.pose = start_pose if start_pose is not None else world.start_pose

    def step(self, action: Action) -> Pose:
        self.pose = step_dynamics(
            self.pose, action, self.dt, self.noise, self.rng,
            self.world.segments, self.radius,
        )
        return self.pose

    def sense(self) -> Observation:
        return sense(self.pose, self.world, self.sensor_model, self.rng)

    def teleport(self, pose: Pose) -> None:
        self.pose = pose
