"""Interactive teach/replay session state machine (transport-agnostic).

One SessionCore owns a simulator, the recording, and (in replay) a filter.
The network layer calls tick() once per control cycle and forwards client
messages to handle_message(); both return pydantic models ready to send.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..episode import Episode, EpisodeTooShortError, Observation, ZERO_ACTION, Action, record_event, trim
from ..filter import KernelParams, PfoeFilter
from ..sim2d import Simulator, load_environment
from ..tasks.runner import POLICIES
from .models import AckModel, ErrorFrameModel, FrameModel, KeysModel, PoseModel

FORWARD_SPEED = 0.2
TURN_SPEED = math.pi / 2
MAX_BELIEF_BINS = 200


class ProtocolError(Exception):
    """Client violated the protocol; the session must close."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class SessionConfig:
    env: str = "choice_maze"
    seed: int = 0
    particles: int = 1000
    delta: float = 0.1
    trim_head: float = 5.0
    trim_tail: float = 5.0
    policy: str = "mode"
    max_bins: int = MAX_BELIEF_BINS


def keys_to_action(keys: KeysModel) -> Action:
    """Teleop quantization: up/down drive, left/right turn, combinable."""
    v = (FORWARD_SPEED if keys.up else 0.0) + (-FORWARD_SPEED if keys.down else 0.0)
    w = (TURN_SPEED if keys.left else 0.0) + (-TURN_SPEED if keys.right else 0.0)
    return Action(v, w)


def belief_bins(filter_: PfoeFilter, max_bins: int) -> list[float]:
    """Belief histogram over episode indices, at most max_bins bins."""
    bel = filter_.particles.belief_vector()
    T = bel.size
    if T <= max_bins:
        return bel.tolist()
    edges = np.linspace(0, T, max_bins + 1).astype(int)
    return [float(bel[a:b].sum()) for a, b in zip(edges[:-1], edges[1:])]


class SessionCore:
    def __init__(self, config: SessionConfig = SessionConfig()):
        if config.policy not in POLICIES:
            raise ValueError(f"unknown policy {config.policy!r}")
        self.config = config
        self.world = load_environment(config.env)
        ss = np.random.SeedSequence(config.seed)
        self._sim_seed, self._filter_seed = ss.spawn(2)
        self.sim = Simulator(self.world, seed=np.random.default_rng(self._sim_seed))
        self.phase = "teach"
        self.keys = KeysModel()
        self.recording = Episode((), self.sim.dt)
        self.episode: Episode | None = None
        self.filter: PfoeFilter | None = None
        self.step_count = 0
        self.prev_action = ZERO_ACTION
        self.last_z = Observation(1, 1, 1, 1)

    # -- message handling ---------------------------------------------------

    def handle_message(self, msg) -> list:
        if not isinstance(msg, dict) or "type" not in msg:
            raise ProtocolError("bad_message", "messages must be objects with a 'type' field")
        kind = msg["type"]
        if kind == "keys":
            try:
                self.keys = KeysModel.model_validate(msg.get("keys", {}))
            except Exception:
                raise ProtocolError("bad_message", "malformed keys state") from None
            return []
        if kind == "save_episode":
            return [self._save_episode()]
        if kind == "start_replay":
            return [self._start_replay()]
        if kind == "reset":
            return [self._reset()]
        raise ProtocolError("bad_message", f"unknown message type {kind!r}")

    def _save_episode(self):
        try:
            episode = trim(self.recording, self.config.trim_head, self.config.trim_tail)
        except EpisodeTooShortError as exc:
            return ErrorFrameModel(code="episode_too_short", message=str(exc))
        self.episode = episode
        return AckModel(
            command="save_episode",
            detail={"t_raw": len(self.recording), "t_trimmed": len(episode)},
        )

    def _start_replay(self):
        if self.episode is None:
            return ErrorFrameModel(code="no_episode", message="save_episode before start_replay")
        if len(self.episode) < 2:
            return ErrorFrameModel(code="episode_too_short", message="replay needs at least 2 events")
        self.filter = PfoeFilter(
            self.episode,
            self.config.particles,
            KernelParams(delta=self.config.delta),
            seed=np.random.default_rng(self._filter_seed),
        )
        self.phase = "replay"
        self.step_count = 0
        self.prev_action = ZERO_ACTION
        return AckModel(command="start_replay", detail={"episode_length": len(self.episode)})

    def _reset(self):
        self.phase = "teach"
        self.sim = Simulator(self.world, seed=np.random.default_rng(self._sim_seed))
        self.recording = Episode((), self.sim.dt)
        self.filter = None
        self.step_count = 0
        self.prev_action = ZERO_ACTION
        self.keys = KeysModel()
        return AckModel(command="reset", detail={})

    # -- control cycle ------------------------------------------------------

    def tick(self) -> FrameModel:
        if self.phase == "teach":
            action = keys_to_action(self.keys)
            self.sim.step(action)
            z = self.sim.sense()
            self.recording = record_event(self.recording, action, z)
            mode_t = mode_mass = None
            bins: list[float] = []
        else:
            z = self.sim.sense()
            self.filter.step(self.prev_action, z)
            action = POLICIES[self.config.policy](self.filter.particles, self.episode)
            self.sim.step(action)
            self.prev_action = action
            mode_t, mode_mass = self.filter.particles.mode()
            bins = belief_bins(self.filter, self.config.max_bins)
        self.last_z = z
        frame = FrameModel(
            phase=self.phase,
            step=self.step_count,
            pose=PoseModel(x=self.sim.pose.x, y=self.sim.pose.y, theta=self.sim.pose.theta),
            z=list(z.as_tuple()),
            mode_t=mode_t,
            mode_mass=mode_mass,
            belief_bins=bins,
            keys=self.keys,
        )
        self.step_count += 1
        return frame
