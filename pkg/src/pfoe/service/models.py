"""Request/response and frame models for the service API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class PoseModel(BaseModel):
    x: float
    y: float
    theta: float


class KeysModel(BaseModel):
    """Held-key state of the teleop controller; latest-wins semantics."""

    up: bool = False
    left: bool = False
    right: bool = False
    down: bool = False


class FrameModel(BaseModel):
    """One control-cycle snapshot streamed to session clients."""

    type: Literal["frame"] = "frame"
    phase: Literal["teach", "replay"]
    step: int
    pose: PoseModel
    z: list[int] = Field(min_length=4, max_length=4)
    mode_t: Optional[int] = None
    mode_mass: Optional[float] = None
    belief_bins: list[float] = Field(default_factory=list)
    keys: KeysModel = Field(default_factory=KeysModel)


class AckModel(BaseModel):
    type: Literal["ack"] = "ack"
    command: str
    detail: dict = Field(default_factory=dict)


class ErrorFrameModel(BaseModel):
    type: Literal["error"] = "error"
    code: str
    message: str


class EnvironmentInfo(BaseModel):
    name: str
    segments: list[list[float]]
    regions: dict[str, list[float]]
    start_pose: PoseModel


class TeachRequest(BaseModel):
    env: str = "counting_wall"
    task: str = "counting:2"
    cycles: int = 3
    seed: int = 0
    trim_head: float = 5.0
    trim_tail: float = 5.0


class TeachResponse(BaseModel):
    episode_text: str
    t_raw: int
    t_trimmed: int
    cycle_duration: float


class OutcomeModel(BaseModel):
    label: str
    metrics: dict = Field(default_factory=dict)


class ReplayRequest(BaseModel):
    episode_text: str
    env: str = "counting_wall"
    task: str = "counting:2"
    policy: Literal["mode", "mean"] = "mode"
    trials: int = 10
    particles: int = 1000
    delta: float = 0.1
    seed: int = 0


class ReplayResponse(BaseModel):
    outcomes: list[OutcomeModel]
    trace_text: str


class ExperimentRequest(BaseModel):
    config_text: str
    seed: Optional[int] = None


class ExperimentRow(BaseModel):
    task: str
    variant: str
    policy: str
    set_index: int
    trial_index: int
    outcome: str
    metrics: dict


class ExperimentResponse(BaseModel):
    rows: list[ExperimentRow]
    table_text: str
    tsv_text: str


class BenchRequest(BaseModel):
    particles: int = 1000
    steps: int = 1000
    cycles: list[int] = Field(default_factory=lambda: [3, 10, 20])
    seed: int = 0


class BenchRowModel(BaseModel):
    cycles: int
    episode_length: int
    steps: int
    motion_ms: float
    measurement_ms: float
    resample_ms: float
    decision_ms: float
    total_ms: float


class BenchResponse(BaseModel):
    rows: list[BenchRowModel]
    table_text: str
