"""FastAPI application: REST operations, the live session websocket, and
static serving of the teleoperation UI bundle."""

from __future__ import annotations

import asyncio
import json
import os
from collections import deque
from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from ..episode import EpisodeError
from ..sim2d import UnknownEnvironmentError
from ..tasks.experiment import ConfigError
from ..tasks.teachers import UnknownTaskError
from .models import (
    BenchRequest,
    BenchResponse,
    EnvironmentInfo,
    ErrorFrameModel,
    ExperimentRequest,
    ExperimentResponse,
    ReplayRequest,
    ReplayResponse,
    TeachRequest,
    TeachResponse,
)
from .ops import do_bench, do_experiment, do_replay, do_teach, list_environments
from .session import ProtocolError, SessionConfig, SessionCore

DEFAULT_PORT = 8765
FRAME_QUEUE_LIMIT = 64

_BAD_REQUEST = (UnknownEnvironmentError, UnknownTaskError, EpisodeError, ConfigError, ValueError)


def default_ui_dir() -> Path | None:
    override = os.environ.get("PFOE_UI_DIR")
    if override:
        return Path(override)
    candidate = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def create_app(ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="pfoe service", version="0.1.0")

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/environments", response_model=list[EnvironmentInfo])
    def environments():
        return list_environments()

    def _run(op, req):
        try:
            return op(req)
        except _BAD_REQUEST as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/api/teach", response_model=TeachResponse)
    def teach(req: TeachRequest):
        return _run(do_teach, req)

    @app.post("/api/replay", response_model=ReplayResponse)
    def replay(req: ReplayRequest):
        return _run(do_replay, req)

    @app.post("/api/experiment", response_model=ExperimentResponse)
    def experiment(req: ExperimentRequest):
        return _run(do_experiment, req)

    @app.post("/api/bench", response_model=BenchResponse)
    def bench(req: BenchRequest):
        return _run(do_bench, req)

    @app.websocket("/ws/session")
    async def ws_session(
        ws: WebSocket,
        env: str = "choice_maze",
        seed: int = 0,
        particles: int = 1000,
        delta: float = 0.1,
        trim: float = 5.0,
        policy: str = "mode",
        cycle: float = 0.1,
    ):
        await ws.accept()
        try:
            core = SessionCore(
                SessionConfig(
                    env=env, seed=seed, particles=particles, delta=delta,
                    trim_head=trim, trim_tail=trim, policy=policy,
                )
            )
        except _BAD_REQUEST as exc:
            await ws.send_text(ErrorFrameModel(code="bad_config", message=str(exc)).model_dump_json())
            await ws.close()
            return

        # The sim loop must never block on a slow client: frames go through a
        # bounded drop-oldest queue; control replies are never dropped.
        frames: deque = deque(maxlen=FRAME_QUEUE_LIMIT)
        control: deque = deque()
        wake = asyncio.Event()
        fatal: list[ErrorFrameModel] = []

        async def reader():
            while True:
                try:
                    msg = await ws.receive_json()
                except (json.JSONDecodeError, ValueError):
                    raise ProtocolError("bad_message", "frames must be JSON objects") from None
                control.extend(core.handle_message(msg))
                wake.set()

        async def ticker():
            while True:
                frames.append(core.tick())
                wake.set()
                await asyncio.sleep(cycle)

        async def sender():
            while True:
                await wake.wait()
                wake.clear()
                while control:
                    await ws.send_text(control.popleft().model_dump_json())
                while frames:
                    await ws.send_text(frames.popleft().model_dump_json())

        tasks = [asyncio.create_task(t()) for t in (reader, ticker, sender)]
        try:
            done, pending = await asyncio.wait(tasks, return_when=asyncio.FIRST_EXCEPTION)
            for task in done:
                exc = task.exception()
                if isinstance(exc, ProtocolError):
                    fatal.append(ErrorFrameModel(code=exc.code, message=str(exc)))
                elif exc is not None and not isinstance(exc, WebSocketDisconnect):
                    raise exc
        finally:
            for task in tasks:
                task.cancel()
            for frame in fatal:
                try:
                    await ws.send_text(frame.model_dump_json())
                except Exception:
                    pass
            try:
                await ws.close()
            except Exception:
                pass

    ui = ui_dir if ui_dir is not None else default_ui_dir()
    if ui is not None and Path(ui).is_dir():
        app.mount("/", StaticFiles(directory=str(ui), html=True), name="ui")

    return app
