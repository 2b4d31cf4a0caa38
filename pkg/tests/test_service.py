import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from pfoe.episode import deserialize
from pfoe.filter import ParticleSet
from pfoe.service import (
    FrameModel,
    KeysModel,
    ProtocolError,
    SessionConfig,
    SessionCore,
    keys_to_action,
)
from pfoe.service.app import create_app
from pfoe.tasks import deserialize_trace


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(ui_dir=None))


class TestRestApi:
    def test_health(self, client):
        assert client.get("/api/health").json() == {"status": "ok"}

    def test_environments(self, client):
        envs = client.get("/api/environments").json()
        names = {e["name"] for e in envs}
        assert names == {"counting_wall", "choice_maze", "rect_corridor"}
        maze = next(e for e in envs if e["name"] == "choice_maze")
        assert {"A", "B", "C"} <= set(maze["regions"])

    def test_teach_returns_parseable_episode(self, client):
        reply = client.post("/api/teach", json={
            "env": "counting_wall", "task": "counting:2", "cycles": 3, "seed": 7,
        })
        assert reply.status_code == 200
        body = reply.json()
        episode = deserialize(body["episode_text"])
        assert len(episode) == body["t_trimmed"] < body["t_raw"]

    def test_teach_unknown_env_is_422(self, client):
        reply = client.post("/api/teach", json={"env": "nowhere", "task": "counting:1"})
        assert reply.status_code == 422

    def test_replay_roundtrip(self, client):
        taught = client.post("/api/teach", json={
            "env": "counting_wall", "task": "counting:1", "cycles": 3, "seed": 1,
        }).json()
        reply = client.post("/api/replay", json={
            "episode_text": taught["episode_text"],
            "env": "counting_wall", "task": "counting:1",
            "policy": "mode", "trials": 2, "seed": 5,
        })
        assert reply.status_code == 200
        body = reply.json()
        assert len(body["outcomes"]) == 2
        trace = deserialize_trace(body["trace_text"])
        assert len(trace.steps) > 0

    def test_replay_rejects_malformed_episode(self, client):
        reply = client.post("/api/replay", json={
            "episode_text": "garbage\n", "env": "counting_wall", "task": "counting:1",
        })
        assert reply.status_code == 422

    def test_bench_small(self, client):
        reply = client.post("/api/bench", json={"particles": 200, "steps": 20, "cycles": [3]})
        assert reply.status_code == 200
        rows = reply.json()["rows"]
        assert len(rows) == 1
        assert rows[0]["total_ms"] > 0

    def test_bench_zero_steps_empty(self, client):
        reply = client.post("/api/bench", json={"steps": 0})
        assert reply.status_code == 200
        assert reply.json()["rows"] == []

    def test_experiment_tiny(self, client):
        reply = client.post("/api/experiment", json={
            "config_text": "task=counting\nn=1\nsets=1\ntrials=2\nseed=3\n",
        })
        assert reply.status_code == 200
        body = reply.json()
        assert len(body["rows"]) == 2
        assert "all" in body["table_text"]


class TestSessionCore:
    def test_keys_quantization(self):
        assert keys_to_action(KeysModel(up=True)) .v_linear == 0.2
        assert keys_to_action(KeysModel(down=True)).v_linear == -0.2
        combo = keys_to_action(KeysModel(up=True, left=True))
        assert combo.v_linear == 0.2 and combo.v_angular == pytest.approx(np.pi / 2)
        assert keys_to_action(KeysModel()) == keys_to_action(KeysModel(up=True, down=True))

    def test_up_key_moves_robot_next_cycle(self):
        core = SessionCore(SessionConfig(env="counting_wall", seed=0))
        x0 = core.sim.pose.x
        core.handle_message({"type": "keys", "keys": {"up": True}})
        frame = core.tick()
        assert frame.phase == "teach"
        assert frame.pose.x > x0
        assert frame.keys.up is True
        assert frame.belief_bins == [] and frame.mode_t is None
        recorded = core.recording.events[-1].action
        assert (recorded.v_linear, recorded.v_angular) == (0.2, 0.0)

    def test_save_and_replay_flow(self):
        core = SessionCore(SessionConfig(env="counting_wall", seed=1, trim_head=0.0,
                                         trim_tail=0.0, particles=300))
        core.handle_message({"type": "keys", "keys": {"up": True}})
        for _ in range(30):
            core.tick()
        ack = core.handle_message({"type": "save_episode"})[0]
        assert ack.type == "ack" and ack.detail["t_trimmed"] == 30
        ack = core.handle_message({"type": "start_replay"})[0]
        assert ack.type == "ack"
        frame = core.tick()
        assert frame.phase == "replay" and frame.step == 0
        assert frame.mode_t is not None
        assert sum(frame.belief_bins) == pytest.approx(1.0, abs=1e-6)

    def test_replay_point_mass_histogram(self):
        core = SessionCore(SessionConfig(env="counting_wall", seed=1, trim_head=0.0,
                                         trim_tail=0.0, particles=100))
        core.handle_message({"type": "keys", "keys": {"up": True}})
        for _ in range(20):
            core.tick()
        core.handle_message({"type": "save_episode"})
        core.handle_message({"type": "start_replay"})
        # Pin the filter at t=5: the histogram must put all mass in t=5's bin.
        from pfoe.service.session import belief_bins
        n = core.filter.particles.n
        core.filter.particles = ParticleSet(np.full(n, 5), np.full(n, 1.0 / n), 20)
        bins = belief_bins(core.filter, 200)
        assert bins[4] == pytest.approx(1.0)
        assert sum(bins) == pytest.approx(1.0, abs=1e-9)

    def test_replay_before_save_is_error_frame(self):
        core = SessionCore(SessionConfig(env="counting_wall"))
        reply = core.handle_message({"type": "start_replay"})[0]
        assert reply.type == "error" and reply.code == "no_episode"

    def test_save_too_short_is_error_frame(self):
        core = SessionCore(SessionConfig(env="counting_wall", trim_head=5.0, trim_tail=5.0))
        core.tick()
        reply = core.handle_message({"type": "save_episode"})[0]
        assert reply.type == "error" and reply.code == "episode_too_short"

    def test_malformed_message_raises_protocol_error(self):
        core = SessionCore(SessionConfig(env="counting_wall"))
        with pytest.raises(ProtocolError):
            core.handle_message({"type": "dance"})
        with pytest.raises(ProtocolError):
            core.handle_message(["not", "an", "object"])


class TestSessionWebsocket:
    def test_full_protocol_walkthrough(self, client):
        with client.websocket_connect(
            "/ws/session?env=counting_wall&seed=3&particles=200&trim=0&cycle=0.002"
        ) as ws:
            ws.send_text(json.dumps({"type": "keys", "keys": {"up": True}}))
            teach_frames = []
            while len(teach_frames) < 40:
                msg = json.loads(ws.receive_text())
                if msg["type"] == "frame":
                    assert msg["phase"] == "teach"
                    teach_frames.append(msg)
            assert teach_frames[-1]["pose"]["x"] > teach_frames[0]["pose"]["x"]

            ws.send_text(json.dumps({"type": "keys", "keys": {}}))
            ws.send_text(json.dumps({"type": "save_episode"}))
            ack = None
            while ack is None:
                msg = json.loads(ws.receive_text())
                if msg["type"] == "ack":
                    ack = msg
                else:
                    assert msg["type"] == "frame"
            assert ack["command"] == "save_episode"
            assert ack["detail"]["t_trimmed"] >= 40

            ws.send_text(json.dumps({"type": "start_replay"}))
            replay_frames = []
            while len(replay_frames) < 30:
                msg = json.loads(ws.receive_text())
                if msg["type"] == "frame" and msg["phase"] == "replay":
                    replay_frames.append(msg)
            for frame in replay_frames:
                bins = frame["belief_bins"]
                assert sum(bins) == pytest.approx(1.0, abs=1e-6)
                # T <= 200 here, so bins map 1:1 to indices and the mode must
                # match the histogram's argmax exactly.
                assert frame["mode_t"] == int(np.argmax(bins)) + 1
                assert frame["mode_mass"] == pytest.approx(max(bins), abs=1e-9)

    def test_malformed_message_closes_with_error_frame(self, client):
        with client.websocket_connect("/ws/session?env=counting_wall&cycle=0.01") as ws:
            ws.send_text("this is not json")
            saw_error = False
            try:
                for _ in range(200):
                    msg = json.loads(ws.receive_text())
                    if msg["type"] == "error":
                        assert msg["code"] == "bad_message"
                        saw_error = True
                        break
            except Exception:
                pass
            assert saw_error

    def test_bad_config_rejected(self, client):
        with client.websocket_connect("/ws/session?env=moonbase") as ws:
            msg = json.loads(ws.receive_text())
            assert msg["type"] == "error" and msg["code"] == "bad_config"
