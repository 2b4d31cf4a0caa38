"""Command-line interface.

The CLI is a thin client of the service API: every operation builds a
request model and either calls the service layer in-process (default) or
POSTs it to a running server (--server URL). File I/O stays on the client
side. Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .episode import EpisodeError, deserialize
from .service import ops
from .service.app import DEFAULT_PORT
from .service.models import (
    BenchRequest,
    BenchResponse,
    ExperimentRequest,
    ExperimentResponse,
    ReplayRequest,
    ReplayResponse,
    TeachRequest,
    TeachResponse,
)


class CliError(Exception):
    pass


def _call(server: str | None, path: str, request, response_model):
    """In-process by default; HTTP POST when --server is given."""
    if server is None:
        handler = {
            "/api/teach": ops.do_teach,
            "/api/replay": ops.do_replay,
            "/api/experiment": ops.do_experiment,
            "/api/bench": ops.do_bench,
        }[path]
        return handler(request)
    import httpx

    url = server.rstrip("/") + path
    reply = httpx.post(url, json=request.model_dump(), timeout=600.0)
    if reply.status_code != 200:
        raise CliError(f"{url} -> HTTP {reply.status_code}: {reply.text}")
    return response_model.model_validate(reply.json())


def cmd_teach(args) -> int:
    req = TeachRequest(
        env=args.env, task=args.task, cycles=args.cycles, seed=args.seed,
        trim_head=args.trim, trim_tail=args.trim,
    )
    resp: TeachResponse = _call(args.server, "/api/teach", req, TeachResponse)
    Path(args.out).write_text(resp.episode_text, encoding="utf-8")
    print(f"recorded T={resp.t_raw}, trimmed T={resp.t_trimmed} -> {args.out}")
    return 0


def cmd_replay(args) -> int:
    episode_text = Path(args.episode).read_text(encoding="utf-8")
    deserialize(episode_text)  # fail fast with a line-numbered parse error
    req = ReplayRequest(
        episode_text=episode_text, env=args.env, task=args.task,
        policy=args.policy, trials=args.trials, particles=args.particles,
        delta=args.delta, seed=args.seed,
    )
    resp: ReplayResponse = _call(args.server, "/api/replay", req, ReplayResponse)
    for i, outcome in enumerate(resp.outcomes, start=1):
        metrics = " ".join(f"{k}={v}" for k, v in sorted(outcome.metrics.items()))
        print(f"trial {i}: {outcome.label}" + (f" ({metrics})" if metrics else ""))
    from .tasks import deserialize_trace, find_stall_events

    stalls = find_stall_events(deserialize_trace(resp.trace_text))
    if stalls:
        windows = ", ".join(f"step {e.start} x{e.length}" for e in stalls[:8])
        print(f"stall events (near-zero command >=1s): {len(stalls)} [{windows}]")
    if args.trace_out:
        Path(args.trace_out).write_text(resp.trace_text, encoding="utf-8")
        print(f"trace -> {args.trace_out}")
    return 0


def cmd_experiment(args) -> int:
    config_text = Path(args.config).read_text(encoding="utf-8")
    req = ExperimentRequest(config_text=config_text, seed=args.seed)
    resp: ExperimentResponse = _call(args.server, "/api/experiment", req, ExperimentResponse)
    print(resp.table_text)
    if args.out:
        Path(args.out).write_text(resp.tsv_text, encoding="utf-8")
        print(f"report -> {args.out}")
    return 0


def cmd_bench(args) -> int:
    cycles = [int(c) for c in args.cycles.split(",") if c.strip()]
    req = BenchRequest(particles=args.particles, steps=args.steps, cycles=cycles, seed=args.seed)
    resp: BenchResponse = _call(args.server, "/api/bench", req, BenchResponse)
    print(resp.table_text)
    if resp.rows:
        totals = [r.total_ms for r in resp.rows]
        spread = max(totals) / min(totals) - 1.0
        print(f"\nper-step total {max(totals):.4f} ms worst case; "
              f"length spread {100 * spread:.1f}%")
    return 0


def cmd_inspect(args) -> int:
    episode = deserialize(Path(args.episode).read_text(encoding="utf-8"))
    actions = episode.actions_array
    obs = episode.observations_array
    print(f"episode: T={len(episode)} cycle={episode.cycle_duration}s "
          f"duration={episode.duration_seconds:.1f}s")
    print(f"v_linear:  min {actions[:, 0].min():+.3f} max {actions[:, 0].max():+.3f}")
    print(f"v_angular: min {actions[:, 1].min():+.3f} max {actions[:, 1].max():+.3f}")
    for name, column in zip(("z_lf", "z_ls", "z_rs", "z_rf"), obs.T):
        print(f"{name}: min {column.min()} max {column.max()} mean {column.mean():.1f}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    ui_dir = Path(args.ui_dir) if args.ui_dir else None
    uvicorn.run(create_app(ui_dir=ui_dir), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfoe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_server=True):
        p.add_argument("--seed", type=int, default=0)
        if with_server:
            p.add_argument("--server", default=None,
                           help="POST to a running pfoe server instead of running in-process")

    p = sub.add_parser("teach", help="record a scripted teaching session to an episode file")
    p.add_argument("--env", default="counting_wall")
    p.add_argument("--task", default="counting:2")
    p.add_argument("--cycles", type=int, default=3)
    p.add_argument("--trim", type=float, default=5.0, help="seconds trimmed from each end")
    p.add_argument("--out", required=True)
    add_common(p)
    p.set_defaults(func=cmd_teach)

    p = sub.add_parser("replay", help="replay an episode closed-loop and judge the trials")
    p.add_argument("--episode", required=True)
    p.add_argument("--env", default="counting_wall")
    p.add_argument("--task", default="counting:2")
    p.add_argument("--policy", choices=("mode", "mean"), default="mode")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--particles", type=int, default=1000)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--trace-out", default=None)
    add_common(p)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("experiment", help="run a teach-and-replay campaign from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="write the per-trial TSV report here")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--server", default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bench", help="time the filter procedures per step")
    p.add_argument("--particles", type=int, default=1000)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--cycles", default="3,10,20")
    add_common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("inspect", help="summarize an episode file")
    p.add_argument("--episode", required=True)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("serve", help="run the bridge service (REST + live session websocket)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("PFOE_PORT", DEFAULT_PORT)))
    p.add_argument("--ui-dir", default=None, help="static UI bundle directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, EpisodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
