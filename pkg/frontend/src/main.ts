// Entry point: wire the session socket, keyboard teleop, and the three
// panels (world, belief histogram, mode timeline) to the DOM.

import { BeliefView } from "./beliefView";
import { Ctx2D } from "./draw";
import { KeyStateTracker } from "./keyState";
import { EnvironmentInfo, Frame } from "./protocol";
import { SessionClient, sessionUrl } from "./session";
import { ModeTimeline } from "./timeline";
import { WorldView } from "./worldView";

function ctxOf(id: string): Ctx2D {
  const canvas = document.getElementById(id) as HTMLCanvasElement;
  return canvas.getContext("2d") as unknown as Ctx2D;
}

function setStatus(text: string, bad = false): void {
  const el = document.getElementById("status")!;
  el.textContent = text;
  el.className = bad ? "bad" : "";
}

async function start(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const env = params.get("env") ?? "choice_maze";
  const seed = params.get("seed") ?? "0";

  const worldView = new WorldView();
  const beliefView = new BeliefView();
  const timeline = new ModeTimeline();
  const worldCtx = ctxOf("world");
  const beliefCtx = ctxOf("belief");
  const timelineCtx = ctxOf("timeline");

  const environments: EnvironmentInfo[] = await fetch("/api/environments").then((r) => r.json());
  const info = environments.find((e) => e.name === env);
  if (info === undefined) {
    setStatus(`unknown environment ${env}`, true);
    return;
  }
  worldView.setWorld(info);

  let lastPhase = "teach";
  const socket = new WebSocket(sessionUrl(window.location.origin, { env, seed }));
  const client = new SessionClient(socket as never, {
    onFrame(frame: Frame): void {
      if (frame.phase !== lastPhase) {
        lastPhase = frame.phase;
        if (frame.phase === "replay") timeline.clear();
      }
      worldView.update(frame);
      beliefView.update(frame);
      timeline.update(frame);
      setStatus(
        `${frame.phase} | step ${frame.step}` +
          (frame.mode_t !== null ? ` | mode t=${frame.mode_t}` : ""),
      );
    },
    onAck(command, detail): void {
      setStatus(`${command} ok ${JSON.stringify(detail)}`);
    },
    onError(code, message): void {
      setStatus(`${code}: ${message}`, true);
    },
    onDisconnect(): void {
      setStatus("disconnected", true);
    },
  });

  const keys = new KeyStateTracker((state) => client.sendKeys(state));
  keys.attach(window);

  document.getElementById("save")!.addEventListener("click", () => client.saveEpisode());
  document.getElementById("replay")!.addEventListener("click", () => client.startReplay());
  document.getElementById("reset")!.addEventListener("click", () => {
    timeline.clear();
    client.reset();
  });

  function loop(): void {
    worldView.render(worldCtx);
    beliefView.render(beliefCtx);
    timeline.render(timelineCtx);
    requestAnimationFrame(loop);
  }
  requestAnimationFrame(loop);
}

start().catch((err) => setStatus(String(err), true));
