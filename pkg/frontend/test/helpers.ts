// Shared test fakes and fixture builders.

import { Ctx2D } from "../src/draw";
import { Frame, KeyState, ZERO_KEYS } from "../src/protocol";

export interface DrawCall {
  op: string;
  args: number[] | string[];
}

export class FakeCtx implements Ctx2D {
  canvas = { width: 400, height: 300 };
  fillStyle = "";
  strokeStyle = "";
  lineWidth = 1;
  font = "";
  calls: DrawCall[] = [];

  private log(op: string, ...args: (number | string)[]): void {
    this.calls.push({ op, args: args as never });
  }

  clearRect(x: number, y: number, w: number, h: number): void { this.log("clearRect", x, y, w, h); }
  fillRect(x: number, y: number, w: number, h: number): void { this.log("fillRect", x, y, w, h); }
  beginPath(): void { this.log("beginPath"); }
  moveTo(x: number, y: number): void { this.log("moveTo", x, y); }
  lineTo(x: number, y: number): void { this.log("lineTo", x, y); }
  arc(x: number, y: number, r: number, a0: number, a1: number): void { this.log("arc", x, y, r, a0, a1); }
  stroke(): void { this.log("stroke"); }
  fill(): void { this.log("fill"); }
  fillText(text: string, x: number, y: number): void { this.log("fillText", text, String(x), String(y)); }
}

export function makeFrame(overrides: Partial<Frame> = {}): Frame {
  return {
    type: "frame",
    phase: "teach",
    step: 0,
    pose: { x: 0, y: 0, theta: 0 },
    z: [1, 1, 1, 1],
    mode_t: null,
    mode_mass: null,
    belief_bins: [],
    keys: { ...ZERO_KEYS },
    ...overrides,
  };
}

/** Deterministic 1000-frame recorded session: 200 teach cycles driving
 * forward, then 800 replay cycles whose mode walks the episode with a
 * scripted leap back at step 500. */
export function recordedSession(): Frame[] {
  const frames: Frame[] = [];
  const episodeLength = 120;
  for (let i = 0; i < 200; i++) {
    frames.push(
      makeFrame({
        phase: "teach",
        step: i,
        pose: { x: i * 0.002, y: 0, theta: 0 },
        z: [40, 12, 14, 38],
        keys: { up: true, left: false, right: false, down: false },
      }),
    );
  }
  for (let i = 0; i < 800; i++) {
    const mode = i < 500 ? (i % episodeLength) + 1 : ((i + 57) % episodeLength) + 1;
    const bins = new Array(episodeLength).fill(0.5 / (episodeLength - 1));
    bins[mode - 1] = 0.5;
    frames.push(
      makeFrame({
        phase: "replay",
        step: i,
        pose: { x: 0.4 - i * 0.0003, y: 0.05, theta: i * 0.01 },
        z: [30 + (i % 7), 11, 13, 29],
        mode_t: mode,
        mode_mass: 0.5,
        belief_bins: bins,
      }),
    );
  }
  return frames;
}

export const pressed = (keys: Partial<KeyState>): KeyState => ({ ...ZERO_KEYS, ...keys });
