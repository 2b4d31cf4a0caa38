import { describe, expect, it } from "vitest";

import { ModeTimeline } from "../src/timeline";
import { FakeCtx, makeFrame, recordedSession } from "./helpers";

describe("ModeTimeline", () => {
  it("collects exactly the (step, mode_t) pairs of replay frames", () => {
    const timeline = new ModeTimeline();
    const frames = recordedSession();
    frames.forEach((f) => timeline.update(f));
    const expected = frames
      .filter((f) => f.phase === "replay" && f.mode_t !== null)
      .map((f) => ({ step: f.step, mode_t: f.mode_t as number }));
    expect(timeline.points).toEqual(expected);
  });

  it("a synchronized trace is the diagonal", () => {
    const timeline = new ModeTimeline();
    for (let i = 0; i < 50; i++) {
      timeline.update(makeFrame({ phase: "replay", step: i, mode_t: i + 1 }));
    }
    expect(timeline.points.every((p) => p.mode_t === p.step + 1)).toBe(true);
  });

  it("a scripted leap appears at the exact coordinates", () => {
    const timeline = new ModeTimeline();
    const frames = recordedSession();
    frames.forEach((f) => timeline.update(f));
    // leap between replay steps 499 and 500: (i % 120) + 1 -> ((i + 57) % 120) + 1
    const before = timeline.points.find((p) => p.step === 499)!;
    const after = timeline.points.find((p) => p.step === 500)!;
    expect(before.mode_t).toBe((499 % 120) + 1);
    expect(after.mode_t).toBe(((500 + 57) % 120) + 1);
    expect(after.mode_t - before.mode_t).not.toBe(1);
  });

  it("teach frames and empty streams contribute nothing", () => {
    const timeline = new ModeTimeline();
    timeline.update(makeFrame({ phase: "teach", step: 3 }));
    expect(timeline.points).toEqual([]);
    const ctx = new FakeCtx();
    timeline.render(ctx); // renders an empty chart without throwing
    expect(ctx.calls.some((c) => c.op === "clearRect")).toBe(true);
  });

  it("renders one marker per point", () => {
    const timeline = new ModeTimeline();
    for (let i = 0; i < 10; i++) {
      timeline.update(makeFrame({ phase: "replay", step: i, mode_t: 5, belief_bins: [0, 0, 0, 0, 1] }));
    }
    const ctx = new FakeCtx();
    timeline.render(ctx);
    const markers = ctx.calls.filter((c) => c.op === "fillRect");
    expect(markers.length).toBe(10);
  });
});
