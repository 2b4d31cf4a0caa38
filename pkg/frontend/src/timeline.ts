// Mode-transition chart: one dot per replay cycle at (replay step, mode
// index). Points reproduce the frame data exactly; no smoothing, no
// resampling of coordinates.

import { Ctx2D, fitViewport, toCanvas } from "./draw";
import { Frame } from "./protocol";

export interface ModePoint {
  step: number;
  mode_t: number;
}

export class ModeTimeline {
  points: ModePoint[] = [];
  episodeLength = 1;

  update(frame: Frame): void {
    if (frame.phase !== "replay" || frame.mode_t === null) return;
    this.points.push({ step: frame.step, mode_t: frame.mode_t });
    if (frame.belief_bins.length > this.episodeLength) {
      this.episodeLength = frame.belief_bins.length;
    }
    if (frame.mode_t > this.episodeLength) {
      this.episodeLength = frame.mode_t;
    }
  }

  clear(): void {
    this.points = [];
    this.episodeLength = 1;
  }

  render(ctx: Ctx2D): void {
    ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
    const maxStep = Math.max(1, ...this.points.map((p) => p.step));
    const vp = fitViewport(ctx, 0, 0, maxStep, this.episodeLength, 24);

    ctx.strokeStyle = "#44506a";
    ctx.lineWidth = 1;
    const [ox, oy] = toCanvas(vp, 0, 0);
    const [xx] = toCanvas(vp, maxStep, 0);
    const [, yy] = toCanvas(vp, 0, this.episodeLength);
    ctx.beginPath();
    ctx.moveTo(ox, yy);
    ctx.lineTo(ox, oy);
    ctx.lineTo(xx, oy);
    ctx.stroke();
    ctx.fillStyle = "#8fa3c0";
    ctx.fillText("replay step", (ox + xx) / 2, oy + 16);
    ctx.fillText(`t (1..${this.episodeLength})`, 2, yy + 10);

    ctx.fillStyle = "#6fdc8c";
    for (const p of this.points) {
      const [px, py] = toCanvas(vp, p.step, p.mode_t);
      ctx.fillRect(px - 1, py - 1, 2, 2);
    }
  }
}
