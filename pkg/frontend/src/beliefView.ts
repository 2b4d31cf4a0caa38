// Belief histogram panel: the downsampled belief over episode indices, one
// bar per bin, with the mode bin highlighted.

import { Ctx2D } from "./draw";
import { Frame } from "./protocol";

export class BeliefView {
  bins: number[] = [];
  modeBin: number | null = null;

  update(frame: Frame): void {
    this.bins = frame.belief_bins;
    if (frame.mode_t !== null && this.bins.length > 0) {
      // bins map 1:1 to indices when T <= bin budget; otherwise scale
      const perBin = Math.max(1, Math.ceil(frame.mode_t / this.bins.length));
      this.modeBin = Math.min(this.bins.length - 1, Math.floor((frame.mode_t - 1) / perBin));
    } else {
      this.modeBin = null;
    }
  }

  render(ctx: Ctx2D): void {
    ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
    const n = this.bins.length;
    if (n === 0) {
      ctx.fillStyle = "#44506a";
      ctx.fillText("belief appears during replay", 10, 20);
      return;
    }
    const peak = Math.max(1e-9, ...this.bins);
    const barWidth = ctx.canvas.width / n;
    const h = ctx.canvas.height;
    this.bins.forEach((mass, i) => {
      ctx.fillStyle = i === this.modeBin ? "#6fdc8c" : "#4da3e0";
      const barHeight = (mass / peak) * (h - 8);
      ctx.fillRect(i * barWidth, h - barHeight, Math.max(1, barWidth - 1), barHeight);
    });
  }
}
