// World panel: walls, task regions, the robot disc with its heading, and
// an indicative ray per sensor (length recovered from the intensity via
// the default power law; display only).

import { Ctx2D, Viewport, fitViewport, toCanvas } from "./draw";
import { EnvironmentInfo, Frame } from "./protocol";

const ROBOT_RADIUS = 0.06;
const SENSOR_ANGLES = [15, 50, -50, -15].map((d) => (d * Math.PI) / 180);
const SENSOR_GAIN = 1.0;
const SENSOR_GAMMA = 3.0;
const SENSOR_MAX_RANGE = 0.45;

export class WorldView {
  world: EnvironmentInfo | null = null;
  lastFrame: Frame | null = null;

  setWorld(world: EnvironmentInfo): void {
    this.world = world;
  }

  update(frame: Frame): void {
    this.lastFrame = frame;
  }

  private viewport(ctx: Ctx2D): Viewport {
    if (this.world === null || this.world.segments.length === 0) {
      return fitViewport(ctx, -1, -1, 1, 1);
    }
    const xs = this.world.segments.flatMap((s) => [s[0], s[2]]);
    const ys = this.world.segments.flatMap((s) => [s[1], s[3]]);
    return fitViewport(
      ctx,
      Math.min(...xs) - 0.1,
      Math.min(...ys) - 0.1,
      Math.max(...xs) + 0.1,
      Math.max(...ys) + 0.1,
    );
  }

  render(ctx: Ctx2D): void {
    ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
    const vp = this.viewport(ctx);

    if (this.world !== null) {
      ctx.fillStyle = "#1c2636";
      for (const [name, box] of Object.entries(this.world.regions)) {
        const [x0, y0] = toCanvas(vp, box[0], box[3]);
        const [x1, y1] = toCanvas(vp, box[2], box[1]);
        ctx.fillRect(x0, y0, x1 - x0, y1 - y0);
        ctx.fillStyle = "#44506a";
        ctx.fillText(name, x0 + 4, y0 + 12);
        ctx.fillStyle = "#1c2636";
      }
      ctx.strokeStyle = "#8fa3c0";
      ctx.lineWidth = 2;
      for (const seg of this.world.segments) {
        const [ax, ay] = toCanvas(vp, seg[0], seg[1]);
        const [bx, by] = toCanvas(vp, seg[2], seg[3]);
        ctx.beginPath();
        ctx.moveTo(ax, ay);
        ctx.lineTo(bx, by);
        ctx.stroke();
      }
    }

    const frame = this.lastFrame;
    if (frame === null) return;
    const { x, y, theta } = frame.pose;
    const [px, py] = toCanvas(vp, x, y);

    // sensor rays: invert reading = gain * d^-gamma to an indicative length
    ctx.strokeStyle = "#e0b34d";
    ctx.lineWidth = 1;
    frame.z.forEach((reading, j) => {
      const d =
        reading <= 1
          ? SENSOR_MAX_RANGE
          : Math.min(SENSOR_MAX_RANGE, (SENSOR_GAIN / reading) ** (1 / SENSOR_GAMMA));
      const angle = theta + SENSOR_ANGLES[j];
      const [qx, qy] = toCanvas(vp, x + d * Math.cos(angle), y + d * Math.sin(angle));
      ctx.beginPath();
      ctx.moveTo(px, py);
      ctx.lineTo(qx, qy);
      ctx.stroke();
    });

    // robot disc + heading tick
    ctx.fillStyle = frame.phase === "teach" ? "#4da3e0" : "#6fdc8c";
    ctx.beginPath();
    ctx.arc(px, py, ROBOT_RADIUS * vp.scale, 0, 2 * Math.PI);
    ctx.fill();
    ctx.strokeStyle = "#0b0e14";
    ctx.lineWidth = 2;
    const [hx, hy] = toCanvas(
      vp,
      x + ROBOT_RADIUS * Math.cos(theta),
      y + ROBOT_RADIUS * Math.sin(theta),
    );
    ctx.beginPath();
    ctx.moveTo(px, py);
    ctx.lineTo(hx, hy);
    ctx.stroke();
  }
}
