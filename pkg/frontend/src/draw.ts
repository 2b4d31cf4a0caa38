// Minimal 2D-context surface the views draw against. Using a structural
// subset keeps the renderers testable with a recording fake.

export interface Ctx2D {
  canvas: { width: number; height: number };
  fillStyle: string;
  strokeStyle: string;
  lineWidth: number;
  font: string;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  fillText(text: string, x: number, y: number): void;
}

export interface Viewport {
  scale: number; // pixels per meter
  cx: number; // canvas x of world origin
  cy: number; // canvas y of world origin
}

export function fitViewport(
  ctx: Ctx2D,
  xMin: number,
  yMin: number,
  xMax: number,
  yMax: number,
  margin = 20,
): Viewport {
  const w = ctx.canvas.width - 2 * margin;
  const h = ctx.canvas.height - 2 * margin;
  const scale = Math.min(w / (xMax - xMin), h / (yMax - yMin));
  return {
    scale,
    cx: margin + (-xMin) * scale + (w - (xMax - xMin) * scale) / 2,
    // canvas y grows downward; world y grows upward
    cy: margin + yMax * scale + (h - (yMax - yMin) * scale) / 2,
  };
}

export function toCanvas(vp: Viewport, x: number, y: number): [number, number] {
  return [vp.cx + x * vp.scale, vp.cy - y * vp.scale];
}
