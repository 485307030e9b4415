import { colorAt } from "./colormap.js";

/** Deterministic short number formatting for SVG attributes and labels. */
export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`cannot format non-finite value ${x}`);
  return Number(x.toPrecision(6)).toString();
}

export interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export class Svg {
  readonly width: number;
  readonly height: number;
  private parts: string[] = [];

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
  }

  rect(x: number, y: number, w: number, h: number, fill: string, stroke?: string): void {
    const s = stroke ? ` stroke="${stroke}" stroke-width="1"` : "";
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"${s}/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${fmt(width)}"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.2): void {
    if (points.length === 0) return;
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${fmt(width)}"/>`,
    );
  }

  text(x: number, y: number, content: string, size = 11, anchor = "start"): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" font-size="${size}" text-anchor="${anchor}">${escapeXml(content)}</text>`,
    );
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n<rect width="${this.width}" height="${this.height}" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function frame(svg: Svg, box: Box, title: string): void {
  svg.rect(box.x, box.y, box.w, box.h, "none", "#444444");
  svg.text(box.x + box.w / 2, box.y - 6, title, 12, "middle");
}

/**
 * Square heatmap from a row-major grid (x outermost, matching the snapshot
 * layout).  Grids wider than maxCells per axis are subsampled for display;
 * the data itself is never smoothed.
 */
export function heatmapPanel(
  svg: Svg,
  box: Box,
  nx: number,
  ny: number,
  values: ArrayLike<number>,
  extent: { x0: number; x1: number; y0: number; y1: number },
  title: string,
  vmax?: number,
  maxCells = 72,
): void {
  let lo = Infinity;
  let hi = -Infinity;
  for (let k = 0; k < values.length; k++) {
    const v = values[k];
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (vmax !== undefined) hi = vmax;
  const span = hi - lo > 0 ? hi - lo : 1;

  const sx = Math.max(1, Math.ceil(nx / maxCells));
  const sy = Math.max(1, Math.ceil(ny / maxCells));
  const cw = (box.w * sx) / nx;
  const ch = (box.h * sy) / ny;
  for (let i = 0; i < nx; i += sx) {
    for (let j = 0; j < ny; j += sy) {
      const v = values[i * ny + j];
      // y axis points up: row j = 0 sits at the bottom edge
      const px = box.x + (i / nx) * box.w;
      const py = box.y + box.h - ((j + sy) / ny) * box.h;
      svg.rect(px, py, cw, Math.min(ch, box.y + box.h - py), colorAt((v - lo) / span));
    }
  }
  frame(svg, box, title);
  svg.text(box.x, box.y + box.h + 12, fmt(extent.x0), 9);
  svg.text(box.x + box.w, box.y + box.h + 12, fmt(extent.x1), 9, "end");
  svg.text(box.x - 3, box.y + box.h, fmt(extent.y0), 9, "end");
  svg.text(box.x - 3, box.y + 9, fmt(extent.y1), 9, "end");
  svg.text(box.x + box.w, box.y - 6, `[${fmt(lo)}, ${fmt(hi)}]`, 9, "end");
}

export interface Series {
  xs: ArrayLike<number>;
  ys: ArrayLike<number>;
  color: string;
  label?: string;
}

/** Line panel with shared axes; long series are decimated for display. */
export function linePanel(
  svg: Svg,
  box: Box,
  series: Series[],
  title: string,
  maxPoints = 1200,
): void {
  let x0 = Infinity;
  let x1 = -Infinity;
  let y0 = Infinity;
  let y1 = -Infinity;
  for (const s of series) {
    for (let k = 0; k < s.xs.length; k++) {
      const x = s.xs[k];
      const y = s.ys[k];
      if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
      if (x < x0) x0 = x;
      if (x > x1) x1 = x;
      if (y < y0) y0 = y;
      if (y > y1) y1 = y;
    }
  }
  if (!Number.isFinite(x0) || !Number.isFinite(y0)) {
    throw new Error(`line panel "${title}" has no finite points`);
  }
  const xr = x1 - x0 > 0 ? x1 - x0 : 1;
  const yr = y1 - y0 > 0 ? y1 - y0 : 1;

  for (const s of series) {
    const stride = Math.max(1, Math.ceil(s.xs.length / maxPoints));
    const pts: Array<[number, number]> = [];
    for (let k = 0; k < s.xs.length; k += stride) {
      const x = s.xs[k];
      const y = s.ys[k];
      if (!Number.isFinite(x) || !Number.isFinite(y)) continue;
      pts.push([
        box.x + ((x - x0) / xr) * box.w,
        box.y + box.h - ((y - y0) / yr) * box.h,
      ]);
    }
    svg.polyline(pts, s.color);
  }
  frame(svg, box, title);
  let ly = box.y + 14;
  for (const s of series) {
    if (!s.label) continue;
    svg.line(box.x + box.w - 46, ly - 4, box.x + box.w - 32, ly - 4, s.color, 2);
    svg.text(box.x + box.w - 28, ly, s.label, 9);
    ly += 12;
  }
  svg.text(box.x, box.y + box.h + 12, fmt(x0), 9);
  svg.text(box.x + box.w, box.y + box.h + 12, fmt(x1), 9, "end");
  svg.text(box.x - 3, box.y + box.h, fmt(y0), 9, "end");
  svg.text(box.x - 3, box.y + 9, fmt(y1), 9, "end");
}

/** Probability bar panel; heights live in [0, 1] by construction. */
export function barPanel(svg: Svg, box: Box, values: number[], title: string): void {
  const n = values.length;
  const bw = box.w / n;
  for (let k = 0; k < n; k++) {
    const h = values[k] * box.h;
    svg.rect(box.x + k * bw + 0.5, box.y + box.h - h, Math.max(bw - 1, 0.5), h, "#31688e");
  }
  frame(svg, box, title);
  svg.text(box.x, box.y + box.h + 12, "0", 9);
  svg.text(box.x + box.w, box.y + box.h + 12, String(n - 1), 9, "end");
  svg.text(box.x - 3, box.y + 9, "1", 9, "end");
  svg.text(box.x - 3, box.y + box.h, "0", 9, "end");
}
