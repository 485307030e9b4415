import { readFileSync } from "node:fs";
import { join } from "node:path";

export interface SnapshotMeta {
  tag: string;
  time: number;
  mode: string;
  model: { lam: number; omega_q: number; phi: number; theta: number };
  grid: { n: number; half_width: number };
  components: string[];
  files: Record<string, string>;
  dtype: string;
  layout: string;
}

/** One complex field on the square grid, row-major with x outermost. */
export interface ComplexGrid {
  n: number;
  halfWidth: number;
  re: Float64Array;
  im: Float64Array;
}

export interface Snapshot {
  meta: SnapshotMeta;
  fields: Map<string, ComplexGrid>;
}

function requireKey(doc: Record<string, unknown>, key: string, path: string): unknown {
  if (!(key in doc)) throw new Error(`${path}: missing key "${key}"`);
  return doc[key];
}

/**
 * Read a {tag}.json metadata document plus its raw component arrays.  The
 * arrays are little-endian float64 (re, im) pairs; a byte count that does not
 * match the grid is reported with both sizes rather than truncated silently.
 */
export function readSnapshot(dir: string, tag: string): Snapshot {
  const metaPath = join(dir, `${tag}.json`);
  const meta = JSON.parse(readFileSync(metaPath, "utf8")) as SnapshotMeta;
  for (const key of ["tag", "time", "mode", "model", "grid", "components", "files"]) {
    requireKey(meta as unknown as Record<string, unknown>, key, metaPath);
  }
  const n = meta.grid.n;
  if (!Number.isInteger(n) || n <= 0) {
    throw new Error(`${metaPath}: grid.n must be a positive integer, got ${n}`);
  }

  const fields = new Map<string, ComplexGrid>();
  for (const name of meta.components) {
    const file = meta.files[name];
    if (!file) throw new Error(`${metaPath}: no file listed for component "${name}"`);
    const binPath = join(dir, file);
    const buf = readFileSync(binPath);
    const expectedBytes = n * n * 16;
    if (buf.byteLength !== expectedBytes) {
      throw new Error(
        `${binPath}: holds ${buf.byteLength} bytes, expected ${expectedBytes} (${n}x${n} complex values)`,
      );
    }
    const view = new DataView(buf.buffer, buf.byteOffset, buf.byteLength);
    const re = new Float64Array(n * n);
    const im = new Float64Array(n * n);
    for (let k = 0; k < n * n; k++) {
      re[k] = view.getFloat64(16 * k, true);
      im[k] = view.getFloat64(16 * k + 8, true);
    }
    fields.set(name, { n, halfWidth: meta.grid.half_width, re, im });
  }
  return { meta, fields };
}

/** Total probability density |psi|^2 summed over components (for display). */
export function densityGrid(snapshot: Snapshot): { n: number; halfWidth: number; values: Float64Array } {
  const first = snapshot.fields.values().next().value as ComplexGrid;
  const values = new Float64Array(first.n * first.n);
  for (const grid of snapshot.fields.values()) {
    for (let k = 0; k < values.length; k++) {
      values[k] += grid.re[k] * grid.re[k] + grid.im[k] * grid.im[k];
    }
  }
  return { n: first.n, halfWidth: first.halfWidth, values };
}
