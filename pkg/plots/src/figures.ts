import * as fs from "node:fs";
import * as path from "node:path";

import { readNumericCsv, column } from "./csv.js";
import { readSnapshot, densityGrid, type Snapshot } from "./snapshot.js";
import { Svg, heatmapPanel, linePanel, barPanel, type Box } from "./svg.js";

const SURFACES_HEADER = ["x", "y", "v_minus", "v_plus"];
const PHASE_HEADER = ["lambda", "theta", "gamma"];
const PHOTON_HEADER = ["n", "p_n"];
const HUSIMI_HEADER = ["re_alpha", "im_alpha", "q"];
const RECORDS_HEADER = ["t", "norm", "energy", "n_a", "n_b", "sigma_z", "autocorr_abs"];

export interface Manifest {
  command: string;
  outputs: Record<string, Record<string, unknown>>;
}

export function readManifest(dir: string, wantCommand: string): Manifest {
  const p = path.join(dir, "manifest.json");
  if (!fs.existsSync(p)) throw new Error(`no manifest.json in ${dir}`);
  const doc = JSON.parse(fs.readFileSync(p, "utf8"));
  if (typeof doc.command !== "string" || typeof doc.outputs !== "object" || doc.outputs === null) {
    throw new Error(`${p} is missing "command" or "outputs"`);
  }
  if (doc.command !== wantCommand) {
    throw new Error(`manifest command is "${doc.command}", this figure needs "${wantCommand}" output`);
  }
  return { command: doc.command, outputs: doc.outputs };
}

/** Split a flattened (outer, inner) product grid into its two axis lengths. */
function blockShape(outer: ArrayLike<number>, inner: ArrayLike<number>, what: string) {
  const rows = outer.length;
  let nInner = 1;
  while (nInner < rows && inner[nInner] !== inner[0]) nInner += 1;
  const nOuter = rows / nInner;
  if (!Number.isInteger(nOuter) || nOuter < 1) {
    throw new Error(`${what}: ${rows} rows do not factor into a grid with inner block ${nInner}`);
  }
  return { nOuter, nInner };
}

// ---------------------------------------------------------------- fig1

export interface SheetPair {
  name: string;
  omega: number;
  n: number;
  x0: number;
  x1: number;
  vMinus: number[];
  vPlus: number[];
}

/** Adiabatic sheet scans: one CSV per qubit splitting, lower and upper sheet. */
export function buildFig1(dir: string): SheetPair[] {
  const manifest = readManifest(dir, "surfaces");
  const names = Object.keys(manifest.outputs)
    .filter((n) => n.startsWith("surfaces_") && n.endsWith(".csv"))
    .sort((a, b) => Number(manifest.outputs[a].omega_q) - Number(manifest.outputs[b].omega_q));
  if (names.length === 0) throw new Error("manifest lists no surface scans");
  return names.map((name) => {
    const table = readNumericCsv(path.join(dir, name), SURFACES_HEADER);
    const x = column(table, "x");
    const y = column(table, "y");
    const { nOuter, nInner } = blockShape(x, y, name);
    if (nOuter !== nInner) throw new Error(`${name}: expected a square grid, got ${nOuter} x ${nInner}`);
    return {
      name,
      omega: Number(manifest.outputs[name].omega_q),
      n: nOuter,
      x0: x[0],
      x1: x[x.length - 1],
      vMinus: column(table, "v_minus"),
      vPlus: column(table, "v_plus"),
    };
  });
}

export function renderFig1(dir: string): string {
  const sheets = buildFig1(dir);
  const pw = 190;
  const ph = 190;
  const svg = new Svg(70 + 2 * (pw + 40), 40 + sheets.length * (ph + 50));
  sheets.forEach((s, row) => {
    const extent = { x0: s.x0, x1: s.x1, y0: s.x0, y1: s.x1 };
    const yTop = 40 + row * (ph + 50);
    heatmapPanel(svg, { x: 60, y: yTop, w: pw, h: ph }, s.n, s.n, s.vMinus, extent,
      `lower sheet, splitting ${s.omega}`);
    heatmapPanel(svg, { x: 60 + pw + 40, y: yTop, w: pw, h: ph }, s.n, s.n, s.vPlus, extent,
      `upper sheet, splitting ${s.omega}`);
  });
  return svg.toString();
}

// ---------------------------------------------------------------- fig2

export interface PhaseMapData {
  nLam: number;
  nTheta: number;
  lam0: number;
  lam1: number;
  theta0: number;
  theta1: number;
  gamma: number[];
}

/** Loop-phase map over coupling strength and mode-angle difference. */
export function buildFig2(dir: string): PhaseMapData {
  readManifest(dir, "berry");
  const table = readNumericCsv(path.join(dir, "phase_map.csv"), PHASE_HEADER);
  const lam = column(table, "lambda");
  const theta = column(table, "theta");
  const { nOuter, nInner } = blockShape(lam, theta, "phase_map.csv");
  return {
    nLam: nOuter,
    nTheta: nInner,
    lam0: lam[0],
    lam1: lam[lam.length - 1],
    theta0: theta[0],
    theta1: theta[nInner - 1],
    gamma: column(table, "gamma"),
  };
}

export function renderFig2(dir: string): string {
  const pm = buildFig2(dir);
  const svg = new Svg(420, 330);
  heatmapPanel(
    svg,
    { x: 70, y: 40, w: 300, h: 250 },
    pm.nLam,
    pm.nTheta,
    pm.gamma,
    { x0: pm.lam0, x1: pm.lam1, y0: pm.theta0, y1: pm.theta1 },
    "loop phase (coupling vs mode angle)",
  );
  return svg.toString();
}

// ---------------------------------------------------------------- fig3

export interface DensityPanel {
  tag: string;
  modeTag: string;
  time: number;
  n: number;
  halfWidth: number;
  density: Float64Array;
}

/** Packet densities for every stored snapshot, grouped by model variant. */
export function buildFig3(dir: string): DensityPanel[][] {
  const manifest = readManifest(dir, "propagate");
  const tags = Object.keys(manifest.outputs)
    .filter((n) => /^(full|semi)_(\d{4}|final)\.json$/.test(n))
    .map((n) => n.slice(0, -5))
    .sort();
  if (tags.length === 0) throw new Error("manifest lists no field snapshots");
  const rows = new Map<string, DensityPanel[]>();
  for (const tag of tags) {
    const snap: Snapshot = readSnapshot(dir, tag);
    const d = densityGrid(snap);
    const modeTag = tag.split("_")[0];
    const panel: DensityPanel = {
      tag,
      modeTag,
      time: snap.meta.time,
      n: d.n,
      halfWidth: d.halfWidth,
      density: d.values,
    };
    if (!rows.has(modeTag)) rows.set(modeTag, []);
    rows.get(modeTag)!.push(panel);
  }
  return [...rows.values()];
}

export function renderFig3(dir: string): string {
  const rows = buildFig3(dir);
  const ncols = Math.max(...rows.map((r) => r.length));
  const pw = 170;
  const ph = 170;
  const svg = new Svg(70 + ncols * (pw + 40), 40 + rows.length * (ph + 50));
  rows.forEach((row, i) => {
    row.forEach((panel, j) => {
      const L = panel.halfWidth;
      heatmapPanel(
        svg,
        { x: 60 + j * (pw + 40), y: 40 + i * (ph + 50), w: pw, h: ph },
        panel.n,
        panel.n,
        panel.density,
        { x0: -L, x1: L, y0: -L, y1: L },
        `${panel.modeTag} t=${panel.time.toPrecision(4)}`,
      );
    });
  });
  return svg.toString();
}

// ---------------------------------------------------------------- fig4

export interface PhotonPanel {
  name: string;
  modeTag: string;
  side: string;
  time: number;
  rawTotal: number;
  probs: number[];
}

/**
 * Photon number distributions.  Exported values are display-clamped: tiny
 * negative weights from roundoff go to zero and a total a few ulp above one
 * is rescaled, so bars always depict a genuine probability distribution.
 */
export function buildFig4(dir: string): PhotonPanel[] {
  const manifest = readManifest(dir, "propagate");
  const names = Object.keys(manifest.outputs)
    .filter((n) => /^photon_(full|semi)_[ab]_\d+\.csv$/.test(n))
    .sort();
  if (names.length === 0) throw new Error("manifest lists no photon distributions");
  return names.map((name) => {
    const table = readNumericCsv(path.join(dir, name), PHOTON_HEADER);
    const raw = column(table, "p_n");
    let rawTotal = 0;
    for (const v of raw) rawTotal += v;
    const probs = raw.map((v) => Math.max(v, 0));
    if (rawTotal > 1) {
      for (let k = 0; k < probs.length; k++) probs[k] /= rawTotal;
    }
    const m = name.slice(0, -4).split("_");
    return {
      name,
      modeTag: m[1],
      side: m[2],
      time: Number(manifest.outputs[name].time),
      rawTotal,
      probs,
    };
  });
}

export function renderFig4(dir: string): string {
  const panels = buildFig4(dir);
  const pw = 210;
  const ph = 150;
  const ncols = 2;
  const nrows = Math.ceil(panels.length / ncols);
  const svg = new Svg(70 + ncols * (pw + 50), 40 + nrows * (ph + 50));
  panels.forEach((p, k) => {
    const box: Box = {
      x: 60 + (k % ncols) * (pw + 50),
      y: 40 + Math.floor(k / ncols) * (ph + 50),
      w: pw,
      h: ph,
    };
    barPanel(svg, box, p.probs, `${p.modeTag} mode ${p.side}, t=${p.time.toPrecision(4)}`);
  });
  return svg.toString();
}

// ---------------------------------------------------------------- fig5

export interface RecordsData {
  tag: string;
  t: number[];
  norm: number[];
  energy: number[];
  nA: number[];
  nB: number[];
  autocorrAbs: number[];
}

export interface HusimiPanel {
  name: string;
  modeTag: string;
  side: string;
  time: number;
  nRe: number;
  nIm: number;
  re0: number;
  re1: number;
  im0: number;
  im1: number;
  q: number[];
}

export interface Fig5Data {
  records: RecordsData[];
  husimi: HusimiPanel[];
}

function readRecords(dir: string, tag: string): RecordsData {
  const table = readNumericCsv(path.join(dir, `records_${tag}.csv`), RECORDS_HEADER);
  return {
    tag,
    t: column(table, "t"),
    norm: column(table, "norm"),
    energy: column(table, "energy"),
    nA: column(table, "n_a"),
    nB: column(table, "n_b"),
    autocorrAbs: column(table, "autocorr_abs"),
  };
}

/** Intensity and overlap histories plus phase-space maps of each cavity mode. */
export function buildFig5(dir: string): Fig5Data {
  const manifest = readManifest(dir, "propagate");
  const recordTags = Object.keys(manifest.outputs)
    .filter((n) => /^records_(full|semi)\.csv$/.test(n))
    .map((n) => n.slice(8, -4))
    .sort();
  if (recordTags.length === 0) throw new Error("manifest lists no records files");
  const records = recordTags.map((tag) => readRecords(dir, tag));
  const husimiNames = Object.keys(manifest.outputs)
    .filter((n) => /^husimi_(full|semi)_[ab]_\d+\.csv$/.test(n))
    .sort();
  const husimi = husimiNames.map((name) => {
    const table = readNumericCsv(path.join(dir, name), HUSIMI_HEADER);
    const re = column(table, "re_alpha");
    const im = column(table, "im_alpha");
    const { nOuter, nInner } = blockShape(re, im, name);
    const m = name.slice(0, -4).split("_");
    return {
      name,
      modeTag: m[1],
      side: m[2],
      time: Number(manifest.outputs[name].time),
      nRe: nOuter,
      nIm: nInner,
      re0: re[0],
      re1: re[re.length - 1],
      im0: im[0],
      im1: im[nInner - 1],
      q: column(table, "q"),
    };
  });
  return { records, husimi };
}

export function renderFig5(dir: string): string {
  const data = buildFig5(dir);
  const pw = 230;
  const ph = 150;
  const hp = 160;
  const nHusCols = Math.max(1, Math.min(data.husimi.length, 4));
  const nHusRows = Math.ceil(data.husimi.length / nHusCols);
  const width = Math.max(70 + 2 * (pw + 50), 70 + nHusCols * (hp + 45));
  const top = 40 + data.records.length * (ph + 55);
  const svg = new Svg(width, top + nHusRows * (hp + 55));
  data.records.forEach((r, i) => {
    const y = 40 + i * (ph + 55);
    linePanel(
      svg,
      { x: 60, y, w: pw, h: ph },
      [
        { xs: r.t, ys: r.nA, color: "#d95f02", label: "n_a" },
        { xs: r.t, ys: r.nB, color: "#1b9e77", label: "n_b" },
      ],
      `${r.tag}: mode intensities`,
    );
    linePanel(
      svg,
      { x: 60 + pw + 50, y, w: pw, h: ph },
      [{ xs: r.t, ys: r.autocorrAbs, color: "#7570b3", label: "|overlap|" }],
      `${r.tag}: overlap with start`,
    );
  });
  data.husimi.forEach((h, k) => {
    const box: Box = {
      x: 60 + (k % nHusCols) * (hp + 45),
      y: top + Math.floor(k / nHusCols) * (hp + 55),
      w: hp,
      h: hp,
    };
    heatmapPanel(svg, box, h.nRe, h.nIm, h.q,
      { x0: h.re0, x1: h.re1, y0: h.im0, y1: h.im1 },
      `${h.modeTag} mode ${h.side}, t=${h.time.toPrecision(4)}`);
  });
  return svg.toString();
}

// ---------------------------------------------------------------- fig6

export interface Fig6Data {
  full: RecordsData;
  semi: RecordsData;
}

/** Side-by-side intensity histories of the coupled and frozen-surface runs. */
export function buildFig6(dir: string): Fig6Data {
  const manifest = readManifest(dir, "propagate");
  for (const tag of ["full", "semi"]) {
    if (!(`records_${tag}.csv` in manifest.outputs)) {
      throw new Error(`manifest lists no records_${tag}.csv; run both model variants`);
    }
  }
  return { full: readRecords(dir, "full"), semi: readRecords(dir, "semi") };
}

export function renderFig6(dir: string): string {
  const { full, semi } = buildFig6(dir);
  const pw = 420;
  const ph = 170;
  const svg = new Svg(70 + pw + 40, 40 + 2 * (ph + 55));
  linePanel(
    svg,
    { x: 60, y: 40, w: pw, h: ph },
    [
      { xs: full.t, ys: full.nA, color: "#d95f02", label: "full n_a" },
      { xs: semi.t, ys: semi.nA, color: "#1b9e77", label: "frozen n_a" },
    ],
    "driven mode intensity",
  );
  linePanel(
    svg,
    { x: 60, y: 40 + ph + 55, w: pw, h: ph },
    [
      { xs: full.t, ys: full.nB, color: "#d95f02", label: "full n_b" },
      { xs: semi.t, ys: semi.nB, color: "#1b9e77", label: "frozen n_b" },
    ],
    "idle mode intensity",
  );
  return svg.toString();
}

export const RENDERERS: Record<string, (dir: string) => string> = {
  fig1: renderFig1,
  fig2: renderFig2,
  fig3: renderFig3,
  fig4: renderFig4,
  fig5: renderFig5,
  fig6: renderFig6,
};
