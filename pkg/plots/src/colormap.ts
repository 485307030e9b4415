/** Sequential colormap: anchors sampled from the widely used viridis ramp. */
const ANCHORS: Array<[number, number, number]> = [
  [68, 1, 84],
  [72, 40, 120],
  [62, 74, 137],
  [49, 104, 142],
  [38, 130, 142],
  [31, 158, 137],
  [53, 183, 121],
  [109, 205, 89],
  [180, 222, 44],
  [253, 231, 37],
];

function hex2(v: number): string {
  return Math.round(v).toString(16).padStart(2, "0");
}

/** Map t in [0, 1] (clamped) to an #rrggbb color. */
export function colorAt(t: number): string {
  const s = Math.min(1, Math.max(0, t)) * (ANCHORS.length - 1);
  const i = Math.min(ANCHORS.length - 2, Math.floor(s));
  const f = s - i;
  const [r0, g0, b0] = ANCHORS[i];
  const [r1, g1, b1] = ANCHORS[i + 1];
  return `#${hex2(r0 + f * (r1 - r0))}${hex2(g0 + f * (g1 - g0))}${hex2(b0 + f * (b1 - b0))}`;
}
