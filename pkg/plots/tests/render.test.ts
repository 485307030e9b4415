import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it, vi } from "vitest";

import { main } from "../src/render.js";

const FIX = fileURLToPath(new URL("./fixtures", import.meta.url));

function quiet<T>(fn: () => T): T {
  const err = vi.spyOn(console, "error").mockImplementation(() => {});
  const log = vi.spyOn(console, "log").mockImplementation(() => {});
  try {
    return fn();
  } finally {
    err.mockRestore();
    log.mockRestore();
  }
}

describe("render command", () => {
  it("writes the requested figure and reports the path", () => {
    const out = path.join(fs.mkdtempSync(path.join(os.tmpdir(), "render-")), "fig2.svg");
    const code = quiet(() => main(["--fig", "fig2", "--in", path.join(FIX, "phases"), "--out", out]));
    expect(code).toBe(0);
    expect(fs.readFileSync(out, "utf8").startsWith("<svg ")).toBe(true);
  });

  it("exits 2 on usage errors", () => {
    expect(quiet(() => main([]))).toBe(2);
    expect(quiet(() => main(["--fig", "fig2", "--in", "x"]))).toBe(2);
    expect(quiet(() => main(["--fig", "fig99", "--in", "x", "--out", "y"]))).toBe(2);
    expect(quiet(() => main(["--bogus"]))).toBe(2);
  });

  it("exits 1 when the input data does not fit the figure", () => {
    const out = path.join(fs.mkdtempSync(path.join(os.tmpdir(), "render-")), "oops.svg");
    const surfaces = path.join(FIX, "surfaces");
    expect(quiet(() => main(["--fig", "fig6", "--in", surfaces, "--out", out]))).toBe(1);
    expect(quiet(() => main(["--fig", "fig1", "--in", "/nonexistent", "--out", out]))).toBe(1);
    expect(fs.existsSync(out)).toBe(false);
  });

  it("prints usage on --help", () => {
    expect(quiet(() => main(["--help"]))).toBe(0);
  });
});
