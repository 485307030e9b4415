#!/usr/bin/env node
import * as fs from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { RENDERERS } from "./figures.js";

const USAGE = `usage: render --fig <${Object.keys(RENDERERS).join("|")}> --in <dir> --out <file.svg>

Reads the manifest and data files written by the cavityjt command line
tools from <dir> and writes one SVG figure to <file.svg>.`;

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        fig: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
      allowPositionals: false,
    }));
  } catch (err) {
    console.error(`${(err as Error).message}\n${USAGE}`);
    return 2;
  }
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.fig || !values.in || !values.out) {
    console.error(`--fig, --in and --out are all required\n${USAGE}`);
    return 2;
  }
  const renderer = RENDERERS[values.fig];
  if (!renderer) {
    console.error(`unknown figure "${values.fig}"; choose one of ${Object.keys(RENDERERS).join(", ")}`);
    return 2;
  }
  let svg: string;
  try {
    svg = renderer(values.in);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  fs.writeFileSync(values.out, svg);
  console.log(`wrote ${values.out}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
