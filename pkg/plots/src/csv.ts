import { readFileSync } from "node:fs";

export interface NumericTable {
  header: string[];
  rows: number[][];
}

/**
 * Read a strictly numeric CSV with a pinned header.  Errors name the file,
 * the offending column, and the 1-based line so a schema drift in the
 * producing package is diagnosable from the message alone.  The literal cell
 * "nan" is allowed (semi-adiabatic records carry it in sigma_z).
 */
export function readNumericCsv(path: string, expectedHeader: readonly string[]): NumericTable {
  const text = readFileSync(path, "utf8");
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) throw new Error(`${path}: empty file`);

  const header = lines[0].split(",");
  if (header.length !== expectedHeader.length) {
    throw new Error(
      `${path}: header has ${header.length} columns, expected ${expectedHeader.length} (${expectedHeader.join(",")})`,
    );
  }
  for (let c = 0; c < header.length; c++) {
    if (header[c] !== expectedHeader[c]) {
      throw new Error(
        `${path}: header column ${c} is "${header[c]}", expected "${expectedHeader[c]}"`,
      );
    }
  }

  const rows: number[][] = [];
  for (let ln = 1; ln < lines.length; ln++) {
    const parts = lines[ln].split(",");
    if (parts.length !== header.length) {
      throw new Error(
        `${path}: line ${ln + 1} has ${parts.length} fields, expected ${header.length}`,
      );
    }
    const row = new Array<number>(parts.length);
    for (let c = 0; c < parts.length; c++) {
      const cell = parts[c];
      const value = cell === "nan" ? NaN : Number(cell);
      if (cell.trim() === "" || (cell !== "nan" && !Number.isFinite(value))) {
        throw new Error(
          `${path}: line ${ln + 1}, column "${header[c]}": cannot parse "${cell}" as a number`,
        );
      }
      row[c] = value;
    }
    rows.push(row);
  }
  return { header, rows };
}

export function column(table: NumericTable, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new Error(`no column "${name}" in [${table.header.join(",")}]`);
  return table.rows.map((r) => r[idx]);
}
