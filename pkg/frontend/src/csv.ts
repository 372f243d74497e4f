/**
 * Reader for the benchmark harness CSV schema.
 *
 * The harness never quotes fields or embeds separators, so rows split
 * cleanly on commas. Headers of every input file must agree.
 */

import { readFileSync } from "node:fs";

export interface Table {
  columns: string[];
  rows: string[][];
}

export class CsvError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  if (lines.length === 0) {
    throw new CsvError("empty CSV: no header row");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((ln, i) => {
    const parts = ln.split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(`row ${i + 1} has ${parts.length} fields, header has ${columns.length}`);
    }
    return parts;
  });
  if (rows.length === 0) {
    throw new CsvError("empty CSV: header but no data rows");
  }
  return { columns, rows };
}

export function loadTables(paths: string[]): Table {
  if (paths.length === 0) {
    throw new CsvError("no CSV paths given");
  }
  const tables = paths.map((p) => parseCsv(readFileSync(p, "utf-8")));
  const columns = tables[0].columns;
  for (const t of tables.slice(1)) {
    if (t.columns.join(",") !== columns.join(",")) {
      throw new CsvError("CSV headers disagree across input files");
    }
  }
  return { columns, rows: tables.flatMap((t) => t.rows) };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new CsvError(`column '${name}' not in CSV header (${table.columns.join(", ")})`);
  }
  return idx;
}

export function numericColumn(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r, i) => {
    const v = Number(r[idx]);
    if (!Number.isFinite(v)) {
      throw new CsvError(`row ${i + 1}: column '${name}' value '${r[idx]}' is not numeric`);
    }
    return v;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r) => r[idx]);
}
