// Fixtures in tests/fixtures/ come from the benchmark CLI:
//   substream sweep ... --reps 3 --out sweep.csv        (sweep.csv)
//   substream sweep ... --eps-list 0.05,... --reps 1    (eps_sweep.csv)
// Regenerate with scripts/social_benchmark.py if the schema changes.

import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseCsv, loadTables, CsvError, numericColumn } from "../src/csv.js";
import { buildSeries } from "../src/stats.js";
import { render, renderTable, PlotSpec } from "../src/plot.js";
import { main } from "../src/cli.js";

const FIXTURES = join(__dirname, "fixtures");
const SWEEP = join(FIXTURES, "sweep.csv");
const EPS_SWEEP = join(FIXTURES, "eps_sweep.csv");

function spec(overrides: Partial<PlotSpec>): PlotSpec {
  return {
    csvPaths: [SWEEP],
    x: "k",
    y: "value_norm",
    groupBy: "algo",
    outPath: "",
    logY: false,
    ...overrides,
  };
}

describe("csv", () => {
  it("parses the harness schema", () => {
    const t = parseCsv(readFileSync(SWEEP, "utf-8"));
    expect(t.columns).toContain("value_norm");
    expect(t.rows.length).toBeGreaterThan(0);
  });

  it("rejects empty input and missing columns by name", () => {
    expect(() => parseCsv("")).toThrow(CsvError);
    expect(() => parseCsv("a,b\n")).toThrow(/no data rows/);
    const t = parseCsv("a,b\n1,2\n");
    expect(() => numericColumn(t, "missing")).toThrow(/column 'missing' not in CSV header/);
  });

  it("rejects ragged rows and disagreeing headers", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(CsvError);
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const p1 = join(dir, "x.csv");
    const p2 = join(dir, "y.csv");
    writeFileSync(p1, "a,b\n1,2\n");
    writeFileSync(p2, "a,c\n1,2\n");
    expect(() => loadTables([p1, p2])).toThrow(/headers disagree/);
  });
});

describe("stats", () => {
  it("computes mean and sigma per (group, x) cell", () => {
    const series = buildSeries(["g", "g", "g", "h"], [1, 1, 2, 1], [2, 4, 6, 5]);
    const g = series.find((s) => s.group === "g")!;
    expect(g.points[0]).toEqual({ x: 1, mean: 3, sigma: 1, count: 2 });
    expect(g.points[1].sigma).toBe(0);
    expect(g.banded).toBe(true);
    const h = series.find((s) => s.group === "h")!;
    expect(h.banded).toBe(false);
  });

  it("orders points by x and groups by name", () => {
    const series = buildSeries(["b", "a", "a"], [5, 9, 2], [1, 1, 1]);
    expect(series.map((s) => s.group)).toEqual(["a", "b"]);
    expect(series[0].points.map((p) => p.x)).toEqual([2, 9]);
  });
});

describe("render", () => {
  it("draws one mean line per algorithm from a sweep CSV", () => {
    const svg = render(spec({}));
    for (const algo of ["quickstream", "ltl", "sieve", "greedy"]) {
      expect(svg).toContain(`data-group="${algo}"`);
    }
    const meanPaths = svg.match(/class="mean"/g) ?? [];
    expect(meanPaths.length).toBe(4);
  });

  it("adds sigma bands exactly for multi-repetition algorithms", () => {
    const svg = render(spec({}));
    const bands = [...svg.matchAll(/class="band" data-group="([^"]+)"/g)].map((m) => m[1]);
    // the sweep ran ltl, quickstream and sieve with reps=3 (deterministic
    // ones get a zero-width band); the greedy baseline row is single-rep
    expect(bands.sort()).toEqual(["ltl", "quickstream", "sieve"]);
    expect(bands).not.toContain("greedy");
  });

  it("renders the queries figure with a log y axis", () => {
    const svg = render(spec({ y: "queries_norm", logY: true }));
    expect(svg).toContain("(log scale)");
    expect(svg).toContain('class="mean"');
  });

  it("renders the eps sweep family", () => {
    const svg = render(spec({ csvPaths: [EPS_SWEEP], x: "eps" }));
    expect(svg).toContain('data-group="qs_br"');
    expect(svg).toContain('data-group="sieve"');
    const bands = svg.match(/class="band"/g) ?? [];
    expect(bands.length).toBe(0); // single repetition everywhere
  });

  it("renders memory per k", () => {
    const svg = render(spec({ y: "memory_per_k" }));
    expect(svg).toContain('class="mean"');
  });

  it("is a pure function of the CSV", () => {
    const a = render(spec({}));
    const b = render(spec({}));
    expect(a).toBe(b);
  });

  it("names the missing column in errors", () => {
    expect(() => render(spec({ y: "nope" }))).toThrow(/column 'nope'/);
  });

  it("rejects log scale on non-positive values", () => {
    const table = parseCsv("algo,k,v\nx,1,0\nx,2,5\n");
    expect(() => renderTable(table, spec({ y: "v", logY: true }))).toThrow(/positive/);
  });
});

describe("cli", () => {
  it("writes an SVG file and exits 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "fig.svg");
    const code = main(["--csv", SWEEP, "--x", "k", "--y", "value_norm", "--out", out]);
    expect(code).toBe(0);
    const svg = readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
  });

  it("exits 1 on unknown flags and missing inputs", () => {
    expect(main(["--wat"])).toBe(1);
    expect(main(["--csv", SWEEP])).toBe(1); // no --out
    expect(main(["--csv", join(FIXTURES, "missing.csv"), "--out", "x.svg"])).toBe(1);
  });
});
