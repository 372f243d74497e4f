/**
 * Figure renderer for benchmark CSVs: one mean line per algorithm over the
 * chosen x column, with a one-standard-deviation band wherever an
 * algorithm has more than one repetition per x cell.
 */

import { writeFileSync } from "node:fs";

import { loadTables, numericColumn, stringColumn, Table } from "./csv.js";
import { buildSeries, Series } from "./stats.js";
import { bandPath, escapeXml, fmt, linearScale, logScale, PALETTE, polylinePath, Scale } from "./svg.js";

export interface PlotSpec {
  csvPaths: string[];
  x: string;
  y: string;
  groupBy: string;
  outPath: string;
  logY: boolean;
  title?: string;
}

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { top: 40, right: 170, bottom: 56, left: 72 };

export function render(spec: PlotSpec): string {
  const table = loadTables(spec.csvPaths);
  return renderTable(table, spec);
}

export function renderTable(table: Table, spec: PlotSpec): string {
  const xs = numericColumn(table, spec.x);
  const ys = numericColumn(table, spec.y);
  const groups = stringColumn(table, spec.groupBy);
  const series = buildSeries(groups, xs, ys);

  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  let yLo = Infinity;
  let yHi = -Infinity;
  for (const s of series) {
    for (const p of s.points) {
      yLo = Math.min(yLo, s.banded ? p.mean - p.sigma : p.mean);
      yHi = Math.max(yHi, s.banded ? p.mean + p.sigma : p.mean);
    }
  }

  const plotL = MARGIN.left;
  const plotR = WIDTH - MARGIN.right;
  const plotT = MARGIN.top;
  const plotB = HEIGHT - MARGIN.bottom;

  const sx = linearScale(xLo, xHi, plotL, plotR);
  const sy: Scale = spec.logY
    ? logScale(Math.max(yLo, Number.MIN_VALUE), yHi, plotB, plotT)
    : linearScale(yLo, yHi, plotB, plotT);
  if (spec.logY && yLo <= 0) {
    throw new Error("log scale requires positive y values");
  }

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (spec.title) {
    parts.push(
      `<text x="${(plotL + plotR) / 2}" y="22" text-anchor="middle" font-size="15">${escapeXml(spec.title)}</text>`,
    );
  }

  for (const t of sx.ticks) {
    const px = sx(t);
    parts.push(`<line x1="${px.toFixed(2)}" y1="${plotT}" x2="${px.toFixed(2)}" y2="${plotB}" stroke="#eee"/>`);
    parts.push(
      `<text x="${px.toFixed(2)}" y="${plotB + 20}" text-anchor="middle" font-size="11" class="xtick">${fmt(t)}</text>`,
    );
  }
  for (const t of sy.ticks) {
    const py = sy(t);
    parts.push(`<line x1="${plotL}" y1="${py.toFixed(2)}" x2="${plotR}" y2="${py.toFixed(2)}" stroke="#eee"/>`);
    parts.push(
      `<text x="${plotL - 8}" y="${(py + 4).toFixed(2)}" text-anchor="end" font-size="11" class="ytick">${fmt(t)}</text>`,
    );
  }
  parts.push(`<rect x="${plotL}" y="${plotT}" width="${plotR - plotL}" height="${plotB - plotT}" fill="none" stroke="#333"/>`);
  parts.push(
    `<text x="${(plotL + plotR) / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13">${escapeXml(spec.x)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(plotT + plotB) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${(plotT + plotB) / 2})">${escapeXml(spec.y)}${spec.logY ? " (log scale)" : ""}</text>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    parts.push(...seriesMarkup(s, sx, sy, color, spec.logY));
  });

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const ly = plotT + 16 * i;
    parts.push(`<line x1="${plotR + 12}" y1="${ly}" x2="${plotR + 34}" y2="${ly}" stroke="${color}" stroke-width="2"/>`);
    parts.push(`<text x="${plotR + 40}" y="${ly + 4}" font-size="12" class="legend">${escapeXml(s.group)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}

function seriesMarkup(s: Series, sx: Scale, sy: Scale, color: string, logY: boolean): string[] {
  const out: string[] = [];
  const mean: Array<[number, number]> = s.points.map((p) => [sx(p.x), sy(p.mean)]);
  if (s.banded) {
    const clampLo = (v: number) => (logY ? Math.max(v, Number.MIN_VALUE) : v);
    const upper: Array<[number, number]> = s.points.map((p) => [sx(p.x), sy(clampLo(p.mean + p.sigma))]);
    const lower: Array<[number, number]> = s.points.map((p) => [sx(p.x), sy(clampLo(p.mean - p.sigma))]);
    out.push(
      `<path class="band" data-group="${escapeXml(s.group)}" d="${bandPath(upper, lower)}" fill="${color}" fill-opacity="0.18" stroke="none"/>`,
    );
  }
  if (mean.length > 1) {
    out.push(
      `<path class="mean" data-group="${escapeXml(s.group)}" d="${polylinePath(mean)}" fill="none" stroke="${color}" stroke-width="2"/>`,
    );
  }
  for (const [px, py] of mean) {
    out.push(`<circle class="pt" cx="${px.toFixed(2)}" cy="${py.toFixed(2)}" r="3" fill="${color}"/>`);
  }
  return out;
}

export function renderToFile(spec: PlotSpec): void {
  // output is always SVG markup regardless of the file name
  writeFileSync(spec.outPath, render(spec), "utf-8");
}
