/**
 * Minimal deterministic SVG construction: linear and log10 scales, tick
 * generation, and path builders. No timestamps, no randomness; identical
 * inputs produce identical markup.
 */

export interface Scale {
  (v: number): number;
  ticks: number[];
}

function niceStep(span: number, target: number): number {
  const raw = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) {
      return m * mag;
    }
  }
  return 10 * mag;
}

export function linearScale(lo: number, hi: number, rLo: number, rHi: number): Scale {
  if (hi === lo) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.05 * (hi - lo);
  const dLo = lo - pad;
  const dHi = hi + pad;
  const f = ((v: number) => rLo + ((v - dLo) / (dHi - dLo)) * (rHi - rLo)) as Scale;
  const step = niceStep(dHi - dLo, 6);
  const ticks: number[] = [];
  for (let t = Math.ceil(dLo / step) * step; t <= dHi + 1e-12; t += step) {
    ticks.push(Math.abs(t) < 1e-12 ? 0 : t);
  }
  f.ticks = ticks;
  return f;
}

export function logScale(lo: number, hi: number, rLo: number, rHi: number): Scale {
  if (lo <= 0) {
    throw new Error("log scale requires positive values");
  }
  let lLo = Math.log10(lo);
  let lHi = Math.log10(hi);
  if (lHi === lLo) {
    lLo -= 0.5;
    lHi += 0.5;
  }
  const pad = 0.05 * (lHi - lLo);
  const dLo = lLo - pad;
  const dHi = lHi + pad;
  const f = ((v: number) => rLo + ((Math.log10(v) - dLo) / (dHi - dLo)) * (rHi - rLo)) as Scale;
  const ticks: number[] = [];
  for (let e = Math.ceil(dLo); e <= Math.floor(dHi); e++) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) {
    ticks.push(Math.pow(10, Math.round((dLo + dHi) / 2)));
  }
  f.ticks = ticks;
  return f;
}

export function fmt(v: number): string {
  if (v === 0) {
    return "0";
  }
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(1).replace("+", "");
  }
  return Number(v.toPrecision(6)).toString();
}

export function polylinePath(pts: Array<[number, number]>): string {
  return pts.map(([x, y], i) => `${i === 0 ? "M" : "L"}${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
}

export function bandPath(upper: Array<[number, number]>, lower: Array<[number, number]>): string {
  const fwd = polylinePath(upper);
  const back = [...lower]
    .reverse()
    .map(([x, y]) => `L${x.toFixed(2)},${y.toFixed(2)}`)
    .join(" ");
  return `${fwd} ${back} Z`;
}

export const PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
];

export function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
