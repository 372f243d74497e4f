/**
 * Aggregation of raw per-repetition rows into per-group series.
 *
 * The harness never pre-aggregates; the mean and the standard deviation
 * over repetitions are computed here, per (group, x) cell.
 */

export interface SeriesPoint {
  x: number;
  mean: number;
  sigma: number;
  count: number;
}

export interface Series {
  group: string;
  points: SeriesPoint[];
  /** true when any x cell aggregates more than one repetition */
  banded: boolean;
}

export function buildSeries(groups: string[], xs: number[], ys: number[]): Series[] {
  const cells = new Map<string, Map<number, number[]>>();
  for (let i = 0; i < groups.length; i++) {
    let byX = cells.get(groups[i]);
    if (!byX) {
      byX = new Map();
      cells.set(groups[i], byX);
    }
    const bucket = byX.get(xs[i]);
    if (bucket) {
      bucket.push(ys[i]);
    } else {
      byX.set(xs[i], [ys[i]]);
    }
  }
  const out: Series[] = [];
  for (const group of [...cells.keys()].sort()) {
    const byX = cells.get(group)!;
    const points: SeriesPoint[] = [...byX.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, values]) => {
        const mean = values.reduce((s, v) => s + v, 0) / values.length;
        const variance = values.reduce((s, v) => s + (v - mean) * (v - mean), 0) / values.length;
        return { x, mean, sigma: Math.sqrt(variance), count: values.length };
      });
    out.push({ group, points, banded: points.some((p) => p.count > 1) });
  }
  return out;
}
