// Build the two figure models from parsed sweep rows: misalignment MSE and
// CFO MSE versus SNR, the latter with the CRLB reference overlaid.

import type { SweepRow } from "./schema.js";

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  marker: "circle" | "square" | "triangle" | "diamond" | "none";
  dashed: boolean;
  points: SeriesPoint[];
}

export interface FigureModel {
  title: string;
  yLabel: string;
  series: Series[];
  /** methods that had rows but no positive MSE values to draw on a log axis */
  droppedSeries: string[];
}

const METHOD_STYLE: Record<string, { label: string; marker: Series["marker"] }> = {
  esprit2d: { label: "2-D subspace", marker: "circle" },
  beek: { label: "Beek (CP-ML)", marker: "square" },
  minn: { label: "Minn", marker: "triangle" },
  pss: { label: "PSS", marker: "diamond" },
};

function styleFor(method: string): { label: string; marker: Series["marker"] } {
  return METHOD_STYLE[method] ?? { label: method, marker: "circle" };
}

function methodSeries(rows: SweepRow[], value: (row: Extract<SweepRow, { kind: "method" }>) => number) {
  const byMethod = new Map<string, SeriesPoint[]>();
  for (const row of rows) {
    if (row.kind !== "method") continue;
    if (!byMethod.has(row.method)) byMethod.set(row.method, []);
    const y = value(row);
    byMethod.get(row.method)!.push({ x: row.snrDb, y });
  }
  const series: Series[] = [];
  const dropped: string[] = [];
  for (const [method, points] of byMethod) {
    // log axis: only positive finite values are drawable
    const drawable = points
      .filter((p) => Number.isFinite(p.y) && p.y > 0)
      .sort((a, b) => a.x - b.x);
    if (drawable.length === 0) {
      dropped.push(method);
      continue;
    }
    const style = styleFor(method);
    series.push({ label: style.label, marker: style.marker, dashed: false, points: drawable });
  }
  return { series, dropped };
}

function crlbSeries(rows: SweepRow[], value: (row: Extract<SweepRow, { kind: "crlb" }>) => number): Series | null {
  const points = rows
    .filter((row): row is Extract<SweepRow, { kind: "crlb" }> => row.kind === "crlb")
    .map((row) => ({ x: row.snrDb, y: value(row) }))
    .filter((p) => Number.isFinite(p.y) && p.y > 0)
    .sort((a, b) => a.x - b.x);
  if (points.length === 0) return null;
  return { label: "CRLB", marker: "none", dashed: true, points };
}

export function misalignmentFigure(rows: SweepRow[]): FigureModel {
  const { series, dropped } = methodSeries(rows, (row) => row.mseSto);
  return {
    title: "Frame misalignment estimation, MSE vs SNR",
    yLabel: "misalignment MSE (samples^2)",
    series,
    droppedSeries: dropped,
  };
}

export function cfoFigure(rows: SweepRow[]): FigureModel {
  const { series, dropped } = methodSeries(rows, (row) => row.mseCfo);
  const crlb = crlbSeries(rows, (row) => row.crlbEps);
  if (crlb) series.push(crlb);
  return {
    title: "CFO estimation, MSE vs SNR",
    yLabel: "CFO MSE",
    series,
    droppedSeries: dropped,
  };
}
