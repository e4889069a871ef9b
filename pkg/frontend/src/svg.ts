// Minimal hand-rolled SVG line chart with a log10 y-axis. No dependencies,
// deterministic output: rendering is a pure function of the figure model.

import type { FigureModel, Series } from "./figures.js";

const WIDTH = 760;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 84 };

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#000000", "#ff7f0e"];

interface Scale {
  (v: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

function niceTicks(lo: number, hi: number, maxTicks = 8): number[] {
  const span = hi - lo || 1;
  const step0 = span / maxTicks;
  const mag = 10 ** Math.floor(Math.log10(step0));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= maxTicks) ?? 10 * mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = start; t <= hi + 1e-9; t += step) ticks.push(Number(t.toFixed(10)));
  return ticks;
}

function markerGlyph(series: Series, cx: number, cy: number, color: string): string {
  const r = 4;
  switch (series.marker) {
    case "circle":
      return `<circle cx="${cx}" cy="${cy}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${cx - r}" y="${cy - r}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "triangle":
      return `<polygon points="${cx},${cy - r} ${cx - r},${cy + r} ${cx + r},${cy + r}" fill="${color}"/>`;
    case "diamond":
      return `<polygon points="${cx},${cy - r} ${cx + r},${cy} ${cx},${cy + r} ${cx - r},${cy}" fill="${color}"/>`;
    case "none":
      return "";
  }
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Render a semilog-y multi-series chart as a standalone SVG document. */
export function renderSvg(model: FigureModel): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif" font-size="13">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(model.title)}</text>`,
  );

  if (model.series.length === 0) {
    parts.push(
      `<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" fill="#888">no curves to plot</text>`,
    );
    parts.push("</svg>");
    return parts.join("\n");
  }

  const xs = model.series.flatMap((s) => s.points.map((p) => p.x));
  const logs = model.series.flatMap((s) => s.points.map((p) => Math.log10(p.y)));
  const x0 = Math.min(...xs);
  const x1 = Math.max(...xs);
  const e0 = Math.floor(Math.min(...logs));
  const e1 = Math.ceil(Math.max(...logs));
  const xScale = linearScale(x0, x1, MARGIN.left, MARGIN.left + plotW);
  const yScale = linearScale(e0, e1 === e0 ? e0 + 1 : e1, MARGIN.top + plotH, MARGIN.top);

  // frame and grid
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );
  for (let e = e0; e <= e1; e++) {
    const y = yScale(e);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#ddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end">1e${e}</text>`,
    );
  }
  for (const t of niceTicks(x0, x1)) {
    const x = xScale(t);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#eee"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 20}" text-anchor="middle">${t}</text>`,
    );
  }
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle">SNR (dB)</text>`,
    `<text transform="translate(20,${MARGIN.top + plotH / 2}) rotate(-90)" text-anchor="middle">${escapeXml(model.yLabel)}</text>`,
  );

  // series
  model.series.forEach((series, i) => {
    const color = series.label === "CRLB" ? "#000000" : PALETTE[i % PALETTE.length];
    const coords = series.points.map((p) => `${xScale(p.x).toFixed(2)},${yScale(Math.log10(p.y)).toFixed(2)}`);
    const dash = series.dashed ? ' stroke-dasharray="7 5"' : "";
    parts.push(
      `<polyline points="${coords.join(" ")}" fill="none" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    if (series.marker !== "none") {
      for (const p of series.points) {
        parts.push(markerGlyph(series, xScale(p.x), yScale(Math.log10(p.y)), color));
      }
    }
  });

  // legend
  const legendX = MARGIN.left + plotW - 170;
  let legendY = MARGIN.top + 14;
  parts.push(
    `<rect x="${legendX - 10}" y="${MARGIN.top + 2}" width="178" height="${model.series.length * 20 + 10}" fill="white" stroke="#999"/>`,
  );
  model.series.forEach((series, i) => {
    const color = series.label === "CRLB" ? "#000000" : PALETTE[i % PALETTE.length];
    const dash = series.dashed ? ' stroke-dasharray="7 5"' : "";
    parts.push(
      `<line x1="${legendX}" y1="${legendY}" x2="${legendX + 26}" y2="${legendY}" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    parts.push(markerGlyph(series, legendX + 13, legendY, color));
    parts.push(`<text x="${legendX + 34}" y="${legendY + 4}">${escapeXml(series.label)}</text>`);
    legendY += 20;
  });

  parts.push("</svg>");
  return parts.join("\n");
}
