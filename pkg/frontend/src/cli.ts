// CLI: render the two MSE-vs-SNR figures from a sweep CSV.
//
//   node dist/cli.js render --input sweep.csv --out-dir figures/
//
// Exit codes: 0 success, 1 failure (malformed CSV errors carry the row number).

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { cfoFigure, misalignmentFigure } from "./figures.js";
import { parseSweepCsv } from "./schema.js";
import { renderSvg } from "./svg.js";

export interface RenderResult {
  files: string[];
  warnings: string[];
}

export function renderFigures(inputCsv: string, outDir: string): RenderResult {
  const rows = parseSweepCsv(readFileSync(inputCsv, "utf8"));
  mkdirSync(outDir, { recursive: true });
  const warnings: string[] = [];
  const files: string[] = [];

  for (const [name, model] of [
    ["misalignment_mse.svg", misalignmentFigure(rows)],
    ["cfo_mse.svg", cfoFigure(rows)],
  ] as const) {
    if (model.series.length === 0) {
      warnings.push(`${name}: no curves to plot`);
    }
    for (const dropped of model.droppedSeries) {
      warnings.push(`${name}: method ${dropped} has no positive MSE values on the log axis`);
    }
    const path = join(outDir, name);
    writeFileSync(path, renderSvg(model) + "\n");
    files.push(path);
  }
  return { files, warnings };
}

function parseArgs(argv: string[]): { input: string; outDir: string } {
  if (argv[0] !== "render") {
    throw new Error(`unknown command ${JSON.stringify(argv[0])}, expected 'render'`);
  }
  let input: string | undefined;
  let outDir = ".";
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) throw new Error(`missing value for ${flag}`);
    if (flag === "--input") input = value;
    else if (flag === "--out-dir") outDir = value;
    else throw new Error(`unknown flag ${flag}`);
  }
  if (!input) throw new Error("--input is required");
  return { input, outDir };
}

export function main(argv: string[]): number {
  try {
    const { input, outDir } = parseArgs(argv);
    const { files, warnings } = renderFigures(input, outDir);
    for (const warning of warnings) console.error(`warning: ${warning}`);
    for (const file of files) console.log(`wrote ${file}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
