// Sweep CSV schema: one row per (snr_db, method) cell plus CRLB companion rows.
//
//   snr_db,method,mse_cfo,mse_sto,se_cfo,se_sto,trials_ok,trials_failed
//
// Method rows carry all eight fields; CRLB rows reuse mse_cfo/mse_sto for the
// eps and p bounds and leave the last four fields empty.

export const HEADER = [
  "snr_db",
  "method",
  "mse_cfo",
  "mse_sto",
  "se_cfo",
  "se_sto",
  "trials_ok",
  "trials_failed",
] as const;

export interface MethodRow {
  kind: "method";
  snrDb: number;
  method: string;
  mseCfo: number;
  mseSto: number;
  seCfo: number;
  seSto: number;
  trialsOk: number;
  trialsFailed: number;
}

export interface CrlbRow {
  kind: "crlb";
  snrDb: number;
  crlbEps: number;
  crlbP: number;
}

export type SweepRow = MethodRow | CrlbRow;

export class CsvFormatError extends Error {
  constructor(public readonly rowNumber: number, detail: string) {
    super(`row ${rowNumber}: ${detail}`);
    this.name = "CsvFormatError";
  }
}

function parseNumber(field: string, name: string, rowNumber: number): number {
  const trimmed = field.trim();
  if (trimmed === "") {
    throw new CsvFormatError(rowNumber, `empty ${name} field`);
  }
  const value = Number(trimmed);
  if (Number.isNaN(value) && trimmed.toLowerCase() !== "nan") {
    throw new CsvFormatError(rowNumber, `${name} is not numeric: ${JSON.stringify(field)}`);
  }
  return value;
}

/** Parse the sweep CSV text; row numbers in errors are 1-based file lines. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line, i, arr) => !(line === "" && i === arr.length - 1));
  if (lines.length === 0) {
    throw new CsvFormatError(1, "empty file");
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (header.length !== HEADER.length || !HEADER.every((h, i) => header[i] === h)) {
    throw new CsvFormatError(1, `bad header, expected ${HEADER.join(",")}`);
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const rowNumber = i + 1;
    if (lines[i].trim() === "") {
      throw new CsvFormatError(rowNumber, "blank row");
    }
    const fields = lines[i].split(",");
    if (fields.length !== HEADER.length) {
      throw new CsvFormatError(rowNumber, `expected ${HEADER.length} fields, got ${fields.length}`);
    }
    const snrDb = parseNumber(fields[0], "snr_db", rowNumber);
    const method = fields[1].trim();
    if (method === "") {
      throw new CsvFormatError(rowNumber, "empty method field");
    }
    if (method === "CRLB") {
      rows.push({
        kind: "crlb",
        snrDb,
        crlbEps: parseNumber(fields[2], "crlb_eps", rowNumber),
        crlbP: parseNumber(fields[3], "crlb_p", rowNumber),
      });
      continue;
    }
    rows.push({
      kind: "method",
      snrDb,
      method,
      mseCfo: parseNumber(fields[2], "mse_cfo", rowNumber),
      mseSto: parseNumber(fields[3], "mse_sto", rowNumber),
      seCfo: parseNumber(fields[4], "se_cfo", rowNumber),
      seSto: parseNumber(fields[5], "se_sto", rowNumber),
      trialsOk: parseNumber(fields[6], "trials_ok", rowNumber),
      trialsFailed: parseNumber(fields[7], "trials_failed", rowNumber),
    });
  }
  return rows;
}
