/**
 * Sweep-CSV reading and schema validation.
 *
 * The harness emits one row per (deadline, scheme) with the exact header
 * below; anything else is a schema mismatch and fails loudly. mean_energy
 * may be NaN when a scheme had no feasible trial at that deadline.
 */

import Papa from "papaparse";

export const EXPECTED_HEADER = [
  "deadline_T",
  "scheme",
  "mean_energy",
  "feasible_fraction",
  "n_trials",
  "seed",
] as const;

export interface SweepRow {
  deadline_T: number;
  scheme: string;
  mean_energy: number;
  feasible_fraction: number;
  n_trials: number;
  seed: number;
}

export class SchemaError extends Error {}

function toNumber(raw: string, field: string, line: number): number {
  if (raw === "nan" || raw === "NaN") return NaN;
  const value = Number(raw);
  if (raw.trim() === "" || Number.isNaN(value)) {
    throw new SchemaError(`line ${line}: field ${field} is not a number: "${raw}"`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`CSV parse error: ${first.message} (row ${first.row})`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new SchemaError("empty CSV");
  }
  const header = rows[0];
  if (header.join(",") !== EXPECTED_HEADER.join(",")) {
    throw new SchemaError(
      `header mismatch: expected "${EXPECTED_HEADER.join(",")}", got "${header.join(",")}"`,
    );
  }
  return rows.slice(1).map((cells, i) => {
    const line = i + 2;
    if (cells.length !== EXPECTED_HEADER.length) {
      throw new SchemaError(`line ${line}: expected ${EXPECTED_HEADER.length} fields, got ${cells.length}`);
    }
    const row: SweepRow = {
      deadline_T: toNumber(cells[0], "deadline_T", line),
      scheme: cells[1],
      mean_energy: toNumber(cells[2], "mean_energy", line),
      feasible_fraction: toNumber(cells[3], "feasible_fraction", line),
      n_trials: toNumber(cells[4], "n_trials", line),
      seed: toNumber(cells[5], "seed", line),
    };
    if (!(row.deadline_T > 0)) {
      throw new SchemaError(`line ${line}: deadline_T must be > 0`);
    }
    if (!(row.feasible_fraction >= 0 && row.feasible_fraction <= 1)) {
      throw new SchemaError(`line ${line}: feasible_fraction out of [0, 1]`);
    }
    return row;
  });
}
