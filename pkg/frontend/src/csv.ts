// Client-side parsing of two-column delimited text into (reference,
// measured) pairs. Validation mirrors the service so the user sees the same
// row numbers either way.

import type { Pair } from "./types";

export class ParseError extends Error {
  constructor(message: string, readonly row?: number) {
    super(message);
    this.name = "ParseError";
  }
}

function sniffDelimiter(line: string): string {
  return line.includes("\t") ? "\t" : ",";
}

function looksNumeric(cell: string): boolean {
  const t = cell.trim();
  return t !== "" && Number.isFinite(Number(t));
}

export interface ParsedCsv {
  pairs: Pair[];
  columnNames: [string, string];
}

export function parsePairsText(raw: string): ParsedCsv {
  const lines = raw.split(/\r\n|\r|\n/);
  const pairs: Pair[] = [];
  let columnNames: [string, string] = ["reference", "measured"];
  let delimiter: string | null = null;
  let headerSeen = false;

  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (line.trim() === "") continue;
    const rowNum = i + 1; // physical 1-based line number, blank lines counted
    if (delimiter === null) delimiter = sniffDelimiter(line);
    const cells = line.split(delimiter);
    if (cells.length !== 2) {
      throw new ParseError(
        `row ${rowNum}: expected 2 columns, found ${cells.length}`,
        rowNum,
      );
    }
    if (!headerSeen && pairs.length === 0) {
      headerSeen = true;
      if (!looksNumeric(cells[0]) || !looksNumeric(cells[1])) {
        columnNames = [cells[0].trim(), cells[1].trim()];
        continue; // header row consumed
      }
    }
    const values: number[] = [];
    for (const cell of cells) {
      const t = cell.trim();
      if (!looksNumeric(t)) {
        throw new ParseError(
          `row ${rowNum}: cannot parse ${JSON.stringify(t)} as a number`,
          rowNum,
        );
      }
      const v = Number(t);
      if (v < 0) {
        throw new ParseError(`row ${rowNum}: AHI must be non-negative`, rowNum);
      }
      values.push(v);
    }
    pairs.push([values[0], values[1]]);
  }

  if (pairs.length === 0) throw new ParseError("no data rows found");
  if (pairs.length < 3) {
    throw new ParseError(`need at least 3 data rows, found ${pairs.length}`);
  }
  return { pairs, columnNames };
}
