// Just enough .xlsx reading to turn a simple two-column workbook into CSV
// text for the regular parser. Reads the zip central directory, inflates
// entries with the browser's DecompressionStream, and walks the first
// worksheet's cells. Anything fancier (formulas, merged cells, multiple
// sheets) is out of scope: the first sheet's A/B columns are the data.

const EOCD_SIG = 0x06054b50;
const CENTRAL_SIG = 0x02014b50;

interface ZipEntry {
  name: string;
  method: number;
  compressedSize: number;
  headerOffset: number;
}

function readCentralDirectory(view: DataView): ZipEntry[] {
  // EOCD is at the end, possibly preceded by a comment (<= 64 KiB)
  let eocd = -1;
  const floor = Math.max(0, view.byteLength - 65557);
  for (let i = view.byteLength - 22; i >= floor; i--) {
    if (view.getUint32(i, true) === EOCD_SIG) {
      eocd = i;
      break;
    }
  }
  if (eocd < 0) throw new Error("not a zip archive (no end-of-directory record)");
  const count = view.getUint16(eocd + 10, true);
  let offset = view.getUint32(eocd + 16, true);
  const entries: ZipEntry[] = [];
  const decoder = new TextDecoder();
  for (let k = 0; k < count; k++) {
    if (view.getUint32(offset, true) !== CENTRAL_SIG) {
      throw new Error("corrupt zip central directory");
    }
    const method = view.getUint16(offset + 10, true);
    const compressedSize = view.getUint32(offset + 20, true);
    const nameLen = view.getUint16(offset + 28, true);
    const extraLen = view.getUint16(offset + 30, true);
    const commentLen = view.getUint16(offset + 32, true);
    const headerOffset = view.getUint32(offset + 42, true);
    const name = decoder.decode(
      new Uint8Array(view.buffer, view.byteOffset + offset + 46, nameLen),
    );
    entries.push({ name, method, compressedSize, headerOffset });
    offset += 46 + nameLen + extraLen + commentLen;
  }
  return entries;
}

async function extractEntry(view: DataView, entry: ZipEntry): Promise<string> {
  const at = entry.headerOffset;
  const nameLen = view.getUint16(at + 26, true);
  const extraLen = view.getUint16(at + 28, true);
  const start = at + 30 + nameLen + extraLen;
  const raw = new Uint8Array(
    view.buffer,
    view.byteOffset + start,
    entry.compressedSize,
  );
  if (entry.method === 0) return new TextDecoder().decode(raw);
  if (entry.method !== 8) {
    throw new Error(`unsupported zip compression method ${entry.method}`);
  }
  const stream = new Blob([raw.slice()])
    .stream()
    .pipeThrough(new DecompressionStream("deflate-raw"));
  return await new Response(stream).text();
}

function unescapeXml(text: string): string {
  return text
    .replace(/&lt;/g, "<")
    .replace(/&gt;/g, ">")
    .replace(/&quot;/g, '"')
    .replace(/&apos;/g, "'")
    .replace(/&amp;/g, "&");
}

function parseSharedStrings(xml: string): string[] {
  const out: string[] = [];
  for (const si of xml.matchAll(/<si>([\s\S]*?)<\/si>/g)) {
    // rich-text runs split one string across several <t> elements
    const parts = [...si[1].matchAll(/<t[^>]*>([\s\S]*?)<\/t>/g)];
    out.push(unescapeXml(parts.map((p) => p[1]).join("")));
  }
  return out;
}

function columnIndex(ref: string): number {
  let idx = 0;
  for (const ch of ref) idx = idx * 26 + (ch.charCodeAt(0) - 64);
  return idx - 1;
}

function cellText(attrs: string, body: string, shared: string[]): string {
  const type = /(?:^|\s)t="([^"]+)"/.exec(attrs)?.[1];
  if (type === "inlineStr") {
    const t = /<t[^>]*>([\s\S]*?)<\/t>/.exec(body);
    return t ? unescapeXml(t[1]) : "";
  }
  const v = /<v>([\s\S]*?)<\/v>/.exec(body);
  if (!v) return "";
  if (type === "s") return shared[Number(v[1])] ?? "";
  return unescapeXml(v[1]);
}

export async function xlsxToCsv(data: ArrayBuffer): Promise<string> {
  const view = new DataView(data);
  const entries = readCentralDirectory(view);
  const sheet = entries
    .filter((e) => /^xl\/worksheets\/sheet\d+\.xml$/.test(e.name))
    .sort((a, b) => a.name.localeCompare(b.name))[0];
  if (!sheet) throw new Error("workbook has no worksheet");
  const sharedEntry = entries.find((e) => e.name === "xl/sharedStrings.xml");
  const shared = sharedEntry
    ? parseSharedStrings(await extractEntry(view, sharedEntry))
    : [];
  const sheetXml = await extractEntry(view, sheet);

  const lines: string[] = [];
  for (const row of sheetXml.matchAll(/<row[^>]*>([\s\S]*?)<\/row>/g)) {
    const cells: string[] = [];
    for (const c of row[1].matchAll(/<c([^>]*?)(?:\/>|>([\s\S]*?)<\/c>)/g)) {
      const ref = /r="([A-Z]+)\d+"/.exec(c[1]);
      const col = ref ? columnIndex(ref[1]) : cells.length;
      while (cells.length < col) cells.push("");
      cells[col] = cellText(c[1], c[2] ?? "", shared);
    }
    lines.push(cells.join(","));
  }
  return lines.join("\n") + "\n";
}

export function isSpreadsheet(fileName: string): boolean {
  return /\.(xlsx|xlsm)$/i.test(fileName);
}
