/** Parser for the service's ASCII (P2) graymap slice payloads. */

export interface PgmImage {
  width: number;
  height: number;
  maxval: number;
  /** header comment lines, without the leading "# " */
  comments: string[];
  /** row-major escape counts; 0 means the orbit never escaped */
  pixels: Uint16Array;
}

export class PgmParseError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "PgmParseError";
  }
}

export function parsePgm(text: string): PgmImage {
  const comments: string[] = [];
  const tokens: string[] = [];
  for (const line of text.split("\n")) {
    if (line.startsWith("#")) {
      comments.push(line.replace(/^#\s?/, ""));
      continue;
    }
    for (const token of line.trim().split(/\s+/)) {
      if (token.length > 0) tokens.push(token);
    }
  }
  if (tokens[0] !== "P2") {
    throw new PgmParseError(`not an ASCII graymap: magic ${JSON.stringify(tokens[0])}`);
  }
  const header = tokens.slice(1, 4).map((t) => Number(t));
  if (header.length < 3 || header.some((v) => !Number.isInteger(v) || v <= 0)) {
    throw new PgmParseError(`bad header ${tokens.slice(1, 4).join(" ")}`);
  }
  const [width, height, maxval] = header as [number, number, number];
  const values = tokens.slice(4);
  if (values.length !== width * height) {
    throw new PgmParseError(
      `expected ${width * height} pixels, found ${values.length}`,
    );
  }
  const pixels = new Uint16Array(width * height);
  for (let i = 0; i < values.length; i += 1) {
    const v = Number(values[i]);
    if (!Number.isInteger(v) || v < 0 || v > maxval) {
      throw new PgmParseError(`pixel ${i} out of range: ${values[i]}`);
    }
    pixels[i] = v;
  }
  return { width, height, maxval, comments, pixels };
}
