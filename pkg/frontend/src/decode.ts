/** Strict decoders for service responses.
 *
 * Every value the UI displays passes through one of these, so a malformed or
 * drifted service payload fails loudly instead of rendering garbage.  They are
 * hand-rolled (no schema library) so the compiled modules run in the browser
 * without a bundling step.
 */

import type {
  CensusReport,
  CensusRow,
  ClassifyResponse,
  ComplexPoint,
  PathDocument,
  PathValidation,
  RegionFlags,
  SliceMetadata,
} from "./types.js";

export class DecodeError extends Error {
  constructor(path: string, expected: string, got: unknown) {
    super(`${path}: expected ${expected}, got ${JSON.stringify(got)}`);
    this.name = "DecodeError";
  }
}

function asRecord(value: unknown, path: string): Record<string, unknown> {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new DecodeError(path, "object", value);
  }
  return value as Record<string, unknown>;
}

function asArray(value: unknown, path: string): unknown[] {
  if (!Array.isArray(value)) throw new DecodeError(path, "array", value);
  return value;
}

function num(value: unknown, path: string): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new DecodeError(path, "finite number", value);
  }
  return value;
}

function bool(value: unknown, path: string): boolean {
  if (typeof value !== "boolean") throw new DecodeError(path, "boolean", value);
  return value;
}

function str(value: unknown, path: string): string {
  if (typeof value !== "string") throw new DecodeError(path, "string", value);
  return value;
}

function flags(rec: Record<string, unknown>, path: string): RegionFlags {
  return {
    inDN: bool(rec.inDN, `${path}.inDN`),
    inEMP: bool(rec.inEMP, `${path}.inEMP`),
    inHOV: bool(rec.inHOV, `${path}.inHOV`),
    inI1: bool(rec.inI1, `${path}.inI1`),
    inI2: bool(rec.inI2, `${path}.inI2`),
  };
}

function complexPoint(value: unknown, path: string): ComplexPoint {
  const rec = asRecord(value, path);
  return { re: num(rec.re, `${path}.re`), im: num(rec.im, `${path}.im`) };
}

export function decodeClassify(value: unknown): ClassifyResponse {
  const rec = asRecord(value, "classify");
  return {
    a: num(rec.a, "classify.a"),
    aim: num(rec.aim, "classify.aim"),
    b: num(rec.b, "classify.b"),
    ...flags(rec, "classify"),
  };
}

function censusRow(value: unknown, path: string): CensusRow {
  const rec = asRecord(value, path);
  return {
    n: num(rec.n, `${path}.n`),
    predicted: num(rec.predicted, `${path}.predicted`),
    observed: rec.observed === null ? null : num(rec.observed, `${path}.observed`),
    lost: asArray(rec.lost, `${path}.lost`).map((w, i) => str(w, `${path}.lost[${i}]`)),
    match: rec.match === null ? null : bool(rec.match, `${path}.match`),
  };
}

export function decodeCensus(value: unknown): CensusReport {
  const rec = asRecord(value, "census");
  const params = asRecord(rec.params, "census.params");
  return {
    params: { a: num(params.a, "census.params.a"), b: num(params.b, "census.params.b") },
    disks: asArray(rec.disks, "census.disks").map((d, i) => {
      const disk = asRecord(d, `census.disks[${i}]`);
      return {
        N: num(disk.N, `census.disks[${i}].N`),
        M: num(disk.M, `census.disks[${i}].M`),
      };
    }),
    rows: asArray(rec.rows, "census.rows").map((r, i) => censusRow(r, `census.rows[${i}]`)),
    verdict: str(rec.verdict, "census.verdict"),
  };
}

export function decodePathValidation(value: unknown): PathValidation {
  const rec = asRecord(value, "validation");
  return {
    valid: bool(rec.valid, "validation.valid"),
    endpoint_dn: bool(rec.endpoint_dn, "validation.endpoint_dn"),
    step_budget: num(rec.step_budget, "validation.step_budget"),
    points: asArray(rec.points, "validation.points").map((p, i) => {
      const pt = asRecord(p, `validation.points[${i}]`);
      return {
        a: complexPoint(pt.a, `validation.points[${i}].a`),
        nonescaping_fraction: num(
          pt.nonescaping_fraction,
          `validation.points[${i}].nonescaping_fraction`,
        ),
        ...flags(pt, `validation.points[${i}]`),
      };
    }),
    segments: asArray(rec.segments, "validation.segments").map((s, i) => {
      const seg = asRecord(s, `validation.segments[${i}]`);
      const path = `validation.segments[${i}]`;
      return {
        from: num(seg.from, `${path}.from`),
        to: num(seg.to, `${path}.to`),
        delta: num(seg.delta, `${path}.delta`),
        ok: bool(seg.ok, `${path}.ok`),
      };
    }),
  };
}

export function decodeSliceMetadata(value: unknown): SliceMetadata {
  const rec = asRecord(value, "slice-metadata");
  return {
    are: num(rec.are, "slice-metadata.are"),
    aim: num(rec.aim, "slice-metadata.aim"),
    b: num(rec.b, "slice-metadata.b"),
    res: num(rec.res, "slice-metadata.res"),
    radius: num(rec.radius, "slice-metadata.radius"),
  };
}

export function decodePathDocument(value: unknown): PathDocument {
  const rec = asRecord(value, "path");
  const b = num(rec.b, "path.b");
  if (b === 0) throw new DecodeError("path.b", "non-zero number", b);
  return {
    b,
    points: asArray(rec.points, "path.points").map((p, i) =>
      complexPoint(p, `path.points[${i}]`),
    ),
    created: str(rec.created, "path.created"),
  };
}
