/** Canonical serialization of path documents.
 *
 * `exportPath` emits a fixed key order and fixed layout, so
 * export → import → export is byte-identical and exported files diff cleanly.
 */

import { decodePathDocument } from "./decode.js";
import type { PathDocument } from "./types.js";

export function exportPath(doc: PathDocument): string {
  const canonical = {
    b: doc.b,
    points: doc.points.map((p) => ({ re: p.re, im: p.im })),
    created: doc.created,
  };
  return JSON.stringify(canonical, null, 2) + "\n";
}

export function importPath(text: string): PathDocument {
  return decodePathDocument(JSON.parse(text));
}
