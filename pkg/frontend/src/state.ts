/** Explorer view state and its operations.
 *
 * The state is immutable: every operation returns a new state and never
 * mutates path points or previously fetched slices, so confirmed slices stay
 * exactly as the service delivered them.  Operations that talk to the service
 * throw on failure and leave the caller's state untouched.
 *
 * Invariant: the slice on screen always belongs to the selected point —
 * `selectedSlice` derives it from the selection rather than storing a copy.
 */

import type { ApiClient } from "./api.js";
import { exportPath, importPath } from "./path.js";
import type {
  CensusReport,
  ClassifyResponse,
  ComplexPoint,
  PathDocument,
  PathValidation,
  SliceMetadata,
} from "./types.js";
import type { PgmImage } from "./pgm.js";

/** Parameters beyond this magnitude are rejected as out of numeric range. */
export const PARAMETER_LIMIT = 100;

export interface Viewport {
  centerRe: number;
  centerIm: number;
  /** complex units per screen pixel */
  unitsPerPixel: number;
  widthPx: number;
  heightPx: number;
}

export interface SliceRecord {
  image: PgmImage;
  metadata: SliceMetadata;
  flags: ClassifyResponse;
}

export interface VerifyPanel {
  disk: { N: number; M: number };
  nMax: number;
  report: CensusReport;
}

export interface ViewState {
  b: number;
  viewport: Viewport;
  path: PathDocument;
  selected: number | null;
  slices: ReadonlyMap<string, SliceRecord>;
  validation: PathValidation | null;
  verify: VerifyPanel | null;
  sliceResolution: number;
  sliceRadius: number;
}

export interface ViewOptions {
  viewport?: Viewport;
  sliceResolution?: number;
  sliceRadius?: number;
  created?: string;
}

const DEFAULT_VIEWPORT: Viewport = {
  centerRe: 4,
  centerIm: 0,
  unitsPerPixel: 0.02,
  widthPx: 600,
  heightPx: 600,
};

export function newViewState(b: number, options: ViewOptions = {}): ViewState {
  if (!Number.isFinite(b) || b === 0) {
    throw new RangeError(`b must be a non-zero finite number, got ${b}`);
  }
  return {
    b,
    viewport: options.viewport ?? DEFAULT_VIEWPORT,
    path: {
      b,
      points: [],
      created: options.created ?? new Date().toISOString(),
    },
    selected: null,
    slices: new Map(),
    validation: null,
    verify: null,
    sliceResolution: options.sliceResolution ?? 256,
    sliceRadius: options.sliceRadius ?? 2.0,
  };
}

export function pointKey(p: ComplexPoint): string {
  return `${p.re}|${p.im}`;
}

export function viewportToParameter(
  viewport: Viewport,
  position: { x: number; y: number },
): ComplexPoint {
  return {
    re: viewport.centerRe + (position.x - viewport.widthPx / 2) * viewport.unitsPerPixel,
    im: viewport.centerIm - (position.y - viewport.heightPx / 2) * viewport.unitsPerPixel,
  };
}

export function selectPoint(state: ViewState, index: number): ViewState {
  if (!Number.isInteger(index) || index < 0 || index >= state.path.points.length) {
    throw new RangeError(`no path point at index ${index}`);
  }
  return { ...state, selected: index };
}

/** The slice belonging to the selected point, or null before the fetch. */
export function selectedSlice(state: ViewState): SliceRecord | null {
  if (state.selected === null) return null;
  const point = state.path.points[state.selected];
  if (point === undefined) return null;
  return state.slices.get(pointKey(point)) ?? null;
}

async function fetchRecord(
  state: ViewState,
  api: ApiClient,
  a: ComplexPoint,
): Promise<SliceRecord> {
  const [slice, flags] = await Promise.all([
    api.slice(a, state.b, state.sliceResolution, state.sliceRadius),
    api.classify(a, state.b),
  ]);
  return { image: slice.image, metadata: slice.metadata, flags };
}

function withPoints(
  state: ViewState,
  points: ComplexPoint[],
  records: Map<string, SliceRecord>,
  selected: number | null,
): ViewState {
  const slices = new Map(state.slices);
  for (const [key, record] of records) slices.set(key, record);
  return {
    ...state,
    path: { ...state.path, points },
    slices,
    selected,
    validation: null, // the path changed; stale verdicts must not linger
  };
}

function checkRange(a: ComplexPoint): void {
  if (
    !Number.isFinite(a.re) ||
    !Number.isFinite(a.im) ||
    Math.abs(a.re) > PARAMETER_LIMIT ||
    Math.abs(a.im) > PARAMETER_LIMIT
  ) {
    throw new RangeError(`parameter out of range: ${a.re}${a.im >= 0 ? "+" : ""}${a.im}i`);
  }
}

/** Append the clicked parameter to the path; clicking an existing point only
 * selects it. */
export async function clickParameter(
  state: ViewState,
  api: ApiClient,
  position: { x: number; y: number },
): Promise<ViewState> {
  const a = viewportToParameter(state.viewport, position);
  checkRange(a);
  const existing = state.path.points.findIndex((p) => p.re === a.re && p.im === a.im);
  if (existing >= 0) return selectPoint(state, existing);
  const record = await fetchRecord(state, api, a);
  const points = [...state.path.points, a];
  return withPoints(state, points, new Map([[pointKey(a), record]]), points.length - 1);
}

/** Insert k evenly spaced midpoints into segment [index, index+1], fetching a
 * slice for each. */
export async function interpolateSegment(
  state: ViewState,
  api: ApiClient,
  index: number,
  k: number,
): Promise<ViewState> {
  if (!Number.isInteger(k) || k < 1) throw new RangeError(`k must be a positive integer, got ${k}`);
  const p = state.path.points[index];
  const q = state.path.points[index + 1];
  if (p === undefined || q === undefined) {
    throw new RangeError(`no path segment at index ${index}`);
  }
  const inserted: ComplexPoint[] = [];
  for (let i = 1; i <= k; i += 1) {
    const t = i / (k + 1);
    inserted.push({ re: p.re + t * (q.re - p.re), im: p.im + t * (q.im - p.im) });
  }
  const records = new Map<string, SliceRecord>();
  for (const a of inserted) {
    checkRange(a);
    records.set(pointKey(a), await fetchRecord(state, api, a));
  }
  const points = [
    ...state.path.points.slice(0, index + 1),
    ...inserted,
    ...state.path.points.slice(index + 1),
  ];
  return withPoints(state, points, records, index + 1);
}

export async function validatePath(state: ViewState, api: ApiClient): Promise<ViewState> {
  if (state.path.points.length === 0) {
    throw new RangeError("cannot validate an empty path");
  }
  const validation = await api.validatePath(state.path);
  return { ...state, validation };
}

export function exportViewPath(state: ViewState): string {
  return exportPath(state.path);
}

/** Replace the working path with an imported document (b must agree). */
export function importViewPath(state: ViewState, text: string): ViewState {
  const doc = importPath(text);
  if (doc.b !== state.b) {
    throw new RangeError(`imported path has b=${doc.b}, explorer is at b=${state.b}`);
  }
  return {
    ...state,
    path: doc,
    selected: doc.points.length > 0 ? doc.points.length - 1 : null,
    validation: null,
    verify: null,
  };
}

export function canRunVerify(state: ViewState): { ok: boolean; reason?: string } {
  const last = state.path.points[state.path.points.length - 1];
  if (last === undefined) return { ok: false, reason: "path is empty" };
  if (last.im !== 0) return { ok: false, reason: "last path point must be real" };
  return { ok: true };
}

/** Compare the continuation census at the path's real endpoint against the
 * pruned subshift's prediction. */
export async function runVerify(
  state: ViewState,
  api: ApiClient,
  N: number,
  M: number,
  nMax: number,
): Promise<ViewState> {
  const gate = canRunVerify(state);
  if (!gate.ok) throw new RangeError(gate.reason ?? "verify unavailable");
  const last = state.path.points[state.path.points.length - 1] as ComplexPoint;
  const report = await api.census(last.re, state.b, { N, M }, nMax);
  return { ...state, verify: { disk: { N, M }, nMax, report } };
}
