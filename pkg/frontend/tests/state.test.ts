import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import {
  clickParameter,
  interpolateSegment,
  newViewState,
  pointKey,
  selectPoint,
  selectedSlice,
  validatePath,
  viewportToParameter,
  type ViewState,
  type Viewport,
} from "../src/state.js";
import { fixture, mockFetch, sliceRoutes, type Route } from "./helpers.js";

// center the viewport on a=10 so integer pixel offsets land on exact decimals
const viewport: Viewport = {
  centerRe: 10,
  centerIm: 0,
  unitsPerPixel: 0.05,
  widthPx: 400,
  heightPx: 400,
};

const POINTS = [
  { re: 10, im: 0 },
  { re: 9.9, im: 0.05 },
  { re: 9.8, im: 0 },
];

function client(extra: Route[] = [], log?: string[]): ApiClient {
  return new ApiClient(
    "",
    mockFetch([...sliceRoutes(POINTS, 0.4, 8, 2), ...extra], log),
  );
}

function freshState(): ViewState {
  return newViewState(0.4, {
    viewport,
    sliceResolution: 8,
    sliceRadius: 2,
    created: "2026-08-23T00:00:00Z",
  });
}

describe("viewportToParameter", () => {
  it("maps the viewport center to its parameter", () => {
    expect(viewportToParameter(viewport, { x: 200, y: 200 })).toEqual({ re: 10, im: 0 });
  });

  it("maps pixel offsets by the viewport scale with y flipped", () => {
    expect(viewportToParameter(viewport, { x: 198, y: 199 })).toEqual({ re: 9.9, im: 0.05 });
  });
});

describe("clickParameter", () => {
  it("appends the point, stores its slice, and selects it", async () => {
    const state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    expect(state.path.points).toEqual([{ re: 10, im: 0 }]);
    expect(state.selected).toBe(0);
    const record = selectedSlice(state);
    expect(record).not.toBeNull();
    expect(record!.image.width).toBe(8);
    expect(record!.flags.inDN).toBe(true);
  });

  it("selects instead of duplicating on a repeated click", async () => {
    let state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    state = await clickParameter(state, client(), { x: 198, y: 199 });
    expect(state.selected).toBe(1);
    const again = await clickParameter(state, client(), { x: 200, y: 200 });
    expect(again.path.points).toHaveLength(2);
    expect(again.selected).toBe(0);
  });

  it("keeps the displayed slice in lockstep with the selection", async () => {
    let state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    state = await clickParameter(state, client(), { x: 198, y: 199 });
    expect(selectedSlice(state)!.flags.a).toBe(9.9);
    state = selectPoint(state, 0);
    expect(selectedSlice(state)!.flags.a).toBe(10);
  });

  it("rejects clicks mapping outside the numeric range", async () => {
    const wide = { ...viewport, unitsPerPixel: 10 };
    const state = { ...freshState(), viewport: wide };
    await expect(clickParameter(state, client(), { x: 0, y: 200 })).rejects.toThrow(
      /out of range/,
    );
  });

  it("leaves prior state untouched when the service fails", async () => {
    const one = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    const failing = new ApiClient("", mockFetch([])); // no routes at all
    await expect(clickParameter(one, failing, { x: 198, y: 199 })).rejects.toThrow(
      /no mocked route/,
    );
    expect(one.path.points).toEqual([{ re: 10, im: 0 }]);
    expect(selectedSlice(one)).not.toBeNull();
  });

  it("never mutates previously confirmed slices", async () => {
    const one = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    const record = one.slices.get(pointKey({ re: 10, im: 0 }));
    const two = await clickParameter(one, client(), { x: 198, y: 199 });
    expect(two.slices.get(pointKey({ re: 10, im: 0 }))).toBe(record);
    expect(one.path.points).toHaveLength(1); // old state unchanged
  });
});

describe("interpolateSegment", () => {
  it("inserts fetched midpoints between the endpoints", async () => {
    let state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    state = await clickParameter(state, client(), { x: 196, y: 200 });
    const midRoutes = sliceRoutes([{ re: 9.9, im: 0.05 }], 0.4, 8, 2).map((r) =>
      r.path === "/api/slice"
        ? { ...r, params: { are: 9.9, aim: 0, b: 0.4, res: 8, radius: 2 } }
        : { ...r, params: { a: 9.9, aim: 0, b: 0.4 } },
    );
    state = await interpolateSegment(state, new ApiClient("", mockFetch(midRoutes)), 0, 1);
    expect(state.path.points.map((p) => p.re)).toEqual([10, 9.9, 9.8]);
    expect(state.path.points[1]).toEqual({ re: 9.9, im: 0 });
    expect(state.slices.has(pointKey({ re: 9.9, im: 0 }))).toBe(true);
  });

  it("rejects invalid segment indices and counts", async () => {
    const state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    await expect(interpolateSegment(state, client(), 0, 1)).rejects.toThrow(/no path segment/);
    await expect(interpolateSegment(state, client(), 0, 0)).rejects.toThrow(/positive integer/);
  });
});

describe("validatePath", () => {
  it("stores per-segment verdicts from the service", async () => {
    let state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    state = await clickParameter(state, client(), { x: 198, y: 199 });
    state = await clickParameter(state, client(), { x: 196, y: 200 });
    const api = client([
      { method: "POST", path: "/api/path/validate", body: fixture("path_validate_3pt.json") },
    ]);
    state = await validatePath(state, api);
    expect(state.validation!.valid).toBe(true);
    expect(state.validation!.segments).toHaveLength(2);
    expect(state.validation!.segments.every((s) => s.ok)).toBe(true);
    expect(state.validation!.points[0]!.inDN).toBe(true);
  });

  it("refuses an empty path", async () => {
    await expect(validatePath(freshState(), client())).rejects.toThrow(/empty path/);
  });

  it("is cleared again when the path changes", async () => {
    let state = await clickParameter(freshState(), client(), { x: 200, y: 200 });
    const api = client([
      { method: "POST", path: "/api/path/validate", body: fixture("path_validate_3pt.json") },
    ]);
    state = await validatePath(state, api);
    expect(state.validation).not.toBeNull();
    state = await clickParameter(state, client(), { x: 198, y: 199 });
    expect(state.validation).toBeNull();
  });
});
