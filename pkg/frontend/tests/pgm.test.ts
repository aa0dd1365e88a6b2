import { describe, expect, it } from "vitest";

import { parsePgm, PgmParseError } from "../src/pgm.js";
import { fixture } from "./helpers.js";

describe("parsePgm", () => {
  it("parses a recorded slice payload", () => {
    const image = parsePgm(fixture("slice_res8.pgm"));
    expect(image.width).toBe(8);
    expect(image.height).toBe(8);
    expect(image.maxval).toBe(200);
    expect(image.pixels).toHaveLength(64);
    expect([...image.pixels].every((v) => v >= 0 && v <= 200)).toBe(true);
    expect(image.comments[0]).toContain("b=0.4");
    expect(image.comments[0]).toContain("budget=200");
  });

  it("rejects non-P2 payloads", () => {
    expect(() => parsePgm("P5\n2 2\n255\n")).toThrow(PgmParseError);
  });

  it("rejects truncated pixel data", () => {
    expect(() => parsePgm("P2\n2 2\n10\n1 2 3\n")).toThrow(/expected 4 pixels/);
  });

  it("rejects pixels above maxval", () => {
    expect(() => parsePgm("P2\n2 1\n10\n3 11\n")).toThrow(/out of range/);
  });
});
