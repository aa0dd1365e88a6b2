/** Test support: fixture loading and a route-matching fetch stub.
 *
 * Fixtures are byte-for-byte responses recorded from the real service, so the
 * mocked UI sees exactly what the live service would send.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf8");
}

export interface Route {
  method?: string;
  path: string;
  /** query parameters compared numerically; the request must carry exactly these keys */
  params?: Record<string, number>;
  status?: number;
  body: string;
  headers?: Record<string, string>;
}

function matches(route: Route, method: string, url: URL): boolean {
  if ((route.method ?? "GET") !== method || url.pathname !== route.path) return false;
  if (route.params === undefined) return true;
  const keys = [...url.searchParams.keys()];
  const expected = Object.keys(route.params);
  if (keys.length !== expected.length) return false;
  return expected.every((key) => {
    const got = url.searchParams.get(key);
    return got !== null && Number(got) === route.params![key];
  });
}

export function mockFetch(routes: Route[], log?: string[]): FetchLike {
  return async (input, init) => {
    const method = init?.method ?? "GET";
    const url = new URL(input, "http://service.test");
    log?.push(`${method} ${url.pathname}${url.search}`);
    const route = routes.find((r) => matches(r, method, url));
    if (route === undefined) {
      throw new Error(`no mocked route for ${method} ${url.pathname}${url.search}`);
    }
    return new Response(route.body, {
      status: route.status ?? 200,
      headers: route.headers,
    });
  };
}

export function sliceRoutes(
  points: { re: number; im: number }[],
  b: number,
  res: number,
  radius: number,
): Route[] {
  const name = (p: { re: number; im: number }): string =>
    `slice_a${p.re}_aim${p.im}_b${b}.pgm`;
  return points.flatMap((p) => [
    {
      path: "/api/slice",
      params: { are: p.re, aim: p.im, b, res, radius },
      body: fixture(name(p)),
      headers: {
        "X-Slice-Metadata": fixture(name(p).replace(".pgm", "_meta.json")),
        "Content-Type": "image/x-portable-graymap",
      },
    },
    {
      path: "/api/classify",
      params: { a: p.re, aim: p.im, b },
      body: fixture(`classify_a${p.re}_aim${p.im}_b${b}.json`),
    },
  ]);
}
