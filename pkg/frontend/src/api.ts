/** Typed client for the compute service.
 *
 * The fetch implementation is injectable so tests can serve recorded
 * responses; the UI itself never computes dynamics — every number it shows
 * comes back through this client.
 */

import {
  decodeCensus,
  decodeClassify,
  decodePathValidation,
  decodeSliceMetadata,
} from "./decode.js";
import { parsePgm, type PgmImage } from "./pgm.js";
import type {
  CensusReport,
  ClassifyResponse,
  ComplexPoint,
  PathDocument,
  PathValidation,
  SliceMetadata,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ServiceError";
  }
}

export interface SliceResult {
  image: PgmImage;
  metadata: SliceMetadata;
}

async function raiseForStatus(response: Response, what: string): Promise<void> {
  if (response.ok) return;
  let detail = "";
  try {
    detail = JSON.stringify((await response.json()).detail ?? "");
  } catch {
    detail = "";
  }
  throw new ServiceError(`${what} failed (${response.status}) ${detail}`, response.status);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private url(path: string, params: Record<string, number>): string {
    const search = new URLSearchParams();
    for (const [key, value] of Object.entries(params)) {
      search.set(key, String(value));
    }
    return `${this.baseUrl}${path}?${search.toString()}`;
  }

  async classify(a: ComplexPoint, b: number): Promise<ClassifyResponse> {
    const response = await this.fetchImpl(
      this.url("/api/classify", { a: a.re, aim: a.im, b }),
    );
    await raiseForStatus(response, "classify");
    return decodeClassify(await response.json());
  }

  async slice(a: ComplexPoint, b: number, res: number, radius: number): Promise<SliceResult> {
    const response = await this.fetchImpl(
      this.url("/api/slice", { are: a.re, aim: a.im, b, res, radius }),
    );
    await raiseForStatus(response, "slice");
    const header = response.headers.get("X-Slice-Metadata");
    if (header === null) throw new ServiceError("slice response lacks metadata header");
    return {
      image: parsePgm(await response.text()),
      metadata: decodeSliceMetadata(JSON.parse(header)),
    };
  }

  async census(
    a: number,
    b: number,
    disk: { N: number; M: number },
    nMax: number,
  ): Promise<CensusReport> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/census`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ a, b, disks: [disk], n_max: nMax }),
    });
    await raiseForStatus(response, "census");
    return decodeCensus(await response.json());
  }

  async validatePath(doc: PathDocument): Promise<PathValidation> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/path/validate`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(doc),
    });
    await raiseForStatus(response, "path validation");
    return decodePathValidation(await response.json());
  }
}
