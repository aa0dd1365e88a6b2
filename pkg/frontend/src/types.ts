/** Shared data shapes mirroring the service's JSON payloads. */

export interface ComplexPoint {
  re: number;
  im: number;
}

/** The portable path format: a parameter path at fixed b. */
export interface PathDocument {
  b: number;
  points: ComplexPoint[];
  created: string;
}

export interface RegionFlags {
  inDN: boolean;
  inEMP: boolean;
  inHOV: boolean;
  inI1: boolean;
  inI2: boolean;
}

export interface ClassifyResponse extends RegionFlags {
  a: number;
  aim: number;
  b: number;
}

export interface CensusRow {
  n: number;
  predicted: number;
  observed: number | null;
  lost: string[];
  match: boolean | null;
}

export interface CensusReport {
  params: { a: number; b: number };
  disks: { N: number; M: number }[];
  rows: CensusRow[];
  verdict: string;
}

export interface PathPointReport extends RegionFlags {
  a: ComplexPoint;
  nonescaping_fraction: number;
}

export interface PathSegmentReport {
  from: number;
  to: number;
  delta: number;
  ok: boolean;
}

export interface PathValidation {
  valid: boolean;
  endpoint_dn: boolean;
  step_budget: number;
  points: PathPointReport[];
  segments: PathSegmentReport[];
}

export interface SliceMetadata {
  are: number;
  aim: number;
  b: number;
  res: number;
  radius: number;
}
