"""Floating-point cross-check of the disk conditions in an explicit plane model.

The model is a piecewise map of Q = [-1,1]^2: two affine hyperbolic branches on
the outer vertical strips (horizontal expansion 4, vertical contraction 1/5,
upper branch orientation-reversing) and a middle-strip fold bending the square
around the point (1, 0).  Stable leaves are vertical segments x = const and
unstable leaves horizontal segments y = const; leaf positions are finite sums
determined by the itinerary, so the disk boundary is built exactly and the
sweep is driven by the same codes as the exact checker.  Segments linked by the
boundary fold land on one leaf after a single step and are merged across the
code-free middle strip (resp. middle band), the plane counterpart of the
symbolic merge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np
from shapely.geometry import LineString, Polygon, box

from .codes import OneSidedCode
from .disks import PruningDisk

LAMBDA = 4.0
MU = 0.2
#: how far the disk polygon extends past the square edge on its cap side
CAP_DEPTH = 0.08
#: margin turning closed polygon tests into open-region tests
EPS = 1e-9


def clamp(y: float) -> float:
    """Bounded increasing odd extension of the identity on [-1, 1]."""
    if -1.0 <= y <= 1.0:
        return y
    return math.copysign(2.0 - 1.0 / abs(y), y)


def fold_radius(y: float) -> float:
    return 1.0 - MU * (1.0 + clamp(y))


def plane_map(x: float, y: float) -> tuple[float, float]:
    """The piecewise model map on the strip |x| <= 1 (any y, clamped)."""
    if x < -1.0 or x > 1.0:
        raise ValueError(f"x={x} outside the map's validity strip")
    if x <= -0.5:
        return LAMBDA * (x + 1.0) - 1.0, MU * (y + 1.0) - 1.0
    if x >= 0.5:
        return LAMBDA * (1.0 - x) - 1.0, 1.0 - MU * (y + 1.0)
    t = x + 0.5
    r = fold_radius(y)
    return 1.0 + r * math.sin(math.pi * t), -r * math.cos(math.pi * t)


def _branch_inverse_x(s: int, x: float) -> float:
    """Horizontal inverse of outer branch s (contraction into its strip)."""
    return (x + 1.0) / LAMBDA - 1.0 if s == 0 else 1.0 - (x + 1.0) / LAMBDA


def _branch_y(s: int, y: float) -> float:
    """Vertical action of outer branch s (contraction into its band)."""
    return MU * (y + 1.0) - 1.0 if s == 0 else 1.0 - MU * (y + 1.0)


def stable_abscissa(code: OneSidedCode) -> float:
    """x-position of the vertical leaf with the given forward itinerary."""
    if not code.eventually_zero:
        raise ValueError("plane leaf positions need eventually-zero codes")
    x = -1.0  # the 0^inf tail sits on the saddle leaf
    for s in reversed(code.head):
        x = _branch_inverse_x(s, x)
    return x


def unstable_ordinate(code: OneSidedCode) -> float:
    """y-position of the horizontal leaf with the given backward itinerary."""
    if not code.eventually_zero:
        raise ValueError("plane leaf positions need eventually-zero codes")
    y = -1.0
    for s in reversed(code.head):
        y = _branch_y(s, y)
    return y


@dataclass(frozen=True)
class OracleStep:
    direction: Literal["forward", "backward"]
    step: int
    min_distance: float
    hit: bool


@dataclass
class OracleReport:
    verdict: Literal["PASS", "FAIL"]
    steps: list[OracleStep]
    witness: Optional[OracleStep]
    truncated: bool
    depth: int
    resolution: int


@dataclass
class _Segment:
    code: OneSidedCode
    lo: float
    hi: float


def _disk_polygon(disk: PruningDisk) -> Polygon:
    p0, p1 = disk.corners
    if disk.region.cap_side == "v=1":
        x_hi = stable_abscissa(p0.forward)
        x_lo = stable_abscissa(p1.forward)
        y_lo = unstable_ordinate(p0.backward)
        return box(min(x_lo, x_hi), y_lo, max(x_lo, x_hi), 1.0 + CAP_DEPTH)
    if disk.region.cap_side == "u=1":
        x_lo = stable_abscissa(p0.forward)
        y0 = unstable_ordinate(p0.backward)
        y1 = unstable_ordinate(p1.backward)
        return box(x_lo, min(y0, y1), 1.0 + CAP_DEPTH, max(y0, y1))
    raise ValueError(f"unsupported cap side {disk.region.cap_side!r}")


def _initial_stable(disk: PruningDisk) -> list[_Segment]:
    p0, p1 = disk.corners
    if disk.region.cap_side == "v=1":
        # two leaves from the corners up to the square edge, fold above it
        return [
            _Segment(p0.forward, unstable_ordinate(p0.backward), 1.0),
            _Segment(p1.forward, unstable_ordinate(p1.backward), 1.0),
        ]
    y0 = unstable_ordinate(p0.backward)
    y1 = unstable_ordinate(p1.backward)
    return [_Segment(p0.forward, min(y0, y1), max(y0, y1))]


def _initial_unstable(disk: PruningDisk) -> list[_Segment]:
    p0, p1 = disk.corners
    if disk.region.cap_side == "u=1":
        x_lo = stable_abscissa(p0.forward)
        return [
            _Segment(p0.backward, x_lo, 1.0),
            _Segment(p1.backward, x_lo, 1.0),
        ]
    x0 = stable_abscissa(p0.forward)
    x1 = stable_abscissa(p1.forward)
    return [_Segment(p0.backward, min(x0, x1), max(x0, x1))]


def _merge(segments: list[_Segment]) -> list[_Segment]:
    """Fold-linked segments land on one leaf after one step; join them across
    the code-free middle strip/band that separates their transverse extents."""
    if len(segments) == 2 and segments[0].code == segments[1].code:
        a, b = segments
        return [_Segment(a.code, min(a.lo, b.lo), max(a.hi, b.hi))]
    return segments


def _polyline(seg: _Segment, kind: str, resolution: int) -> LineString:
    ts = np.linspace(seg.lo, seg.hi, resolution)
    if kind == "stable":
        x = stable_abscissa(seg.code)
        return LineString(np.column_stack([np.full(resolution, x), ts]))
    y = unstable_ordinate(seg.code)
    return LineString(np.column_stack([ts, np.full(resolution, y)]))


def _sweep(
    segments: list[_Segment],
    kind: Literal["stable", "unstable"],
    polygon: Polygon,
    interior: Polygon,
    direction: Literal["forward", "backward"],
    depth: int,
    resolution: int,
) -> tuple[list[OracleStep], Optional[OracleStep]]:
    steps: list[OracleStep] = []
    for n in range(1, depth + 1):
        if all(s.code.is_zero for s in segments):
            break
        stepped = []
        for seg in segments:
            s0 = seg.code.symbol(0)
            code = seg.code.shift_left()
            if kind == "stable":
                a, b = _branch_y(s0, seg.lo), _branch_y(s0, seg.hi)
            else:
                a, b = _branch_inverse_x(s0, seg.lo), _branch_inverse_x(s0, seg.hi)
            stepped.append(_Segment(code, min(a, b), max(a, b)))
        segments = _merge(stepped)
        lines = [_polyline(s, kind, resolution) for s in segments]
        distance = min(line.distance(polygon) for line in lines)
        hit = any(line.intersects(interior) for line in lines)
        record = OracleStep(direction, n, distance, hit)
        steps.append(record)
        if hit:
            return steps, record
    return steps, None


def oracle_check(disk: PruningDisk, depth: int = 6, resolution: int = 128) -> OracleReport:
    """Rebuild the disk and its boundary sweeps in the plane model and test
    intersection with the disk polygon step by step.

    ``depth`` is capped at 8: vertical extents shrink by 1/5 per step, and past
    that the float geometry carries no information.  The polygon extends past
    the square edge on the disk's cap side, so edge slices over the open span
    count as inside, like in the exact checker.
    """
    if not 1 <= depth <= 8:
        raise ValueError("depth must be between 1 and 8")
    if resolution < 64:
        raise ValueError("resolution must be at least 64 points per arc")
    polygon = _disk_polygon(disk)
    interior = polygon.buffer(-EPS)
    truncated = max(c.support() for c in disk.corners) > depth

    fwd_steps, fwd_hit = _sweep(
        _initial_stable(disk), "stable", polygon, interior, "forward", depth, resolution
    )
    if fwd_hit is not None:
        return OracleReport("FAIL", fwd_steps, fwd_hit, truncated, depth, resolution)
    bwd_steps, bwd_hit = _sweep(
        _initial_unstable(disk), "unstable", polygon, interior, "backward", depth, resolution
    )
    steps = fwd_steps + bwd_steps
    if bwd_hit is not None:
        return OracleReport("FAIL", steps, bwd_hit, truncated, depth, resolution)
    return OracleReport("PASS", steps, None, truncated, depth, resolution)
