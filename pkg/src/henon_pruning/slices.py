"""Escape-time rasterization of a complex unstable-manifold slice.

The unstable manifold of the negative-branch saddle is parametrized by
psi(t) = H^{n0}(p + (t / lam^{n0}) v), with lam the expanding multiplier and v
its eigenvector; pushing the linear approximation through n0 iterates makes the
parametrization accurate to O(|t|^2 / lam^{n0}).  Each pixel of a square window
in t records the first iterate at which the orbit escapes (0 = bounded within
the budget).  The computation is a pure function of its metadata, so re-renders
are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .henon import HenonParams, escape_radius, saddle_fixed_point, unstable_eigen


@dataclass(frozen=True)
class SliceConfig:
    resolution: int = 512
    radius: float = 2.0
    center: complex = 0j
    seed_depth: int = 24
    budget: int = 200

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.radius <= 0:
            raise ValueError("window radius must be positive")
        if self.seed_depth < 1 or self.budget < 1:
            raise ValueError("seed depth and budget must be positive")


@dataclass
class SliceImage:
    width: int
    height: int
    center: complex
    radius: float
    counts: np.ndarray  # uint16, 0 = never escaped within budget
    metadata: dict = field(default_factory=dict)

    def escaped_fraction(self) -> float:
        return float(np.count_nonzero(self.counts)) / self.counts.size

    def to_pgm(self) -> bytes:
        meta = self.metadata
        comment = (
            f"# a={meta['a']} b={meta['b']} seed_depth={meta['seed_depth']} "
            f"escape_radius={meta['escape_radius']} budget={meta['budget']} "
            f"center={self.center} radius={self.radius}"
        )
        lines = [f"P2", comment, f"{self.width} {self.height}", str(meta["budget"])]
        for row in self.counts:
            lines.append(" ".join(str(int(v)) for v in row))
        return ("\n".join(lines) + "\n").encode("ascii")


def unstable_slice(a: complex, b: float, cfg: Optional[SliceConfig] = None) -> SliceImage:
    """Render the escape-time image over the square t-window of ``cfg``.

    Row 0 carries the largest imaginary part of t, matching image conventions;
    the slice at conjugate a is therefore the vertical mirror of the slice at a.
    """
    cfg = cfg or SliceConfig()
    p = HenonParams(a, b)
    saddle = saddle_fixed_point(p)
    lam, vec = unstable_eigen(p, saddle)
    radius = escape_radius(p)

    res = cfg.resolution
    axis = np.linspace(-cfg.radius, cfg.radius, res)
    t = (cfg.center.real + axis)[None, :] + 1j * (cfg.center.imag + axis[::-1])[:, None]

    # H^{n0}(p + t lam^-n0 v) with the first n0-r steps taken in closed form
    # (multiplication by lam along the eigendirection): at full depth the
    # offset t/lam^n0 would sink below the float noise around the saddle and
    # the orbit would leave the manifold in a random direction.
    pixel = 2 * cfg.radius / (res - 1)
    noise_floor = 200 * np.finfo(float).eps * max(abs(saddle[0]), 1.0)
    depth = math.floor(math.log(pixel / noise_floor) / math.log(abs(lam)))
    depth = max(1, min(cfg.seed_depth, depth))
    scale = t.ravel() / lam**depth
    zx = saddle[0] + scale * vec[0]
    zy = saddle[1] + scale * vec[1]

    counts = np.zeros(res * res, dtype=np.uint16)
    active = np.ones(res * res, dtype=bool)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(depth):
            zx, zy = p.a - zx * zx - p.b * zy, zx
        for k in range(1, cfg.budget + 1):
            nx = p.a - zx[active] * zx[active] - p.b * zy[active]
            zy[active] = zx[active]
            zx[active] = nx
            axs = np.abs(zx[active])
            escaped = ~np.isfinite(axs) | ((axs > radius) & (axs >= np.abs(zy[active])))
            if escaped.any():
                (indices,) = np.nonzero(active)
                hit = indices[escaped]
                counts[hit] = k
                active[hit] = False
            if not active.any():
                break

    return SliceImage(
        width=res,
        height=res,
        center=cfg.center,
        radius=cfg.radius,
        counts=counts.reshape(res, res),
        metadata={
            "a": complex(a),
            "b": float(b),
            "seed_depth": cfg.seed_depth,
            "escape_radius": radius,
            "budget": cfg.budget,
        },
    )
