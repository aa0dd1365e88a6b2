"""Exact symbol-square verification of the pruning-disk conditions.

A disk is represented by its boundary arcs in the symbol square: a stable arc
(one or two vertical leaf segments, folded across the top side v=1) and an
unstable arc (one or two horizontal segments, folded across the right side
u=1).  Forward images of stable segments and backward images of unstable
segments stay straight; the single initial fold straightens after one step,
when the two segments land on a common leaf and merge.  Every sweep therefore
terminates once the driving codes reach 0^inf, and all interval tests are done
with exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

from .codes import (
    HomoclinicCode,
    OneSidedCode,
    gray_value,
)
from .sft import PruningParams

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)

Side = Literal["u=0", "u=1", "v=0", "v=1"]
Kind = Literal["stable", "unstable"]


class UnsupportedDiskError(ValueError):
    """Homoclinic pair that does not bound a single-fold disk."""


@dataclass(frozen=True)
class LeafSegment:
    """A leaf segment: vertical (stable) or horizontal (unstable).

    ``leaf_code`` is the forward code for stable segments, the backward code
    for unstable ones; ``lo``/``hi`` bound the closed transverse extent.
    """

    kind: Kind
    leaf_code: OneSidedCode
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty transverse extent")

    @property
    def leaf(self) -> Fraction:
        return gray_value(self.leaf_code)

    @property
    def extent(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class Fold:
    """A fold link between two consecutive segments of an arc chain."""

    side: Optional[Side]
    span: tuple[Fraction, Fraction]


@dataclass
class ArcChain:
    """Ordered leaf segments of one kind, consecutive ones joined by folds."""

    kind: Kind
    segments: list[LeafSegment]
    folds: list[Fold] = field(default_factory=list)

    def __post_init__(self):
        if any(s.kind != self.kind for s in self.segments):
            raise ValueError("mixed segment kinds in one chain")
        if len(self.folds) != max(len(self.segments) - 1, 0):
            raise ValueError("need exactly one fold between consecutive segments")


@dataclass(frozen=True)
class Rectangle:
    """Open rectangle with one optional closed (cap) side crossing a square edge."""

    u_lo: Fraction
    u_hi: Fraction
    v_lo: Fraction
    v_hi: Fraction
    cap_side: Optional[Side] = None

    def contains_u(self, u: Fraction) -> bool:
        if self.cap_side == "u=1":
            return self.u_lo < u <= self.u_hi
        if self.cap_side == "u=0":
            return self.u_lo <= u < self.u_hi
        return self.u_lo < u < self.u_hi

    def contains_v(self, v: Fraction) -> bool:
        if self.cap_side == "v=1":
            return self.v_lo < v <= self.v_hi
        if self.cap_side == "v=0":
            return self.v_lo <= v < self.v_hi
        return self.v_lo < v < self.v_hi

    def meets_u_interval(self, lo: Fraction, hi: Fraction) -> bool:
        """Does the closed interval [lo, hi] meet the (cap-aware) u-range?"""
        upper_ok = lo <= self.u_hi if self.cap_side == "u=1" else lo < self.u_hi
        lower_ok = hi >= self.u_lo if self.cap_side == "u=0" else hi > self.u_lo
        return upper_ok and lower_ok

    def meets_v_interval(self, lo: Fraction, hi: Fraction) -> bool:
        upper_ok = lo <= self.v_hi if self.cap_side == "v=1" else lo < self.v_hi
        lower_ok = hi >= self.v_lo if self.cap_side == "v=0" else hi > self.v_lo
        return upper_ok and lower_ok


@dataclass(frozen=True)
class PruningDisk:
    corners: tuple[HomoclinicCode, HomoclinicCode]
    stable_arc: ArcChain
    unstable_arc: ArcChain
    region: Rectangle
    params: Optional[PruningParams] = None

    def label(self) -> str:
        if self.params is not None:
            return f"D_{{{self.params.N},{self.params.M}}}"
        return f"disk[{self.corners[0]}, {self.corners[1]}]"


@dataclass(frozen=True)
class Witness:
    direction: Literal["forward", "backward"]
    step: int
    leaf: Fraction
    extent: tuple[Fraction, Fraction]


@dataclass
class Certificate:
    verdict: Literal["PASS", "FAIL", "INDETERMINATE"]
    n_trap_forward: Optional[int]
    n_trap_backward: Optional[int]
    witness: Optional[Witness]
    diameters_forward: list[Fraction]
    diameters_backward: list[Fraction]
    near_misses: list[Witness]

    def to_json(self) -> dict:
        def frac(x):
            return str(x)

        def wit(w: Optional[Witness]):
            if w is None:
                return None
            return {
                "direction": w.direction,
                "n": w.step,
                "leaf": frac(w.leaf),
                "extent": [frac(w.extent[0]), frac(w.extent[1])],
            }

        return {
            "verdict": self.verdict,
            "n_trap_forward": self.n_trap_forward,
            "n_trap_backward": self.n_trap_backward,
            "witness": wit(self.witness),
            "near_misses": [wit(w) for w in self.near_misses],
            "diameters": {
                "forward": [frac(d) for d in self.diameters_forward],
                "backward": [frac(d) for d in self.diameters_backward],
            },
        }


def _corner_words(p: PruningParams) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Left word shared by both corners, and the two right words.

    For N, M >= 1 these are the standard corner codes 110^{N-1}1 . (1|0)10^{M-1}11;
    the degenerate N=0 / M=0 words are the limits whose gray values land on the
    rectangle dyadics (the overlapping-block reading of 0^{-1}).
    """
    left = (1, 1) + (0,) * (p.N - 1) + (1,) if p.N >= 1 else (1, 1)
    if p.M >= 1:
        right_hi = (1, 1) + (0,) * (p.M - 1) + (1, 1)
    else:
        right_hi = (1, 1, 1)
    right_lo = (0,) + right_hi[1:]
    return left, right_hi, right_lo


def disk_from_params(p: PruningParams) -> PruningDisk:
    """The disk containing the blocks 0^N 1.010^M and 0^N 1.110^M.

    Produced even for the four excluded parameter pairs, so the checker can
    demonstrate their failure.
    """
    u_half = Fraction(1, 2 ** (p.M + 2))
    rect = Rectangle(
        u_lo=HALF - u_half,
        u_hi=HALF + u_half,
        v_lo=ONE - Fraction(1, 2 ** (p.N + 1)),
        v_hi=ONE,
        cap_side="v=1",
    )
    left, right_hi, right_lo = _corner_words(p)
    p0 = HomoclinicCode(left, right_hi)
    p1 = HomoclinicCode(left, right_lo)
    v_corner = gray_value(p0.backward)
    assert v_corner == rect.v_lo
    assert gray_value(p0.forward) == rect.u_hi
    assert gray_value(p1.forward) == rect.u_lo
    stable = ArcChain(
        kind="stable",
        segments=[
            LeafSegment("stable", p0.forward, v_corner, ONE),
            LeafSegment("stable", p1.forward, v_corner, ONE),
        ],
        folds=[Fold("v=1", (rect.u_lo, rect.u_hi))],
    )
    unstable = ArcChain(
        kind="unstable",
        segments=[LeafSegment("unstable", p0.backward, rect.u_lo, rect.u_hi)],
    )
    return PruningDisk((p0, p1), stable, unstable, rect, params=p)


def disk_from_homoclinic_pair(p0: HomoclinicCode, p1: HomoclinicCode) -> PruningDisk:
    """Disk bounded by the leaves of two homoclinic points.

    The points must share one side of their code; the other side must differ
    only in its first symbol (a single-fold boundary, which straightens after
    one iterate).
    """
    if p0 == p1:
        raise UnsupportedDiskError("degenerate disk: identical corner codes")
    if p0.forward == p1.forward:
        # straight stable arc; unstable arc folds across u=1
        b0, b1 = p0.backward, p1.backward
        if b0.shift_left() != b1.shift_left():
            raise UnsupportedDiskError(
                "backward codes differ beyond the first symbol; boundary would need more than one fold"
            )
        u_c = gray_value(p0.forward)
        v0, v1 = gray_value(b0), gray_value(b1)
        v_lo, v_hi = min(v0, v1), max(v0, v1)
        rect = Rectangle(u_lo=u_c, u_hi=ONE, v_lo=v_lo, v_hi=v_hi, cap_side="u=1")
        stable = ArcChain(
            "stable", [LeafSegment("stable", p0.forward, v_lo, v_hi)]
        )
        unstable = ArcChain(
            "unstable",
            [
                LeafSegment("unstable", b0, u_c, ONE),
                LeafSegment("unstable", b1, u_c, ONE),
            ],
            [Fold("u=1", (v_lo, v_hi))],
        )
        return PruningDisk((p0, p1), stable, unstable, rect)
    if p0.backward == p1.backward:
        f0, f1 = p0.forward, p1.forward
        if f0.shift_left() != f1.shift_left():
            raise UnsupportedDiskError(
                "forward codes differ beyond the first symbol; boundary would need more than one fold"
            )
        v_e = gray_value(p0.backward)
        u0, u1 = gray_value(f0), gray_value(f1)
        u_lo, u_hi = min(u0, u1), max(u0, u1)
        rect = Rectangle(u_lo=u_lo, u_hi=u_hi, v_lo=v_e, v_hi=ONE, cap_side="v=1")
        stable = ArcChain(
            "stable",
            [
                LeafSegment("stable", f0, v_e, ONE),
                LeafSegment("stable", f1, v_e, ONE),
            ],
            [Fold("v=1", (u_lo, u_hi))],
        )
        unstable = ArcChain(
            "unstable", [LeafSegment("unstable", p0.backward, u_lo, u_hi)]
        )
        return PruningDisk((p0, p1), stable, unstable, rect)
    raise UnsupportedDiskError("corner codes share neither forward nor backward code")


def _step_segment(seg: LeafSegment) -> LeafSegment:
    """One sweep step: shift the driving code, halve the transverse extent
    into the half selected by the consumed symbol (reversed for symbol 1)."""
    consumed = seg.leaf_code.symbol(0)
    code = seg.leaf_code.shift_left()
    if consumed == 0:
        lo, hi = seg.lo / 2, seg.hi / 2
    else:
        lo, hi = 1 - seg.hi / 2, 1 - seg.lo / 2
    return LeafSegment(seg.kind, code, lo, hi)


def _merge(chain: ArcChain) -> ArcChain:
    """Merge consecutive fold-linked segments that landed on a common leaf."""
    segments = list(chain.segments)
    folds = list(chain.folds)
    i = 0
    while i < len(folds):
        a, b = segments[i], segments[i + 1]
        if a.leaf_code == b.leaf_code and not (a.hi < b.lo or b.hi < a.lo):
            segments[i : i + 2] = [
                LeafSegment(a.kind, a.leaf_code, min(a.lo, b.lo), max(a.hi, b.hi))
            ]
            del folds[i]
        else:
            i += 1
    return ArcChain(chain.kind, segments, folds)


def _hit(seg: LeafSegment, rect: Rectangle) -> bool:
    if seg.kind == "stable":
        return rect.contains_u(seg.leaf) and rect.meets_v_interval(seg.lo, seg.hi)
    return rect.contains_v(seg.leaf) and rect.meets_u_interval(seg.lo, seg.hi)


def _near_miss(seg: LeafSegment, rect: Rectangle) -> bool:
    if seg.kind == "stable":
        return rect.contains_u(seg.leaf) and not rect.meets_v_interval(seg.lo, seg.hi)
    return rect.contains_v(seg.leaf) and not rect.meets_u_interval(seg.lo, seg.hi)


def _sweep(
    chain: ArcChain,
    rect: Rectangle,
    direction: Literal["forward", "backward"],
    horizon: int,
):
    """Iterate an arc chain, testing intersection with the region each step.

    Returns (trap_step, witness, diameters, near_misses, indeterminate_fold).
    """
    diameters: list[Fraction] = []
    near_misses: list[Witness] = []
    step = 0
    while not all(s.leaf_code.is_zero for s in chain.segments):
        step += 1
        if step > horizon:
            raise ValueError(
                f"horizon {horizon} too small: {direction} sweep not yet trapped"
            )
        chain = ArcChain(
            chain.kind, [_step_segment(s) for s in chain.segments], chain.folds
        )
        chain = _merge(chain)
        diameters.append(max(s.extent for s in chain.segments))
        for fold in chain.folds:
            # residual unstraightened fold: conservative refusal when it could
            # nest against the disk's own cap, otherwise the sweep is unsound
            lo, hi = fold.span
            cap_lo, cap_hi = (
                (rect.u_lo, rect.u_hi)
                if rect.cap_side in ("v=0", "v=1")
                else (rect.v_lo, rect.v_hi)
            )
            if fold.side == rect.cap_side and cap_lo < lo and hi < cap_hi:
                return step, None, diameters, near_misses, fold
            raise UnsupportedDiskError(
                f"fold did not straighten at {direction} step {step}"
            )
        for seg in chain.segments:
            if _hit(seg, rect):
                return (
                    None,
                    Witness(direction, step, seg.leaf, (seg.lo, seg.hi)),
                    diameters,
                    near_misses,
                    None,
                )
            if _near_miss(seg, rect):
                near_misses.append(
                    Witness(direction, step, seg.leaf, (seg.lo, seg.hi))
                )
    return step, None, diameters, near_misses, None


def check_pruning_conditions(disk: PruningDisk, horizon: Optional[int] = None) -> Certificate:
    """Certify F^n(C) and F^-n(E) disjoint from the disk for all n >= 1.

    The sweep is finite: both driving codes reach 0^inf within the support
    length, pinning the leaf coordinate at 0, which never meets the region.
    """
    support = max(c.support() for c in disk.corners)
    if horizon is None:
        horizon = support + 4
    if horizon < support:
        raise ValueError(f"horizon must be at least the corner support {support}")

    trap_f, wit_f, diam_f, near_f, fold_f = _sweep(
        disk.stable_arc, disk.region, "forward", horizon
    )
    if wit_f is not None:
        return Certificate("FAIL", None, None, wit_f, diam_f, [], near_f)
    if fold_f is not None:
        return Certificate("INDETERMINATE", None, None, None, diam_f, [], near_f)

    trap_b, wit_b, diam_b, near_b, fold_b = _sweep(
        disk.unstable_arc, disk.region, "backward", horizon
    )
    if wit_b is not None:
        return Certificate(
            "FAIL", trap_f, None, wit_b, diam_f, diam_b, near_f + near_b
        )
    if fold_b is not None:
        return Certificate(
            "INDETERMINATE", trap_f, None, None, diam_f, diam_b, near_f + near_b
        )
    return Certificate(
        "PASS", trap_f, trap_b, None, diam_f, diam_b, near_f + near_b
    )
