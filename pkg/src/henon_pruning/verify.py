"""Cross-validation of the Henon orbit census against subshift predictions.

For conjugacy-backed parameters the number of period-n points of the map must
equal the number of sigma^n-fixed sequences of the pruned subshift, and the
lost seed necklaces must be exactly the inadmissible ones.  Presets bundle the
parameter/disk pairings: two conjugacy-backed pairs that must MATCH and four
conjectural pairs whose outcomes are recorded verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .codes import Word
from .henon import (
    CodingAmbiguityError,
    ContinuationConfig,
    HenonParams,
    binary_necklaces,
    find_periodic_orbits,
)
from .sft import PruningParams, Sft, full_shift, sft_build


@dataclass
class CensusRow:
    n: int
    predicted: int
    observed: Optional[int]
    lost: list[str]
    match: Optional[bool]  # None when the row could not be verified

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "predicted": self.predicted,
            "observed": self.observed,
            "lost": self.lost,
            "match": self.match,
        }


@dataclass
class CensusReport:
    a: float
    b: float
    disks: list[PruningParams]
    rows: list[CensusRow]
    verdict: str  # MATCH | MISMATCH | UNVERIFIED
    provenance: Optional[str] = None
    name: Optional[str] = None

    def to_json(self) -> dict:
        return {
            **({"name": self.name} if self.name else {}),
            "params": {"a": self.a, "b": self.b},
            "disks": [{"N": p.N, "M": p.M} for p in self.disks],
            **({"provenance": self.provenance} if self.provenance else {}),
            "rows": [r.to_json() for r in self.rows],
            "verdict": self.verdict,
        }


def _shift_sft(disks: Sequence[PruningParams]) -> Sft:
    return sft_build(list(disks)) if disks else full_shift()


def _canonical(word: Word) -> Word:
    return min(word[k:] + word[:k] for k in range(len(word)))


def census_vs_sft(
    a: float,
    b: float,
    disks: Sequence[PruningParams],
    n_max: int,
    cont: Optional[ContinuationConfig] = None,
) -> CensusReport:
    """Compare predicted and observed periodic censuses for n = 1 .. n_max.

    A row matches when the alive point count equals the subshift count and the
    alive itinerary set is exactly the admissible necklace set (equivalently,
    the lost set is exactly the inadmissible one).  Numerical failures mark a
    row unverifiable instead of mismatched.
    """
    if not 1 <= n_max <= 10:
        raise ValueError("n_max must be between 1 and 10")
    sft = _shift_sft(disks)
    params = HenonParams(a, b)
    rows: list[CensusRow] = []
    for n in range(1, n_max + 1):
        predicted = sft.count_periodic(n)
        admissible = {
            w
            for w in binary_necklaces(n)
            if sft.admits_word(w)
        }
        try:
            records = find_periodic_orbits(params, n, cont)
            observed = sum(
                r.primitive_period for r in records if r.status == "alive"
            )
            alive_set = {
                _canonical(tuple(r.itinerary.realized() * (n // r.itinerary.period)))
                for r in records
                if r.status == "alive"
            }
            lost = sorted(
                "".join(map(str, r.necklace)) for r in records if r.status == "lost"
            )
            match = observed == predicted and alive_set == admissible
        except (CodingAmbiguityError, FloatingPointError):
            observed, lost, match = None, [], None
        rows.append(CensusRow(n, predicted, observed, lost, match))
    if any(r.match is False for r in rows):
        verdict = "MISMATCH"
    elif any(r.match is None for r in rows):
        verdict = "UNVERIFIED"
    else:
        verdict = "MATCH"
    return CensusReport(float(a), float(b), list(disks), rows, verdict)


@dataclass(frozen=True)
class Preset:
    name: str
    a: float
    b: float
    disks: tuple[PruningParams, ...]
    provenance: str  # "conjugacy" | "conjectural"


THEOREM_PRESETS = (
    Preset("I1-mid", 5.4, 1.0, (PruningParams(2, 2),), "conjugacy"),
    Preset("I2-mid", 2.25, 0.25, (PruningParams(0, 2),), "conjugacy"),
)

SECTION5_PRESETS = (
    Preset("S5-a", 3.5, 0.55, (PruningParams(2, 3),), "conjectural"),
    Preset("S5-b", 2.766, 0.4, (PruningParams(0, 3), PruningParams(1, 2)), "conjectural"),
    Preset("S5-c", 2.887, 0.4, (PruningParams(1, 3), PruningParams(2, 2)), "conjectural"),
    Preset("S5-d", 2.345, 0.19, (PruningParams(0, 3),), "conjectural"),
)


def preset_suite(
    name: str, n_max: int = 8, cont: Optional[ContinuationConfig] = None
) -> list[CensusReport]:
    """Run the bundled parameter/disk pairings.

    ``theorem`` presets are acceptance-blocking (expected to MATCH);
    ``section5`` presets are informational and merely record their outcome.
    """
    if name == "theorem":
        presets = THEOREM_PRESETS
    elif name == "section5":
        presets = SECTION5_PRESETS
    elif name == "all":
        presets = THEOREM_PRESETS + SECTION5_PRESETS
    else:
        raise ValueError(f"unknown preset suite {name!r}")
    reports = []
    for preset in presets:
        report = census_vs_sft(preset.a, preset.b, preset.disks, n_max, cont)
        report.provenance = preset.provenance
        report.name = preset.name
        reports.append(report)
    return reports
