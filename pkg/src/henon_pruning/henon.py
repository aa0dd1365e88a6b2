"""Henon-map numerics: parameter regions, orbit census, symbolic itineraries.

The map is H(x, y) = (a - x^2 - b y, x).  Periodic orbits are found by
anti-integrable continuation: each binary necklace seeds a sign pattern
x_i = +/- sqrt(a_start) solving the cyclic relation x_{i+1} = a - x_i^2 -
b x_{i-1} at large a, and Newton iteration follows the root as a is lowered to
the target.  Orbits that stop converging or collide with another orbit are
marked lost at that parameter; the lost itineraries are data, not errors.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .codes import PeriodicCode, Word, _primitive_root

#: a > DN_COEFF * (1+|b|)^2 / 4 guarantees a real horseshoe
DN_COEFF = 5 + 2 * math.sqrt(5)

I1_SPAN = (5.3125, 5.46875)  # at b = 1
I2_SPAN = (2.21875, 2.296875)  # at b = 0.25


class CodingAmbiguityError(ValueError):
    """An orbit point sits inside the sign dead-band around x = 0."""

    def __init__(self, point, dead_band):
        super().__init__(
            f"orbit point {point} has |x| < {dead_band}; itinerary symbol undefined"
        )
        self.point = point


@dataclass(frozen=True)
class HenonParams:
    a: complex
    b: float

    def __post_init__(self):
        if self.b == 0:
            raise ValueError("b must be non-zero (the map must be invertible)")
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def is_real(self) -> bool:
        return self.a.imag == 0

    @property
    def in_dn(self) -> bool:
        """Real-horseshoe region: a > (5+2*sqrt(5))(1+|b|)^2/4."""
        return self.is_real and self.a.real > DN_COEFF * (1 + abs(self.b)) ** 2 / 4

    @property
    def in_emp(self) -> bool:
        """Empty bounded-orbit set: a < -(1+|b|)^2/4."""
        return self.is_real and self.a.real < -((1 + abs(self.b)) ** 2) / 4

    @property
    def in_hov(self) -> bool:
        """Complex-horseshoe region: |a| > 2(1+|b|)^2."""
        return abs(self.a) > 2 * (1 + abs(self.b)) ** 2

    @property
    def in_i1(self) -> bool:
        return self.is_real and self.b == 1 and I1_SPAN[0] <= self.a.real <= I1_SPAN[1]

    @property
    def in_i2(self) -> bool:
        return (
            self.is_real and self.b == 0.25 and I2_SPAN[0] <= self.a.real <= I2_SPAN[1]
        )

    def flags(self) -> dict:
        return {
            "inDN": self.in_dn,
            "inEMP": self.in_emp,
            "inHOV": self.in_hov,
            "inI1": self.in_i1,
            "inI2": self.in_i2,
        }


def classify(a: float, b: float) -> HenonParams:
    return HenonParams(a, b)


def henon_step(p: HenonParams, z: tuple) -> tuple:
    x, y = z
    return p.a - x * x - p.b * y, x


def henon_inverse(p: HenonParams, z: tuple) -> tuple:
    x, y = z
    return y, (p.a - y * y - x) / p.b


def fixed_points(p: HenonParams) -> tuple[complex, complex]:
    """x-coordinates (x_minus, x_plus) of the two fixed points."""
    disc = (1 + p.b) ** 2 + 4 * p.a
    root = cmath.sqrt(disc)
    return (-(1 + p.b) - root) / 2, (-(1 + p.b) + root) / 2


def saddle_fixed_point(p: HenonParams) -> tuple[complex, complex]:
    """The fixed point carrying the all-zeros itinerary (negative-x branch)."""
    x = fixed_points(p)[0]
    return x, x


def jacobian(p: HenonParams, z: tuple) -> np.ndarray:
    x, _ = z
    return np.array([[-2 * x, -p.b], [1, 0]], dtype=complex)


def unstable_eigen(p: HenonParams, z: tuple) -> tuple[complex, tuple[complex, complex]]:
    """Expanding multiplier and eigenvector (lam, 1) of the Jacobian at z."""
    x, _ = z
    disc = cmath.sqrt(x * x - p.b)
    lam_a, lam_b = -x + disc, -x - disc
    lam = lam_a if abs(lam_a) >= abs(lam_b) else lam_b
    if abs(lam) <= 1 or disc == 0:
        raise ValueError(f"degenerate eigenstructure at {z}: multiplier {lam}")
    return lam, (lam, 1.0 + 0j)


def escape_radius(p: HenonParams) -> float:
    one_b = 1 + abs(p.b)
    return (one_b + math.sqrt(one_b**2 + 4 * abs(p.a))) / 2


def is_escaped(p: HenonParams, z: tuple) -> bool:
    x, y = z
    radius = escape_radius(p)
    return abs(x) > radius and abs(x) >= abs(y)


# --- orbit census ---------------------------------------------------------------

@dataclass
class ContinuationConfig:
    a_start: Optional[float] = None
    steps: int = 160
    root_tol: float = 1e-12
    dedup_tol: float = 1e-6
    dead_band: float = 1e-9
    newton_max_iter: int = 40

    def start_value(self, p: HenonParams) -> float:
        base = self.a_start
        if base is None:
            base = max(DN_COEFF * (1 + abs(p.b)) ** 2 / 4, 3 * (1 + abs(p.b)) ** 2)
        return max(base, p.a.real)


@dataclass
class OrbitRecord:
    necklace: Word  # length-n seed, canonical rotation (may be non-primitive)
    period: int
    points: list[tuple[float, float]]
    residual: float
    itinerary: PeriodicCode
    stability: float
    status: str  # "alive" | "lost"
    a_loss: Optional[float] = None

    @property
    def primitive_period(self) -> int:
        return len(_primitive_root(self.necklace))

    def to_json(self) -> dict:
        return {
            "necklace": "".join(map(str, self.necklace)),
            "period": self.period,
            "status": self.status,
            **({"a_loss": self.a_loss} if self.status == "lost" else {}),
            "residual": self.residual,
            "multiplier": self.stability,
            "itinerary": str(self.itinerary),
        }


def binary_necklaces(n: int) -> list[Word]:
    """All binary necklaces of length n (canonical = least rotation)."""
    seen = set()
    out = []
    for bits in range(2**n):
        word = tuple((bits >> (n - 1 - k)) & 1 for k in range(n))
        canon = min(word[k:] + word[:k] for k in range(n))
        if canon not in seen:
            seen.add(canon)
            out.append(canon)
    return sorted(out)


def _residual(xs: np.ndarray, a: float, b: float) -> np.ndarray:
    return np.roll(xs, -1) - a + xs * xs + b * np.roll(xs, 1)


def _newton(xs: np.ndarray, a: float, b: float, tol: float, max_iter: int):
    n = len(xs)
    idx = np.arange(n)
    for _ in range(max_iter):
        r = _residual(xs, a, b)
        if not np.all(np.isfinite(r)):
            return xs, False
        if np.max(np.abs(r)) < tol:
            return xs, True
        jac = np.zeros((n, n))
        jac[idx, (idx + 1) % n] += 1.0
        jac[idx, idx] += 2.0 * xs
        jac[idx, (idx - 1) % n] += b
        try:
            delta = np.linalg.solve(jac, r)
        except np.linalg.LinAlgError:
            return xs, False
        if not np.all(np.isfinite(delta)) or np.max(np.abs(delta)) > 1e3:
            return xs, False
        xs = xs - delta
    return xs, False


def _cyclic_close(xs: np.ndarray, ys: np.ndarray, tol: float) -> bool:
    n = len(xs)
    return any(np.max(np.abs(np.roll(xs, k) - ys)) < tol for k in range(n))


def _itinerary_word(xs: Sequence[float], dead_band: float) -> Word:
    word = []
    for i, x in enumerate(xs):
        if abs(x) < dead_band:
            prev = xs[i - 1] if i else xs[-1]
            raise CodingAmbiguityError((x, prev), dead_band)
        word.append(1 if x > 0 else 0)
    return tuple(word)


def _multiplier(p: HenonParams, xs: Sequence[float]) -> float:
    mat = np.eye(2, dtype=complex)
    for i, x in enumerate(xs):
        y = xs[i - 1] if i else xs[-1]
        mat = jacobian(p, (x, y)) @ mat
    return float(np.max(np.abs(np.linalg.eigvals(mat))))


def find_periodic_orbits(
    p: HenonParams, n: int, cont: Optional[ContinuationConfig] = None
) -> list[OrbitRecord]:
    """Anti-integrable census of all binary necklaces of length n.

    The continuation is lockstep over necklaces so that orbit collisions
    (saddle-node annihilations) can be detected; both partners of a collision
    are marked lost at that parameter.
    """
    if not p.is_real:
        raise ValueError("orbit census requires real parameters")
    if not 1 <= n <= 12:
        raise ValueError("census period must be between 1 and 12")
    cont = cont or ContinuationConfig()
    a_start = cont.start_value(p)
    b = p.b
    necklaces = binary_necklaces(n)
    states = {
        w: np.array([math.sqrt(a_start) if s else -math.sqrt(a_start) for s in w])
        for w in necklaces
    }
    losses: dict[Word, float] = {}
    for a in np.linspace(a_start, p.a.real, cont.steps + 1):
        for w in necklaces:
            if w in losses:
                continue
            xs, ok = _newton(states[w], a, b, cont.root_tol, cont.newton_max_iter)
            if ok:
                states[w] = xs
            else:
                losses[w] = float(a)
        alive = [w for w in necklaces if w not in losses]
        sums = {w: float(np.sum(states[w])) for w in alive}
        for i, w1 in enumerate(alive):
            for w2 in alive[i + 1 :]:
                if abs(sums[w1] - sums[w2]) > n * cont.dedup_tol:
                    continue
                if _cyclic_close(states[w1], states[w2], cont.dedup_tol):
                    losses.setdefault(w1, float(a))
                    losses.setdefault(w2, float(a))

    records = []
    for w in necklaces:
        xs = states[w]
        lost = w in losses
        if lost:
            itinerary = PeriodicCode(_primitive_root(w))
        else:
            itinerary = PeriodicCode(_primitive_root(_itinerary_word(xs, cont.dead_band)))
        residual = float(np.max(np.abs(_residual(xs, losses.get(w, p.a.real), b))))
        points = [
            (float(xs[i]), float(xs[i - 1] if i else xs[-1])) for i in range(n)
        ]
        records.append(
            OrbitRecord(
                necklace=w,
                period=n,
                points=points,
                residual=residual,
                itinerary=itinerary,
                stability=_multiplier(p, xs) if not lost else float("nan"),
                status="lost" if lost else "alive",
                a_loss=losses.get(w),
            )
        )
    return records


def itinerary_of_orbit(record: OrbitRecord, dead_band: float = 1e-9) -> PeriodicCode:
    """Sign coding of the orbit's x-coordinates, primitive-reduced."""
    xs = [x for x, _ in record.points]
    return PeriodicCode(_primitive_root(_itinerary_word(xs, dead_band)))
