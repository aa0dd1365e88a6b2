"""Pruning automorphisms, their fixed-point subshifts and periodic-point counts.

The automorphism for parameters (N, M) interchanges the blocks 0^N 101 0^M and
0^N 111 0^M.  Its fixed-point set is the subshift of finite type avoiding both
blocks; the transition structure lives on the de Bruijn graph of binary words
of length max(block length) - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import log
from typing import Iterable, Sequence

import numpy as np

from .codes import PeriodicCode, Word, is_primitive, _primitive_root

#: (N, M) pairs for which D_{N,M} is not a pruning disk.
EXCLUDED_PARAMS = frozenset({(0, 0), (1, 0), (1, 1), (0, 1)})


@dataclass(frozen=True, order=True)
class PruningParams:
    N: int
    M: int

    def __post_init__(self):
        if self.N < 0 or self.M < 0:
            raise ValueError("pruning parameters must be non-negative")

    def forbidden_words(self) -> tuple[Word, Word]:
        zeros_n = (0,) * self.N
        zeros_m = (0,) * self.M
        return (zeros_n + (1, 0, 1) + zeros_m, zeros_n + (1, 1, 1) + zeros_m)

    def window_length(self) -> int:
        return self.N + self.M + 3


def is_valid_disk_params(p: PruningParams) -> bool:
    """False exactly for the four exceptional pairs of Proposition-style pruning."""
    return (p.N, p.M) not in EXCLUDED_PARAMS


def rho_apply(p: PruningParams, s: PeriodicCode) -> PeriodicCode:
    """Apply the involution: flip s_i wherever the input window
    s_{i-N-1} .. s_{i+M+1} reads 0^N 1 s_i 1 0^M.

    All flips are computed from the input simultaneously.  The result is
    primitive-renormalized (flips preserve the period, so the realized block
    may become a power of a shorter word).
    """
    n = s.period
    out = []
    for i in range(n):
        window_ok = (
            all(s.symbol(i - p.N - 1 + j) == 0 for j in range(p.N))
            and s.symbol(i - 1) == 1
            and s.symbol(i + 1) == 1
            and all(s.symbol(i + 2 + j) == 0 for j in range(p.M))
        )
        out.append(1 - s.symbol(i) if window_ok else s.symbol(i))
    root = _primitive_root(tuple(out))
    return PeriodicCode(root, 0)


def _contains_cyclic(s: PeriodicCode, word: Word) -> bool:
    n = s.period
    return any(
        all(s.symbol(k + j) == word[j] for j in range(len(word))) for k in range(n)
    )


def pruning_region_hits(p: PruningParams, s: PeriodicCode) -> bool:
    """True iff some shift of s lies in one of the two pruned cylinders."""
    if not is_valid_disk_params(p):
        raise ValueError(f"({p.N},{p.M}) is not a valid pruning disk")
    lo, hi = p.forbidden_words()
    return _contains_cyclic(s, lo) or _contains_cyclic(s, hi)


class Sft:
    """Forbidden-word subshift on the de Bruijn graph of order m.

    Vertices are all binary words of length m = max(word length) - 1; there is
    an edge w -> w' iff they overlap in m-1 symbols and the spanning
    (m+1)-window contains no forbidden word.
    """

    def __init__(self, forbidden: Iterable[Word]):
        self.forbidden = frozenset(tuple(w) for w in forbidden)
        if self.forbidden and any(len(w) == 0 for w in self.forbidden):
            raise ValueError("forbidden words must be non-empty")
        self.order = max((len(w) for w in self.forbidden), default=1) - 1
        self.order = max(self.order, 1)
        m = self.order
        size = 2**m
        matrix = np.zeros((size, size), dtype=np.int8)
        for a in range(size):
            wa = _bits(a, m)
            for s in (0, 1):
                window = wa + (s,)
                if _window_clean(window, self.forbidden):
                    b = _index(window[1:])
                    matrix[a, b] = 1
        self.matrix = matrix

    def vertex_word(self, index: int) -> Word:
        return _bits(index, self.order)

    def admits(self, s: PeriodicCode) -> bool:
        """True iff no cyclic window of the realized sequence is forbidden."""
        return not any(_contains_cyclic(s, w) for w in self.forbidden)

    def admits_word(self, block: Word) -> bool:
        """Like ``admits`` for a raw period block (possibly non-primitive)."""
        n = len(block)
        if not self.forbidden:
            return True
        doubled = block * ((max(len(w) for w in self.forbidden) // n) + 2)
        return not any(
            doubled[k : k + len(w)] == w for w in self.forbidden for k in range(n)
        )

    def count_periodic(self, n: int, bound: int = 24) -> int:
        """Number of points with sigma^n(s) = s: the trace of A^n."""
        if not 1 <= n <= bound:
            raise ValueError(f"period {n} outside [1, {bound}]")
        # float64 matmul is exact here: all entries are path counts <= 2^n < 2^53
        power = np.linalg.matrix_power(self.matrix.astype(np.float64), n)
        return int(round(power.trace()))

    def count_periodic_bruteforce(self, n: int) -> int:
        """Independent oracle: scan all 2^n period blocks for forbidden windows."""
        count = 0
        for bits in range(2**n):
            block = _bits(bits, n)
            doubled = block * ((max(len(w) for w in self.forbidden) // n) + 2)
            if not any(
                doubled[k : k + len(w)] == w
                for w in self.forbidden
                for k in range(n)
            ):
                count += 1
        return count

    def entropy(self, tol: float = 1e-12, max_iterations: int = 100_000) -> float:
        """log of the spectral radius of A, by power iteration."""
        if tol <= 0:
            raise ValueError("tol must be positive")
        a = self.matrix.astype(np.float64)
        vec = np.ones(a.shape[0])
        vec /= np.linalg.norm(vec)
        radius = 0.0
        for _ in range(max_iterations):
            nxt = a @ vec
            norm = np.linalg.norm(nxt)
            if norm == 0.0:
                return float("-inf")  # no admissible sequences at all
            nxt /= norm
            estimate = float(nxt @ (a @ nxt))  # Rayleigh quotient
            if radius > 0 and abs(estimate - radius) < tol * radius:
                return log(estimate)
            radius = estimate
            vec = nxt
        raise RuntimeError("power iteration did not converge")


def _bits(value: int, width: int) -> Word:
    return tuple((value >> (width - 1 - k)) & 1 for k in range(width))


def _index(word: Word) -> int:
    out = 0
    for s in word:
        out = (out << 1) | s
    return out


def _window_clean(window: Word, forbidden: frozenset[Word]) -> bool:
    return not any(
        window[k : k + len(w)] == w
        for w in forbidden
        for k in range(len(window) - len(w) + 1)
    )


def sft_build(disks: Sequence[PruningParams]) -> Sft:
    """Subshift avoiding the forbidden words of every disk (union of regions)."""
    if not disks:
        raise ValueError("at least one disk is required")
    words: set[Word] = set()
    for p in disks:
        if not is_valid_disk_params(p):
            raise ValueError(
                f"({p.N},{p.M}) is one of the excluded pairs and defines no pruning disk"
            )
        words.update(p.forbidden_words())
    return Sft(words)


def full_shift() -> Sft:
    return Sft(())


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _moebius(n: int) -> int:
    result = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


@dataclass
class CountTable:
    """Fixed points of sigma^n per n, with derived exact-period orbit counts."""

    points: dict[int, int] = field(default_factory=dict)

    @classmethod
    def for_sft(cls, sft: Sft, n_max: int, bound: int = 24) -> "CountTable":
        return cls({n: sft.count_periodic(n, bound=bound) for n in range(1, n_max + 1)})

    def exact_period_points(self, n: int) -> int:
        return sum(_moebius(n // d) * self.points[d] for d in _divisors(n))

    def exact_orbits(self, n: int) -> int:
        pts = self.exact_period_points(n)
        assert pts % n == 0
        return pts // n

    def rows(self) -> list[dict]:
        return [
            {"n": n, "points": self.points[n], "exact_orbits": self.exact_orbits(n)}
            for n in sorted(self.points)
        ]
