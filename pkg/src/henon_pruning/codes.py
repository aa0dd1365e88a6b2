"""Binary itineraries, the unimodal (kneading) order and symbol-square coordinates.

One-sided codes are eventually-zero or eventually-periodic sequences over {0,1}.
Homoclinic codes are bi-infinite sequences with zero tails on both sides, written
"L.R" (the dot marks the origin; both tails are implicit 0^inf).  Periodic codes
are written "(w)" with a primitive necklace w.

All coordinate arithmetic is exact: the prefix-xor (Gray) value of a code is a
rational number, dyadic whenever the code is eventually zero.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Word = tuple[int, ...]


class CodeParseError(ValueError):
    """Raised for malformed code text; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


def _check_word(word: Word) -> None:
    if any(s not in (0, 1) for s in word):
        raise ValueError(f"symbols must be 0 or 1, got {word!r}")


def is_primitive(word: Word) -> bool:
    """True iff the word is not a power of a strictly shorter word."""
    n = len(word)
    if n == 0:
        return False
    for d in range(1, n):
        if n % d == 0 and word == word[: d] * (n // d):
            return False
    return True


def _rotate(word: Word, k: int) -> Word:
    n = len(word)
    k %= n
    return word[k:] + word[:k]


def _primitive_root(word: Word) -> Word:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class OneSidedCode:
    """One-sided sequence s_0 s_1 s_2 ... with an eventually-zero or
    eventually-periodic tail.

    ``tail == ()`` means the tail is 0^inf; otherwise ``tail`` is the primitive
    period block repeated forever after ``head``.
    """

    head: Word = ()
    tail: Word = ()

    def __post_init__(self):
        _check_word(self.head)
        _check_word(self.tail)
        head, tail = self.head, self.tail
        if tail:
            tail = _primitive_root(tail)
            if tail == (0,):
                tail = ()
        if tail:
            # absorb head symbols that merely repeat the tail pattern
            head = list(head)
            while head and head[-1] == tail[-1]:
                head.pop()
                tail = tail[-1:] + tail[:-1]
            head = tuple(head)
        else:
            head = list(head)
            while head and head[-1] == 0:
                head.pop()
            head = tuple(head)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)

    @property
    def is_zero(self) -> bool:
        return not self.head and not self.tail

    @property
    def eventually_zero(self) -> bool:
        return not self.tail

    def symbol(self, i: int) -> int:
        if i < 0:
            raise IndexError("one-sided codes are indexed from 0")
        if i < len(self.head):
            return self.head[i]
        if not self.tail:
            return 0
        return self.tail[(i - len(self.head)) % len(self.tail)]

    def symbols(self) -> Iterator[int]:
        i = 0
        while True:
            yield self.symbol(i)
            i += 1

    def shift_left(self) -> "OneSidedCode":
        """Drop s_0."""
        if self.head:
            return OneSidedCode(self.head[1:], self.tail)
        if not self.tail:
            return self
        return OneSidedCode((), _rotate(self.tail, 1))

    def prepend(self, s: int) -> "OneSidedCode":
        return OneSidedCode((s,) + self.head, self.tail)

    def preperiod(self) -> int:
        return len(self.head)

    def period(self) -> int:
        return len(self.tail) if self.tail else 1

    def __str__(self) -> str:
        h = "".join(str(s) for s in self.head)
        if self.tail:
            return h + "(" + "".join(str(s) for s in self.tail) + ")^inf"
        return h + "0^inf"


@dataclass(frozen=True)
class Dyadic:
    """Exact dyadic rational numerator / 2^exponent in [0, 1], reduced."""

    numerator: int
    exponent: int

    def __post_init__(self):
        num, exp = self.numerator, self.exponent
        if num < 0 or exp < 0:
            raise ValueError("dyadic fields must be non-negative")
        while num and num % 2 == 0 and exp > 0:
            num //= 2
            exp -= 1
        if num == 0:
            exp = 0
        if num > 2**exp:
            raise ValueError(f"dyadic {num}/2^{exp} outside [0, 1]")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "exponent", exp)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Dyadic":
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, 2**self.exponent)


@dataclass(frozen=True)
class HomoclinicCode:
    """Bi-infinite code with 0^inf tails on both sides of the origin.

    ``left`` is read left-to-right as s_{-|L|} ... s_{-1}; ``right`` is
    s_0 s_1 ....  Canonical form strips leading zeros of L and trailing
    zeros of R.
    """

    left: Word = ()
    right: Word = ()

    def __post_init__(self):
        _check_word(self.left)
        _check_word(self.right)
        left = self.left
        while left and left[0] == 0:
            left = left[1:]
        right = self.right
        while right and right[-1] == 0:
            right = right[:-1]
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def forward(self) -> OneSidedCode:
        return OneSidedCode(self.right)

    @property
    def backward(self) -> OneSidedCode:
        return OneSidedCode(tuple(reversed(self.left)))

    def symbol(self, i: int) -> int:
        if i >= 0:
            return self.right[i] if i < len(self.right) else 0
        j = len(self.left) + i
        return self.left[j] if j >= 0 else 0

    def support(self) -> int:
        return max(len(self.left), len(self.right))

    def __str__(self) -> str:
        return (
            "".join(str(s) for s in self.left)
            + "."
            + "".join(str(s) for s in self.right)
        )


class PeriodicCode:
    """Periodic bi-infinite code: s_i = necklace[(phase + i) mod p].

    Two codes are equal iff they realize the same point of the shift space;
    they are orbit-equivalent iff the necklaces are cyclic rotations.
    """

    __slots__ = ("necklace", "phase")

    def __init__(self, necklace: Word, phase: int = 0):
        necklace = tuple(necklace)
        _check_word(necklace)
        if not necklace:
            raise ValueError("necklace must be non-empty")
        if not is_primitive(necklace):
            raise ValueError(f"necklace {necklace!r} is not primitive")
        self.necklace = necklace
        self.phase = phase % len(necklace)

    @property
    def period(self) -> int:
        return len(self.necklace)

    def symbol(self, i: int) -> int:
        return self.necklace[(self.phase + i) % len(self.necklace)]

    def realized(self) -> Word:
        """The period block starting at the origin."""
        return tuple(self.symbol(i) for i in range(self.period))

    @property
    def forward(self) -> OneSidedCode:
        return OneSidedCode((), self.realized())

    @property
    def backward(self) -> OneSidedCode:
        p = self.period
        return OneSidedCode((), tuple(self.symbol(-1 - j) for j in range(p)))

    def orbit_equivalent(self, other: "PeriodicCode") -> bool:
        if self.period != other.period:
            return False
        doubled = self.necklace + self.necklace
        n = self.period
        return any(doubled[k : k + n] == other.necklace for k in range(n))

    def __eq__(self, other) -> bool:
        return isinstance(other, PeriodicCode) and self.realized() == other.realized()

    def __hash__(self) -> int:
        return hash(self.realized())

    def __str__(self) -> str:
        return "(" + "".join(str(s) for s in self.realized()) + ")"

    def __repr__(self) -> str:
        return f"PeriodicCode({self.necklace!r}, phase={self.phase})"


Code = Union[HomoclinicCode, PeriodicCode]

_CODE_RE = re.compile(r"^[01]*\.[01]*$|^\([01]+\)$")


def parse_code(text: str) -> Code:
    """Parse "L.R" (homoclinic, implicit 0^inf tails) or "(w)" (periodic)."""
    if text.startswith("("):
        if not text.endswith(")"):
            raise CodeParseError("unterminated necklace", len(text))
        body = text[1:-1]
        if not body:
            raise CodeParseError("empty necklace word", 1)
        word = []
        for k, ch in enumerate(body):
            if ch not in "01":
                raise CodeParseError(f"symbol {ch!r} outside {{0,1}}", k + 1)
            word.append(int(ch))
        word = tuple(word)
        if not is_primitive(word):
            raise CodeParseError(f"necklace {body!r} is not primitive", 1)
        return PeriodicCode(word, 0)
    if "." not in text:
        raise CodeParseError("expected 'L.R' or '(w)'", 0)
    dot = text.index(".")
    for k, ch in enumerate(text):
        if k != dot and ch not in "01":
            raise CodeParseError(f"symbol {ch!r} outside {{0,1}}", k)
    if text.count(".") > 1:
        raise CodeParseError("multiple dots", text.index(".", dot + 1))
    left = tuple(int(c) for c in text[:dot])
    right = tuple(int(c) for c in text[dot + 1 :])
    return HomoclinicCode(left, right)


def format_code(code: Code) -> str:
    return str(code)


def shift(code: Code, k: int) -> Code:
    """The shift sigma^k: origin moved k places to the right."""
    if isinstance(code, PeriodicCode):
        return PeriodicCode(code.necklace, code.phase + k)
    left, right = list(code.left), list(code.right)
    for _ in range(k):
        left.append(right.pop(0) if right else 0)
    for _ in range(-k):
        right.insert(0, left.pop() if left else 0)
    return HomoclinicCode(tuple(left), tuple(right))


def gray_value(code: OneSidedCode) -> Fraction:
    """Prefix-xor coordinate: b_i = s_0 ^ ... ^ s_i, value sum b_i 2^-(i+1).

    Exact; dyadic for eventually-zero codes, rational in general.
    """
    value = Fraction(0)
    parity = 0
    for i, s in enumerate(code.head):
        parity ^= s
        if parity:
            value += Fraction(1, 2 ** (i + 1))
    pos = len(code.head)
    if not code.tail:
        if parity:
            value += Fraction(1, 2**pos)
        return value
    # periodic tail: sum one effective period block, then a geometric series
    block = code.tail if sum(code.tail) % 2 == 0 else code.tail * 2
    q = len(block)
    block_value = Fraction(0)
    p = parity
    for j, s in enumerate(block):
        p ^= s
        if p:
            block_value += Fraction(1, 2 ** (j + 1))
    return value + Fraction(1, 2**pos) * block_value / (1 - Fraction(1, 2**q))


def unimodal_leq(s: OneSidedCode, t: OneSidedCode) -> bool:
    """Kneading order: at the first difference, compare with parity reversal."""
    bound = (
        max(s.preperiod(), t.preperiod())
        + math.lcm(s.period(), t.period())
        + 1
    )
    parity = 0
    for i in range(bound):
        a, b = s.symbol(i), t.symbol(i)
        if a != b:
            return (a < b) if parity == 0 else (a > b)
        parity ^= a
    return True  # equal sequences


@dataclass(frozen=True)
class SquarePoint:
    """Symbol-square coordinates: u from the forward code, v from the backward."""

    u: Fraction
    v: Fraction

    def __post_init__(self):
        if not (0 <= self.u <= 1 and 0 <= self.v <= 1):
            raise ValueError("square coordinates must lie in [0,1]")


def square_coords(code: Code) -> SquarePoint:
    return SquarePoint(gray_value(code.forward), gray_value(code.backward))


def tent(u: Fraction) -> Fraction:
    return 2 * u if u <= Fraction(1, 2) else 2 * (1 - u)
