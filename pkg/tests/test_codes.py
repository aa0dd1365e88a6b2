import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from henon_pruning.codes import (
    CodeParseError,
    Dyadic,
    HomoclinicCode,
    OneSidedCode,
    PeriodicCode,
    SquarePoint,
    format_code,
    gray_value,
    parse_code,
    shift,
    square_coords,
    tent,
    unimodal_leq,
)

F = Fraction


def one_sided(text: str) -> OneSidedCode:
    """Helper: '10110' means 10110 0^inf; '011|01' means head 011, tail (01)^inf."""
    if "|" in text:
        head, tail = text.split("|")
        return OneSidedCode(tuple(map(int, head)), tuple(map(int, tail)))
    return OneSidedCode(tuple(map(int, text)))


# --- parsing and formatting -------------------------------------------------

def test_parse_homoclinic_example():
    code = parse_code("1111.10110")
    assert isinstance(code, HomoclinicCode)
    assert code.left == (1, 1, 1, 1)
    assert code.right == (1, 0, 1, 1)  # trailing zero trimmed


def test_parse_fixed_point():
    code = parse_code(".")
    assert isinstance(code, HomoclinicCode)
    assert code.left == () and code.right == ()
    assert format_code(code) == "."


def test_parse_periodic():
    code = parse_code("(10110)")
    assert isinstance(code, PeriodicCode)
    assert code.necklace == (1, 0, 1, 1, 0)
    assert code.phase == 0


@pytest.mark.parametrize(
    "bad", ["", "10110", "(101101)?", "(1010)", "(0)0", "1.2", "(", "()", "1..0"]
)
def test_parse_errors(bad):
    with pytest.raises(CodeParseError):
        parse_code(bad)


def test_parse_error_position():
    err = None
    try:
        parse_code("10.1x1")
    except CodeParseError as e:
        err = e
    assert err is not None and err.position == 4


words = st.lists(st.integers(0, 1), max_size=24).map(tuple)


@given(words, words)
def test_roundtrip_homoclinic(left, right):
    code = HomoclinicCode(left, right)
    assert parse_code(format_code(code)) == code


@given(words.filter(lambda w: len(w) >= 1))
def test_roundtrip_periodic(word):
    from henon_pruning.codes import is_primitive

    if not is_primitive(word):
        return
    code = PeriodicCode(word)
    assert parse_code(format_code(code)) == code


# --- shift ------------------------------------------------------------------

def test_shift_examples():
    # canonical form trims the trailing zero of "11111.0110"
    assert shift(parse_code("1111.10110"), 1) == parse_code("11111.0110")
    assert format_code(shift(parse_code("1111.10110"), 1)) == "11111.011"
    s = parse_code("(10110)")
    assert shift(s, 5) == s and shift(s, 5).phase == s.phase
    dot = parse_code(".")
    for k in (-3, 0, 7):
        assert shift(dot, k) == dot


@given(words, words, st.integers(-8, 8))
def test_shift_inverse(left, right, k):
    code = HomoclinicCode(left, right)
    assert shift(shift(code, k), -k) == code


# --- gray_value --------------------------------------------------------------

def gray_oracle(symbols, terms=400):
    """Direct prefix-xor accumulation, long truncation; exact for test sizes."""
    total = F(0)
    parity = 0
    for i in range(terms):
        parity ^= symbols(i)
        if parity:
            total += F(1, 2 ** (i + 1))
    return total


def test_gray_examples():
    assert gray_value(one_sided("")) == 0
    assert gray_value(one_sided("10110")) == F(7, 8)
    assert gray_value(one_sided("110110")) == F(9, 16)


def test_gray_periodic_tail_geometric():
    code = one_sided("|10")  # (10)^inf
    # oracle: b alternates 1,1,0,0,...
    approx = gray_oracle(lambda i: [1, 0][i % 2])
    assert abs(gray_value(code) - approx) < F(1, 2**390)
    # exact value: (1/2+1/4) repeating with period 4 in b
    assert gray_value(code) == F(3, 4) * F(16, 15)


@given(words)
def test_gray_matches_oracle_zero_tail(word):
    code = OneSidedCode(word)
    padded = lambda i: word[i] if i < len(word) else 0
    assert abs(gray_value(code) - gray_oracle(padded)) <= F(1, 2**399)


# --- unimodal order -----------------------------------------------------------

def test_unimodal_examples():
    assert unimodal_leq(one_sided(""), one_sided("1"))
    assert unimodal_leq(one_sided("11"), one_sided("1"))
    assert gray_value(one_sided("11")) == F(1, 2)
    assert gray_value(one_sided("1")) == F(1)


@given(words)
def test_unimodal_reflexive(word):
    s = OneSidedCode(word)
    assert unimodal_leq(s, s)


@given(words, words)
def test_unimodal_vs_gray_monotone(a, b):
    """gray_value is a monotone order map: strict gray order implies strict
    unimodal order, and unimodal order implies gray <=.  (It is not injective:
    adjacent code pairs share a dyadic value, the binary-expansion doubles.)"""
    s, t = OneSidedCode(a), OneSidedCode(b)
    gs, gt = gray_value(s), gray_value(t)
    if unimodal_leq(s, t):
        assert gs <= gt
    if gs < gt:
        assert unimodal_leq(s, t) and not unimodal_leq(t, s)


def test_gray_collisions_are_adjacent_doubles():
    """Over all codes supported in the first 10 symbols, any two codes with the
    same gray value differ in exactly one position, after which both read 10^inf."""
    from collections import defaultdict

    seen = defaultdict(list)
    for bits in range(2**10):
        word = tuple((bits >> i) & 1 for i in range(10))
        seen[gray_value(OneSidedCode(word))].append(OneSidedCode(word).head)
    for value, codes in seen.items():
        codes = sorted(set(codes))
        assert len(codes) <= 2
        if len(codes) == 2:
            a, b = codes
            diffs = [
                i
                for i in range(max(len(a), len(b)))
                if (a[i] if i < len(a) else 0) != (b[i] if i < len(b) else 0)
            ]
            assert len(diffs) == 1
            k = diffs[0]
            longer = a if len(a) > len(b) else b
            assert longer[k + 1 :] == (1,) or longer[k + 1 :] == ()


# --- square coordinates -------------------------------------------------------

def test_square_coords_examples():
    assert square_coords(parse_code("1111.10110")) == SquarePoint(F(7, 8), F(5, 8))
    assert square_coords(parse_code("1110.10110")) == SquarePoint(F(7, 8), F(3, 8))
    assert square_coords(parse_code(".")) == SquarePoint(F(0), F(0))


@given(words, words)
def test_tent_equivariance(left, right):
    code = HomoclinicCode(left, right)
    before = square_coords(code)
    after = square_coords(shift(code, 1))
    assert after.u == tent(before.u)
    if code.symbol(0) == 0:
        assert after.v == before.v / 2
    else:
        assert after.v == 1 - before.v / 2


@given(words.filter(lambda w: len(w) >= 1))
def test_tent_equivariance_periodic(word):
    from henon_pruning.codes import is_primitive

    if not is_primitive(word):
        return
    code = PeriodicCode(word)
    before = square_coords(code)
    after = square_coords(shift(code, 1))
    assert after.u == tent(before.u)


# --- Dyadic ---------------------------------------------------------------------

def test_dyadic_reduction_and_bounds():
    d = Dyadic(4, 4)
    assert (d.numerator, d.exponent) == (1, 2)
    assert d.fraction == F(1, 4)
    assert Dyadic.from_fraction(F(7, 8)) == Dyadic(7, 3)
    with pytest.raises(ValueError):
        Dyadic(9, 3)
    with pytest.raises(ValueError):
        Dyadic.from_fraction(F(1, 3))
