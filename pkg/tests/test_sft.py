import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from henon_pruning.codes import PeriodicCode, is_primitive, parse_code, shift
from henon_pruning.sft import (
    EXCLUDED_PARAMS,
    CountTable,
    PruningParams,
    Sft,
    full_shift,
    is_valid_disk_params,
    pruning_region_hits,
    rho_apply,
    sft_build,
)


def necklace(text: str) -> PeriodicCode:
    return PeriodicCode(tuple(int(c) for c in text))


necklaces = (
    st.lists(st.integers(0, 1), min_size=1, max_size=20)
    .map(tuple)
    .filter(is_primitive)
    .map(PeriodicCode)
)
small_params = st.tuples(st.integers(0, 4), st.integers(0, 4)).map(
    lambda nm: PruningParams(*nm)
)
# rho is involutive only for valid disk parameters (the excluded pairs break it)
valid_small_params = small_params.filter(is_valid_disk_params)


# --- validity ----------------------------------------------------------------

def test_excluded_params():
    assert is_valid_disk_params(PruningParams(2, 2))
    assert not is_valid_disk_params(PruningParams(1, 1))
    assert is_valid_disk_params(PruningParams(0, 2))
    assert {(n, m) for n in range(6) for m in range(6)
            if not is_valid_disk_params(PruningParams(n, m))} == set(EXCLUDED_PARAMS)


# --- rho ----------------------------------------------------------------------

def test_rho_interchanges_core_words():
    p = PruningParams(1, 1)
    assert rho_apply(p, necklace("01110")) == necklace("01010")
    assert rho_apply(p, necklace("01010")) == necklace("01110")


def test_rho_fixes_zero_word():
    for n in range(5):
        for m in range(5):
            p = PruningParams(n, m)
            assert rho_apply(p, necklace("0")) == necklace("0")


def test_rho_11_on_alternating():
    """Every 0 of (10)^inf sits in a window 01010, so rho_{1,1} flips them all:
    the image is (1)^inf, which is fixed.  This breakdown of involutivity is
    exactly why (1,1) is an excluded parameter pair."""
    assert rho_apply(PruningParams(1, 1), necklace("10")) == necklace("1")
    assert rho_apply(PruningParams(1, 1), necklace("1")) == necklace("1")
    # a genuinely fixed non-trivial necklace: no window has both neighbors 1
    assert rho_apply(PruningParams(1, 1), necklace("100")) == necklace("100")


def test_rho_involution_fails_exactly_on_excluded_pairs():
    def is_involution(p):
        for n in range(1, 11):
            for bits in range(2**n):
                w = tuple((bits >> k) & 1 for k in range(n))
                if not is_primitive(w):
                    continue
                s = PeriodicCode(w)
                if rho_apply(p, rho_apply(p, s)) != s:
                    return False
        return True

    failing = {
        (n, m)
        for n in range(4)
        for m in range(4)
        if not is_involution(PruningParams(n, m))
    }
    assert failing == set(EXCLUDED_PARAMS)


@settings(max_examples=300)
@given(valid_small_params, necklaces)
def test_rho_involution(p, s):
    assert rho_apply(p, rho_apply(p, s)) == s


@settings(max_examples=300)
@given(small_params, necklaces)
def test_rho_shift_commutation(p, s):
    assert rho_apply(p, shift(s, 1)) == shift(rho_apply(p, s), 1)


# --- sft construction -----------------------------------------------------------

def test_sft_build_examples():
    s02 = sft_build([PruningParams(0, 2)])
    assert s02.forbidden == {(1, 0, 1, 0, 0), (1, 1, 1, 0, 0)}
    assert s02.order == 4
    assert s02.matrix.shape == (16, 16)

    s22 = sft_build([PruningParams(2, 2)])
    assert s22.forbidden == {(0, 0, 1, 0, 1, 0, 0), (0, 0, 1, 1, 1, 0, 0)}
    assert s22.order == 6

    two = sft_build([PruningParams(0, 3), PruningParams(1, 2)])
    assert two.forbidden == {
        (1, 0, 1, 0, 0, 0),
        (1, 1, 1, 0, 0, 0),
        (0, 1, 0, 1, 0, 0),
        (0, 1, 1, 1, 0, 0),
    }


def test_sft_build_rejects_excluded():
    with pytest.raises(ValueError, match="excluded"):
        sft_build([PruningParams(1, 1)])
    with pytest.raises(ValueError):
        sft_build([])


# --- admissibility ----------------------------------------------------------------

def test_admissible_examples():
    s22 = sft_build([PruningParams(2, 2)])
    assert not s22.admits(necklace("00101"))
    assert s22.admits(necklace("0"))
    assert s22.admits(necklace("1"))
    s02 = sft_build([PruningParams(0, 2)])
    assert s02.admits(necklace("10110"))


def test_pruning_region_examples():
    assert pruning_region_hits(PruningParams(2, 2), necklace("00101"))
    assert not pruning_region_hits(PruningParams(2, 2), necklace("0"))
    assert pruning_region_hits(PruningParams(0, 2), necklace("10100"))


def all_necklaces(max_len):
    for n in range(1, max_len + 1):
        for bits in range(2**n):
            w = tuple((bits >> k) & 1 for k in range(n))
            if is_primitive(w):
                yield PeriodicCode(w)


@pytest.mark.parametrize("n,m", [(0, 2), (2, 2), (3, 1), (4, 4), (2, 0)])
def test_complement_identity(n, m):
    """Periodic restriction of: complement of the pruning region = fixed set."""
    p = PruningParams(n, m)
    sft = sft_build([p])
    for s in all_necklaces(9):
        assert pruning_region_hits(p, s) != sft.admits(s)
        # and admissibility is exactly rho-fixedness
        assert sft.admits(s) == (rho_apply(p, s) == s)


# --- counting ---------------------------------------------------------------------

def test_count_examples():
    assert sft_build([PruningParams(0, 2)]).count_periodic(5) == 22
    assert sft_build([PruningParams(2, 2)]).count_periodic(3) == 8
    assert sft_build([PruningParams(2, 2)]).count_periodic(1) == 2
    assert full_shift().count_periodic(10) == 1024


def test_count_range_check():
    with pytest.raises(ValueError):
        full_shift().count_periodic(0)
    with pytest.raises(ValueError):
        full_shift().count_periodic(30)


@pytest.mark.parametrize("n,m", [(0, 2), (1, 2), (2, 2), (4, 0), (0, 4), (3, 3)])
def test_trace_vs_enumeration(n, m):
    sft = sft_build([PruningParams(n, m)])
    for period in range(1, 13):
        assert sft.count_periodic(period) == sft.count_periodic_bruteforce(period)


def test_count_monotone_in_params():
    counts = {}
    for n in range(5):
        for m in range(5):
            if is_valid_disk_params(PruningParams(n, m)):
                sft = sft_build([PruningParams(n, m)])
                counts[(n, m)] = [sft.count_periodic(k) for k in range(1, 11)]
    for (n1, m1), c1 in counts.items():
        for (n2, m2), c2 in counts.items():
            if n1 <= n2 and m1 <= m2:
                assert all(a <= b for a, b in zip(c1, c2))


def test_count_bounds():
    for n, m in [(0, 2), (2, 2), (3, 4)]:
        sft = sft_build([PruningParams(n, m)])
        for k in range(1, 13):
            assert 0 <= sft.count_periodic(k) <= 2**k


def test_count_table_orbit_identity():
    sft = sft_build([PruningParams(0, 2)])
    table = CountTable.for_sft(sft, 12)
    for n in range(1, 13):
        total = sum(d * table.exact_orbits(d) for d in range(1, n + 1) if n % d == 0)
        assert total == table.points[n]


# --- entropy -------------------------------------------------------------------

def test_entropy_full_shift():
    assert abs(full_shift().entropy(1e-12) - math.log(2)) < 1e-10


def test_entropy_golden_mean():
    golden = Sft({(1, 1)})
    assert abs(golden.entropy(1e-13) - math.log((1 + math.sqrt(5)) / 2)) < 1e-10


def test_entropy_pruned_between_zero_and_log2():
    sft = sft_build([PruningParams(2, 2)])
    h = sft.entropy(1e-12)
    assert 0 < h < math.log(2)
    # cross-check against the growth rate of periodic counts
    growth = math.log(sft.count_periodic(20)) / 20
    assert abs(h - growth) < 0.05


def test_entropy_bad_tol():
    with pytest.raises(ValueError):
        full_shift().entropy(0)
