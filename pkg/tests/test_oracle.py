from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from palsums import oracle
from palsums.errors import ContractError
from palsums.oracle import (ANTIPALINDROME, GENERALIZED_ANTIPALINDROME, GENERALIZED_PALINDROME,
                            PALINDROME, SumQuery, decide)


def test_sequence_prefixes():
    assert oracle.enumerate_members(PALINDROME, 2, 63) == [0, 1, 3, 5, 7, 9, 15, 17, 21, 27, 31, 33, 45, 51, 63]
    assert oracle.enumerate_members(GENERALIZED_PALINDROME, 2, 32) == [
        0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 15, 16, 17, 18, 20, 21, 24, 27, 28, 30, 31, 32]
    assert oracle.enumerate_members(ANTIPALINDROME, 2, 56) == [2, 10, 12, 38, 42, 52, 56]


@pytest.mark.parametrize("flavor, base", [(PALINDROME, 2), (PALINDROME, 3), (GENERALIZED_PALINDROME, 2),
                                          (GENERALIZED_PALINDROME, 4), (ANTIPALINDROME, 2),
                                          (GENERALIZED_ANTIPALINDROME, 2)])
def test_enumerate_matches_membership(flavor, base):
    limit = 3000
    assert oracle.enumerate_members(flavor, base, limit) == [
        n for n in range(limit + 1) if oracle.is_member(n, flavor, base)]


def test_zero_conventions():
    assert oracle.is_member(0, PALINDROME)
    assert oracle.is_member(0, GENERALIZED_ANTIPALINDROME)
    assert not oracle.is_member(0, ANTIPALINDROME)
    assert oracle.members_of_length(PALINDROME, 2, 0) == (0,)
    assert oracle.is_member_of_length(0, -1)


def test_exact_lengths():
    assert oracle.members_of_length(PALINDROME, 2, 3) == (5, 7)
    assert oracle.members_of_length(GENERALIZED_PALINDROME, 2, 2) == (0, 3)
    assert oracle.members_of_length(ANTIPALINDROME, 2, 3) == ()
    # 0011 is an antipalindrome once padded
    assert 3 in oracle.members_of_length(GENERALIZED_ANTIPALINDROME, 2, 4)
    assert oracle.is_member_of_length(3, 4, GENERALIZED_ANTIPALINDROME)
    assert not oracle.is_member_of_length(3, 4, ANTIPALINDROME)


def test_decide_examples():
    assert decide(SumQuery(176, 2, 3)) == (False, None)
    ok, w = decide(SumQuery(176, 2, 4))
    assert ok and w.summands == (165, 9, 1, 1) and w.verify(176)
    ok, w = decide(SumQuery(5, 2, 1))
    assert ok and w.summands == (5,)
    assert decide(SumQuery(0, 2, 0))[0]


def test_decide_with_profile():
    ok, w = decide(SumQuery(91, 2, 3, PALINDROME, (7, 5, 4)))
    assert ok and w.verify(91)
    assert not decide(SumQuery(90, 2, 3, PALINDROME, (7, 5, 4)))[0]
    assert [len(bin(s)) - 2 for s in w.summands] == [7, 5, 4]


def test_query_contracts():
    with pytest.raises(ContractError):
        SumQuery(-1)
    with pytest.raises(ContractError):
        SumQuery(10, 3, 2, ANTIPALINDROME)
    with pytest.raises(ContractError):
        SumQuery(10, 2, 1, "mirror")
    with pytest.raises(ContractError):
        SumQuery(10, 2, 1, PALINDROME, (3, 2))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5000), st.sampled_from([PALINDROME, GENERALIZED_PALINDROME, ANTIPALINDROME]))
def test_witness_verifies(n, flavor):
    ok, w = decide(SumQuery(n, 2, 4, flavor))
    if ok:
        assert w.verify(n)
        assert all(oracle.is_member(s, flavor) for s in w.summands)


def test_min_summands():
    assert oracle.min_summands(0) == 0
    assert oracle.min_summands(176) == 4
    assert oracle.min_summands(21) == 1
    assert oracle.min_summands(3, flavor=ANTIPALINDROME) is None


def test_min_summands_table_matches_decide():
    table = oracle.min_summands_table(PALINDROME, 2, 600, cap=5)
    for n in range(0, 601, 7):
        assert table[n] == oracle.min_summands(n)


def test_exceptions():
    assert oracle.exceptions(GENERALIZED_ANTIPALINDROME, 2, 122) == [29, 60, 91, 109, 111, 121, 122]
    assert oracle.exceptions(GENERALIZED_PALINDROME, 2, 157441) == [157441]
    assert oracle.exceptions(ANTIPALINDROME, 3, 200) == [8, 18, 28, 130, 134, 138, 148, 158, 176]


@pytest.mark.parametrize("n", range(13))
def test_count_two_gen_pals(n):
    assert oracle.count_sum_two_gen_pal_same_length(n) == 3 ** ((n + 1) // 2)


def test_density_small():
    est = oracle.density_prefix(PALINDROME, 1, 10)
    # palindromes 1, 3, 5, 7, 9: A(n)/n first drops to 1/2 at n = 2
    assert est.min_ratio == Fraction(1, 2)
    assert est.argmin == 2


def test_density_reaches_published_bounds():
    # The published bounds are attained only just below 2^22.
    two = oracle.density_prefix(PALINDROME, 2, 2 ** 22)
    three = oracle.density_prefix(PALINDROME, 3, 2 ** 22)
    assert two.min_ratio < Fraction("0.443503")
    assert three.min_ratio < Fraction("0.942523")
    assert (two.argmin, three.argmin) == (4160223, 4160222)


def test_density_at_one_million():
    two = oracle.density_prefix(PALINDROME, 2, 10 ** 6)
    assert two.min_ratio == Fraction(449224, 999363)


def test_simulate_range_detects_mutation():
    truth = lambda n: oracle.is_member(n)
    broken = lambda n: truth(n) != (n == 45)
    assert oracle.simulate_range(truth, truth, 1, 100).ok
    assert oracle.simulate_range(broken, truth, 1, 100).disagreements == [(45, False, True)]


def test_case_sums():
    sums = oracle.case_sums((3, 1))
    assert sums == frozenset({6, 8})
    # 12 = 1001 + 11; 13 would need an even summand
    assert oracle.representable_with_offsets(12, [(0, 2)])
    assert not oracle.representable_with_offsets(13, [(0, 2)])


def test_sumset_levels_shape():
    levels = oracle.sumset_levels(PALINDROME, 2, 200, 3)
    assert len(levels) >= 3
    assert isinstance(levels[-1], np.ndarray)
    assert not levels[-1][176]
