import pytest
from hypothesis import given, strategies as st

from palsums.encodings import (FIRST, SECOND, THIRD, TRAIL, FoldedSymbol, decode_nwa_input,
                               digit_str, encode_nwa_input, folded_decode, folded_encode,
                               from_digits, to_base_k)
from palsums.errors import ContractError
from palsums.nwa import word_str


def test_to_base_k():
    assert digit_str(to_base_k(43, 2)) == "101011"
    assert to_base_k(0, 2) == [0]
    assert digit_str(to_base_k(34, 3)) == "1021"
    with pytest.raises(ContractError):
        to_base_k(5, 1)
    with pytest.raises(ContractError):
        to_base_k(-1, 2)


def test_from_digits():
    assert from_digits([1, 3, 5], 2) == 15
    assert from_digits([], 7) == 0
    assert from_digits([2, 2, 2], 3) == 26


@pytest.mark.parametrize("n, word", [(43, "bbafef"), (1, "d"), (21, "badef"), (2, "af")])
def test_encode_nwa_input(n, word):
    assert word_str(encode_nwa_input(n)) == word


def test_encode_nwa_rejects_zero():
    with pytest.raises(ContractError):
        encode_nwa_input(0)


def test_nwa_roundtrip_exhaustive():
    seen = set()
    for n in range(1, 2 ** 20, 37):
        w = encode_nwa_input(n)
        assert decode_nwa_input(w) == n
        seen.add(w)
    assert len(seen) == len(range(1, 2 ** 20, 37))


@given(st.integers(1, 2 ** 20))
def test_nwa_roundtrip(n):
    assert decode_nwa_input(encode_nwa_input(n)) == n


def test_folded_examples():
    n = from_digits([1, 0, 2, 1], 3)
    assert folded_encode(n, 3) == (FoldedSymbol(FIRST, 1), FoldedSymbol(SECOND, 0),
                                   FoldedSymbol(THIRD, 2, 1))
    n = from_digits([1, 0, 2, 1, 2], 3)
    assert folded_encode(n, 3) == (FoldedSymbol(FIRST, 1), FoldedSymbol(SECOND, 0),
                                   FoldedSymbol(THIRD, 2, 2), FoldedSymbol(TRAIL, 1))
    assert str(FoldedSymbol(THIRD, 2, 1)) == "third[2,1]"


def test_folded_pairs_converge():
    # digits 1 2 0 1 2 0 2 (base 3): pairs walk inwards from both ends
    n = from_digits([1, 2, 0, 1, 2, 0, 2], 3)
    assert [str(s) for s in folded_encode(n, 3)] == [
        "first(1)", "second(2)", "third[0,2]", "pair[1,0]", "trail(2)"]


def test_folded_roundtrip():
    for n in range(27, 10001):
        assert folded_decode(folded_encode(n, 3), 3) == n
    for n in range(64, 5000):
        assert folded_decode(folded_encode(n, 4), 4) == n


def test_folded_contracts():
    with pytest.raises(ContractError):
        folded_encode(8, 3)
    with pytest.raises(ContractError):
        folded_decode((FoldedSymbol(FIRST, 0), FoldedSymbol(SECOND, 1), FoldedSymbol(TRAIL, 1)), 3)
    with pytest.raises(ContractError):
        folded_decode((FoldedSymbol(SECOND, 1), FoldedSymbol(FIRST, 1), FoldedSymbol(TRAIL, 1)), 3)
