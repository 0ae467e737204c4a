"""Conversions between integers and machine input words."""

from __future__ import annotations

from typing import NamedTuple

from .errors import ContractError
from .nwa import A, B, C, D, E, F, CALL, INTERNAL, RETURN

_CALLS = (A, B)
_INTERNALS = (C, D)
_RETURNS = (E, F)


def to_base_k(n: int, k: int) -> list:
    """Canonical digits of n in base k, most significant first."""
    if k < 2:
        raise ContractError(f"base must be at least 2, got {k}")
    if n < 0:
        raise ContractError("negative numbers have no base-k representation here")
    if n == 0:
        return [0]
    digits = []
    while n:
        n, r = divmod(n, k)
        digits.append(r)
    return digits[::-1]


def from_digits(digits, k: int) -> int:
    """Positional value; digits may exceed k - 1."""
    value = 0
    for d in digits:
        value = value * k + d
    return value


def digit_str(digits) -> str:
    return "".join("0123456789abcdefghijklmnopqrstuvwxyz"[d] for d in digits)


def encode_nwa_input(n: int) -> tuple:
    """Bits of n least significant first: calls, optional middle internal, returns."""
    if n < 1:
        raise ContractError("only positive integers have an NWA encoding")
    bits = to_base_k(n, 2)[::-1]
    h = len(bits) // 2
    word = [_CALLS[b] for b in bits[:h]]
    if len(bits) % 2:
        word.append(_INTERNALS[bits[h]])
    word += [_RETURNS[b] for b in bits[len(bits) - h:]]
    return tuple(word)


def decode_nwa_input(word) -> int:
    """Inverse of :func:`encode_nwa_input` (reads any front-loaded word)."""
    value = 0
    for i, sym in enumerate(word):
        if sym.kind not in (CALL, INTERNAL, RETURN):
            raise ContractError(f"unexpected symbol {sym!r}")
        value |= sym.digit << i
    return value


# Folded words -------------------------------------------------------------

FIRST = "first"      # most significant digit
SECOND = "second"    # next digit
THIRD = "third"      # first folded pair
PAIR = "pair"        # later folded pairs
TRAIL = "trail"      # middle digit of an odd-length input
FOLDED_KINDS = (FIRST, SECOND, THIRD, PAIR, TRAIL)


class FoldedSymbol(NamedTuple):
    """One letter of a folded word.

    Pairs carry a high digit (read from the most significant end) and a low
    digit (read from the least significant end).  Unfolded letters keep
    their digit in ``high`` and set ``low`` to -1.
    """
    kind: str
    high: int
    low: int = -1

    def __str__(self):
        if self.low < 0:
            return f"{self.kind}({self.high})"
        return f"{self.kind}[{self.high},{self.low}]"


def folded_alphabet(base: int) -> tuple:
    syms = [FoldedSymbol(FIRST, d) for d in range(1, base)]
    syms += [FoldedSymbol(SECOND, d) for d in range(base)]
    syms += [FoldedSymbol(kind, h, l) for kind in (THIRD, PAIR)
             for h in range(base) for l in range(base)]
    syms += [FoldedSymbol(TRAIL, d) for d in range(base)]
    return tuple(sorted(syms))


def folded_encode(n: int, k: int) -> tuple:
    """Folded word of n in base k.

    The two most significant digits come first, unfolded.  The remaining
    digits are read in pairs from both ends towards the middle: the high
    digit walks down from the third most significant position while the
    low digit walks up from position 0.  An odd-length input ends with its
    middle digit as a trailing letter.
    """
    digits = to_base_k(n, k)
    length = len(digits)
    if length < 3:
        raise ContractError(f"folded encoding needs at least 3 base-{k} digits, {n} has {length}")
    a = digits[::-1]  # a[p] is the digit at position p
    word = [FoldedSymbol(FIRST, a[length - 1]), FoldedSymbol(SECOND, a[length - 2])]
    for t in range(1, (length - 2) // 2 + 1):
        word.append(FoldedSymbol(THIRD if t == 1 else PAIR, a[length - 2 - t], a[t - 1]))
    if length % 2:
        word.append(FoldedSymbol(TRAIL, a[(length - 3) // 2]))
    return tuple(word)


def folded_decode(word, k: int) -> int:
    """Inverse of :func:`folded_encode`; rejects malformed words."""
    word = list(word)
    if len(word) < 3 or word[0].kind != FIRST or word[1].kind != SECOND:
        raise ContractError("a folded word starts with its two leading digits")
    odd = word[-1].kind == TRAIL
    pairs = word[2:-1] if odd else word[2:]
    length = 2 + 2 * len(pairs) + odd
    for t, sym in enumerate(pairs, 1):
        if sym.kind != (THIRD if t == 1 else PAIR):
            raise ContractError(f"unexpected {sym.kind} letter at folded position {t + 2}")
    a = [None] * length
    a[length - 1] = word[0].high
    a[length - 2] = word[1].high
    for t, sym in enumerate(pairs, 1):
        a[length - 2 - t] = sym.high
        a[t - 1] = sym.low
    if odd:
        a[(length - 3) // 2] = word[-1].high
    if any(d is None or not 0 <= d < k for d in a) or a[length - 1] == 0:
        raise ContractError("folded word does not describe a canonical base-k string")
    return from_digits(a[::-1], k)
