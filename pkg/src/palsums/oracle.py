"""Brute-force ground truth for sums of palindromic numbers.

Everything here works directly on digit strings and integer sets; nothing
depends on the automata, so it can be used to check them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .encodings import from_digits, to_base_k
from .errors import ContractError

PALINDROME = "palindrome"
GENERALIZED_PALINDROME = "generalizedPalindrome"
ANTIPALINDROME = "antipalindrome"
GENERALIZED_ANTIPALINDROME = "generalizedAntipalindrome"
FLAVORS = (PALINDROME, GENERALIZED_PALINDROME, ANTIPALINDROME, GENERALIZED_ANTIPALINDROME)


def _check_flavor(flavor, base):
    if flavor not in FLAVORS:
        raise ContractError(f"unknown flavor {flavor!r}; expected one of {', '.join(FLAVORS)}")
    if base < 2:
        raise ContractError(f"base must be at least 2, got {base}")
    if flavor in (ANTIPALINDROME, GENERALIZED_ANTIPALINDROME) and base != 2:
        raise ContractError("antipalindromes are only defined in base 2 here")


def _is_anti(s):
    return len(s) % 2 == 0 and all(a + b == 1 for a, b in zip(s, reversed(s)))


def is_member(n: int, flavor: str = PALINDROME, base: int = 2) -> bool:
    """Direct digit-string test."""
    _check_flavor(flavor, base)
    if n < 0:
        return False
    s = to_base_k(n, base)
    if flavor == PALINDROME:
        return s == s[::-1]
    if flavor == GENERALIZED_PALINDROME:
        # Leading zeros can only mirror trailing zeros.
        while len(s) > 1 and s[-1] == 0:
            s.pop()
        return s == s[::-1]
    if flavor == ANTIPALINDROME:
        return n > 0 and _is_anti(s)
    if n == 0:
        return True
    trailing = 0
    while trailing < len(s) and s[-1 - trailing] == 1:
        trailing += 1
    return any(_is_anti([0] * z + s) for z in range(trailing + 1))


def is_member_of_length(n: int, length: int, flavor: str = PALINDROME, base: int = 2) -> bool:
    """Membership as a summand of an exact length.

    Ordinary flavors need a canonical string of that length; generalized
    flavors pad with leading zeros.  Lengths of zero or less only admit 0.
    """
    _check_flavor(flavor, base)
    if length <= 0:
        return n == 0
    s = to_base_k(n, base)
    if flavor in (PALINDROME, ANTIPALINDROME):
        if n == 0 or len(s) != length:
            return False
        return s == s[::-1] if flavor == PALINDROME else _is_anti(s)
    if len(s) > length:
        return False
    s = [0] * (length - len(s)) + s
    return s == s[::-1] if flavor == GENERALIZED_PALINDROME else _is_anti(s)


@lru_cache(maxsize=None)
def members_of_length(flavor: str, base: int, length: int) -> tuple:
    """All members usable as a summand of exactly ``length`` digits, ascending."""
    _check_flavor(flavor, base)
    if length <= 0:
        return (0,)
    generalized = flavor in (GENERALIZED_PALINDROME, GENERALIZED_ANTIPALINDROME)
    anti = flavor in (ANTIPALINDROME, GENERALIZED_ANTIPALINDROME)
    if anti and length % 2:
        return ()
    half = (length + 1) // 2
    out = []
    for head in itertools.product(range(base), repeat=half):
        if not generalized and head[0] == 0:
            continue
        if anti:
            digits = list(head) + [base - 1 - d for d in reversed(head)]
        else:
            digits = list(head) + list(reversed(head[:length - half]))
        out.append(from_digits(digits, base))
    return tuple(sorted(out))


def enumerate_members(flavor: str, base: int, limit: int) -> list:
    """All members of the flavor that are at most ``limit``, ascending."""
    _check_flavor(flavor, base)
    if limit < 0:
        return []
    width = len(to_base_k(limit, base))
    out = set()
    if flavor in (PALINDROME, GENERALIZED_PALINDROME):
        pals = [v for L in range(1, width + 1) for v in members_of_length(PALINDROME, base, L)
                if v <= limit]
        out.add(0)
        out.update(pals)
        if flavor == GENERALIZED_PALINDROME:
            # Padding with z leading zeros mirrors z trailing zeros.
            for v in pals:
                while v and v * base <= limit:
                    v *= base
                    out.add(v)
    elif flavor == ANTIPALINDROME:
        out.update(v for L in range(2, width + 1, 2)
                   for v in members_of_length(ANTIPALINDROME, 2, L) if v <= limit)
    else:
        out.add(0)
        for L in range(2, 2 * width + 1, 2):
            zeros = max(0, L - width)
            free = L // 2 - zeros
            if free < 0:
                break
            for tail in itertools.product((0, 1), repeat=free):
                head = [0] * zeros + list(tail)
                v = from_digits(head + [1 - d for d in reversed(head)], 2)
                if v <= limit:
                    out.add(v)
    return sorted(out)


# Representability -----------------------------------------------------------

@dataclass(frozen=True)
class SumQuery:
    target: int
    base: int = 2
    max_summands: int = 3
    flavor: str = PALINDROME
    length_profile: tuple | None = None  # exact summand lengths, if any

    def __post_init__(self):
        _check_flavor(self.flavor, self.base)
        if self.target < 0 or self.max_summands < 0:
            raise ContractError("target and max_summands must be natural numbers")
        if self.length_profile is not None and len(self.length_profile) > self.max_summands:
            raise ContractError("length_profile has more entries than max_summands")


@dataclass(frozen=True)
class Witness:
    summands: tuple
    flavor: str = PALINDROME
    base: int = 2
    lengths: tuple | None = None

    def verify(self, target) -> bool:
        if sum(self.summands) != target:
            return False
        if self.lengths is not None:
            return all(is_member_of_length(s, L, self.flavor, self.base)
                       for s, L in zip(self.summands, self.lengths))
        return all(is_member(s, self.flavor, self.base) for s in self.summands)


def _search(target, pools):
    """Find one element per pool summing to target; the last pool is a set lookup."""
    *head, last = pools
    last = frozenset(last)

    def rec(i, remaining, chosen):
        if i == len(head):
            return chosen + [remaining] if remaining in last else None
        for v in head[i]:
            if v > remaining:
                break
            found = rec(i + 1, remaining - v, chosen + [v])
            if found:
                return found
        return None

    return rec(0, target, [])


def decide(q: SumQuery):
    """``(True, Witness)`` if the target decomposes as asked, else ``(False, None)``."""
    if q.length_profile is not None:
        pools = [members_of_length(q.flavor, q.base, L) for L in q.length_profile]
        if not pools:
            return (q.target == 0, Witness((), q.flavor, q.base, ()) if q.target == 0 else None)
        found = _search(q.target, pools)
        if found is None:
            return False, None
        return True, Witness(tuple(found), q.flavor, q.base, tuple(q.length_profile))
    if q.target == 0:
        return True, Witness((), q.flavor, q.base)
    members = [v for v in enumerate_members(q.flavor, q.base, q.target) if v > 0]
    for m in range(1, q.max_summands + 1):
        # Nonincreasing summands: the first is the largest.
        found = _search_sorted(q.target, members, m)
        if found:
            return True, Witness(tuple(found), q.flavor, q.base)
    return False, None


def _search_sorted(target, members, m):
    lookup = frozenset(members)

    def rec(remaining, k, cap, chosen):
        if k == 1:
            return chosen + [remaining] if remaining in lookup and remaining <= cap else None
        # The largest of k summands is at least remaining / k.
        for v in reversed(members):
            if v > cap or v > remaining:
                continue
            if v * k < remaining:
                break
            found = rec(remaining - v, k - 1, v, chosen + [v])
            if found:
                return found
        return None

    return rec(target, m, target, [])


def profile_for(target: int, offsets, base: int = 2) -> tuple:
    """Exact summand lengths ``len(target) - d`` for each offset d."""
    n = len(to_base_k(target, base))
    return tuple(n - d for d in offsets)


def min_summands(n: int, base: int = 2, flavor: str = PALINDROME, cap: int = 8):
    """Least number of members summing to n, or None above ``cap``."""
    if n == 0:
        return 0
    for m in range(1, cap + 1):
        if decide(SumQuery(n, base, m, flavor))[0]:
            return m
    return None


def sumset_levels(flavor: str, base: int, limit: int, levels: int) -> list:
    """``out[m][v]`` is True iff v is a sum of at most m members (0 <= v <= limit)."""
    members = [v for v in enumerate_members(flavor, base, limit) if v > 0]
    reach = np.zeros(limit + 1, dtype=bool)
    reach[0] = True
    out = [reach.copy()]
    for _ in range(levels):
        nxt = reach.copy()
        for v in members:
            nxt[v:] |= reach[:limit + 1 - v]
        reach = nxt
        out.append(reach.copy())
    return out


def min_summands_table(flavor: str, base: int, limit: int, cap: int = 8) -> np.ndarray:
    """``table[n]`` is the least number of summands for n (``cap + 1`` if over cap)."""
    table = np.full(limit + 1, cap + 1, dtype=np.int16)
    for m, reach in enumerate(sumset_levels(flavor, base, limit, cap)):
        table[reach & (table > cap)] = m
    return table


def exceptions(flavor: str, max_summands: int, limit: int, base: int = 2) -> list:
    """All n <= limit that are not a sum of at most ``max_summands`` members.

    Ordinary antipalindromes are even, so only even n are considered for
    that flavor.
    """
    reach = sumset_levels(flavor, base, limit, max_summands)[-1]
    bad = np.flatnonzero(~reach)
    if flavor == ANTIPALINDROME:
        bad = bad[bad % 2 == 0]
    return [int(v) for v in bad]


def count_sum_two_gen_pal_same_length(n: int) -> int:
    """Number of distinct p + q with p, q generalized binary palindromes of length n."""
    if n < 0:
        raise ContractError("length must be natural")
    pals = members_of_length(GENERALIZED_PALINDROME, 2, n) if n else (0,)
    return len({p + q for p in pals for q in pals})


@dataclass(frozen=True)
class DensityEstimate:
    limit: int
    min_ratio: Fraction
    argmin: int


def density_prefix(flavor: str, max_summands: int, limit: int, base: int = 2) -> DensityEstimate:
    """Exact minimum of A(n)/n over 1 <= n <= limit, where A(n) counts the
    integers in [1, n] that are sums of at most ``max_summands`` members."""
    if limit < 1:
        raise ContractError("limit must be at least 1")
    reach = sumset_levels(flavor, base, limit, max_summands)[-1]
    counts = np.cumsum(reach[1:], dtype=np.int64)
    ns = np.arange(1, limit + 1, dtype=np.int64)
    ratios = counts / ns
    best = ratios.min()
    # Floats only shortlist; the comparison itself is exact.
    candidates = np.flatnonzero(ratios <= best + 1e-9)
    exact = min((Fraction(int(counts[i]), int(ns[i])), int(ns[i])) for i in candidates)
    return DensityEstimate(limit, exact[0], exact[1])


# Machine cross-checks ---------------------------------------------------------

@dataclass
class AgreementReport:
    lo: int
    hi: int
    checked: int = 0
    disagreements: list = field(default_factory=list)  # (n, machine says, oracle says)

    @property
    def ok(self):
        return not self.disagreements


def simulate_range(accepts, expected, lo: int, hi: int) -> AgreementReport:
    """Compare ``accepts(n)`` with ``expected(n)`` for every n in [lo, hi]."""
    report = AgreementReport(lo, hi)
    for n in range(lo, hi + 1):
        got, want = bool(accepts(n)), bool(expected(n))
        report.checked += 1
        if got != want:
            report.disagreements.append((n, got, want))
    return report


@lru_cache(maxsize=256)
def case_sums(lengths: tuple, flavor: str = PALINDROME, base: int = 2) -> frozenset:
    """Every sum of one member per exact length in ``lengths``."""
    sums = np.zeros(1, dtype=np.int64)
    for L in lengths:
        pool = np.array(members_of_length(flavor, base, L), dtype=np.int64)
        sums = np.unique(np.add.outer(sums, pool).ravel())
    return frozenset(int(v) for v in sums)


def representable_with_offsets(n: int, offset_cases, base: int = 2, flavor: str = PALINDROME) -> bool:
    """True iff some case (a tuple of length offsets) decomposes n exactly,
    with summand lengths measured from the length of n."""
    width = len(to_base_k(n, base))
    return any(n in case_sums(tuple(width - d for d in offsets), flavor, base)
               for offsets in offset_cases)
