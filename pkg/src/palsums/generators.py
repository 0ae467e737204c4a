"""Generators for the sum-checking nested-word automata.

Every checker reads an integer least significant bit first: calls for the
low half, an internal symbol for the middle bit of odd-length inputs, and
returns for the high half.  While reading the low half the machine guesses
the low digits of each summand and pushes them; while reading the high half
it pops them back in mirror order, so each summand is checked to read the
same (or complemented, for antipalindromes) from both ends.

Summands of the same length and flavor are handled together as a group:
the state stores the number of ones guessed at the current position,
which is all the addition needs.  A group whose summands are ``offset``
digits shorter than the input remembers its last ``offset`` guesses, so
that the popped state can supply the digit that is ``offset`` positions
out of alignment.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass

from .errors import ContractError, ResourceLimitError
from .nwa import A, B, BINARY, C, D, DEFAULT_BUDGET, E, F, NWABuilder, TaggedSymbol, Alphabet

PALINDROME = "palindrome"
GENERALIZED_PALINDROME = "generalizedPalindrome"
ANTIPALINDROME = "antipalindrome"
GENERALIZED_ANTIPALINDROME = "generalizedAntipalindrome"
FLAVORS = (PALINDROME, GENERALIZED_PALINDROME, ANTIPALINDROME, GENERALIZED_ANTIPALINDROME)

CALL_BIT = (A, B)
INTERNAL_BIT = (C, D)
RETURN_BIT = (E, F)

_EDGE_FACTOR = 100

_DIGITS = string.digits + string.ascii_lowercase


@dataclass(frozen=True)
class SummandGroup:
    offset: int
    count: int = 1
    flavor: str = PALINDROME

    @property
    def anti(self):
        return self.flavor in (ANTIPALINDROME, GENERALIZED_ANTIPALINDROME)

    @property
    def generalized(self):
        return self.flavor in (GENERALIZED_PALINDROME, GENERALIZED_ANTIPALINDROME)

    def first_guesses(self):
        """Allowed combined low digits of the group at position 0."""
        if self.generalized:
            return range(self.count + 1)
        # A canonical palindrome ends in 1, a canonical antipalindrome in 0.
        return (0,) if self.anti else (self.count,)

    @property
    def fill(self):
        # Remembered value for positions before the input started; it must
        # read back as a zero digit once complemented.
        return self.count if self.anti else 0

    def readback(self, value):
        return self.count - value if self.anti else value


@dataclass(frozen=True)
class TState:
    """First-half state: carry, next guesses, and remembered guesses."""
    carry: int
    guesses: tuple
    memory: tuple  # one tuple per group, most recent guess first

    def flat(self):
        return (self.carry,) + self.guesses + tuple(itertools.chain.from_iterable(self.memory))

    def __str__(self):
        parts = ["q", _DIGITS[self.carry], "".join(_DIGITS[g] for g in self.guesses)]
        parts += ["".join(_DIGITS[v] for v in mem) for mem in self.memory if mem]
        return "_".join(parts)


@dataclass(frozen=True)
class SState:
    """Second-half state: only the carry."""
    carry: int

    def __str__(self):
        return f"s_{self.carry}"


def _position_value(state, g, k):
    """Guess of group g made k steps before ``state`` (k = 0: next guess)."""
    return state.guesses[g] if k == 0 else state.memory[g][k - 1]


def _pair_ok(group, u, v):
    return u + v == group.count if group.anti else u == v


def _middle_ok(groups, state):
    """Mirror constraints that fall inside the low half of an odd-length input."""
    for g, group in enumerate(groups):
        d = group.offset
        for t in range(d // 2 + 1):
            if 2 * t > d:
                break
            if 2 * t == d:
                # Self-mirrored middle digit: free for palindromes,
                # impossible for antipalindromes.
                if group.anti:
                    return False
                break
            if not _pair_ok(group, _position_value(state, g, d - t), _position_value(state, g, t)):
                return False
    return True


def _even_turn_ok(groups, state):
    """Mirror constraints checked at the first return of an even-length input."""
    for g, group in enumerate(groups):
        d = group.offset
        for t in range(d // 2 + 1):
            if 2 * t > d - 1:
                break
            if 2 * t == d - 1:
                if group.anti:
                    return False
                break
            if not _pair_ok(group, _position_value(state, g, d - t), _position_value(state, g, 1 + t)):
                return False
    return True


def _popped_digits(groups, popped):
    total = 0
    for g, group in enumerate(groups):
        raw = popped.guesses[g] if group.offset == 0 else popped.memory[g][group.offset - 1]
        total += group.readback(raw)
    return total


def sum_checker(groups, carry_max=None, name="", budget=DEFAULT_BUDGET):
    """NWA accepting inputs that are sums of the given summand groups.

    Summand lengths are measured relative to the input length, so the
    machine has no length threshold of its own.  Every combination of
    coordinates is a state, reachable or not.
    """
    groups = tuple(groups)
    if not groups:
        raise ContractError("need at least one summand group")
    n_summands = sum(gr.count for gr in groups)
    if carry_max is None:
        carry_max = max(2, n_summands - 1)
    if (carry_max + n_summands) // 2 > carry_max:
        raise ContractError(f"carry bound {carry_max} is too small for {n_summands} summands")
    guess_ranges = [range(gr.count + 1) for gr in groups]
    n_states = carry_max + 1
    for gr in groups:
        n_states *= (gr.count + 1) ** (gr.offset + 1)
    n_states += carry_max + 1
    n_t = n_states - carry_max - 1
    # Return transitions pair every t-state with every popped t-state, so
    # the edge count grows quadratically; cap it at a fixed multiple of
    # the state budget.
    if n_states > budget or n_t * n_t > _EDGE_FACTOR * budget:
        raise ResourceLimitError(f"generation of {name or 'sum checker'}", budget)

    memory_space = [list(itertools.product(range(gr.count + 1), repeat=gr.offset)) for gr in groups]
    guess_space = list(itertools.product(*guess_ranges))
    t_states = [TState(g, guesses, memory)
                for g in range(carry_max + 1)
                for guesses in guess_space
                for memory in itertools.product(*memory_space)]
    s_states = [SState(i) for i in range(carry_max + 1)]

    b = NWABuilder(BINARY, name)
    fill = tuple((gr.fill,) * gr.offset for gr in groups)
    firsts = list(itertools.product(*(gr.first_guesses() for gr in groups)))
    for st in t_states:
        b.state(st, initial=st.carry == 0 and st.memory == fill and st.guesses in firsts)
    for st in s_states:
        b.state(st, accepting=st.carry == 0)

    for st in t_states:
        total = st.carry + sum(st.guesses)
        bit, carry = total % 2, total // 2
        memory = tuple(((x,) + mem)[:gr.offset]
                       for x, mem, gr in zip(st.guesses, st.memory, groups))
        for guesses in guess_space:
            b.call(st, CALL_BIT[bit], TState(carry, guesses, memory))
        if _middle_ok(groups, st):
            b.internal(st, INTERNAL_BIT[bit], SState(carry))

    for popped in t_states:
        digits = _popped_digits(groups, popped)
        for s in s_states:
            total = s.carry + digits
            b.ret(s, popped, RETURN_BIT[total % 2], SState(total // 2))
        for st in t_states:
            if not _even_turn_ok(groups, st):
                continue
            total = st.carry + digits
            b.ret(st, popped, RETURN_BIT[total % 2], SState(total // 2))
    return b.build()


def gen_pal_checker():
    """One palindrome of the input's own length (9 states)."""
    return sum_checker([SummandGroup(0)], name="palChecker")


def gen_pal_checker2():
    """Three palindromes of lengths n, n-2, n-3 (771 states)."""
    return sum_checker([SummandGroup(0), SummandGroup(2), SummandGroup(3)], name="palChecker2")


def gen_pal_checker3():
    """Three palindromes of lengths n-1, n-2, n-3 (1539 states)."""
    return sum_checker([SummandGroup(1), SummandGroup(2), SummandGroup(3)], name="palChecker3")


def gen_gpal_checker():
    """At most two generalized palindromes of length n and one of length n-1.

    The two length-n summands are one group: their digitwise sum is a
    palindrome over {0, 1, 2}, and a zero summand covers "at most".
    """
    return sum_checker([SummandGroup(0, 2, GENERALIZED_PALINDROME),
                        SummandGroup(1, 1, GENERALIZED_PALINDROME)], name="gpalChecker")


def gen_antipal_checker(num_summands, length_offsets=(0,), generalized=False,
                        name=None, budget=DEFAULT_BUDGET):
    """Exactly ``num_summands`` (generalized) antipalindromes.

    ``length_offsets`` gives one offset per summand, or a single offset
    shared by all of them.
    """
    if num_summands < 1:
        raise ContractError("need at least one summand")
    offsets = list(length_offsets)
    if len(offsets) == 1:
        offsets *= num_summands
    if len(offsets) != num_summands:
        raise ContractError("length_offsets must have one entry or one per summand")
    flavor = GENERALIZED_ANTIPALINDROME if generalized else ANTIPALINDROME
    groups = [SummandGroup(d, offsets.count(d), flavor) for d in sorted(set(offsets))]
    if name is None:
        prefix = "gapChecker" if generalized else "antipalChecker"
        name = f"{prefix}_{num_summands}_" + "_".join(map(str, sorted(set(offsets))))
    return sum_checker(groups, name=name, budget=budget)


def gen_gap_checker(budget=DEFAULT_BUDGET):
    """Exactly six generalized antipalindromes of length n-2."""
    return gen_antipal_checker(6, (2,), generalized=True, name="gapChecker", budget=budget)


def gen_syntax_checker(min_half=4, odd_only=False, length_parity="any", canonical=False,
                       name=None):
    """Deterministic NWA for ``{a,b}^h {c,d}^m {e,f}^h`` with ``m <= 1`` and
    ``h >= min_half``.

    ``odd_only`` requires the first (least significant) symbol to be ``b``
    and the most significant symbol to be a one.  ``canonical`` only asks
    for the latter.  ``length_parity`` ("even", "odd" or "any") restricts
    the presence of the middle symbol.
    """
    if min_half < 1:
        raise ContractError("min_half must be at least 1")
    if length_parity not in ("any", "even", "odd"):
        raise ContractError(f"unknown length parity {length_parity!r}")
    msb_one = canonical or odd_only
    if name is None:
        name = f"syntax_{min_half}" + ("_odd" if odd_only else "") + (
            f"_{length_parity}" if length_parity != "any" else "") + (
            "_canonical" if canonical and not odd_only else "")
    b = NWABuilder(BINARY, name)
    start = ("call", 0)
    b.state(start, initial=True)
    returning, done = ("ret",), ("acc",)
    b.state(returning)
    b.state(done, accepting=True)
    for k in range(min_half + 1):
        src = ("call", k)
        for sym in (B,) if (k == 0 and odd_only) else (A, B):
            b.call(src, sym, ("call", min(k + 1, min_half)))
    full = ("call", min_half)
    if length_parity != "even":
        for sym in (C, D):
            b.internal(full, sym, returning)
    turn_sources = [returning] + ([full] if length_parity != "odd" else [])
    for k in range(min_half + 1):
        popped = ("call", k)
        for src in turn_sources:
            for sym in (E, F):
                if popped == start:
                    if msb_one and sym == E:
                        continue
                    b.ret(src, popped, sym, done)
                else:
                    b.ret(src, popped, sym, returning)
    return b.build(deterministic=True)


def gen_fig1_machine():
    """The ``{0^n 1 2^n : n >= 1}`` example, with call 0, internal 1, return 2."""
    zero = TaggedSymbol("call", 0)
    one = TaggedSymbol("internal", 1)
    two = TaggedSymbol("return", 2)
    b = NWABuilder(Alphabet((zero,), (one,), (two,)), "fig1")
    b.state("q0", initial=True)
    b.call("q0", zero, "q1")
    b.call("q1", zero, "q1")
    b.internal("q1", one, "q2")
    for src in ("q2", "q3"):
        b.ret(src, "q1", two, "q3")
        b.ret(src, "q0", two, "q4")
    b.state("q4", accepting=True)
    return b.build(deterministic=True)


FIG1_MAPPING = {"0": TaggedSymbol("call", 0), "1": TaggedSymbol("internal", 1),
                "2": TaggedSymbol("return", 2)}


# Folded base-k machines ----------------------------------------------------

BASE3_CASES = {"a": (0, 1, 2), "b": (0, 2, 3), "c": (1, 2, 3), "d": (1, 2)}
BASE4_CASES = {"a": (1, 2, 3), "b": (0, 2, 3)}

# Reading phases: after the first letter, after the second, inside the pairs.
_AFTER_FIRST, _AFTER_SECOND, _PAIRS = 1, 2, 3


def _folded_carry_bound(n_summands, base):
    c = 0
    while (n_summands * (base - 1) + c) // base > c:
        c += 1
    return c


def folded_case_machine(offsets, base, name=""):
    """NFA over folded words for sums of one palindrome per offset.

    Offset d means a summand of length n - d, for d in 0..3.  A state is
    (phase, c1, c2, x1, x2, y, z): c1 is the carry the high end still owes,
    c2 the carry entering the low end, x1/x2 the last two high guesses of
    the offset-0 summand, y the last high guess of the offset-1 summand and
    z the last low guess of the offset-3 summand.  The offset-2 summand is
    aligned with the pairs and needs no memory.
    """
    offsets = frozenset(offsets)
    if not offsets or not offsets <= {0, 1, 2, 3}:
        raise ContractError(f"folded offsets must be a nonempty subset of 0..3, got {sorted(offsets)}")
    from .encodings import FIRST, PAIR, SECOND, THIRD, TRAIL, FoldedSymbol, folded_alphabet
    from .nfa import NFABuilder

    carry_max = _folded_carry_bound(len(offsets), base)
    digits = range(base)
    nonzero = range(1, base)

    def guesses(d, leading):
        if d not in offsets:
            return (0,)
        return nonzero if leading else digits

    b = NFABuilder(folded_alphabet(base), name or f"folded{base}_" + "".join(map(str, sorted(offsets))))
    start, done = ("start",), ("acc",)
    b.state(start, initial=True)
    b.state(done, accepting=True)
    todo = []

    def go(src, sym, dst):
        if dst not in b._ids:
            _, c1, c2, x1, x2, _, _ = dst
            b.state(dst, accepting=dst[0] == _PAIRS and c1 == c2 and x1 == x2)
            todo.append(dst)
        b.add(src, sym, dst)

    # The most significant digit: only the full-length summand reaches it.
    for i in guesses(0, True):
        for alpha in range(carry_max + 1):
            high = i + alpha
            if high < base and high:
                go(start, FoldedSymbol(FIRST, high), (_AFTER_FIRST, alpha, 0, 0, i, 0, 0))
    while todo:
        st = todo.pop()
        phase, c1, c2, x1, x2, y, z = st
        if phase == _AFTER_FIRST:
            for i in guesses(0, False):
                for j in guesses(1, True):
                    for alpha in range(carry_max + 1):
                        high = i + j + alpha
                        if high // base == c1:
                            go(st, FoldedSymbol(SECOND, high % base), (_AFTER_SECOND, alpha, c2, x2, i, j, 0))
            continue
        # The first pair holds the leading digit of the offset-2 summand and
        # the trailing digit of the offset-3 summand.
        first_pair = phase == _AFTER_SECOND
        kind = THIRD if first_pair else PAIR
        for i in guesses(0, False):
            for j in guesses(1, False):
                for k in guesses(2, first_pair):
                    for l in guesses(3, first_pair):
                        for alpha in range(carry_max + 1):
                            high = i + j + k + z + alpha
                            if high // base != c1:
                                continue
                            low = x1 + y + k + l + c2
                            go(st, FoldedSymbol(kind, high % base, low % base),
                               (_PAIRS, alpha, low // base, x2, i, j, l))
        # Middle digit of an odd-length input.
        for k in guesses(2, first_pair):
            mid = x1 + y + k + z + c2
            if mid // base == c1:
                b.add(st, FoldedSymbol(TRAIL, mid % base), done)
    return b.build()


def _folded_cases(table, base, case, label):
    from .nfa import union
    if case == "all":
        keys = sorted(table)
    else:
        keys = [case] if isinstance(case, str) else list(case)
    unknown = [k for k in keys if k not in table]
    if unknown or not keys:
        raise ContractError(f"unknown {label} case(s) {unknown or keys}; expected some of {sorted(table)}")
    machines = [folded_case_machine(table[k], base, f"{label}_{k}") for k in keys]
    out = machines[0]
    for m in machines[1:]:
        out = union(out, m)
    out.name = f"{label}_" + "".join(keys)
    return out


def gen_base3_machine(case="all"):
    """Folded NFA for the base-3 cases; ``case`` is a letter, a list of letters or "all"."""
    return _folded_cases(BASE3_CASES, 3, case, "base3")


def gen_base4_machine(case="all"):
    return _folded_cases(BASE4_CASES, 4, case, "base4")


def folded_syntax(base, min_length=3):
    """Deterministic NFA accepting the folded words of all integers whose
    base-k length is at least ``min_length`` (and at least 3)."""
    from .encodings import FIRST, PAIR, SECOND, THIRD, TRAIL, FoldedSymbol, folded_alphabet
    from .nfa import NFABuilder

    min_length = max(min_length, 3)
    top = max(4, min_length + min_length % 2)  # first even length past the threshold
    b = NFABuilder(folded_alphabet(base), f"foldedSyntax{base}_{min_length}")
    b.state(("len", 0), initial=True)
    for d in range(1, base):
        b.add(("len", 0), FoldedSymbol(FIRST, d), ("len", 1))
    for d in range(base):
        b.add(("len", 1), FoldedSymbol(SECOND, d), ("len", 2))
    pairs = [(h, lo) for h in range(base) for lo in range(base)]
    for h, lo in pairs:
        b.add(("len", 2), FoldedSymbol(THIRD, h, lo), ("len", 4))
    for n in range(4, top + 1, 2):
        b.state(("len", n), accepting=n >= min_length)
        for h, lo in pairs:
            b.add(("len", n), FoldedSymbol(PAIR, h, lo), ("len", min(n + 2, top)))
    for n in [2] + list(range(4, top + 1, 2)):
        b.state(("len", n + 1), accepting=n + 1 >= min_length)
        for d in range(base):
            b.add(("len", n), FoldedSymbol(TRAIL, d), ("len", n + 1))
    return b.build()
