"""End-to-end theorem checks: build the machines, run the inclusion test,
and confirm base cases and counterexamples with the oracle."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from . import generators as gen
from . import nfa as fa
from . import nwa
from . import oracle
from .encodings import decode_nwa_input, encode_nwa_input, folded_decode, folded_encode
from .errors import ContractError, ResourceLimitError


@dataclass
class ProofReport:
    theorem_id: str
    holds: bool = False
    counterexample: tuple | None = None
    counterexample_value: int | None = None
    confirmed: bool | None = None  # oracle agrees the counterexample is a real violation
    base_case_range: tuple | None = None
    machine_sizes: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def lines(self):
        """Deterministic ``key=value`` records (elapsed time excluded)."""
        out = [f"theorem={self.theorem_id}", f"holds={str(self.holds).lower()}"]
        if self.counterexample is not None:
            out.append(f"counterexample={_word_text(self.counterexample)}")
        if self.counterexample_value is not None:
            out.append(f"counterexample_value={self.counterexample_value}")
        if self.confirmed is not None:
            out.append(f"oracle_confirmed={str(self.confirmed).lower()}")
        if self.base_case_range is not None:
            out.append("base_cases={}..{}".format(*self.base_case_range))
        for name, size in self.machine_sizes.items():
            out.append(f"size.{name}={size}")
        for name, value in self.checks.items():
            if isinstance(value, bool):
                value = str(value).lower()
            out.append(f"check.{name}={value}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _word_text(word):
    if word and isinstance(word[0], nwa.TaggedSymbol):
        return nwa.word_str(word)
    return " ".join(map(str, word))


# Cached machines ------------------------------------------------------------

_NWA_GENERATORS = {
    "palChecker": gen.gen_pal_checker,
    "palChecker2": gen.gen_pal_checker2,
    "palChecker3": gen.gen_pal_checker3,
    "gpalChecker": gen.gen_gpal_checker,
    "gpalChecker_1_1": lambda: gen.sum_checker(
        [gen.SummandGroup(0, 1, gen.GENERALIZED_PALINDROME),
         gen.SummandGroup(1, 1, gen.GENERALIZED_PALINDROME)], name="gpalChecker_1_1"),
    "gpalChecker_2_0": lambda: gen.sum_checker(
        [gen.SummandGroup(0, 2, gen.GENERALIZED_PALINDROME)], name="gpalChecker_2_0"),
    "gapChecker": gen.gen_gap_checker,
    "gapChecker5": lambda: gen.gen_antipal_checker(5, (2,), generalized=True, name="gapChecker5"),
}

# Summand length offsets checked by each machine, for oracle confirmation.
BINARY_CASES = {"palChecker": (0,), "palChecker2": (0, 2, 3), "palChecker3": (1, 2, 3)}


@lru_cache(maxsize=None)
def nwa_machine(name):
    return _NWA_GENERATORS[name]()


@lru_cache(maxsize=None)
def det_nwa(name, budget=nwa.DEFAULT_BUDGET):
    return nwa.determinize(nwa_machine(name), budget=budget)


@lru_cache(maxsize=None)
def folded_case_dfa(base, case):
    table = gen.BASE3_CASES if base == 3 else gen.BASE4_CASES
    return fa.minimize(fa.determinize(gen.folded_case_machine(table[case], base, f"base{base}_{case}")))


def folded_union_dfa(base, cases):
    """Minimal DFA for the union of the given folded cases.

    Each case is determinized and minimized on its own before the product;
    the subset construction on the plain NFA union is far larger.
    """
    return fa.minimize(reduce(fa.dfa_union, [folded_case_dfa(base, c) for c in cases]))


# Theorems -----------------------------------------------------------------------

def prove_binary(omit=(), min_half=4, budget=nwa.DEFAULT_BUDGET) -> ProofReport:
    """Odd integers of at least ``2 * min_half`` bits are sums of palindromes
    under the cases of the included checkers."""
    t0 = time.perf_counter()
    names = [n for n in BINARY_CASES if n not in omit]
    unknown = set(omit) - set(BINARY_CASES)
    if unknown or not names:
        raise ContractError(f"cannot omit {sorted(unknown) or sorted(omit)}; choose from {list(BINARY_CASES)}")
    report = ProofReport("binary" + "".join(f"-{n}" for n in omit))
    syntax = gen.gen_syntax_checker(4)
    odd = gen.gen_syntax_checker(min_half, odd_only=True)
    dets = []
    for name in names:
        report.machine_sizes[name] = len(nwa_machine(name))
        d = det_nwa(name, budget)
        report.machine_sizes[f"det({name})"] = len(d)
        dets.append(d)
    final = dets[0] if len(dets) == 1 else reduce(lambda a, b: nwa.union(a, b, syntax, budget=budget), dets)
    report.machine_sizes["FinalAut"] = len(final)
    holds, word = nwa.is_included(odd, final)
    report.holds = holds
    cases = [BINARY_CASES[n] for n in names]
    if not holds:
        value = decode_nwa_input(word)
        report.counterexample, report.counterexample_value = word, value
        report.confirmed = (nwa.accepts(odd, word) and not nwa.accepts(final, word)
                            and not oracle.representable_with_offsets(value, cases))
    lo, hi = 513, 1024
    agree = oracle.simulate_range(lambda n: nwa.accepts(final, encode_nwa_input(n)),
                                  lambda n: oracle.representable_with_offsets(n, cases), lo, hi)
    report.checks[f"agreement_{lo}_{hi}"] = agree.ok
    report.checks["disagreements"] = len(agree.disagreements)
    report.elapsed = time.perf_counter() - t0
    return report


def prove_corollary_main(limit=2 ** 16) -> ProofReport:
    """Every N is a sum of at most 4 binary palindromes, checked by oracle
    up to ``limit`` together with the reduction from the odd case."""
    t0 = time.perf_counter()
    report = ProofReport("corollary", base_case_range=(0, 127))
    table = oracle.min_summands_table(oracle.PALINDROME, 2, limit - 1, cap=5)
    small_ok = bool((table[:128] <= 4).all())
    worst = int(table[1:].max())
    report.checks["small_cases_at_most_4"] = small_ok
    report.checks["max_min_summands"] = worst
    report.checks["first_needing_max"] = int((table == worst).argmax())
    # Even N >= 128: either a power of two, (N - 1) + 1 with N - 1 all ones,
    # or N - 1 odd of the same length, a sum of at most 3.
    bad_even = [n for n in range(128, limit, 2)
                if n & (n - 1) and table[n - 1] > 3]
    bad_odd = [n for n in range(129, limit, 2) if table[n] > 3]
    report.checks["odd_at_most_3"] = not bad_odd
    report.checks["even_reduction"] = not bad_even
    report.holds = small_ok and worst <= 4 and not bad_even and not bad_odd
    if not report.holds:
        value = next(iter(bad_odd or bad_even or [int((table > 4).argmax())]))
        report.counterexample_value = value
        report.confirmed = not oracle.decide(oracle.SumQuery(value, 2, 4))[0]
    report.elapsed = time.perf_counter() - t0
    return report


def _prove_folded(base, table, cases, min_length, sweep) -> ProofReport:
    t0 = time.perf_counter()
    cases = sorted(cases)
    unknown = [c for c in cases if c not in table]
    if unknown or not cases:
        raise ContractError(f"unknown base-{base} case(s) {unknown or cases}; choose from {sorted(table)}")
    full = cases == sorted(table)
    report = ProofReport(f"base{base}" + ("" if full else "-" + "".join(cases))
                         + ("" if min_length == (9 if base == 3 else 7) else f"-len{min_length}"))
    for c in cases:
        report.machine_sizes[f"nfa_{c}"] = len(gen.folded_case_machine(table[c], base))
        report.machine_sizes[f"min_{c}"] = len(folded_case_dfa(base, c))
    machine = folded_union_dfa(base, cases)
    report.machine_sizes["minimized"] = len(machine)
    report.machine_sizes["minimized_live"] = machine.live_size()
    syntax = gen.folded_syntax(base, min_length)
    report.holds, word = fa.is_included(syntax, machine)
    offsets = [table[c] for c in cases]
    if not report.holds:
        value = folded_decode(word, base)
        report.counterexample, report.counterexample_value = word, value
        report.confirmed = (fa.nfa_accepts(syntax, word) and not fa.nfa_accepts(machine, word)
                            and not oracle.representable_with_offsets(value, offsets, base))
    lo, hi = sweep
    agree = oracle.simulate_range(lambda n: fa.nfa_accepts(machine, folded_encode(n, base)),
                                  lambda n: oracle.representable_with_offsets(n, offsets, base), lo, hi)
    report.checks[f"agreement_{lo}_{hi}"] = agree.ok
    report.checks["disagreements"] = len(agree.disagreements)
    report.elapsed = time.perf_counter() - t0
    return report


def prove_base3(cases="abcd", min_length=9) -> ProofReport:
    return _prove_folded(3, gen.BASE3_CASES, cases, min_length, (243, 1000))


def prove_base4(cases="ab", min_length=7) -> ProofReport:
    return _prove_folded(4, gen.BASE4_CASES, cases, min_length, (4 ** 6, 4 ** 7 - 1))


def prove_genpal(machine="gpalChecker", min_half=3, sweep_limit=4096) -> ProofReport:
    """Inputs of length >= 2 * min_half are sums of generalized palindromes
    (two of length n, one of length n - 1); small N and a sweep go to the oracle."""
    t0 = time.perf_counter()
    report = ProofReport("genpal" + ("" if machine == "gpalChecker" else f"-{machine}")
                         + ("" if min_half == 3 else f"-half{min_half}"),
                         base_case_range=(0, 31))
    report.machine_sizes[machine] = len(nwa_machine(machine))
    d = det_nwa(machine)
    report.machine_sizes[f"det({machine})"] = len(d)
    syntax = gen.gen_syntax_checker(min_half, canonical=True)
    report.holds, word = nwa.is_included(syntax, d)
    if not report.holds:
        value = decode_nwa_input(word)
        report.counterexample, report.counterexample_value = word, value
        report.confirmed = (nwa.accepts(syntax, word) and not nwa.accepts(d, word)
                            and not _gpal_profile_ok(value, machine))
    table = oracle.min_summands_table(oracle.GENERALIZED_PALINDROME, 2, sweep_limit, cap=4)
    report.checks["small_cases_at_most_3"] = bool((table[:32] <= 3).all())
    report.checks[f"sweep_{sweep_limit}_at_most_3"] = bool((table <= 3).all())
    report.elapsed = time.perf_counter() - t0
    return report


_GPAL_OFFSETS = {"gpalChecker": (0, 0, 1), "gpalChecker_1_1": (0, 1), "gpalChecker_2_0": (0, 0)}


def _gpal_profile_ok(value, machine):
    return oracle.representable_with_offsets(value, [_GPAL_OFFSETS[machine]], 2,
                                             oracle.GENERALIZED_PALINDROME)


def prove_gap(machine="gapChecker", min_half=3, sweep_limit=2 ** 12) -> ProofReport:
    """Even-length inputs of length >= 2 * min_half are sums of exactly six
    generalized antipalindromes of length n - 2; plus an oracle sweep for
    at most seven summands."""
    t0 = time.perf_counter()
    count = 6 if machine == "gapChecker" else 5
    report = ProofReport("gap" + ("" if machine == "gapChecker" else f"-{machine}")
                         + ("" if min_half == 3 else f"-half{min_half}"))
    report.machine_sizes[machine] = len(nwa_machine(machine))
    d = det_nwa(machine)
    report.machine_sizes[f"det({machine})"] = len(d)
    syntax = gen.gen_syntax_checker(min_half, length_parity="even", canonical=True)
    report.holds, word = nwa.is_included(syntax, d)
    if not report.holds:
        value = decode_nwa_input(word)
        report.counterexample, report.counterexample_value = word, value
        report.confirmed = (nwa.accepts(syntax, word) and not nwa.accepts(d, word)
                            and not oracle.representable_with_offsets(
                                value, [(2,) * count], 2, oracle.GENERALIZED_ANTIPALINDROME))
    table = oracle.min_summands_table(oracle.GENERALIZED_ANTIPALINDROME, 2, sweep_limit - 1, cap=8)
    report.checks[f"sweep_{sweep_limit}_at_most_7"] = bool((table <= 7).all())
    report.checks["max_min_summands"] = int(table.max())
    report.elapsed = time.perf_counter() - t0
    return report


def check_antipal_conjectures(limit=2 ** 14, exception_limit=35082, attempt_budget=nwa.DEFAULT_BUDGET) -> ProofReport:
    """Oracle evidence only; never claims a theorem."""
    t0 = time.perf_counter()
    report = ProofReport("antipal-evidence")
    report.checks["exceptions_at_most_3"] = ",".join(
        map(str, oracle.exceptions(oracle.ANTIPALINDROME, 3, exception_limit)))
    table = oracle.min_summands_table(oracle.ANTIPALINDROME, 2, limit, cap=5)
    evens = table[2::2]
    report.checks[f"even_up_to_{limit}_at_most_4"] = bool((evens <= 4).all())
    report.checks["even_below_256_at_most_4"] = bool((table[2:256:2] <= 4).all())
    report.checks["max_even_min_summands"] = int(evens.max())
    try:
        m = gen.gen_antipal_checker(10, (3,), budget=attempt_budget)
        report.checks["ten_summand_machine"] = f"built:{len(m)}"
    except ResourceLimitError as exc:
        report.checks["ten_summand_machine"] = f"resource_limit:{exc.budget}"
    report.holds = report.checks[f"even_up_to_{limit}_at_most_4"]
    if not report.holds:
        value = 2 * (int((evens > 4).argmax()) + 1)
        report.counterexample_value = value
        report.confirmed = not oracle.decide(oracle.SumQuery(value, 2, 4, oracle.ANTIPALINDROME))[0]
    report.elapsed = time.perf_counter() - t0
    return report


# Negative controls ---------------------------------------------------------

def negative_controls():
    """Weakened machines, each of which must make its theorem fail.

    Returns (name, thunk) pairs; calling the thunk yields a ProofReport.
    """
    import itertools
    out = []
    for r in (1, 2, 3):
        for sub in itertools.combinations("abcd", r):
            cases = "".join(sub)
            out.append((f"base3-{cases}", lambda c=cases: prove_base3(c)))
    out.append(("base4-a", lambda: prove_base4("a")))
    out.append(("base4-b", lambda: prove_base4("b")))
    out.append(("binary-palChecker2", lambda: prove_binary(omit=("palChecker2",))))
    out.append(("binary-palChecker3", lambda: prove_binary(omit=("palChecker3",))))
    out.append(("genpal-1_1", lambda: prove_genpal("gpalChecker_1_1")))
    out.append(("genpal-2_0", lambda: prove_genpal("gpalChecker_2_0")))
    return out


THEOREMS = {
    "binary": prove_binary,
    "corollary": prove_corollary_main,
    "base3": prove_base3,
    "base4": prove_base4,
    "genpal": prove_genpal,
    "gap": prove_gap,
    "antipal": check_antipal_conjectures,
}
