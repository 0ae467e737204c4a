"""Command-line entry point.

Exit statuses: 0 success (or the theorem holds), 1 counterexample or
disagreement, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import generators as gen
from . import nfa as fa
from . import nwa, oracle, prover, serialize
from .encodings import encode_nwa_input, folded_encode
from .errors import ContractError, RejectedInputError, ResourceLimitError

log = logging.getLogger("palsums")

OK, COUNTEREXAMPLE, USAGE, RESOURCE = 0, 1, 2, 3


class _Machine:
    """A named machine with its input encoding and, if known, the oracle
    predicate it should agree with."""

    def __init__(self, build, encode, expected=None):
        self.build, self.encode, self.expected = build, encode, expected


def _pal_cases(*cases, flavor=oracle.PALINDROME):
    return lambda n: oracle.representable_with_offsets(n, cases, 2, flavor)


def _folded(base, table, keys):
    return _Machine(lambda: gen._folded_cases(table, base, keys, f"base{base}"),
                    lambda n: folded_encode(n, base),
                    lambda n: oracle.representable_with_offsets(n, [table[k] for k in keys], base))


def _registry():
    reg = {
        "palChecker": _Machine(gen.gen_pal_checker, encode_nwa_input, _pal_cases((0,))),
        "palChecker2": _Machine(gen.gen_pal_checker2, encode_nwa_input, _pal_cases((0, 2, 3))),
        "palChecker3": _Machine(gen.gen_pal_checker3, encode_nwa_input, _pal_cases((1, 2, 3))),
        "gpalChecker": _Machine(gen.gen_gpal_checker, encode_nwa_input,
                                _pal_cases((0, 0, 1), flavor=oracle.GENERALIZED_PALINDROME)),
        "gapChecker": _Machine(gen.gen_gap_checker, encode_nwa_input,
                               _pal_cases((2,) * 6, flavor=oracle.GENERALIZED_ANTIPALINDROME)),
        "syntax": _Machine(lambda: gen.gen_syntax_checker(4), encode_nwa_input),
        "syntaxOdd": _Machine(lambda: gen.gen_syntax_checker(4, odd_only=True), encode_nwa_input),
        "fig1": _Machine(gen.gen_fig1_machine, None),
        "base3": _folded(3, gen.BASE3_CASES, sorted(gen.BASE3_CASES)),
        "base4": _folded(4, gen.BASE4_CASES, sorted(gen.BASE4_CASES)),
        "base3Syntax": _Machine(lambda: gen.folded_syntax(3, 9), lambda n: folded_encode(n, 3)),
        "base4Syntax": _Machine(lambda: gen.folded_syntax(4, 7), lambda n: folded_encode(n, 4)),
    }
    for k in gen.BASE3_CASES:
        reg[f"base3{k}"] = _folded(3, gen.BASE3_CASES, [k])
    for k in gen.BASE4_CASES:
        reg[f"base4{k}"] = _folded(4, gen.BASE4_CASES, [k])
    return reg


MACHINES = _registry()


def _machine(name):
    # antipal:<count>:<offsets> builds an antipalindrome checker on the fly.
    if name.startswith("antipal:"):
        try:
            _, count, offs = name.split(":")
            count = int(count)
            offsets = tuple(int(x) for x in offs.split(","))
        except ValueError:
            raise ContractError(f"expected antipal:<count>:<offset,...>, got {name!r}")
        full = offsets * count if len(offsets) == 1 else offsets
        return _Machine(lambda: gen.gen_antipal_checker(count, offsets), encode_nwa_input,
                        _pal_cases(full, flavor=oracle.ANTIPALINDROME))
    if name not in MACHINES:
        raise ContractError(f"unknown machine {name!r}; known: {', '.join(sorted(MACHINES))}, antipal:<count>:<offsets>")
    return MACHINES[name]


def parse_range(text):
    """``"17"`` or ``"lo..hi"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ContractError(f"expected an integer or lo..hi, got {text!r}")
    if lo > hi or lo < 0:
        raise ContractError(f"empty or negative range {text!r}")
    return lo, hi


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args):
    m = _machine(args.machine).build()
    _write(serialize.to_native(m), args.out)
    log.info("%s: %d states", m.name, len(m))
    return OK


def cmd_export(args):
    m = _machine(args.machine).build()
    text = serialize.to_ats(m) if args.format == "ats" else serialize.to_native(m)
    _write(text, args.out)
    return OK


def cmd_sim(args):
    entry = _machine(args.machine)
    if entry.encode is None:
        raise ContractError(f"machine {args.machine!r} has no integer encoding")
    m = entry.build()
    run = nwa.accepts if isinstance(m, nwa.NWA) else fa.nfa_accepts
    lo, hi = parse_range(args.target)
    disagreements = 0
    for n in range(max(lo, 1), hi + 1):
        try:
            word = entry.encode(n)
        except ContractError:
            print(f"{n} skipped")
            continue
        got = run(m, word)
        line = f"{n} {'accept' if got else 'reject'}"
        if entry.expected is not None:
            want = entry.expected(n)
            line += f" oracle={'yes' if want else 'no'}"
            if want != got:
                disagreements += 1
                line += " DISAGREE"
        print(line)
    if entry.expected is not None:
        print(f"disagreements={disagreements}")
    return COUNTEREXAMPLE if disagreements else OK


def cmd_prove(args):
    theorem = args.theorem
    if theorem not in prover.THEOREMS:
        raise ContractError(f"unknown theorem {theorem!r}; known: {', '.join(prover.THEOREMS)}")
    ctl = args.negative_control
    if theorem == "binary":
        omit = (ctl,) if ctl else ()
        report = prover.prove_binary(omit=omit, budget=args.budget)
    elif theorem == "base3":
        report = prover.prove_base3("".join(c for c in "abcd" if c not in (ctl or "")))
    elif theorem == "base4":
        report = prover.prove_base4("".join(c for c in "ab" if c not in (ctl or "")))
    elif theorem == "genpal":
        report = prover.prove_genpal(f"gpalChecker_{ctl}" if ctl else "gpalChecker")
    elif theorem == "gap":
        report = prover.prove_gap("gapChecker5" if ctl == "5" else "gapChecker")
    elif ctl:
        raise ContractError(f"theorem {theorem!r} has no negative controls")
    elif theorem == "antipal":
        report = prover.check_antipal_conjectures(attempt_budget=args.budget)
    else:
        report = prover.prove_corollary_main()
    print(report)
    log.info("elapsed %.1fs", report.elapsed)
    return OK if report.holds else COUNTEREXAMPLE


def cmd_oracle(args):
    base, k = args.base, args.max_summands
    if args.query == "exceptions":
        found = oracle.exceptions(args.flavor, k, args.limit, base)
        print(",".join(map(str, found)))
        print(f"count={len(found)}")
        return OK
    if args.query == "min":
        if args.value is None:
            raise ContractError("min needs a target, e.g. 'min 176'")
        lo, hi = parse_range(args.value)
        for n in range(lo, hi + 1):
            m = oracle.min_summands(n, base, args.flavor, cap=k)
            print(f"{n} {m if m is not None else f'>{k}'}")
        return OK
    lo, hi = parse_range(args.query)
    status = OK
    for n in range(lo, hi + 1):
        ok, witness = oracle.decide(oracle.SumQuery(n, base, k, args.flavor))
        if ok:
            print(f"{n} = " + (" + ".join(map(str, witness.summands)) or "0"))
        else:
            print(f"{n} not representable")
            status = COUNTEREXAMPLE
    return status


def cmd_density(args):
    est = oracle.density_prefix(args.flavor, args.max_summands, args.limit, args.base)
    print(f"limit={est.limit}")
    print(f"min_ratio={est.min_ratio.numerator}/{est.min_ratio.denominator}")
    print(f"decimal={float(est.min_ratio):.6f}")
    print(f"argmin={est.argmin}")
    return OK


def build_parser():
    p = argparse.ArgumentParser(prog="palsums", description="Automata and oracle checks for sums of palindromes.")
    p.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate a machine in the native format")
    g.add_argument("machine")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("sim", help="run a machine on integers and compare with the oracle")
    s.add_argument("machine")
    s.add_argument("target", help="integer or lo..hi")
    s.set_defaults(func=cmd_sim)

    pr = sub.add_parser("prove", help="run a theorem check")
    pr.add_argument("theorem", help=", ".join(prover.THEOREMS))
    pr.add_argument("--budget", type=int, default=nwa.DEFAULT_BUDGET)
    pr.add_argument("--negative-control", metavar="CASE",
                    help="weaken the machine: a checker to omit (binary), case letters to drop "
                         "(base3/base4), 1_1 or 2_0 (genpal), 5 (gap)")
    pr.set_defaults(func=cmd_prove)

    o = sub.add_parser("oracle", help="brute-force representability queries")
    o.add_argument("flavor", choices=oracle.FLAVORS)
    o.add_argument("base", type=int)
    o.add_argument("max_summands", type=int)
    o.add_argument("query", help="target, lo..hi, 'exceptions' or 'min'")
    o.add_argument("value", nargs="?", help="target or range for 'min'")
    o.add_argument("--limit", type=int, default=10000, help="upper end for 'exceptions'")
    o.set_defaults(func=cmd_oracle)

    d = sub.add_parser("density", help="exact prefix minimum of A(n)/n")
    d.add_argument("flavor", choices=oracle.FLAVORS)
    d.add_argument("max_summands", type=int)
    d.add_argument("limit", type=int)
    d.add_argument("--base", type=int, default=2)
    d.set_defaults(func=cmd_density)

    e = sub.add_parser("export", help="write a machine as automata script or native text")
    e.add_argument("machine")
    e.add_argument("--format", choices=("ats", "native"), default="ats")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        return args.func(args)
    except (ContractError, RejectedInputError) as exc:
        print(f"palsums: error: {exc}", file=sys.stderr)
        return USAGE
    except ResourceLimitError as exc:
        print(f"palsums: resource limit: {exc}", file=sys.stderr)
        return RESOURCE
    finally:
        log.info("%s finished in %.2fs", args.verb, time.perf_counter() - start)


if __name__ == "__main__":
    sys.exit(main())
