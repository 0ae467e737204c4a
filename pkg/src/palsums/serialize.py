"""Text formats for machines.

The native format is line oriented: a header, one ``symbol`` line per
letter, one ``state`` line per state and one line per transition.  It is
the round-trip source of truth.  ``to_ats`` writes the automata-script
subset understood by common automata toolkits; ``from_ats`` reads that
subset back.
"""

from __future__ import annotations

import re
from collections import defaultdict

from .encodings import FoldedSymbol
from .errors import ContractError
from .nfa import NFA
from .nwa import CALL, INTERNAL, NWA, RETURN, Alphabet, TaggedSymbol, symbol

_SAFE = re.compile(r"^[A-Za-z0-9_.\[\](),+-]+$")


def state_names(machine) -> list:
    """Printable, unique, whitespace-free state names."""
    names = []
    for label in machine.labels:
        text = str(label)
        names.append(text if _SAFE.match(text) and not isinstance(label, (tuple, frozenset, int)) else None)
    if None in names or len(set(names)) != len(names):
        return [f"q{i}" for i in range(len(machine))]
    return names


def _symbol_name(sym):
    if isinstance(sym, TaggedSymbol):
        return sym.name
    return str(sym)


def _folded_from_name(name):
    m = re.fullmatch(r"(\w+)\((\d+)\)", name)
    if m:
        return FoldedSymbol(m.group(1), int(m.group(2)))
    m = re.fullmatch(r"(\w+)\[(\d+),(\d+)\]", name)
    if m:
        return FoldedSymbol(m.group(1), int(m.group(2)), int(m.group(3)))
    return None


# Native --------------------------------------------------------------------

def to_native(machine) -> str:
    names = state_names(machine)
    lines = []
    if isinstance(machine, NWA):
        lines += ["machine nwa", f"name {machine.name or 'unnamed'}",
                  f"deterministic {str(machine.deterministic).lower()}"]
        for kind, syms in zip((CALL, INTERNAL, RETURN), machine.alphabet):
            for s in syms:
                lines.append(f"symbol {s.name} {kind} {s.digit}")
    elif isinstance(machine, NFA):
        lines += ["machine nfa", f"name {machine.name or 'unnamed'}"]
        for s in machine.alphabet:
            if isinstance(s, FoldedSymbol):
                lines.append(f"symbol {s} folded {s.kind} {s.high} {s.low}")
            else:
                lines.append(f"symbol {_symbol_name(s)} plain")
    else:
        raise ContractError(f"cannot serialize {type(machine).__name__}")
    for q, name in enumerate(names):
        flags = [f for f, on in (("initial", q in machine.initial),
                                 ("accepting", q in machine.accepting)) if on]
        lines.append(" ".join(["state", name] + flags))
    if isinstance(machine, NWA):
        for table, tag in ((machine.calls, "call"), (machine.internals, "internal")):
            for (q, s), targets in sorted(table.items()):
                lines += [f"{tag} {names[q]} {s.name} {names[r]}" for r in targets]
        for (q, p, s), targets in sorted(machine.returns.items()):
            lines += [f"return {names[q]} {names[p]} {s.name} {names[r]}" for r in targets]
    else:
        for (q, s), targets in sorted(machine.trans.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
            lines += [f"trans {names[q]} {_symbol_name(s)} {names[r]}" for r in targets]
    return "\n".join(lines) + "\n"


def from_native(text: str):
    header = {}
    symbols = {}
    states, initial, accepting = [], set(), set()
    edges = []
    kind_order = {CALL: [], INTERNAL: [], RETURN: []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        try:
            if tag in ("machine", "name", "deterministic"):
                header[tag] = parts[1]
            elif tag == "symbol":
                if parts[2] in kind_order:
                    sym = TaggedSymbol(parts[2], int(parts[3]))
                    kind_order[parts[2]].append(sym)
                elif parts[2] == "folded":
                    sym = FoldedSymbol(parts[3], int(parts[4]), int(parts[5]))
                else:
                    sym = parts[1]
                symbols[parts[1]] = sym
            elif tag == "state":
                states.append(parts[1])
                if "initial" in parts[2:]:
                    initial.add(parts[1])
                if "accepting" in parts[2:]:
                    accepting.add(parts[1])
            elif tag in ("call", "internal", "return", "trans"):
                edges.append(parts)
            else:
                raise ContractError(f"unknown record {tag!r}")
        except (IndexError, ValueError) as exc:
            raise ContractError(f"line {lineno}: malformed record {line!r}") from exc
    return _assemble(header.get("machine"), header.get("name", ""),
                     header.get("deterministic") == "true", symbols, kind_order,
                     states, initial, accepting, edges)


def _assemble(kind, name, deterministic, symbols, kind_order, states, initial, accepting, edges):
    ids = {s: i for i, s in enumerate(states)}

    def sid(s):
        if s not in ids:
            raise ContractError(f"transition references undeclared state {s!r}")
        return ids[s]

    def sym(s):
        if s not in symbols:
            raise ContractError(f"transition uses undeclared symbol {s!r}")
        return symbols[s]

    if kind == "nwa":
        tables = {"call": defaultdict(set), "internal": defaultdict(set), "return": defaultdict(set)}
        for e in edges:
            if e[0] == "return":
                tables["return"][sid(e[1]), sid(e[2]), sym(e[3])].add(sid(e[4]))
            else:
                tables[e[0]][sid(e[1]), sym(e[2])].add(sid(e[3]))
        alphabet = Alphabet(*(tuple(kind_order[k]) for k in (CALL, INTERNAL, RETURN)))
        frozen = [{k: tuple(sorted(v)) for k, v in tables[t].items()} for t in ("call", "internal", "return")]
        return NWA(states, {ids[s] for s in initial}, {ids[s] for s in accepting}, *frozen,
                   alphabet=alphabet, deterministic=deterministic, name=name).check()
    if kind == "nfa":
        trans = defaultdict(set)
        for e in edges:
            trans[sid(e[1]), sym(e[2])].add(sid(e[3]))
        return NFA(states, {ids[s] for s in initial}, {ids[s] for s in accepting},
                   {k: tuple(sorted(v)) for k, v in trans.items()}, symbols.values(), name)
    raise ContractError(f"unknown machine kind {kind!r}")


# Automata script subset --------------------------------------------------------

def _q(items):
    return "{" + " ".join(f'"{x}"' for x in items) + (" }" if items else "}")


def to_ats(machine) -> str:
    names = state_names(machine)
    ident = re.sub(r"\W", "_", machine.name or "machine") or "machine"
    head = [_q(names), _q([names[q] for q in sorted(machine.initial)]),
            _q([names[q] for q in sorted(machine.accepting)])]
    if isinstance(machine, NWA):
        calls = [f'("{names[q]}" "{s.name}" "{names[r]}")'
                 for (q, s), ts in sorted(machine.calls.items()) for r in ts]
        internals = [f'("{names[q]}" "{s.name}" "{names[r]}")'
                     for (q, s), ts in sorted(machine.internals.items()) for r in ts]
        returns = [f'("{names[q]}" "{names[p]}" "{s.name}" "{names[r]}")'
                   for (q, p, s), ts in sorted(machine.returns.items()) for r in ts]
        parts = [
            f"NestedWordAutomaton {ident} = (",
            f"    callAlphabet = {_q([s.name for s in machine.alphabet.calls])},",
            f"    internalAlphabet = {_q([s.name for s in machine.alphabet.internals])},",
            f"    returnAlphabet = {_q([s.name for s in machine.alphabet.returns])},",
            f"    states = {head[0]},",
            f"    initialStates = {head[1]},",
            f"    finalStates = {head[2]},",
            "    callTransitions = {", *(f"        {t}" for t in calls), "    },",
            "    internalTransitions = {", *(f"        {t}" for t in internals), "    },",
            "    returnTransitions = {", *(f"        {t}" for t in returns), "    }",
            ");",
        ]
    else:
        trans = [f'("{names[q]}" "{_symbol_name(s)}" "{names[r]}")'
                 for (q, s), ts in sorted(machine.trans.items(), key=lambda kv: (kv[0][0], str(kv[0][1])))
                 for r in ts]
        parts = [
            f"FiniteAutomaton {ident} = (",
            f"    alphabet = {_q([_symbol_name(s) for s in machine.alphabet])},",
            f"    states = {head[0]},",
            f"    initialStates = {head[1]},",
            f"    finalStates = {head[2]},",
            "    transitions = {", *(f"        {t}" for t in trans), "    }",
            ");",
        ]
    return "\n".join(parts) + "\n"


_DECL = re.compile(r"(NestedWordAutomaton|FiniteAutomaton)\s+(\w+)\s*=\s*\((.*)\)\s*;", re.S)
_FIELD = re.compile(r"(\w+)\s*=\s*\{(.*?)\}\s*(?:,|$)", re.S)
_TUPLE = re.compile(r'\(((?:\s*"[^"]*")+)\s*\)')
_STR = re.compile(r'"([^"]*)"')


def from_ats(text: str):
    m = _DECL.search(text)
    if not m:
        raise ContractError("no automaton declaration found")
    kind, name, body = m.groups()
    fields = {}
    for f in _FIELD.finditer(body):
        inner = f.group(2)
        tuples = _TUPLE.findall(inner)
        fields[f.group(1)] = [_STR.findall(t) for t in tuples] if tuples else _STR.findall(inner)
    try:
        states = fields["states"]
        initial, accepting = set(fields["initialStates"]), set(fields["finalStates"])
    except KeyError as exc:
        raise ContractError(f"missing field {exc.args[0]}") from exc
    if kind == "NestedWordAutomaton":
        kind_order = {}
        symbols = {}
        for key, k in (("callAlphabet", CALL), ("internalAlphabet", INTERNAL), ("returnAlphabet", RETURN)):
            kind_order[k] = []
            for s in fields.get(key, []):
                sym = symbol(s)
                if sym.kind != k:
                    raise ContractError(f"symbol {s!r} listed under {key}")
                kind_order[k].append(sym)
                symbols[s] = sym
        edges = [["call"] + t for t in fields.get("callTransitions", [])]
        edges += [["internal"] + t for t in fields.get("internalTransitions", [])]
        edges += [["return"] + t for t in fields.get("returnTransitions", [])]
        return _assemble("nwa", name, False, symbols, kind_order, states, initial, accepting, edges)
    symbols = {}
    for s in fields.get("alphabet", []):
        symbols[s] = _folded_from_name(s) or s
    edges = [["trans"] + t for t in fields.get("transitions", [])]
    return _assemble("nfa", name, False, symbols, {}, states, initial, accepting, edges)
