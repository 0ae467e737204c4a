"""Nested-word automata restricted to front-loaded words.

The words this package feeds to an NWA have the shape
``calls, at most one internal, returns`` with as many returns as calls.
Runs and the summary construction below are written for general nested
words, but language comparisons (emptiness, inclusion, witnesses) only
range over that front-loaded shape.

States are stored as integer ids; ``labels[i]`` keeps whatever
hashable object the generator used for state ``i``.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable, NamedTuple

from .errors import ContractError, RejectedInputError, ResourceLimitError

CALL = "call"
INTERNAL = "internal"
RETURN = "return"
KINDS = (CALL, INTERNAL, RETURN)

DEFAULT_BUDGET = 200_000

# Stack bottom marker used while exploring configurations.
_BOTTOM = -1


class TaggedSymbol(NamedTuple):
    kind: str
    digit: int

    @property
    def name(self) -> str:
        if self.digit in (0, 1):
            return "abcdef"[2 * KINDS.index(self.kind) + self.digit]
        return f"{self.kind[0].upper()}{self.digit}"

    def __str__(self):
        return self.name

    def __repr__(self):
        return self.name


def symbol(name: str) -> TaggedSymbol:
    """Inverse of ``TaggedSymbol.name``."""
    if len(name) == 1 and name in "abcdef":
        i = "abcdef".index(name)
        return TaggedSymbol(KINDS[i // 2], i % 2)
    kind = {"C": CALL, "I": INTERNAL, "R": RETURN}.get(name[:1])
    if kind is None or not name[1:].isdigit():
        raise ContractError(f"unknown symbol name {name!r}")
    return TaggedSymbol(kind, int(name[1:]))


A, B, C, D, E, F = (symbol(ch) for ch in "abcdef")


class Alphabet(NamedTuple):
    calls: tuple
    internals: tuple
    returns: tuple

    def __contains__(self, sym):
        return sym in self.calls or sym in self.internals or sym in self.returns

    def symbols(self):
        return self.calls + self.internals + self.returns


BINARY = Alphabet((A, B), (C, D), (E, F))


def parse_word(text: str, mapping: dict | None = None) -> tuple:
    """Parse ``"bbafef"`` (or ``"b b a f e f"``) into a word.

    ``mapping`` translates characters for non-binary alphabets, e.g. the
    ``0^n 1 2^n`` example machine maps ``"0"`` to a call symbol.
    """
    text = text.replace(" ", "")
    if mapping is not None:
        return tuple(mapping[ch] for ch in text)
    return tuple(symbol(ch) for ch in text)


def word_str(word) -> str:
    return "".join(s.name for s in word)


def is_front_loaded(word) -> bool:
    kinds = [s.kind for s in word]
    n_calls = kinds.count(CALL)
    n_int = kinds.count(INTERNAL)
    if n_int > 1 or kinds.count(RETURN) != n_calls:
        return False
    return kinds == sorted(kinds, key=KINDS.index)


def front_loaded_words(alphabet: Alphabet, max_length: int):
    """All front-loaded words of length <= max_length, shortest first."""
    from itertools import product

    for length in range(max_length + 1):
        half, odd = divmod(length, 2)
        middles = alphabet.internals if odd else ((),)
        for calls in product(alphabet.calls, repeat=half):
            for mid in middles:
                mid = (mid,) if odd else ()
                for rets in product(alphabet.returns, repeat=half):
                    yield calls + mid + rets


class NWA:
    """A nested-word automaton over integer state ids.

    ``calls`` maps ``(state, symbol)``, ``internals`` maps
    ``(state, symbol)`` and ``returns`` maps
    ``(state, popped_state, symbol)`` to tuples of successor ids.
    A call pushes its source state.
    """

    def __init__(self, labels, initial, accepting, calls, internals, returns,
                 alphabet=BINARY, deterministic=False, name=""):
        self.labels = list(labels)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.calls = calls
        self.internals = internals
        self.returns = returns
        self.alphabet = alphabet
        self.deterministic = deterministic
        self.name = name

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        kind = "deterministic" if self.deterministic else "nondeterministic"
        return f"<NWA {self.name or '?'}: {len(self)} states, {kind}>"

    @property
    def states(self):
        return range(len(self.labels))

    def state_id(self, label):
        index = getattr(self, "_index", None)
        if index is None:
            index = self._index = {lab: i for i, lab in enumerate(self.labels)}
        return index[label]

    def check(self):
        """Raise ContractError if a structural invariant is violated."""
        n = len(self.labels)
        tables = (self.calls, self.internals, self.returns)
        for table in tables:
            for key, targets in table.items():
                for q in key[:-1]:
                    if not 0 <= q < n:
                        raise ContractError(f"transition {key} uses unknown state {q}")
                if key[-1] not in self.alphabet:
                    raise ContractError(f"transition {key} uses symbol outside the alphabet")
                for q in targets:
                    if not 0 <= q < n:
                        raise ContractError(f"transition {key} targets unknown state {q}")
                if self.deterministic and len(targets) > 1:
                    raise ContractError(f"deterministic NWA has {len(targets)} successors on {key}")
        for q in self.initial | self.accepting:
            if not 0 <= q < n:
                raise ContractError(f"unknown state {q}")
        if self.deterministic and len(self.initial) != 1:
            raise ContractError("deterministic NWA needs exactly one initial state")
        return self


class NWABuilder:
    """Accumulates transitions over arbitrary hashable state labels."""

    def __init__(self, alphabet=BINARY, name=""):
        self.alphabet = alphabet
        self.name = name
        self._ids = {}
        self._labels = []
        self._initial = set()
        self._accepting = set()
        self._calls = defaultdict(set)
        self._internals = defaultdict(set)
        self._returns = defaultdict(set)

    def state(self, label, initial=False, accepting=False):
        i = self._ids.get(label)
        if i is None:
            i = self._ids[label] = len(self._labels)
            self._labels.append(label)
        if initial:
            self._initial.add(i)
        if accepting:
            self._accepting.add(i)
        return i

    def call(self, src, sym, dst):
        self._calls[self.state(src), sym].add(self.state(dst))

    def internal(self, src, sym, dst):
        self._internals[self.state(src), sym].add(self.state(dst))

    def ret(self, src, popped, sym, dst):
        self._returns[self.state(src), self.state(popped), sym].add(self.state(dst))

    def build(self, deterministic=False):
        def freeze(table):
            return {k: tuple(sorted(v)) for k, v in table.items()}

        return NWA(self._labels, self._initial, self._accepting,
                   freeze(self._calls), freeze(self._internals), freeze(self._returns),
                   self.alphabet, deterministic, self.name).check()


# ---------------------------------------------------------------------------
# Summaries: a determinized state is a set of (entry, current) pairs, stored
# as a mapping entry -> frozenset of current states.  The entry is the state
# pushed by the most recent pending call (or an initial state at top level).


def _initial_summary(nwa):
    return {q: frozenset((q,)) for q in nwa.initial}


def _currents(summary):
    out = set()
    for curs in summary.values():
        out |= curs
    return out


def _summary_call(nwa, summary, sym, table):
    out = {}
    for q in _currents(summary):
        targets = table.get((q, sym))
        if targets:
            out[q] = targets
    return out


def _summary_internal(nwa, summary, sym, table):
    out = {}
    for entry, curs in summary.items():
        nxt = set()
        for q in curs:
            nxt.update(table.get((q, sym), ()))
        if nxt:
            out[entry] = nxt
    return out


def _invert(summary):
    inv = defaultdict(list)
    for entry, curs in summary.items():
        for q in curs:
            inv[q].append(entry)
    return inv


def _summary_return(nwa, summary, popped_inv, sym):
    returns = nwa.returns
    out = defaultdict(set)
    for pushed, curs in summary.items():
        entries = popped_inv.get(pushed)
        if not entries:
            continue
        nxt = set()
        for s in curs:
            nxt.update(returns.get((s, pushed, sym), ()))
        if nxt:
            for e in entries:
                out[e] |= nxt
    return out


def _frozen_call_table(nwa):
    cache = getattr(nwa, "_call_sets", None)
    if cache is None:
        cache = nwa._call_sets = {k: frozenset(v) for k, v in nwa.calls.items()}
    return cache


def accepts(nwa: NWA, word) -> bool:
    """Simulate ``nwa`` on ``word`` by tracking run summaries.

    A return with nothing left to pop kills every run.  Pending calls at
    the end of the word do not prevent acceptance.
    """
    calls = _frozen_call_table(nwa)
    summary = _initial_summary(nwa)
    stack = []
    for sym in word:
        if sym not in nwa.alphabet:
            raise RejectedInputError(f"symbol {sym!r} is not in the alphabet of {nwa.name or 'the NWA'}")
        if sym.kind == CALL:
            stack.append(summary)
            summary = _summary_call(nwa, summary, sym, calls)
        elif sym.kind == INTERNAL:
            summary = _summary_internal(nwa, summary, sym, nwa.internals)
        else:
            if not stack:
                return False
            summary = _summary_return(nwa, summary, _invert(stack.pop()), sym)
        if not summary:
            return False
    return any(q in nwa.accepting for q in _currents(summary))


# ---------------------------------------------------------------------------
# Explicit construction of reachable state spaces.


def _explore(initial, alphabet, call_fn, internal_fn, return_fn, accepting_fn, *,
             deterministic, budget, name, what):
    """Build the reachable part of an implicitly given NWA.

    Reachability is computed over configurations (top of stack, current
    state), so only return transitions that can actually fire are built.
    """
    ids = {}
    labels = []

    def intern(label):
        i = ids.get(label)
        if i is None:
            i = len(labels)
            if i >= budget:
                raise ResourceLimitError(what, budget)
            ids[label] = i
            labels.append(label)
        return i

    def interned(targets):
        return tuple(sorted({intern(t) for t in targets}))

    calls, internals, returns = {}, {}, {}
    init = [intern(lab) for lab in initial]
    contexts = defaultdict(set)
    over = defaultdict(set)
    expanded = set()
    seen = set()
    work = deque()

    def push(t, u):
        if (t, u) not in seen:
            seen.add((t, u))
            work.append((t, u))

    for q in init:
        push(_BOTTOM, q)

    while work:
        t, u = work.popleft()
        contexts[u].add(t)
        if u not in expanded:
            expanded.add(u)
            for a in alphabet.calls:
                targets = interned(call_fn(labels[u], a))
                if targets:
                    calls[u, a] = targets
            for c in alphabet.internals:
                targets = interned(internal_fn(labels[u], c))
                if targets:
                    internals[u, c] = targets
        for r in list(over.get(u, ())):
            push(t, r)
        for a in alphabet.calls:
            for v in calls.get((u, a), ()):
                push(u, v)
        for c in alphabet.internals:
            for v in internals.get((u, c), ()):
                push(t, v)
        if t != _BOTTOM:
            for e in alphabet.returns:
                key = (u, t, e)
                if key in returns:
                    continue
                targets = interned(return_fn(labels[u], labels[t], e))
                if not targets:
                    continue
                returns[key] = targets
                for r in targets:
                    if r not in over[t]:
                        over[t].add(r)
                        for t2 in list(contexts[t]):
                            push(t2, r)

    accepting = [i for i, lab in enumerate(labels) if accepting_fn(lab)]
    return NWA(labels, init, accepting, calls, internals, returns,
               alphabet, deterministic, name)


def determinize(nwa: NWA, budget: int = DEFAULT_BUDGET) -> NWA:
    """Summary-set determinization.

    Each resulting state is a frozenset of ``(entry, currents)`` pairs;
    the empty frozenset is the sink.  Transitions are built for every
    reachable configuration, so the result is total where it can be run.
    """
    if nwa.deterministic:
        return nwa
    call_table = _frozen_call_table(nwa)
    interned_sets = {}
    inverses = {}

    def canon(summary):
        items = []
        for entry, curs in summary.items():
            curs = frozenset(curs)
            curs = interned_sets.setdefault(curs, curs)
            items.append((entry, curs))
        return frozenset(items)

    def as_dict(label):
        return dict(label)

    def call_fn(label, sym):
        return (canon(_summary_call(nwa, as_dict(label), sym, call_table)),)

    def internal_fn(label, sym):
        return (canon(_summary_internal(nwa, as_dict(label), sym, nwa.internals)),)

    def return_fn(label, popped, sym):
        inv = inverses.get(popped)
        if inv is None:
            inv = inverses[popped] = _invert(as_dict(popped))
        return (canon(_summary_return(nwa, as_dict(label), inv, sym)),)

    acc = nwa.accepting

    def accepting_fn(label):
        return any(not curs.isdisjoint(acc) for _, curs in label)

    return _explore([canon(_initial_summary(nwa))], nwa.alphabet, call_fn, internal_fn,
                    return_fn, accepting_fn, deterministic=True, budget=budget,
                    name=f"det({nwa.name})", what=f"determinization of {nwa.name or 'NWA'}")


def _check_alphabets(*machines):
    first = machines[0].alphabet
    for m in machines[1:]:
        if m.alphabet != first:
            raise ContractError(f"alphabet mismatch between {machines[0].name!r} and {m.name!r}")


def _product(machines, accepting_fn, *, complete, name, budget):
    """Synchronous product over tuples of component ids.

    Components flagged in ``complete`` are deterministic and a missing
    transition sends them to ``None`` (an implicit rejecting sink) instead
    of killing the product run.
    """
    _check_alphabets(*machines)

    def combine(options):
        result = [()]
        for opts in options:
            result = [r + (o,) for r in result for o in opts]
        return result

    def step(targets_of, label):
        options = []
        for i, q in enumerate(label):
            targets = targets_of(i, q) if q is not None else ()
            if not targets:
                if not complete[i]:
                    return ()
                targets = (None,)
            options.append(targets)
        return combine(options)

    def call_fn(label, sym):
        return step(lambda i, q: machines[i].calls.get((q, sym)), label)

    def internal_fn(label, sym):
        return step(lambda i, q: machines[i].internals.get((q, sym)), label)

    def return_fn(label, popped, sym):
        options = []
        for i, (q, p) in enumerate(zip(label, popped)):
            targets = machines[i].returns.get((q, p, sym)) if q is not None and p is not None else None
            if not targets:
                if not complete[i]:
                    return ()
                targets = (None,)
            options.append(targets)
        return combine(options)

    initial = combine([sorted(m.initial) for m in machines])
    return _explore(initial, machines[0].alphabet, call_fn, internal_fn, return_fn,
                    accepting_fn, deterministic=all(m.deterministic for m in machines),
                    budget=budget, name=name, what=f"product {name}")


def intersect(a: NWA, b: NWA, budget: int = DEFAULT_BUDGET) -> NWA:
    acc_a, acc_b = a.accepting, b.accepting
    return _product([a, b], lambda lab: lab[0] in acc_a and lab[1] in acc_b,
                    complete=(False, False), name=f"({a.name} & {b.name})", budget=budget)


def complement(nwa: NWA, within: NWA, budget: int = DEFAULT_BUDGET) -> NWA:
    """Words accepted by ``within`` and rejected by ``nwa``."""
    det = determinize(nwa, budget)
    acc_w, acc_d = within.accepting, det.accepting
    return _product([within, det], lambda lab: lab[0] in acc_w and lab[1] not in acc_d,
                    complete=(False, True), name=f"({within.name} - {nwa.name})", budget=budget)


def union(a: NWA, b: NWA, within: NWA, budget: int = DEFAULT_BUDGET) -> NWA:
    """``(L(a) | L(b)) & L(within)`` through complement and intersection."""
    both_missing = intersect(complement(a, within, budget), complement(b, within, budget), budget)
    result = complement(both_missing, within, budget)
    result.name = f"({a.name} | {b.name})"
    return result


def empty_nwa(alphabet=BINARY, name="empty") -> NWA:
    return NWA([0], [0], [], {}, {}, {}, alphabet, True, name)


def universal_nwa(alphabet=BINARY, name="universe") -> NWA:
    """Accepts every front-loaded word (every nested word, in fact)."""
    calls = {(0, a): (0,) for a in alphabet.calls}
    internals = {(0, c): (0,) for c in alphabet.internals}
    returns = {(0, 0, e): (0,) for e in alphabet.returns}
    return NWA([0], [0], [0], calls, internals, returns, alphabet, True, name)


# ---------------------------------------------------------------------------
# Emptiness over front-loaded words.


def _call_closure(nwa):
    seen = set(nwa.initial)
    todo = list(seen)
    succ = defaultdict(list)
    for (q, a), targets in nwa.calls.items():
        succ[q].extend((a, r) for r in targets)
    while todo:
        q = todo.pop()
        for _, r in succ[q]:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen, succ


def is_empty(nwa: NWA) -> tuple:
    """Return ``(True, None)`` or ``(False, shortest accepted word)``.

    Searches pairs (p, r) meaning "some front-loaded word leads from p to
    r"; wrapping with a call from p' into p and a return popping p' gives
    a word two symbols longer.  Among shortest witnesses the
    lexicographically smallest (a < b < ... < f) is returned.
    """
    reachable, succ = _call_closure(nwa)
    pred = defaultdict(list)
    for q in reachable:
        for a, r in succ[q]:
            pred[r].append((a, q))
    alphabet = nwa.alphabet
    returns = nwa.returns
    initial, accepting = nwa.initial, nwa.accepting

    dist = {}
    layer = [(p, p) for p in sorted(reachable)]
    pending = [(p, r) for p in sorted(reachable) for c in alphabet.internals
               for r in nwa.internals.get((p, c), ())]
    length = 0
    while layer or pending:
        fresh = []
        for node in layer:
            if node not in dist:
                dist[node] = length
                fresh.append(node)
        hits = [n for n in fresh if n[0] in initial and n[1] in accepting]
        if hits:
            return False, _lex_min_witness(nwa, dist, hits, length, reachable)
        nxt = []
        for p, r in fresh:
            for _, p2 in pred.get(p, ()):
                for e in alphabet.returns:
                    for r2 in returns.get((r, p2, e), ()):
                        if (p2, r2) not in dist:
                            nxt.append((p2, r2))
        layer, pending = pending, nxt
        length += 1
    return True, None


def _lex_min_witness(nwa, dist, targets, length, reachable):
    rev = defaultdict(list)
    for (r, p, e), targets_ in nwa.returns.items():
        for r2 in targets_:
            rev[p, e, r2].append(r)
    alphabet = nwa.alphabet

    def inner_edges(node):
        # Nodes one wrapping level further in, with the symbols that wrap them.
        p2, r2 = node
        want = dist[node] - 2
        out = []
        for a in alphabet.calls:
            for p in nwa.calls.get((p2, a), ()):
                if p not in reachable:
                    continue
                for e in alphabet.returns:
                    for r in rev.get((p2, e, r2), ()):
                        if dist.get((p, r)) == want:
                            out.append((a, e, (p, r)))
        return out

    # Outside-in: fix the call symbols, outermost first.
    frontier = set(targets)
    levels = []
    for _ in range(length // 2):
        edges = [(a, e, node, inner) for node in frontier for a, e, inner in inner_edges(node)]
        best = min(a for a, _, _, _ in edges)
        edges = [x for x in edges if x[0] == best]
        levels.append((best, edges))
        frontier = {inner for _, _, _, inner in edges}

    middle = ()
    if length % 2:
        options = []
        for p, r in frontier:
            for c in alphabet.internals:
                if r in nwa.internals.get((p, c), ()):
                    options.append((c, (p, r)))
        best = min(c for c, _ in options)
        middle = (best,)
        chosen = {node for c, node in options if c == best}
    else:
        chosen = {n for n in frontier if n[0] == n[1]}

    # Inside-out: fix the return symbols, innermost first.
    rets = []
    for _, edges in reversed(levels):
        usable = [(e, node) for _, e, node, inner in edges if inner in chosen]
        best = min(e for e, _ in usable)
        rets.append(best)
        chosen = {node for e, node in usable if e == best}
    calls = tuple(a for a, _ in levels)
    return calls + middle + tuple(rets)


def is_included(a: NWA, b: NWA, budget: int = DEFAULT_BUDGET) -> tuple:
    """``(True, None)`` if L(a) is a subset of L(b), else ``(False, word)``
    with ``word`` a shortest member of L(a) - L(b)."""
    _check_alphabets(a, b)
    return is_empty(complement(b, a, budget))
