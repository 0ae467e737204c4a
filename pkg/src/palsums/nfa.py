"""Classical finite automata: subset construction, Hopcroft minimization,
products and inclusion with shortest counterexamples."""

from __future__ import annotations

from collections import defaultdict, deque

from .errors import ContractError, RejectedInputError, ResourceLimitError

DEFAULT_BUDGET = 200_000


class NFA:
    """States are ids ``0..n-1``; ``trans`` maps ``(state, symbol)`` to a
    tuple of successors.  ``alphabet`` is a sorted tuple."""

    def __init__(self, labels, initial, accepting, trans, alphabet, name=""):
        self.labels = list(labels)
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.trans = trans
        self.alphabet = tuple(sorted(alphabet))
        self.name = name
        n = len(self.labels)
        for (q, sym), targets in trans.items():
            if not 0 <= q < n or any(not 0 <= r < n for r in targets):
                raise ContractError(f"transition ({q}, {sym}) references an undeclared state")
            if sym not in self._symbol_set:
                raise ContractError(f"transition ({q}, {sym}) uses a symbol outside the alphabet")

    @property
    def _symbol_set(self):
        s = self.__dict__.get("_symbols")
        if s is None:
            s = self.__dict__["_symbols"] = frozenset(self.alphabet)
        return s

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or '?'}: {len(self)} states>"

    def step(self, states, sym):
        out = set()
        for q in states:
            out.update(self.trans.get((q, sym), ()))
        return frozenset(out)


class DFA(NFA):
    """Total deterministic automaton; ``sink`` is the rejecting trap state
    (or ``None`` when every state is live)."""

    def __init__(self, labels, initial, accepting, trans, alphabet, name="", sink=None):
        super().__init__(labels, (initial,), accepting, {k: (v,) for k, v in trans.items()},
                         alphabet, name)
        self.start = initial
        self.delta = trans
        self.sink = sink
        for q in range(len(self.labels)):
            for sym in self.alphabet:
                if (q, sym) not in trans:
                    raise ContractError(f"DFA transition function is not total at ({q}, {sym})")

    def live_size(self):
        """Number of states that can still reach acceptance."""
        return len(self) - (self.sink is not None)


class NFABuilder:
    def __init__(self, alphabet, name=""):
        self.alphabet = tuple(sorted(alphabet))
        self.name = name
        self._ids = {}
        self._labels = []
        self._initial = set()
        self._accepting = set()
        self._trans = defaultdict(set)

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

    def add(self, src, sym, dst):
        self._trans[self.state(src), sym].add(self.state(dst))

    def build(self):
        trans = {k: tuple(sorted(v)) for k, v in self._trans.items()}
        return NFA(self._labels, self._initial, self._accepting, trans, self.alphabet, self.name)


def nfa_accepts(nfa: NFA, word) -> bool:
    current = nfa.initial
    for sym in word:
        if sym not in nfa._symbol_set:
            raise RejectedInputError(f"symbol {sym!r} is not in the alphabet of {nfa.name or 'the NFA'}")
        current = nfa.step(current, sym)
        if not current:
            return False
    return not current.isdisjoint(nfa.accepting)


def determinize(nfa: NFA, budget: int = DEFAULT_BUDGET) -> DFA:
    """Reachable subset construction; the empty subset becomes the sink.

    State labels of the result are bitmasks over the NFA's state ids.
    """
    # Subsets are int bitmasks; succ[sym][q] is the successor mask of q.
    succ = {sym: [0] * len(nfa) for sym in nfa.alphabet}
    for (q, sym), targets in nfa.trans.items():
        m = 0
        for r in targets:
            m |= 1 << r
        succ[sym][q] = m
    acc_mask = 0
    for q in nfa.accepting:
        acc_mask |= 1 << q
    start = 0
    for q in nfa.initial:
        start |= 1 << q
    ids = {start: 0}
    masks = [start]
    trans = {}
    todo = deque([start])
    while todo:
        subset = todo.popleft()
        q = ids[subset]
        members = []
        m = subset
        while m:
            low = m & -m
            members.append(low.bit_length() - 1)
            m ^= low
        for sym in nfa.alphabet:
            row = succ[sym]
            nxt = 0
            for p in members:
                nxt |= row[p]
            r = ids.get(nxt)
            if r is None:
                if len(masks) >= budget:
                    raise ResourceLimitError(f"determinization of {nfa.name or 'NFA'}", budget)
                r = ids[nxt] = len(masks)
                masks.append(nxt)
                todo.append(nxt)
            trans[q, sym] = r
    # Labels stay as bitmasks over the NFA's state ids.
    accepting = [i for i, m in enumerate(masks) if m & acc_mask]
    return DFA(masks, 0, accepting, trans, nfa.alphabet, f"det({nfa.name})", ids.get(0))


def minimize(dfa: DFA) -> DFA:
    """Hopcroft partition refinement followed by canonical BFS numbering.

    Two language-equal DFAs over the same alphabet minimize to identical
    transition tables.
    """
    if not isinstance(dfa, DFA):
        dfa = determinize(dfa)
    # Restrict to reachable states first.
    reach = {dfa.start}
    todo = [dfa.start]
    while todo:
        q = todo.pop()
        for sym in dfa.alphabet:
            r = dfa.delta[q, sym]
            if r not in reach:
                reach.add(r)
                todo.append(r)
    inverse = defaultdict(list)
    for (q, sym), r in dfa.delta.items():
        if q in reach:
            inverse[r, sym].append(q)

    accepting = frozenset(q for q in reach if q in dfa.accepting)
    rejecting = frozenset(reach - accepting)
    partition = [blk for blk in (accepting, rejecting) if blk]
    block_of = {}
    for i, blk in enumerate(partition):
        for q in blk:
            block_of[q] = i
    work = set(range(len(partition)))
    while work:
        splitter = partition[work.pop()]
        for sym in dfa.alphabet:
            preds = set()
            for r in splitter:
                preds.update(inverse.get((r, sym), ()))
            touched = defaultdict(set)
            for q in preds:
                touched[block_of[q]].add(q)
            for i, inside in touched.items():
                blk = partition[i]
                if len(inside) == len(blk):
                    continue
                outside = blk - inside
                inside = frozenset(inside)
                partition[i] = inside
                j = len(partition)
                partition.append(outside)
                for q in outside:
                    block_of[q] = j
                if i in work:
                    work.add(j)
                else:
                    work.add(i if len(inside) <= len(outside) else j)
    # Canonical numbering by BFS over the sorted alphabet.
    order = {block_of[dfa.start]: 0}
    queue = deque([block_of[dfa.start]])
    trans = {}
    while queue:
        b = queue.popleft()
        rep = next(iter(partition[b]))
        for sym in dfa.alphabet:
            t = block_of[dfa.delta[rep, sym]]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
            trans[order[b], sym] = order[t]
    labels = [None] * len(order)
    for b, i in order.items():
        labels[i] = frozenset(partition[b])
    accepting = [order[b] for b in order if next(iter(partition[b])) in dfa.accepting]
    sink = None
    for b, i in order.items():
        if next(iter(partition[b])) not in dfa.accepting and all(
                trans[i, sym] == i for sym in dfa.alphabet):
            sink = i
    return DFA(labels, 0, accepting, trans, dfa.alphabet, f"min({dfa.name})", sink)


def same_dfa(a: DFA, b: DFA) -> bool:
    """Isomorphism of minimal DFAs via their canonical numbering."""
    a, b = minimize(a), minimize(b)
    return (a.alphabet == b.alphabet and len(a) == len(b)
            and a.delta == b.delta and a.accepting == b.accepting)


def _check_alphabets(a, b):
    if a.alphabet != b.alphabet:
        raise ContractError(f"alphabet mismatch between {a.name!r} and {b.name!r}")


def _product(a: NFA, b: NFA, accept, name, complete_b=False):
    _check_alphabets(a, b)
    bld = NFABuilder(a.alphabet, name)
    start = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]
    todo = deque(start)
    for s in start:
        bld.state(s, initial=True, accepting=accept(*s))
    seen = set(start)
    while todo:
        p, q = todo.popleft()
        for sym in a.alphabet:
            pn = a.trans.get((p, sym), ())
            qn = b.trans.get((q, sym), ()) if q is not None else ()
            if not qn and complete_b:
                qn = (None,)
            for p2 in pn:
                for q2 in qn:
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        bld.state((p2, q2), accepting=accept(p2, q2))
                        todo.append((p2, q2))
                    bld.add((p, q), sym, (p2, q2))
    return bld.build()


def intersect(a: NFA, b: NFA) -> NFA:
    return _product(a, b, lambda p, q: p in a.accepting and q in b.accepting,
                    f"({a.name} & {b.name})")


def complement(nfa: NFA, within: NFA) -> NFA:
    """Words of ``within`` that ``nfa`` rejects."""
    d = nfa if isinstance(nfa, DFA) else determinize(nfa)
    return _product(within, d, lambda p, q: p in within.accepting and q not in d.accepting,
                    f"({within.name} - {nfa.name})", complete_b=True)


def dfa_product(a: DFA, b: DFA, accept, name="") -> DFA:
    """Synchronous product of two total DFAs; ``accept`` combines the flags."""
    _check_alphabets(a, b)
    start = (a.start, b.start)
    ids = {start: 0}
    labels = [start]
    trans = {}
    todo = deque([start])
    while todo:
        pair = todo.popleft()
        p, q = pair
        for sym in a.alphabet:
            nxt = (a.delta[p, sym], b.delta[q, sym])
            r = ids.get(nxt)
            if r is None:
                r = ids[nxt] = len(labels)
                labels.append(nxt)
                todo.append(nxt)
            trans[ids[pair], sym] = r
    accepting = [i for i, (p, q) in enumerate(labels)
                 if accept(p in a.accepting, q in b.accepting)]
    return DFA(labels, 0, accepting, trans, a.alphabet, name or f"({a.name} x {b.name})")


def dfa_union(a: DFA, b: DFA) -> DFA:
    return dfa_product(a, b, lambda x, y: x or y, f"({a.name} | {b.name})")


def union(a: NFA, b: NFA) -> NFA:
    """Disjoint union of two NFAs."""
    _check_alphabets(a, b)
    bld = NFABuilder(a.alphabet, f"({a.name} | {b.name})")
    for tag, m in ((0, a), (1, b)):
        for q in range(len(m)):
            bld.state((tag, m.labels[q]), initial=q in m.initial, accepting=q in m.accepting)
        for (q, sym), targets in m.trans.items():
            for r in targets:
                bld.add((tag, m.labels[q]), sym, (tag, m.labels[r]))
    return bld.build()


def shortest_word(nfa: NFA):
    """Shortest accepted word (lexicographically least among those), or None."""
    parent = {}
    todo = deque()
    for q in sorted(nfa.initial):
        parent[q] = None
        todo.append(q)
    while todo:
        q = todo.popleft()
        if q in nfa.accepting:
            word = []
            while parent[q] is not None:
                q, sym = parent[q]
                word.append(sym)
            return tuple(reversed(word))
        for sym in nfa.alphabet:
            for r in nfa.trans.get((q, sym), ()):
                if r not in parent:
                    parent[r] = (q, sym)
                    todo.append(r)
    return None


def is_included(a: NFA, b: NFA, budget: int = DEFAULT_BUDGET) -> tuple:
    """``(True, None)`` if L(a) is a subset of L(b), else ``(False, word)``.

    Explores pairs (state of a, subset of b) breadth first, so the
    counterexample is shortest and, among those, lexicographically least.
    """
    _check_alphabets(a, b)
    start = [(p, frozenset(b.initial)) for p in sorted(a.initial)]
    parent = {s: None for s in start}
    todo = deque(start)
    while todo:
        node = todo.popleft()
        p, qs = node
        if p in a.accepting and qs.isdisjoint(b.accepting):
            word = []
            while parent[node] is not None:
                node, sym = parent[node]
                word.append(sym)
            return False, tuple(reversed(word))
        for sym in a.alphabet:
            qn = b.step(qs, sym)
            for p2 in a.trans.get((p, sym), ()):
                nxt = (p2, qn)
                if nxt not in parent:
                    if len(parent) >= budget:
                        raise ResourceLimitError("inclusion check", budget)
                    parent[nxt] = (node, sym)
                    todo.append(nxt)
    return True, None
