import itertools

import pytest
from hypothesis import given, settings, strategies as st

from palsums import generators as gen
from palsums import nfa as fa
from palsums.encodings import FIRST, PAIR, SECOND, THIRD, TRAIL, FoldedSymbol, folded_alphabet
from palsums.errors import ContractError, RejectedInputError, ResourceLimitError

ALPHA = ("x", "y")


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def truncated_folded_words(max_len):
    """Well-formed base-3 folded words over a few letters of each kind."""
    firsts = [FoldedSymbol(FIRST, d) for d in (1, 2)]
    seconds = [FoldedSymbol(SECOND, d) for d in (0, 2)]
    pairs = [(h, l) for h in (0, 2) for l in (1, 2)]
    trails = [FoldedSymbol(TRAIL, d) for d in (0, 1)]
    for f, s in itertools.product(firsts, seconds):
        yield (f, s)
        for t in trails:
            yield (f, s, t)
        for n in range(1, max_len - 1):
            for ps in itertools.product(pairs, repeat=n):
                body = (f, s) + tuple(FoldedSymbol(THIRD if i == 0 else PAIR, h, l)
                                      for i, (h, l) in enumerate(ps))
                yield body
                if len(body) < max_len:
                    for t in trails:
                        yield body + (t,)


@st.composite
def small_nfas(draw, n_states=4):
    b = fa.NFABuilder(ALPHA, "rand")
    for q in range(n_states):
        b.state(q, initial=q == 0, accepting=draw(st.booleans()))
    for q in range(n_states):
        for s in ALPHA:
            for r in draw(st.lists(st.integers(0, n_states - 1), max_size=2, unique=True)):
                b.add(q, s, r)
    return b.build()


def lang(m, ws):
    return [w for w in ws if fa.nfa_accepts(m, w)]


WORDS_8 = list(words(ALPHA, 8))


def test_self_loop_accepts_everything():
    b = fa.NFABuilder(ALPHA)
    b.state(0, initial=True, accepting=True)
    for s in ALPHA:
        b.add(0, s, 0)
    m = b.build()
    assert all(fa.nfa_accepts(m, w) for w in words(ALPHA, 6))


def test_unknown_symbol_rejected():
    b = fa.NFABuilder(ALPHA)
    b.state(0, initial=True, accepting=True)
    with pytest.raises(RejectedInputError):
        fa.nfa_accepts(b.build(), ("z",))


def test_transition_outside_alphabet():
    with pytest.raises(ContractError):
        fa.NFA([0], [0], [], {(0, "z"): (0,)}, ALPHA)


@settings(max_examples=40, deadline=None)
@given(small_nfas())
def test_determinize_and_minimize(m):
    d = fa.determinize(m)
    assert len(d) <= 2 ** len(m)
    mn = fa.minimize(d)
    assert len(mn) <= len(d)
    assert len(fa.minimize(mn)) == len(mn)
    expected = lang(m, WORDS_8)
    assert lang(d, WORDS_8) == expected
    assert lang(mn, WORDS_8) == expected


@settings(max_examples=30, deadline=None)
@given(small_nfas(), small_nfas())
def test_products(a, b):
    everything = fa.NFABuilder(ALPHA)
    everything.state(0, initial=True, accepting=True)
    for s in ALPHA:
        everything.add(0, s, 0)
    top = everything.build()
    inter, comp = fa.intersect(a, b), fa.complement(a, top)
    uni = fa.union(a, b)
    du = fa.dfa_union(fa.determinize(a), fa.determinize(b))
    for w in words(ALPHA, 6):
        x, y = fa.nfa_accepts(a, w), fa.nfa_accepts(b, w)
        assert fa.nfa_accepts(inter, w) == (x and y)
        assert fa.nfa_accepts(comp, w) == (not x)
        assert fa.nfa_accepts(uni, w) == fa.nfa_accepts(du, w) == (x or y)


@settings(max_examples=40, deadline=None)
@given(small_nfas(), small_nfas())
def test_inclusion_counterexample_is_shortest(a, b):
    holds, w = fa.is_included(a, b)
    diff = [u for u in WORDS_8 if fa.nfa_accepts(a, u) and not fa.nfa_accepts(b, u)]
    if holds:
        assert not diff
    else:
        assert fa.nfa_accepts(a, w) and not fa.nfa_accepts(b, w)
        if diff:
            assert len(w) == len(diff[0])


def test_minimized_isomorphic():
    one = gen.folded_case_machine((1, 2), 3)
    two = fa.union(one, one)
    m1 = fa.minimize(fa.determinize(one))
    m2 = fa.minimize(fa.determinize(two))
    assert fa.same_dfa(m1, m2)


def test_folded_determinize_truncated_words():
    m = gen.folded_case_machine(gen.BASE3_CASES["d"], 3)
    d = fa.determinize(m)
    mn = fa.minimize(d)
    ws = list(truncated_folded_words(8))
    assert len(ws) > 10000
    for w in ws:
        assert fa.nfa_accepts(m, w) == fa.nfa_accepts(d, w) == fa.nfa_accepts(mn, w)


def test_shortest_word():
    syn = gen.folded_syntax(3, 3)
    w = fa.shortest_word(syn)
    # both 'third' and 'trail' end a 3-letter word; letters compare by kind name
    assert [s.kind for s in w] == [FIRST, SECOND, THIRD]
    assert fa.shortest_word(fa.NFA([0], [0], [], {}, ALPHA)) is None


def test_subset_budget():
    with pytest.raises(ResourceLimitError):
        fa.determinize(gen.gen_base3_machine(), budget=100)


def test_folded_alphabet_size():
    assert len(folded_alphabet(3)) == 2 + 3 + 9 + 9 + 3
