import pytest
from hypothesis import given, settings, strategies as st

from palsums import generators as gen
from palsums import nwa
from palsums.encodings import encode_nwa_input
from palsums.errors import ResourceLimitError
from palsums.nwa import BINARY, NWABuilder, accepts, front_loaded_words, parse_word

FIG1 = gen.FIG1_MAPPING
WORDS_12 = list(front_loaded_words(BINARY, 12))
WORDS_14 = list(front_loaded_words(BINARY, 14))


def fig(text):
    return parse_word(text, FIG1)


def fig1_words(max_len):
    alpha = nwa.Alphabet(*(tuple(s for s in FIG1.values() if s.kind == k) for k in nwa.KINDS))
    return list(front_loaded_words(alpha, max_len))


def lang(machine, words):
    return [w for w in words if accepts(machine, w)]


# Small random machines over the binary alphabet, for property tests.
@st.composite
def small_nwas(draw, n_states=3):
    b = NWABuilder(BINARY, "rand")
    for q in range(n_states):
        b.state(q, initial=q == 0, accepting=draw(st.booleans()))
    targets = st.lists(st.integers(0, n_states - 1), max_size=2, unique=True)
    for q in range(n_states):
        for s in BINARY.calls:
            for r in draw(targets):
                b.call(q, s, r)
        for s in BINARY.internals:
            for r in draw(targets):
                b.internal(q, s, r)
        for p in range(n_states):
            for s in BINARY.returns:
                for r in draw(targets):
                    b.ret(q, p, s, r)
    return b.build()


def test_fig1_accepts(fig1):
    assert accepts(fig1, fig("00122"))
    assert accepts(fig1, fig("012"))
    assert not accepts(fig1, fig("1"))
    assert not accepts(fig1, fig("0012"))


def test_pal_checker_examples(pal1):
    assert accepts(pal1, encode_nwa_input(21))
    assert not accepts(pal1, encode_nwa_input(22))


def test_symbol_names_roundtrip():
    for ch in "abcdef":
        assert nwa.symbol(ch).name == ch
    assert nwa.symbol("R2") == nwa.TaggedSymbol(nwa.RETURN, 2)
    assert nwa.word_str(parse_word("b b a f e f")) == "bbafef"


def test_front_loaded_shape():
    assert nwa.is_front_loaded(parse_word("aacff"))
    assert not nwa.is_front_loaded(parse_word("aeaf"))
    assert not nwa.is_front_loaded(parse_word("aaceff"))
    # 1 + 2 + 4*2 + 8 + 16*2 + ...: lengths 0..4 give 1, 2, 4, 8, 16 words
    assert len(list(front_loaded_words(BINARY, 4))) == 31


def test_determinize_fig1(fig1):
    d = nwa.determinize(fig1)
    words = fig1_words(12)
    assert lang(d, words) == lang(fig1, words)
    assert d.deterministic


def test_return_with_empty_stack_is_dead(fig1):
    assert not accepts(fig1, fig("2"))


def test_determinize_preserves_checkers(pal1, syntax):
    for m in (pal1, syntax):
        assert lang(nwa.determinize(m), WORDS_14) == lang(m, WORDS_14)


@settings(max_examples=25, deadline=None)
@given(small_nwas())
def test_determinize_language(m):
    d = nwa.determinize(m)
    for w in WORDS_12:
        assert accepts(d, w) == accepts(m, w)


@settings(max_examples=20, deadline=None)
@given(small_nwas(2), small_nwas(2))
def test_boolean_operations(a, b):
    universe = nwa.universal_nwa()
    inter = nwa.intersect(a, b)
    comp = nwa.complement(a, universe)
    uni = nwa.union(a, b, universe)
    uni_rev = nwa.union(b, a, universe)
    for w in WORDS_12:
        x, y = accepts(a, w), accepts(b, w)
        assert accepts(inter, w) == (x and y)
        assert accepts(comp, w) == (not x)
        assert accepts(uni, w) == accepts(uni_rev, w) == (x or y)


def test_complement_involution(pal1, syntax):
    twice = nwa.complement(nwa.complement(pal1, syntax), syntax)
    for w in WORDS_12:
        assert accepts(twice, w) == (accepts(pal1, w) and accepts(syntax, w))


def test_complement_of_empty_is_within(syntax):
    c = nwa.complement(nwa.empty_nwa(), syntax)
    assert lang(c, WORDS_12) == lang(syntax, WORDS_12)


def test_complement_pal_checker_accepts_two(pal1):
    s = gen.gen_syntax_checker(1)
    assert accepts(nwa.complement(pal1, s), encode_nwa_input(2))


def test_intersect_idempotent_and_universe(pal1):
    assert lang(nwa.intersect(pal1, pal1), WORDS_12) == lang(pal1, WORDS_12)
    assert lang(nwa.intersect(pal1, nwa.universal_nwa()), WORDS_12) == lang(pal1, WORDS_12)


def test_union_with_empty(pal1, syntax):
    u = nwa.union(pal1, nwa.empty_nwa(), syntax)
    assert lang(u, WORDS_12) == [w for w in WORDS_12 if accepts(pal1, w) and accepts(syntax, w)]


def test_is_empty():
    assert nwa.is_empty(nwa.empty_nwa()) == (True, None)
    empty, word = nwa.is_empty(gen.gen_fig1_machine())
    assert not empty
    assert word == fig("012")


def test_is_included_reflexive(pal1):
    assert nwa.is_included(pal1, pal1)[0]


def test_is_included_counterexample(pal1):
    odd = gen.gen_syntax_checker(2, odd_only=True)
    holds, word = nwa.is_included(odd, nwa.determinize(pal1))
    assert not holds
    assert accepts(odd, word) and not accepts(pal1, word)
    # shortest odd 4-bit non-palindrome, lex-min among them
    assert nwa.word_str(word) == "baff"


def test_budget_is_enforced(pal2):
    with pytest.raises(ResourceLimitError):
        nwa.determinize(pal2, budget=10)
