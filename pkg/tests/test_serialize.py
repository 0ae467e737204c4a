import pytest

from palsums import generators as gen
from palsums import serialize
from palsums.encodings import encode_nwa_input, folded_encode
from palsums.errors import ContractError
from palsums.nfa import nfa_accepts
from palsums.nwa import BINARY, accepts, front_loaded_words

WORDS = list(front_loaded_words(BINARY, 10))


def same_nwa_language(a, b, words=WORDS):
    return all(accepts(a, w) == accepts(b, w) for w in words)


@pytest.mark.parametrize("build", [gen.gen_pal_checker, gen.gen_gpal_checker,
                                   lambda: gen.gen_syntax_checker(2, odd_only=True)])
def test_native_roundtrip_nwa(build):
    m = build()
    text = serialize.to_native(m)
    back = serialize.from_native(text)
    assert len(back) == len(m) and back.name == m.name
    assert serialize.to_native(back) == text
    assert same_nwa_language(m, back)


def test_ats_roundtrip_nwa():
    m = gen.gen_gpal_checker()
    back = serialize.from_ats(serialize.to_ats(m))
    assert len(back) == len(m)
    assert same_nwa_language(m, back)
    assert all(accepts(back, encode_nwa_input(n)) == accepts(m, encode_nwa_input(n)) for n in range(1, 600))


def test_fig1_roundtrip(fig1):
    text = serialize.to_ats(fig1)
    assert text.startswith("NestedWordAutomaton fig1 = (")
    back = serialize.from_ats(text)
    assert serialize.to_native(back).splitlines()[3:] == serialize.to_native(fig1).splitlines()[3:]


@pytest.mark.parametrize("fmt", ["native", "ats"])
def test_folded_roundtrip(fmt):
    m = gen.gen_base3_machine("d")
    text = serialize.to_native(m) if fmt == "native" else serialize.to_ats(m)
    back = serialize.from_native(text) if fmt == "native" else serialize.from_ats(text)
    assert len(back) == len(m)
    for n in range(27, 2000):
        w = folded_encode(n, 3)
        assert nfa_accepts(back, w) == nfa_accepts(m, w)


def test_state_names_fallback():
    m = gen.gen_pal_checker()
    names = serialize.state_names(m)
    assert len(set(names)) == len(names)
    assert all(" " not in s for s in names)


def test_malformed_input():
    with pytest.raises(ContractError):
        serialize.from_native("machine nwa\nstate q0 initial\ncall q0 a q9\n")
    with pytest.raises(ContractError):
        serialize.from_native("machine nwa\nbogus record\n")
    with pytest.raises(ContractError):
        serialize.from_ats("nothing here")
