import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from threepage.pages import (GeneralLetter, GeneralWord, NotExpressible, UnbalancedError,
                             abstract_graph, arc_matching, bracket_projection, is_balanced,
                             lift, parse_general, specialize, stubs)
from threepage.words import Alphabet, Word, parse_word, regular_letters

import oracles
from reference import FIG4A, FIG4B, HOPF, TREFOIL

TOKENS = [l.token for l in Alphabet.for_n(6).letters()]


def test_fig4a_projections():
    w = parse_word(FIG4A)
    assert bracket_projection(w, 0) == "((()()))"
    assert bracket_projection(w, 1) == "()()"
    assert bracket_projection(w, 2) == "(())()"


def test_stub_table_matches_oracle():
    for tok in TOKENS:
        l = parse_word(tok)[0]
        assert stubs(l) == oracles.letter_stubs(tok), tok


def test_every_letter_has_l_then_r_stubs():
    for l in Alphabet.for_n(6).letters():
        for s in stubs(l).values():
            assert s == ")" * s.count(")") + "(" * s.count("(")
        assert sum(len(s) for s in stubs(l).values()) == l.degree
        assert len(stubs(l)) <= 2


@pytest.mark.parametrize("w", ["a0 c0", TREFOIL, FIG4A, FIG4B, ""])
def test_balanced_examples(w):
    assert is_balanced(parse_word(w))


def test_lone_opener():
    rep = is_balanced(parse_word("a0"))
    assert not rep
    assert rep.page in (1, 2)
    assert "unclosed" in str(rep)


def test_unbalanced_position_reported():
    rep = is_balanced(parse_word("c0 a0"))
    assert not rep and rep.position == 1


def test_unknot_arcs():
    m = arc_matching(parse_word("a0 c0"))
    assert m.arc_pairs(1) == [(1, 2)] and m.arc_pairs(2) == [(1, 2)] and m.arc_pairs(0) == []
    assert m.arch_number == 2


def test_trefoil_arcs():
    m = arc_matching(parse_word(TREFOIL))
    assert m.arc_pairs(0) == [(1, 3), (4, 10), (5, 9), (6, 8)]
    assert m.arc_pairs(1) == [(1, 2), (3, 6), (7, 10)]
    assert m.arc_pairs(2) == [(2, 9), (4, 8), (5, 7)]
    assert m.arch_number == 10
    toks = TREFOIL.split()
    for p in range(3):
        assert m.arc_pairs(p) == oracles.arcs_by_cancellation(toks, p)


def test_hopf_arcs():
    m = arc_matching(parse_word(HOPF))
    assert m.arch_number == 6
    assert [len(m.arc_pairs(p)) for p in range(3)] == [2, 2, 2]


def test_unbalanced_matching_raises():
    with pytest.raises(UnbalancedError):
        arc_matching(parse_word("a0 a0 c0"))


def test_abstract_graph_examples():
    g = abstract_graph(parse_word("a0 c0"))
    assert (g.circles, g.betti, g.vertex_count, g.components) == (1, 1, 0, 1)
    g = abstract_graph(parse_word(FIG4A))
    assert g.vertex_degrees == (4,) and g.components == 1
    g = abstract_graph(parse_general("v[0:r;1:rr] v[0:l;1:ll]"))
    assert (g.vertex_count, g.edge_count, g.components, g.betti) == (2, 3, 1, 2)


def test_specialize_examples():
    assert specialize(GeneralWord([GeneralLetter({1: "r", 2: "r"})])) == parse_word("a0")
    r = specialize(parse_general("v[0:r;1:rr]"))
    assert isinstance(r, NotExpressible) and not r
    w = parse_word(FIG4A)
    assert specialize(lift(w)) == w


def test_general_letter_rules():
    with pytest.raises(ValueError):
        GeneralLetter({0: "rl", 1: "r"})
    with pytest.raises(ValueError):
        GeneralLetter({0: "r", 1: "r", 2: "r"})
    with pytest.raises(ValueError):
        GeneralLetter({0: "r"})
    g = GeneralLetter({0: "lr", 2: "r"})
    assert g.degree == 3 and g.pages == (0, 2)
    assert g.shifted(1).pages == (0, 1)


def test_general_parse_round_trip():
    text = "a0 v[1:l;2:lr] x3_0 c0"
    assert str(parse_general(text)) == text


@settings(max_examples=200)
@given(st.lists(st.sampled_from(TOKENS), max_size=14))
def test_balance_agrees_with_cancellation_oracle(toks):
    w = parse_word(" ".join(toks))
    want = all(oracles.balanced_by_cancellation(oracles.projection(toks, p)) for p in range(3))
    assert bool(is_balanced(w)) == want
    for p in range(3):
        assert bracket_projection(w, p) == oracles.projection(toks, p)


@settings(max_examples=100)
@given(st.lists(st.sampled_from(TOKENS[:12]), min_size=2, max_size=10))
def test_arcs_agree_with_oracle(toks):
    w = parse_word(" ".join(toks))
    if not is_balanced(w):
        return
    m = arc_matching(w)
    for p in range(3):
        assert m.arc_pairs(p) == oracles.arcs_by_cancellation(toks, p)
    g = abstract_graph(m)
    assert g.betti == oracles.betti_networkx(len(toks), [a.pair() for a in m.arcs])


def test_balance_check_is_linear():
    rng = random.Random(1)
    letters = regular_letters()
    t = []
    for n in (2000, 20000, 200000):
        w = Word(rng.choice(letters) for _ in range(n))
        t0 = time.perf_counter()
        is_balanced(w)
        t.append(time.perf_counter() - t0)
    # 100x the length should not cost more than ~300x the time
    assert t[2] < 300 * max(t[0], 1e-5)
