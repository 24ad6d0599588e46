from hypothesis import given, settings, strategies as st

from threepage.abelian import (AbelianVector, abelianize, center_image_member, format_vector,
                               functional_F, letter_image, parse_vector)
from threepage.census import CensusAlphabet, enumerate_balanced
from threepage.words import Alphabet, parse_word

import oracles
from reference import FIG4A, TREFOIL

TOKENS = [l.token for l in Alphabet.for_n(5).letters()]


def signed(s):
    return s.count("(") - s.count(")")


def test_unknot_image():
    v = abelianize(parse_word("a0 c0"))
    assert v.is_zero()


def test_vertex_letter_images():
    assert letter_image(parse_word("x3_1")[0]) == AbelianVector((-1, 0, 1), {3: 1})
    assert letter_image(parse_word("x3_0")[0]) == AbelianVector((0, 0, 0), {3: 1})
    assert letter_image(parse_word("x4_2")[0]) == AbelianVector((0, 0, 0), {4: 1})


def test_vector_arithmetic():
    u = AbelianVector((1, 2, 3), {3: 1})
    assert (u - u).is_zero()
    assert u + AbelianVector.zero() == u
    assert parse_vector(format_vector(u)) == u
    assert format_vector(AbelianVector()) == "0,0,0;"


def test_fig4a_in_center_image():
    assert center_image_member(abelianize(parse_word(FIG4A)))
    assert center_image_member(abelianize(parse_word(TREFOIL)))


def test_unbalanced_not_in_center_image():
    assert not center_image_member(abelianize(parse_word("a0")))
    assert not center_image_member(AbelianVector((0, 0, 0), {4: -1}))


@settings(max_examples=300)
@given(st.lists(st.sampled_from(TOKENS), max_size=20))
def test_functionals_give_signed_counts(toks):
    v = abelianize(parse_word(" ".join(toks)))
    for i in range(3):
        assert functional_F(i, v) == signed(oracles.projection(toks, i))


@given(st.lists(st.sampled_from(TOKENS), max_size=10), st.lists(st.sampled_from(TOKENS), max_size=10))
def test_abelianize_is_additive(s, t):
    u, w = parse_word(" ".join(s)), parse_word(" ".join(t))
    assert abelianize(u + w) == abelianize(u) + abelianize(w)
    assert abelianize(u + w) == abelianize(w + u)


def test_center_membership_on_enumerated_words():
    alpha = CensusAlphabet(degrees=(3, 4))
    n = 0
    for m in enumerate_balanced(alpha, 6):
        assert center_image_member(abelianize(m.source))
        n += 1
    assert n > 100
