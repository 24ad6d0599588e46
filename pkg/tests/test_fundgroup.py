import random

import pytest
from hypothesis import given, settings, strategies as st

from threepage.fundgroup import (GroupPresentation, count_homs, cyclic_reduce, fingerprint,
                                 free_reduce, homology, neuwirth_presentation, smith_normal_form,
                                 tietze_simplify)
from threepage.fundgroup import relation_matrix
from threepage.pages import abstract_graph, arc_matching
from threepage.words import parse_word

import oracles
from reference import FIG4A, HOPF, S31, TREFOIL, TREFOIL_ARC_NAMES, TREFOIL_RELATORS, UNKNOT


def trefoil():
    return neuwirth_presentation(parse_word(TREFOIL))


def test_trefoil_presentation_shape():
    g = trefoil()
    assert len(g.generators) == 10 and len(g.relators) == 9
    assert all(1 <= len(r) <= 3 for r in g.relators)


def test_trefoil_relators_match_picture():
    g = trefoil()
    m = arc_matching(parse_word(TREFOIL))
    names = [TREFOIL_ARC_NAMES[(a.page, a.left, a.right)] for a in m.arcs]
    ours = []
    for r in g.relators:
        out = []
        for x in r:
            nm = names[abs(x) - 1]
            inverted = (x < 0) != (nm == "t")  # the single substitution t -> t^-1
            out.append(nm + "^-1" if inverted else nm)
        ours.append(out)
    assert ours == TREFOIL_RELATORS


def test_trefoil_simplifies_to_one_relator():
    g = tietze_simplify(trefoil())
    assert len(g.generators) == 2 and len(g.relators) == 1
    assert homology(g) == (1, [])
    # <s,t | sts = tst> by brute force
    braid = [(1, 2, 1, -2, -1, -2)]
    want = oracles.brute_hom_count(2, braid, 3)
    # 1 trivial, 2 through the 3-cycles, 9 through transpositions
    assert count_homs(g, 3) == want == 12
    assert count_homs(trefoil(), 3) == want


def test_unknot_and_hopf():
    g = tietze_simplify(neuwirth_presentation(parse_word(UNKNOT)))
    assert homology(g) == (1, [])
    assert count_homs(g, 3) == 6
    g = tietze_simplify(neuwirth_presentation(parse_word(HOPF)))
    assert homology(g) == (2, [])
    assert count_homs(g, 3) == 18


def test_fingerprint_fields():
    fp = fingerprint(parse_word(FIG4A))
    assert fp.vertex_degrees == (4,) and fp.components == 1
    assert fp.h1 == (abstract_graph(parse_word(FIG4A)).betti, ())
    d = fp.as_dict()
    assert set(d) == {"vertex_degrees", "components", "h1", "hom_counts"}


def test_presentation_helpers():
    g = GroupPresentation(["x", "y"], [(1, 2, -1, -2)])
    assert str(g) == "< x, y | x y x^-1 y^-1 >"
    assert g.canonical() == GroupPresentation(["p", "q"], [(2, 1, -2, -1)]).canonical()
    with pytest.raises(ValueError):
        GroupPresentation(["x"], [(2,)])
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_reduce((1, 2, 3, -1)) == (2, 3)


mats = st.integers(1, 4).flatmap(lambda c: st.lists(
    st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@settings(max_examples=200, deadline=None)
@given(mats)
def test_smith_form_agrees_with_sympy(M):
    ours = [x for x in smith_normal_form(M) if x]
    assert ours == oracles.sympy_invariant_factors(M)
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


rels = st.lists(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=4),
                max_size=3)


@settings(max_examples=60, deadline=None)
@given(rels)
def test_hom_counts_agree_with_brute_force(rs):
    g = GroupPresentation(["a", "b", "c"], [tuple(r) for r in rs])
    assert count_homs(g, 3) == oracles.brute_hom_count(3, rs, 3)


@settings(max_examples=60, deadline=None)
@given(rels)
def test_tietze_preserves_invariants(rs):
    g = GroupPresentation(["a", "b", "c"], [tuple(r) for r in rs])
    h = tietze_simplify(g)
    assert homology(h) == homology(g)
    assert count_homs(h, 3) == count_homs(g, 3)


def test_backtrack_oracle_on_unsimplified_presentations():
    for text in (UNKNOT, HOPF, S31, TREFOIL):
        g = neuwirth_presentation(parse_word(text))
        assert count_homs(g, 3) == oracles.backtrack_hom_count(len(g.generators), g.relators, 3)
    g = neuwirth_presentation(parse_word(HOPF))
    assert count_homs(g, 4) == oracles.backtrack_hom_count(6, g.relators, 4)


def test_homology_of_random_census_style_words():
    from threepage.census import CensusAlphabet, enumerate_balanced
    words = [m for m in enumerate_balanced(CensusAlphabet(degrees=(3, 4)), 5)]
    for m in random.Random(3).sample(words, 80):
        g = neuwirth_presentation(m)
        rank, tors = homology(g)
        assert tors == []
        assert rank == abstract_graph(m).betti
        assert rank == len(g.generators) - len(oracles.sympy_invariant_factors(relation_matrix(g)))
