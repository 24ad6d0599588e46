import random

import pytest

from threepage.abelian import abelianize
from threepage.census import CensusAlphabet, enumerate_balanced
from threepage.rewrite import (Budget, PreconditionError, Proved, core_substitution, depth,
                               eliminate_to_core, is_basis_word, is_core, mu_encoding,
                               prove_equivalent, star_completion, star_decomposition,
                               star_normal_form, stars)
from threepage.rewrite.normal import _depth2_image, _prime_image
from threepage.rewrite.prover import encode, free_reduce
from threepage.rewrite.relations import W, a, b, c, d, x
from threepage.rewrite.suites import claim1_targets
from threepage.words import Alphabet, Word, parse_word

from reference import TREFOIL

ALPHA = Alphabet.for_n(4)
BALANCED = [m.source for m in enumerate_balanced(CensusAlphabet(degrees=(3, 4)), 5)]


def reduced(w):
    return free_reduce(encode(w))


@pytest.mark.parametrize("i", [0, 1, 2])
def test_core_substitutions_are_proved(i):
    for l in ALPHA.letters():
        s = core_substitution(l, i)
        if s is None:
            assert is_core(W(l), i)
            continue
        v = prove_equivalent(W(l), s, Budget(6, 50000))
        assert isinstance(v, Proved), (l, s, v)
        assert v.certificate.check()


@pytest.mark.parametrize("i", [0, 1, 2])
def test_depth_two_images_come_from_claim1(i):
    targets = {(t.name, dict(t.params).get("m")): t for t in claim1_targets(4)
               if dict(t.params).get("i") == i}
    B, Dn = b(i - 1), d(i - 1)
    for kind, l in zip("abcd", (a(i), b(i), c(i), d(i))):
        t = targets[("46" + kind, None)]
        assert t.u == W(B, B, l, Dn, Dn)
        assert reduced(_depth2_image(l, i)) == reduced(t.v)
    # (46x) with its nested depth-2 stars replaced by the (46b)/(46d) images
    sub = {reduced(targets[("46b", None)].u): targets[("46b", None)].v,
           reduced(targets[("46d", None)].u): targets[("46d", None)].v}
    for m in (3, 4):
        t = targets[("46x", m)]
        rhs = list(t.v)
        out = []
        k = 0
        while k < len(rhs):
            piece = Word(rhs[k:k + 5])
            if len(piece) == 5 and reduced(piece) in sub:
                out.extend(sub[reduced(piece)])
                k += 5
            else:
                out.append(rhs[k])
                k += 1
        assert reduced(Word(out)) == reduced(_depth2_image(x(m, i), i))


@pytest.mark.parametrize("i", [0, 1, 2])
def test_prime_images_are_proved(i):
    B, Dn = b(i - 1), d(i - 1)
    for l in (a(i), c(i), x(3, i), x(4, i)):
        img = Word([y for f in _prime_image(l, i) for y in f])
        v = prove_equivalent(W(B, l, Dn), img, Budget(8, 100000))
        assert isinstance(v, Proved), (l, v)
    assert _prime_image(b(i), i) is None


def test_trefoil_decomposes_into_basis_words():
    w = parse_word(TREFOIL)
    for i in range(3):
        trace = []
        f = star_decomposition(w, i, trace)
        assert all(is_basis_word(g, i) for g in f)
        assert trace == sorted(trace, reverse=True) and trace[-1] <= 1


def test_precondition():
    with pytest.raises(PreconditionError):
        star_decomposition(parse_word("a0"), 1)
    with pytest.raises(PreconditionError):
        eliminate_to_core(parse_word("a0"), 1, strict=True)


def test_mu_encoding_examples():
    w = parse_word("b2 a0 d2")
    assert is_core(w, 0)
    assert mu_encoding(w, 0) == "(•)" and depth(w, 0) == 1
    assert stars(w, 0) == [(a(0), 1)]
    w = parse_word("b2 b2 a0 d2 b0 d2")
    assert mu_encoding(w, 0) == "((•)•)" and depth(w, 0) == 2


@pytest.mark.parametrize("i", [0, 1, 2])
def test_pipeline_on_census_words(i):
    for w in random.Random(i).sample(BALANCED, 60):
        core = eliminate_to_core(w, i)
        assert is_core(core, i)
        assert abelianize(core) == abelianize(w)
        mu = mu_encoding(core, i)
        brackets = mu.replace("•", "")
        while "()" in brackets:
            brackets = brackets.replace("()", "")
        assert brackets == ""
        done = star_completion(core, i)
        assert reduced(done) == reduced(core)
        for l, k in stars(done, i):
            assert l.index == i and k >= 0
        nf = star_normal_form(w, i)
        assert abelianize(nf) == abelianize(w)
        assert all(is_basis_word(f, i) for f in star_decomposition(w, i))
        assert depth(done, i) >= 0
