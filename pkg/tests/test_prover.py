import random

import pytest
from hypothesis import given, settings, strategies as st, HealthCheck

from threepage.abelian import abelianize
from threepage.rewrite import (Budget, Certificate, Lemma, Proved, Refuted, Unknown, decode,
                               encode, free_reduce, parse_certificate, prove_equivalent, replay)
from threepage.rewrite.prover import invariant_check
from threepage.rewrite.relations import MoveError, apply_move, instantiate_relations
from threepage.words import parse_word

RELS = instantiate_relations(3, include_redundant=True)


def P(s):
    return parse_word(s)


def test_one_move_proof():
    v = prove_equivalent(P("a0 d1"), P("a2"))
    assert isinstance(v, Proved)
    assert len(v.certificate) == 1
    assert v.path[0].rid == "R3"
    assert v.certificate.check()


def test_identity_and_cancellation():
    v = prove_equivalent(P("a0 c0"), P("a0 c0"))
    assert isinstance(v, Proved) and len(v.certificate) == 0
    # (2) turns a page-2-unbalanced word into the balanced empty word
    v = prove_equivalent(P("b0 d0"), P(""))
    assert isinstance(v, Proved) and v.certificate.check()


def test_balance_alone_never_refutes():
    assert invariant_check(P("b0 d0"), P("")) is None
    v = prove_equivalent(P("b1 d2 d1 b2 d2 b1 b2 d1"), P(""))
    assert isinstance(v, Proved)


def test_refuted_by_vertex_count():
    v = prove_equivalent(P("a0 c0"), P("a0 x3_0 b0 c0"))
    assert isinstance(v, Refuted) and v.invariant == "abelianization"
    assert not v


def test_unknown_under_tiny_budget():
    v = prove_equivalent(P("a0 a1 c0 c1"), P("a1 a0 c1 c0"), Budget(0, 3))
    assert isinstance(v, (Unknown, Proved))
    if isinstance(v, Unknown):
        assert v.states <= 3 and not v


def test_certificate_text_round_trip():
    v = prove_equivalent(P("b1 d2 d1 b2 d2 b1 b2 d1"), P(""))
    text = v.certificate.to_text()
    moves = parse_certificate(text)
    assert moves == v.path
    assert replay(P("b1 d2 d1 b2 d2 b1 b2 d1"), moves) == P("")


def test_tampered_certificate_fails():
    v = prove_equivalent(P("a0 d1"), P("a2"))
    bad = [v.path[0].shifted(1)]
    with pytest.raises(MoveError):
        replay(P("a0 d1"), bad)
    assert not Certificate(P("a0 d1"), P("a0"), v.path).check()


def test_encode_decode():
    w = P("a0 b1 x3_2 d0 c2")
    assert decode(encode(w)) == w
    assert free_reduce(encode(P("a0 b1 d1 c0"))) == encode(P("a0 c0"))


def test_lemma_is_used_and_inlined():
    u, w = P("b1 d2 d1 b2 d2 b1 b2 d1"), P("")
    base = prove_equivalent(u, w)
    lem = Lemma("sigma-cancel", u, w, base.path)
    v = prove_equivalent(P("a0") + u + P("c0"), P("a0 c0"), lemmas=[lem])
    assert isinstance(v, Proved) and v.certificate.check()


def random_walk(rng, w, steps):
    for _ in range(steps):
        opts = []
        for r in RELS:
            for side, direction in ((r.lhs, "lhs->rhs"), (r.rhs, "rhs->lhs")):
                n = len(side)
                for pos in range(len(w) - n + 1):
                    if tuple(w.letters[pos:pos + n]) == side.letters:
                        opts.append((r, pos, direction))
        # relations with an empty side can be inserted anywhere
        for r in RELS:
            if not r.rhs:
                opts.append((r, rng.randrange(len(w) + 1), "rhs->lhs"))
        r, pos, direction = rng.choice(opts)
        w = apply_move(w, r, pos, direction)
    return w


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10 ** 6))
def test_random_walks_are_proved(seed):
    rng = random.Random(seed)
    toks = [k + str(i) for k in "abcd" for i in range(3)] + ["x3_%d" % i for i in range(3)]
    w = P(" ".join(rng.choice(toks) for _ in range(rng.randrange(1, 5))))
    v = random_walk(rng, w, 2)
    assert abelianize(v) == abelianize(w)
    verdict = prove_equivalent(w, v, Budget(6, 20000))
    assert isinstance(verdict, Proved), verdict
    assert verdict.certificate.check()
