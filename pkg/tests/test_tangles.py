import pytest
from hypothesis import given, strategies as st

from threepage.abelian import abelianize
from threepage.pages import is_balanced, is_page_balanced
from threepage.rewrite.prover import encode, free_reduce
from threepage.tangles import (TangleWord, close_tangle, eta, inv, lam, omega, parse_tangle, phi,
                               render_tangle, shift, sig, Sigma, Sigma_bar, Sigma_prime,
                               tangle_relations, xi)

letters = st.one_of(
    st.builds(xi, st.integers(1, 3)), st.builds(eta, st.integers(1, 3)),
    st.builds(sig, st.integers(1, 3)), st.builds(inv, st.integers(1, 3)),
    st.builds(lam, st.integers(3, 5), st.integers(1, 3)))
tangles = st.lists(letters, max_size=6).map(TangleWord)


def test_phi_examples():
    assert str(phi(parse_tangle("sig1"))) == "b1 d2 d1 b2"
    assert str(phi(parse_tangle("inv1"))) == "d2 b1 b2 d1"
    assert str(phi(parse_tangle("xi1"))) == "d2 c2"
    assert str(phi(parse_tangle("eta1"))) == "a2 b2"
    assert str(phi(parse_tangle("lam3_1"))) == "x3_2 b2"
    assert str(phi(parse_tangle("lam4_1"))) == "d2 x4_2 b2"
    assert str(phi(parse_tangle("xi2"))) == "d2 d2 c2 b2"


def test_parse_render():
    t = parse_tangle("eta1 sig2 lam5_3 xi1")
    assert render_tangle(t) == "eta1 sig2 lam5_3 xi1"
    with pytest.raises(ValueError):
        parse_tangle("sigma1")


def test_sigma_builders():
    assert render_tangle(Sigma(1, 3)) == "sig1 sig2 sig3"
    assert render_tangle(Sigma_bar(1, 3)) == "sig3 sig2 sig1"
    assert render_tangle(Sigma_prime(1, 2)) == "inv2 inv1 inv2"
    assert len(Sigma(2, 0)) == 0


@given(tangles)
def test_phi_lands_in_pages_1_and_2_balanced(t):
    w = phi(t)
    assert is_page_balanced(w, 1) and is_page_balanced(w, 2)


@given(tangles, st.integers(0, 3))
def test_shift_matches_omega_up_to_cancellation(t, k):
    lhs = free_reduce(encode(phi(shift(t, k))))
    rhs = free_reduce(encode(omega(phi(t), k)))
    assert lhs == rhs


@pytest.mark.parametrize("mode", ["RGT", "NGT"])
def test_tangle_relations_respect_invariants(mode):
    for name, params, lhs, rhs in tangle_relations(5, mode, k=1, lmax=3):
        assert abelianize(phi(lhs)) == abelianize(phi(rhs)), name


def test_close_unknot_and_trefoil():
    t = close_tangle(parse_tangle("sig1"))
    assert render_tangle(t) == "eta1 sig1 xi1"
    assert is_balanced(phi(t))
    t = close_tangle(parse_tangle("sig1 sig1 sig1"))
    assert is_balanced(phi(t))
    closed = parse_tangle("eta1 xi1")
    assert close_tangle(closed) == closed


def test_close_rejects_odd_strands():
    with pytest.raises(ValueError):
        close_tangle(parse_tangle("lam3_1"))
