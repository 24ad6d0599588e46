"""Structured proofs of commutations with i-balanced words.

If X commutes with every member of 𝔹_{n,i} then X commutes with every
i-balanced word W: W is equivalent to a product of such members (its star
decomposition) and X can be carried across the factors one by one.  Each
step is a short local equivalence found by the search and shifted into
place, so the outcome is an ordinary certificate of base moves and is
checked by replay like any other.
"""

from ..words import Word
from .normal import (_depth2_image, _prime_image, depth, eliminate_to_core, star_completion,
                     stars)
from .prover import (Budget, Certificate, Proved, Unknown, encode, invert_moves,
                     prove_equivalent, reduce_moves)
from .relations import W, b, d

__all__ = ["LocalProofs", "Stuck", "normal_form_moves", "commutation_moves", "prove_by_plan"]

LOCAL_BUDGET = Budget(6, 200000)


class Stuck(RuntimeError):
    pass


def _shift(moves, k):
    return [m.shifted(k) for m in moves] if k else list(moves)


def _common_ends(x, y):
    p = 0
    while p < len(x) and p < len(y) and x[p] == y[p]:
        p += 1
    s = 0
    while s < len(x) - p and s < len(y) - p and x[len(x) - 1 - s] == y[len(y) - 1 - s]:
        s += 1
    return p, s


class LocalProofs:
    """Cached proofs of small equivalences with one rule set."""

    def __init__(self, ruleset, mode="RSG", budget=LOCAL_BUDGET):
        self.rs = ruleset
        self.mode = mode
        self.budget = budget
        self.cache = {}

    def moves(self, u, v):
        """Base moves taking u to v.  Both words are freely reduced first
        and only the differing middle parts are searched."""
        key = (u, v)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        ru, mu = reduce_moves(encode(u))
        rv, mv = reduce_moves(encode(v))
        if ru == rv:
            out = mu + invert_moves(mv)
        else:
            from .prover import decode
            p, s = _common_ends(ru, rv)
            cu, cv = decode(ru[p:len(ru) - s]), decode(rv[p:len(rv) - s])
            r = prove_equivalent(cu, cv, self.budget, mode=self.mode, alphabet=self.rs.alphabet,
                                 ruleset=self.rs)
            if not isinstance(r, Proved):
                raise Stuck("%s ~ %s: %r" % (cu, cv, r))
            out = mu + _shift(r.certificate.moves, p) + invert_moves(mv)
        self.cache[key] = out
        return out

    def pieces(self, pairs):
        """Moves turning the concatenation of the left sides into that of
        the right sides, converting pieces from left to right."""
        out = []
        off = 0
        for old, new in pairs:
            if old != new:
                out.extend(_shift(self.moves(old, new), off))
            off += len(new)
        return out


def _cat(pairs):
    letters = []
    for _, new in pairs:
        letters.extend(new)
    return Word(letters)


def normal_form_moves(w, i, lp):
    """(factors, moves) with the moves taking w to the product of the
    factors, each factor a member of 𝔹_{n,i}."""
    i %= 3
    B, Dn = b(i - 1), d(i - 1)
    moves = []
    pairs = [(W(l), eliminate_to_core(W(l), i)) for l in w]
    moves += lp.pieces(pairs)
    cur = _cat(pairs)
    nxt = star_completion(cur, i)
    moves += lp.moves(cur, nxt)
    cur = nxt
    while depth(cur, i) > 1:
        pairs = []
        for l, k in stars(cur, i):
            if k >= 2:
                pairs += [(W([B] * (k - 2)),) * 2,
                          (W(B, B, l, Dn, Dn), _depth2_image(l, i)),
                          (W([Dn] * (k - 2)),) * 2]
            else:
                s = W([B] * k, l, [Dn] * k)
                pairs.append((s, s))
        moves += lp.pieces(pairs)
        cur = _cat(pairs)
        nxt = star_completion(cur, i)
        moves += lp.moves(cur, nxt)
        cur = nxt
    pairs = []
    factors = []
    for l, k in stars(cur, i):
        if k == 0:
            factors.append(W(l))
            pairs.append((W(l), W(l)))
            continue
        s = W(B, l, Dn)
        img = _prime_image(l, i)
        if img is None:
            factors.append(s)
            pairs.append((s, s))
        else:
            factors.extend(img)
            pairs.append((s, Word([y for f in img for y in f])))
    moves += lp.pieces(pairs)
    return factors, moves


def commutation_moves(X, w, i, lp):
    """Moves taking X w to w X for an i-balanced word w."""
    factors, nf = normal_form_moves(w, i, lp)
    moves = _shift(nf, len(X))
    off = 0
    for f in factors:
        moves += _shift(lp.moves(X + f, f + X), off)
        off += len(f)
    moves += invert_moves(nf)
    return moves


def prove_by_plan(u, v, plan, lp):
    """Prove u ~ v through P X W S ~ P W X S, where plan = (P, X, W, S, i)
    and W is i-balanced.  Unknown if some local step is not found."""
    P, X, w, S, i = plan
    mid1, mid2 = P + X + w + S, P + w + X + S
    try:
        moves = lp.moves(u, mid1)
        moves += _shift(commutation_moves(X, w, i, lp), len(P))
        moves += lp.moves(mid2, v)
    except Stuck as e:
        return Unknown(0, "plan step failed: %s" % e)
    cert = Certificate(u, v, moves, lp.mode)
    if not cert.check():
        return Unknown(0, "plan certificate does not replay")
    return Proved(cert, 0, 0)
