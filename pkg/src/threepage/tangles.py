"""Graph tangles and their image in three-page words.

Tangle generators (token syntax in parentheses): cups ``ξ_k`` (``xi<k>``),
caps ``η_k`` (``eta<k>``), crossings ``σ_k`` / ``σ_k^-1`` (``sig<k>`` /
``inv<k>``) and vertices ``λ_{m,k}`` (``lam<m>_<k>``).  The map

    φ(ξ_k) = d2^k c2 b2^(k-1)          φ(η_k) = d2^(k-1) a2 b2^k
    φ(σ_k) = d2^(k-1) b1 d2 d1 b2^k    φ(σ_k^-1) = d2^k b1 b2 d1 b2^(k-1)
    φ(λ_{2p-1,k}) = d2^(k-1) x_{2p-1,2} b2^k
    φ(λ_{2q,k}) = d2^k x_{2q,2} b2^k

sends tangle words to 1- and 2-balanced words.

>>> str(phi(parse_tangle("sig1")))
'b1 d2 d1 b2'
"""

import re
from collections import namedtuple

from .pages import bracket_projection
from .words import Letter, Word

__all__ = ["TangleLetter", "TangleWord", "parse_tangle", "render_tangle", "phi", "shift",
           "omega", "Sigma", "Sigma_bar", "Sigma_prime", "D", "sigma_builders",
           "tangle_relations", "close_tangle", "xi", "eta", "sig", "inv", "lam"]

KINDS = ("xi", "eta", "sig", "inv", "lam")


class TangleLetter(namedtuple("TangleLetter", "kind k m")):
    __slots__ = ()

    def __new__(cls, kind, k, m=0):
        if kind not in KINDS:
            raise ValueError("unknown tangle generator %r" % kind)
        if k < 1:
            raise ValueError("strand index must be >= 1")
        if kind == "lam" and m < 3:
            raise ValueError("vertex degree must be >= 3")
        return super().__new__(cls, kind, int(k), int(m) if kind == "lam" else 0)

    @property
    def token(self):
        if self.kind == "lam":
            return "lam%d_%d" % (self.m, self.k)
        return "%s%d" % (self.kind, self.k)

    def shifted(self, s):
        return TangleLetter(self.kind, self.k + s, self.m)

    def __str__(self):
        return self.token


def xi(k):
    return TangleLetter("xi", k)


def eta(k):
    return TangleLetter("eta", k)


def sig(k):
    return TangleLetter("sig", k)


def inv(k):
    return TangleLetter("inv", k)


def lam(m, k):
    return TangleLetter("lam", k, m)


class TangleWord(tuple):
    """A tuple of TangleLetters."""

    def __new__(cls, letters=()):
        return super().__new__(cls, letters)

    def __add__(self, other):
        return TangleWord(tuple(self) + tuple(other))

    def __getitem__(self, k):
        r = super().__getitem__(k)
        return TangleWord(r) if isinstance(k, slice) else r

    def __str__(self):
        return render_tangle(self)

    def __repr__(self):
        return "TangleWord(%r)" % render_tangle(self)


_TOK = re.compile(r"(xi|eta|sig|inv)(\d+)$|lam(\d+)_(\d+)$")


def parse_tangle(text):
    out = []
    for tok in text.split():
        mt = _TOK.match(tok)
        if not mt:
            raise ValueError("unknown tangle token %r" % tok)
        if mt.group(1):
            out.append(TangleLetter(mt.group(1), int(mt.group(2))))
        else:
            out.append(TangleLetter("lam", int(mt.group(4)), int(mt.group(3))))
    return TangleWord(out)


def render_tangle(t):
    return " ".join(l.token for l in t)


def _L(kind, i, m=2):
    return Letter(kind, i, m)


B1, B2, D1, D2 = _L("b", 1), _L("b", 2), _L("d", 1), _L("d", 2)
A2, C2 = _L("a", 2), _L("c", 2)


def phi_letter(u):
    k = u.k
    if u.kind == "xi":
        return [D2] * k + [C2] + [B2] * (k - 1)
    if u.kind == "eta":
        return [D2] * (k - 1) + [A2] + [B2] * k
    if u.kind == "sig":
        return [D2] * (k - 1) + [B1, D2, D1] + [B2] * k
    if u.kind == "inv":
        return [D2] * k + [B1, B2, D1] + [B2] * (k - 1)
    x = Letter("x", 2, u.m)
    if u.m % 2:
        return [D2] * (k - 1) + [x] + [B2] * k
    return [D2] * k + [x] + [B2] * k


def phi(t):
    out = []
    for u in t:
        out.extend(phi_letter(u))
    return Word(out)


def shift(t, k):
    """θ_k: add k to every strand index."""
    if k < 0:
        raise ValueError("shift must be >= 0")
    return TangleWord(u.shifted(k) for u in t)


def omega(w, k):
    """ω_k(w) = d2^k w b2^k."""
    if k < 0:
        raise ValueError("shift must be >= 0")
    return Word([D2] * k + list(w) + [B2] * k)


def Sigma(k, l):
    """Σ_{k,l} = σ_k σ_{k+1} ... σ_{k+l-1}."""
    return TangleWord(sig(k + j) for j in range(l))


def Sigma_bar(k, l):
    """Σ̄_{k,l} = σ_{k+l-1} ... σ_k."""
    return TangleWord(sig(k + j) for j in reversed(range(l)))


def Sigma_prime(k, l):
    """Σ'_{k,l}: blocks σ^-1_{k+l-j} ... σ^-1_{k+l-1} for j = 1..l."""
    out = []
    for j in range(1, l + 1):
        out.extend(inv(k + l - j + s) for s in range(j))
    return TangleWord(out)


def D(k, i):
    """D_{k,i} = d_i^k d_{i+1}^k d_{i-1}^k."""
    return Word([_L("d", i % 3)] * k + [_L("d", (i + 1) % 3)] * k + [_L("d", (i - 1) % 3)] * k)


def sigma_builders(kind, k, l, i=2):
    if l < 0:
        raise ValueError("l must be >= 0")
    if kind == "D":
        return D(k, i)
    if k < 1:
        raise ValueError("k must be >= 1")
    return {"Sigma": Sigma, "Sigma_bar": Sigma_bar, "Sigma_prime": Sigma_prime}[kind](k, l)


def _T(*parts):
    out = []
    for p in parts:
        if isinstance(p, TangleLetter):
            out.append(p)
        else:
            out.extend(p)
    return TangleWord(out)


def _u_letters(l, degrees):
    us = [xi(l), eta(l), sig(l)]
    us += [lam(m, l) for m in degrees]
    return us


def tangle_relations(n, mode="RGT", k=1, lmax=4):
    """Relation instances (name, lhs, rhs) of (11)-(23), or (11)-(22) plus
    (23') in NGT mode, for strand index k and l up to lmax."""
    degrees = tuple(range(3, n + 1)) if isinstance(n, int) else tuple(n)
    out = []

    def add(name, params, lhs, rhs):
        out.append((name, params, TangleWord(lhs), TangleWord(rhs)))

    for l in range(k, lmax + 1):
        for u in _u_letters(l, degrees):
            add("11", (("k", k), ("l", l), ("u", u.kind)), _T(xi(k), u), _T(u.shifted(2), xi(k)))
    for l in range(k + 2, lmax + 1):
        for u in _u_letters(l, degrees):
            add("12", (("k", k), ("l", l), ("u", u.kind)), _T(eta(k), u), _T(u.shifted(-2), eta(k)))
            add("13", (("k", k), ("l", l), ("u", u.kind)), _T(sig(k), u), _T(u, sig(k)))
    for m in degrees:
        for l in range(k, lmax + 1):
            if m % 2:
                p = (m + 1) // 2
                if l >= k + p:
                    for u in _u_letters(l, degrees):
                        add("14", (("k", k), ("l", l), ("m", m), ("u", u.kind)),
                            _T(lam(m, k), u), _T(u.shifted(-1), lam(m, k)))
            else:
                q = m // 2
                if l >= k + q:
                    for u in _u_letters(l, degrees):
                        add("14", (("k", k), ("l", l), ("m", m), ("u", u.kind)),
                            _T(lam(m, k), u), _T(u, lam(m, k)))
    add("15", (("k", k), ("form", 1)), _T(eta(k + 1), xi(k)), ())
    add("15", (("k", k), ("form", 2)), _T(eta(k), xi(k + 1)), ())
    add("16", (("k", k), ("form", 1)), _T(eta(k + 2), sig(k + 1), xi(k)), _T(inv(k)))
    add("16", (("k", k), ("form", 2)), _T(eta(k), sig(k + 1), xi(k + 2)), _T(inv(k)))
    for m in degrees:
        if m % 2:
            p = (m + 1) // 2
            add("17", (("k", k), ("m", m), ("form", 1)),
                _T(eta(k + p - 1), lam(m, k + 1), xi(k)), _T(lam(m, k)))
            add("17", (("k", k), ("m", m), ("form", 2)),
                _T(eta(k), lam(m, k + 1), xi(k + p)), _T(lam(m, k)))
        else:
            q = m // 2
            add("18", (("k", k), ("m", m), ("form", 1)),
                _T(eta(k + q), lam(m, k + 1), xi(k)), _T(lam(m, k)))
            add("18", (("k", k), ("m", m), ("form", 2)),
                _T(eta(k), lam(m, k + 1), xi(k + q)), _T(lam(m, k)))
    add("19", (("k", k), ("form", 1)), _T(eta(k), sig(k)), _T(eta(k)))
    add("19", (("k", k), ("form", 2)), _T(sig(k), xi(k)), _T(xi(k)))
    add("20", (("k", k), ("form", 1)), _T(sig(k), inv(k)), ())
    add("20", (("k", k), ("form", 2)), _T(inv(k), sig(k)), ())
    add("21", (("k", k),), _T(sig(k), sig(k + 1), sig(k)), _T(sig(k + 1), sig(k), sig(k + 1)))
    for m in degrees:
        if m % 2:
            p = (m + 1) // 2
            add("22", (("k", k), ("m", m), ("form", 1)),
                _T(lam(m, k + 1), Sigma(k, p)), _T(Sigma(k, p - 1), lam(m, k)))
            add("22", (("k", k), ("m", m), ("form", 2)),
                _T(lam(m, k), Sigma_bar(k, p)), _T(Sigma_bar(k, p - 1), lam(m, k + 1)))
        else:
            q = m // 2
            add("22", (("k", k), ("m", m), ("form", 1)),
                _T(lam(m, k + 1), Sigma(k, q)), _T(Sigma(k, q), lam(m, k)))
            add("22", (("k", k), ("m", m), ("form", 2)),
                _T(lam(m, k), Sigma_bar(k, q)), _T(Sigma_bar(k, q), lam(m, k + 1)))
    for m in degrees:
        if mode == "NGT":
            add("23'", (("k", k), ("m", m)), _T(lam(m, k), sig(k)), _T(lam(m, k)))
        elif m % 2:
            p = (m + 1) // 2
            add("23", (("k", k), ("m", m)),
                _T(lam(m, k), Sigma_prime(k, p - 1)), _T(Sigma_prime(k, p - 2), lam(m, k)))
        else:
            q = m // 2
            add("23", (("k", k), ("m", m)),
                _T(lam(m, k), Sigma_prime(k, q - 1)), _T(Sigma_prime(k, q - 1), lam(m, k)))
    return out


def _reduced(w):
    """Per page, (unmatched closers, unmatched openers) of the projection."""
    out = []
    for i in range(3):
        close = op = 0
        for ch in bracket_projection(w, i):
            if ch == "(":
                op += 1
            elif op:
                op -= 1
            else:
                close += 1
        out.append((close, op))
    return tuple(out)


def _join(x, y):
    (c1, o1), (c2, o2) = x, y
    m = min(o1, c2)
    return (c1 + c2 - m, o1 + o2 - m)


def close_tangle(t, window=4, max_extra=6):
    """Pre-compose with caps and post-compose with cups until φ's image is
    balanced.  Returns the closed tangle word; raises ValueError when no
    closure with at most ``max_extra`` extra letters (strand indices up to
    ``window``) exists.

    Balance of a product depends only on the reduced bracket forms of its
    factors, so search states with equal forms are merged."""
    t = TangleWord(t)
    mid = _reduced(phi(t))
    if all(x == (0, 0) for x in mid):
        return t
    from collections import deque
    empty = ((0, 0),) * 3
    start = ((), (), empty, empty)
    seen = {(empty, empty)}
    queue = deque([start])
    while queue:
        pre, post, rp, rq = queue.popleft()
        if len(pre) + len(post) >= max_extra:
            continue
        for kk in range(1, window + 1):
            for side in (0, 1):
                if side == 0:
                    npre, npost = (eta(kk),) + pre, post
                    nrp = tuple(_join(a, b) for a, b in zip(_reduced(phi(TangleWord((eta(kk),)))), rp))
                    nrq = rq
                else:
                    npre, npost = pre, post + (xi(kk),)
                    nrp = rp
                    nrq = tuple(_join(a, b) for a, b in zip(rq, _reduced(phi(TangleWord((xi(kk),))))))
                if (nrp, nrq) in seen:
                    continue
                seen.add((nrp, nrq))
                tot = [_join(_join(a, b), c) for a, b, c in zip(nrp, mid, nrq)]
                if all(x == (0, 0) for x in tot):
                    return TangleWord(npre) + t + TangleWord(npost)
                queue.append((npre, npost, nrp, nrq))
    raise ValueError("no closure found within the search window")
