"""Derived-equivalence verification suites.

Each suite is a list of targets ``u ~ v``.  Targets are proved in order and
every proved target becomes a lemma available to later searches, mirroring
the way the hand derivations lean on earlier equivalences.  A target is
searched in the smallest alphabet containing its letters.
"""

import time
from collections import namedtuple

from ..words import Alphabet, render
from .. import tangles as tg
from .relations import a, b, c, d, x, pw, W, t_word, t_prime_word, D_word
from .prover import (DEFAULT_BUDGET, Lemma, Proved, Refuted, RuleSet,
                     prove_equivalent)
from .tactics import LocalProofs, prove_by_plan

__all__ = ["Target", "SuiteReport", "claim1_targets", "claim6_targets", "lemma3_targets",
           "nsg_phi23_targets", "suite_targets", "verify_suite", "basis_words", "SUITES"]


class Target(namedtuple("Target", "suite name params u v mode plan", defaults=(None,))):
    """``plan``, when present, is (P, X, W, S, i): the target reduces to
    moving X across the i-balanced word W inside P . W . S."""

    __slots__ = ()

    @property
    def label(self):
        ps = ",".join("%s=%s" % kv for kv in self.params)
        return "(%s)[%s]" % (self.name, ps) if ps else "(%s)" % self.name

    def __str__(self):
        return "%s %s ~ %s" % (self.label, render(self.u) or "1", render(self.v) or "1")


def _degrees(n):
    return tuple(range(3, n + 1))


def basis_words(n, i):
    """The set 𝔹_{n,i}: a_i, b_i, c_i, d_i, x_{m,i}, b_{i-1} b_i d_{i-1},
    b_{i-1} d_i d_{i-1}."""
    out = [W(a(i)), W(b(i)), W(c(i)), W(d(i))]
    out += [W(x(m, i)) for m in _degrees(n)]
    out += [W(b(i - 1), b(i), d(i - 1)), W(b(i - 1), d(i), d(i - 1))]
    return out


def _wname(w):
    return render(w).replace(" ", "")


def claim1_targets(n=6):
    """(25)-(46x) for every i and every odd/even degree up to n, ordered so
    that each item's hand proof only uses earlier items."""
    T = []

    def add(name, params, u, v):
        T.append(Target("claim1", name, tuple(params), u, v, "RSG"))

    odd = [m for m in _degrees(n) if m % 2]
    even = [m for m in _degrees(n) if not m % 2]
    for i in range(3):
        add("25", [("i", i)], W(b(i)), W(d(i + 1), d(i - 1)))
        add("26", [("i", i)], W(d(i)), W(b(i - 1), b(i + 1)))
    for i in range(3):
        ti = t_word(i)
        add("27", [("i", i), ("form", 1)], W(d(i + 1), b(i - 1)), W(b(i - 1), d(i + 1), ti))
        add("27", [("i", i), ("form", 2)], W(b(i + 1), d(i - 1)), W(ti, d(i - 1), b(i + 1)))
    for i in range(3):
        add("28", [("i", i), ("form", 1)], W(a(i)), W(a(i - 1), b(i + 1)))
        add("28", [("i", i), ("form", 2)], W(c(i)), W(d(i + 1), c(i - 1)))
    for i in range(3):
        add("29", [("i", i), ("form", 1)], W(a(i), b(i)), W(a(i - 1), d(i - 1)))
        add("29", [("i", i), ("form", 2)], W(d(i), c(i)), W(b(i - 1), c(i - 1)))
    for i in range(3):
        add("30", [("i", i), ("form", 1)], W(b(i)), W(a(i), b(i), c(i)))
        add("30", [("i", i), ("form", 2)], W(d(i)), W(a(i), d(i), c(i)))
    for i in range(3):
        for m in odd:
            p = (m + 1) // 2
            add("31", [("i", i), ("m", m)], W(pw(b(i), p - 1), x(m, i), pw(d(i), p - 1)),
                W(x(m, i + 1), b(i + 1)))
            add("32", [("i", i), ("m", m)], W(pw(d(i), p - 1), x(m, i + 1), b(i + 1), pw(b(i), p)),
                W(x(m, i), b(i)))
        for m in even:
            q = m // 2
            add("33", [("i", i), ("m", m)], W(x(m, i + 1)),
                W(d(i - 1), pw(b(i), q - 2), x(m, i), pw(d(i), q - 2), b(i - 1)))
            add("34", [("i", i), ("m", m)], W(pw(b(i), q - 1), x(m, i), pw(d(i), q - 1)),
                W(d(i + 1), x(m, i + 1), b(i + 1)))

    def comm(name, params, u, ws):
        for w in ws:
            add(name, params + [("w", _wname(w))], u + w, w + u)

    for i in range(3):
        comm("37", [("i", i)], W(a(i), b(i)), basis_words(n, i + 1))
    for i in range(3):
        comm("39", [("i", i), ("t", "t")], t_word(i), basis_words(n, i))
        comm("39", [("i", i), ("t", "t'")], t_prime_word(i), basis_words(n, i))
    for i in range(3):
        for m in odd:
            comm("40", [("i", i), ("m", m)], W(x(m, i), b(i)), basis_words(n, i + 1))
        for m in even:
            comm("41", [("i", i), ("m", m)], W(d(i), x(m, i), b(i)), basis_words(n, i + 1))
    for i in range(3):
        comm("35", [("i", i)], W(d(i), c(i)), basis_words(n, i + 1))
    for i in range(3):
        comm("36", [("i", i)], W(b(i), c(i)), basis_words(n, i - 1))
        comm("38", [("i", i)], W(a(i), d(i)), basis_words(n, i - 1))
    for i in range(3):
        for m in odd:
            p = (m + 1) // 2
            comm("42", [("i", i), ("m", m)], W(pw(b(i), p - 1), x(m, i), pw(d(i), p - 1)),
                 basis_words(n, i - 1))
            comm("43", [("i", i), ("m", m)], W(pw(d(i - 1), p - 1), x(m, i), b(i), pw(b(i - 1), p)),
                 basis_words(n, i))
        for m in even:
            q = m // 2
            comm("44", [("i", i), ("m", m)], W(pw(b(i), q - 1), x(m, i), pw(d(i), q - 1)),
                 basis_words(n, i - 1))
    for i in range(3):
        for w in basis_words(n, i):
            add("45", [("i", i), ("w", _wname(w))],
                W(d(i + 1), b(i - 1), w, d(i - 1), b(i + 1)),
                W(b(i - 1), d(i + 1), w, b(i + 1), d(i - 1)))
    for i in range(3):
        B = b(i - 1)
        Dm = d(i - 1)
        bbd = W(B, b(i), Dm)
        bdd = W(B, d(i), Dm)
        add("46a", [("i", i)], W(B, B, a(i), Dm, Dm),
            W(B, a(i), Dm, d(i), d(i)) + bbd + W(b(i)))
        add("46b", [("i", i)], W(B, B, b(i), Dm, Dm),
            bbd + W(d(i), d(i)) + bbd + W(b(i)))
        add("46c", [("i", i)], W(B, B, c(i), Dm, Dm),
            W(d(i)) + bdd + W(b(i), b(i), B, c(i), Dm))
        add("46d", [("i", i)], W(B, B, d(i), Dm, Dm),
            W(d(i)) + bdd + W(b(i), b(i)) + bdd)
        b2d = W(B, B, d(i), Dm, Dm)
        b2b = W(B, B, b(i), Dm, Dm)
        for m in odd:
            add("46x", [("i", i), ("m", m)], W(B, B, x(m, i), Dm, Dm),
                bdd + W(d(i), x(m, i), b(i), b(i)) + bbd + b2d)
        for m in even:
            add("46x", [("i", i), ("m", m)], W(B, B, x(m, i), Dm, Dm),
                b2b + bdd + W(d(i), d(i), x(m, i), b(i), b(i)) + bbd + b2d)
    return T


def _phi(t):
    return tg.phi(tg.TangleWord(t))


def claim6_targets(kmax=3, lmax=3, aux=2):
    """(47)-(49): images of Σ, Σ̄, Σ' for k, l up to the bounds.

    Auxiliary items named "39'" (commutation of t_0 with the 0-balanced
    words b_2^j b_1^j, j <= aux) precede them; the inductive step for Σ̄
    uses them.  Beyond j = 2 the search for these gets expensive."""
    T = []
    B1, B2, D1, D2 = b(1), b(2), d(1), d(2)
    for j in range(1, min(aux, lmax) + 1):
        wj = W(pw(B2, j), pw(B1, j))
        T.append(Target("claim6", "39'", (("i", 0), ("w", _wname(wj))),
                        t_word(0) + wj, wj + t_word(0), "RSG"))
    for l in range(1, lmax + 1):
        for k in range(1, kmax + 1):
            pre, post = [D2] * (k - 1), [B2] * (k - 1)
            T.append(Target("claim6", "47", (("k", k), ("l", l)), _phi(tg.Sigma(k, l)),
                            W(pre, B1, pw(D2, l), D1, pw(B2, l), post), "RSG"))
            T.append(Target("claim6", "48", (("k", k), ("l", l)), _phi(tg.Sigma_bar(k, l)),
                            W(pre, pw(B1, l), D2, pw(D1, l), B2, post), "RSG"))
            T.append(Target("claim6", "49", (("k", k), ("l", l)), _phi(tg.Sigma_prime(k, l)),
                            W(pre, D_word(l + 1, 2), post), "RSG"))
    T.sort(key=lambda t: (dict(t.params).get("l", 0), t.name, dict(t.params).get("k", 0)))
    return T


def _lemma3_plan(name, lhs):
    """Commutation plans for φ(11)-φ(14) at k = 1.  With u = lhs[1] and
    ⋆ = φ(u_1) the moved word is W = d2^j ⋆ b2^j, which is 1-balanced."""
    if name not in ("11", "12", "13", "14"):
        return None
    head, u = lhs[0], lhs[1]
    l = u.k
    B2, D2 = b(2), d(2)

    def Wj(j):
        return W(pw(D2, j), _phi([u.shifted(1 - l)]), pw(B2, j))
    if name == "11":
        return (W(D2, D2), W(B2, c(2)), Wj(l - 1), W(), 1)
    if name == "12":
        return (W(), W(a(2), D2), Wj(l - 3), W(B2, B2), 1)
    if name == "13":
        return (W(D2, D2), t_word(1), Wj(l - 3), W(B2, B2), 1)
    m = head.m
    h = (m + 1) // 2 if m % 2 else m // 2
    X = W(pw(B2, h - 1), x(m, 2), pw(D2, h - 1))
    return (W(pw(D2, h - 1 if m % 2 else h)), X, Wj(l - h - 1), W(pw(B2, h)), 1)


def lemma3_targets(n=6, lmax=3):
    """φ(11)-φ(23) at k = 1 for l up to lmax."""
    T = []
    for name, params, lhs, rhs in tg.tangle_relations(n, "RGT", k=1, lmax=lmax):
        T.append(Target("lemma3", name, params, _phi(lhs), _phi(rhs), "RSG",
                        _lemma3_plan(name, lhs)))
    T.sort(key=lambda t: _lemma3_rank(t))
    return T


def _lemma3_rank(t):
    order = ["15", "19", "20", "16", "11", "12", "13", "14", "17", "18", "21", "22", "23"]
    return (order.index(t.name), len(t.u) + len(t.v))


def nsg_phi23_targets(n=6, kmax=1):
    """φ(λ_{m,k} σ_k) ~ φ(λ_{m,k}) and its σ^-1 companion, in NSG mode."""
    T = []
    for m in _degrees(n):
        for k in range(1, kmax + 1):
            lamk = tg.lam(m, k)
            T.append(Target("nsg_phi23", "23'", (("k", k), ("m", m), ("form", "sig")),
                            _phi([lamk, tg.sig(k)]), _phi([lamk]), "NSG"))
            T.append(Target("nsg_phi23", "23'", (("k", k), ("m", m), ("form", "inv")),
                            _phi([lamk, tg.inv(k)]), _phi([lamk]), "NSG"))
    return T


SUITES = ("claim1", "claim6", "lemma3", "nsg_phi23")


def suite_targets(suite, n=6, lmax=3, kmax=3):
    if suite == "claim1":
        return claim1_targets(n)
    if suite == "claim6":
        return claim6_targets(kmax, lmax)
    if suite == "lemma3":
        return lemma3_targets(n, lmax)
    if suite == "nsg_phi23":
        return nsg_phi23_targets(n)
    raise ValueError("unknown suite %r" % (suite,))


class SuiteReport:
    def __init__(self, suite, rows, seconds):
        self.suite = suite
        self.rows = rows          # list of (Target, verdict)
        self.seconds = seconds

    @property
    def proved(self):
        return [t for t, v in self.rows if isinstance(v, Proved)]

    @property
    def unknown(self):
        return [t for t, v in self.rows if not isinstance(v, (Proved, Refuted))]

    @property
    def refuted(self):
        return [t for t, v in self.rows if isinstance(v, Refuted)]

    def rate(self, pred=None):
        rows = [(t, v) for t, v in self.rows if pred is None or pred(t)]
        if not rows:
            return 1.0
        return sum(isinstance(v, Proved) for _, v in rows) / len(rows)

    def table(self):
        lines = []
        for t, v in self.rows:
            status = "PROVED" if isinstance(v, Proved) else "REFUTED" if isinstance(v, Refuted) else "UNKNOWN"
            extra = " (%d moves)" % len(v.certificate) if isinstance(v, Proved) else ""
            lines.append("%-8s %s%s" % (status, t, extra))
        lines.append("%s: %d/%d proved, %d unknown, %d refuted, %.1fs"
                     % (self.suite, len(self.proved), len(self.rows), len(self.unknown),
                        len(self.refuted), self.seconds))
        return "\n".join(lines)


class _Library:
    """Rule sets per (degrees, mode), grown as targets are proved."""

    def __init__(self, lemmas=()):
        self.lemmas = list(lemmas)
        self.sets = {}
        self.locals = {}

    def ruleset(self, degrees, mode):
        key = (degrees, mode)
        rs = self.sets.get(key)
        if rs is None:
            rs = RuleSet(Alphabet(degrees), mode)
            for lem in self.lemmas:
                rs.add_lemma(lem)
            self.sets[key] = rs
        return rs

    def local(self, rs, mode):
        lp = self.locals.get(id(rs))
        if lp is None:
            lp = self.locals[id(rs)] = LocalProofs(rs, mode)
        return lp

    def add(self, lem):
        self.lemmas.append(lem)
        for rs in self.sets.values():
            rs.add_lemma(lem)


def _target_degrees(t):
    return tuple(sorted({l.degree for l in t.u.letters + t.v.letters if l.kind == "x"}))


def verify_suite(suite, n=6, budget=None, targets=None, lemmas=(), learn=True, progress=None):
    """Run every target of the suite through the prover.

    Proved targets are added to the lemma library (``learn``).  Refuted
    verdicts can only come from an invariant mismatch and would indicate a
    transcription error in the target list.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    if targets is None:
        targets = suite_targets(suite, n)
    lib = lemmas if isinstance(lemmas, _Library) else _Library(lemmas)
    rows = []
    t0 = time.perf_counter()
    for t in targets:
        degs = _target_degrees(t)
        rs = lib.ruleset(degs, t.mode)
        v = None
        if t.plan is not None:
            v = prove_by_plan(t.u, t.v, t.plan, lib.local(rs, t.mode))
            if not isinstance(v, Proved):
                v = None
        if v is None:
            v = prove_equivalent(t.u, t.v, budget, mode=t.mode, alphabet=rs.alphabet, ruleset=rs)
        if isinstance(v, Proved) and learn and len(t.u) + len(t.v) > 0:
            lib.add(Lemma(t.label, t.u, t.v, v.certificate.moves, t.mode))
        rows.append((t, v))
        if progress:
            progress(t, v)
    return SuiteReport(suite, rows, time.perf_counter() - t0)
