"""Defining relations of RSG_J / NSG_J as explicit word pairs."""

from collections import namedtuple

from ..words import Alphabet, Letter, Word, render

__all__ = ["Relation", "instantiate_relations", "relation_registry", "apply_move",
           "t_word", "t_prime_word", "D_word", "pw", "MoveError", "LHS_TO_RHS", "RHS_TO_LHS"]

LHS_TO_RHS = "lhs->rhs"
RHS_TO_LHS = "rhs->lhs"


class MoveError(ValueError):
    pass


class Relation(namedtuple("Relation", "rid params lhs rhs counted")):
    """One instance ``lhs = rhs``.  ``params`` is a tuple of (name, value)
    pairs; ``counted`` is False only for the superfluous copy of (2)."""

    __slots__ = ()

    @property
    def key(self):
        return (self.rid, self.params)

    def param_str(self):
        return ",".join("%s=%s" % (k, v) for k, v in self.params) or "-"

    def __str__(self):
        return "%s[%s]: %s = %s" % (self.rid, self.param_str(),
                                     render(self.lhs) or "1", render(self.rhs) or "1")


def _l(kind, i, m=2):
    return Letter(kind, i % 3, m)


def a(i):
    return _l("a", i)


def b(i):
    return _l("b", i)


def c(i):
    return _l("c", i)


def d(i):
    return _l("d", i)


def x(m, i):
    return _l("x", i, m)


def pw(letter, k):
    if k < 0:
        raise ValueError("negative power")
    return [letter] * k


def W(*parts):
    out = []
    for p in parts:
        if isinstance(p, Letter):
            out.append(p)
        else:
            out.extend(p)
    return Word(out)


def t_word(i):
    """t_i = b_{i+1} d_{i-1} d_{i+1} b_{i-1}."""
    return W(b(i + 1), d(i - 1), d(i + 1), b(i - 1))


def t_prime_word(i):
    """t'_i = d_{i-1} b_{i+1} b_{i-1} d_{i+1}."""
    return W(d(i - 1), b(i + 1), b(i - 1), d(i + 1))


def D_word(k, i):
    """D_{k,i} = d_i^k d_{i+1}^k d_{i-1}^k."""
    return W(pw(d(i), k), pw(d(i + 1), k), pw(d(i - 1), k))


def _odd(m):
    return m % 2 == 1


def instantiate_relations(alphabet, mode="RSG", include_redundant=False):
    """All relation instances for the alphabet.

    Counting convention: (1) is one relation; (2) contributes its six
    one-sided identities minus the superfluous ``d_0 b_0 = 1`` (which
    follows from (1) and the other five); every other family contributes
    one instance per parameter tuple.  This reproduces 48 for A_2, 84 for
    A_3 and 3(16 + 11|J| + |J|^2) in general.  ``include_redundant`` adds
    the dropped copy back, flagged ``counted=False``.
    """
    if mode not in ("RSG", "NSG"):
        raise ValueError("mode must be RSG or NSG")
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.for_n(alphabet)
    J = alphabet.degrees
    out = []

    def add(rid, params, lhs, rhs, counted=True):
        out.append(Relation(rid, tuple(params), lhs, rhs, counted))

    E = Word()
    add("R1", (), W(d(0), d(1), d(2)), E)
    for i in range(3):
        add("R2", (("i", i), ("form", "bd")), W(b(i), d(i)), E)
        redundant = i == 0
        if include_redundant or not redundant:
            add("R2", (("i", i), ("form", "db")), W(d(i), b(i)), E, counted=not redundant)
    for i in range(3):
        add("R3", (("i", i), ("letter", "a")), W(a(i)), W(a(i + 1), d(i - 1)))
        add("R3", (("i", i), ("letter", "b")), W(b(i)), W(a(i - 1), c(i + 1)))
        add("R3", (("i", i), ("letter", "c")), W(c(i)), W(b(i - 1), c(i + 1)))
        add("R3", (("i", i), ("letter", "d")), W(d(i)), W(a(i + 1), c(i - 1)))
    for i in range(3):
        for m in J:
            if _odd(m):
                p = (m + 1) // 2
                add("R4", (("i", i), ("m", m)), W(x(m, i - 1)),
                    W(pw(d(i - 1), p - 1), x(m, i), d(i + 1), pw(b(i - 1), p - 2)))
            else:
                q = m // 2
                add("R4", (("i", i), ("m", m)), W(x(m, i - 1)),
                    W(pw(d(i - 1), q - 2), b(i + 1), x(m, i), d(i + 1), pw(b(i - 1), q - 2)))
    for i in range(3):
        for m in J:
            if _odd(m):
                p = (m + 1) // 2
                u1 = W(x(m, i), pw(d(i), p - 1))
                u2 = W(pw(b(i), p - 1), x(m, i), b(i))
                add("R5", (("i", i), ("m", m), ("form", 1)), u1, W(a(i), u1, c(i)))
                add("R5", (("i", i), ("m", m), ("form", 2)), u2, W(a(i), u2, c(i)))
            else:
                q = m // 2
                u1 = W(d(i), x(m, i), pw(d(i), q - 1))
                u2 = W(pw(b(i), q - 1), x(m, i), b(i))
                add("R6", (("i", i), ("m", m), ("form", 1)), u1, W(a(i), u1, c(i)))
                add("R6", (("i", i), ("m", m), ("form", 2)), u2, W(a(i), u2, c(i)))
    for i in range(3):
        dc = W(d(i), c(i))
        ws = [W(c(i + 1)), W(b(i), d(i + 1), d(i))] + [W(x(m, i + 1)) for m in J]
        for w in ws:
            add("R7", (("i", i), ("w", render(w))), dc + w, w + dc)
    for i in range(3):
        us = [W(a(i), b(i)), W(b(i - 1), d(i), d(i - 1), b(i))]
        for m in J:
            us.append(W(x(m, i), b(i)) if _odd(m) else W(d(i), x(m, i), b(i)))
        vs = [W(a(i + 1)), W(b(i + 1)), W(c(i + 1)), W(b(i), d(i + 1), d(i))]
        vs += [W(x(m, i + 1)) for m in J]
        for u in us:
            for v in vs:
                add("R8", (("i", i), ("u", render(u)), ("v", render(v))), u + v, v + u)
    for i in range(3):
        for m in J:
            if mode == "NSG":
                xb = W(x(m, i), b(i))
                add("R9'", (("i", i), ("m", m)), xb + D_word(2, i), xb)
            elif _odd(m):
                p = (m + 1) // 2
                xb = W(x(m, i), b(i))
                add("R9", (("i", i), ("m", m)), xb + D_word(p, i), D_word(p - 1, i) + xb)
            else:
                q = m // 2
                dxb = W(d(i), x(m, i), b(i))
                add("R10", (("i", i), ("m", m)), dxb + D_word(q, i), D_word(q, i) + dxb)
    return out


_REGISTRY = {}


def relation_registry(alphabet, mode="RSG"):
    """(rid, params) -> Relation, including the redundant copy of (2)."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet.for_n(alphabet)
    key = (alphabet.degrees, mode)
    reg = _REGISTRY.get(key)
    if reg is None:
        reg = {r.key: r for r in instantiate_relations(alphabet, mode, include_redundant=True)}
        _REGISTRY[key] = reg
    return reg


def _norm_dir(direction):
    if direction in (1, "+", "lhs->rhs", LHS_TO_RHS):
        return LHS_TO_RHS
    if direction in (-1, "-", "rhs->lhs", RHS_TO_LHS):
        return RHS_TO_LHS
    raise ValueError("bad direction %r" % (direction,))


def apply_move(w, rel, pos, direction=LHS_TO_RHS):
    """Replace the chosen side of ``rel`` occurring at ``pos`` by the other."""
    direction = _norm_dir(direction)
    src, dst = (rel.lhs, rel.rhs) if direction == LHS_TO_RHS else (rel.rhs, rel.lhs)
    n = len(src)
    if pos < 0 or pos > len(w) or tuple(w.letters[pos:pos + n]) != src.letters:
        raise MoveError("%s side of %s does not occur at position %d of %s"
                        % ("left" if direction == LHS_TO_RHS else "right", rel.rid, pos, render(w)))
    return Word(w.letters[:pos] + dst.letters + w.letters[pos + n:])
