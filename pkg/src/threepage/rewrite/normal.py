"""Normal forms for i-balanced words.

Pipeline: ``eliminate_to_core`` removes every letter outside
``a_i, b_i, c_i, d_i, x_{m,i}, b_{i-1}, d_{i-1}``; ``star_completion`` makes
the μ-encoding a product of stars ``(^k • )^k``; ``reduce_depth`` lowers the
depth of every deep star by one using (46a)-(46x); ``star_normal_form``
iterates and finishes with the primed-letter eliminations, giving a product
of members of 𝔹_{n,i}.

Every function returns a word equivalent to its input.  The substitutions
are the hand derivations; tests confirm equivalence with the prover.
"""

from ..pages import is_page_balanced
from ..words import Word
from .relations import a, b, c, d, x, pw, W

__all__ = ["PreconditionError", "is_core", "core_substitution", "eliminate_to_core", "mu_encoding", "depth",
           "stars", "star_completion", "reduce_depth", "star_normal_form", "star_decomposition",
           "is_basis_word"]


class PreconditionError(ValueError):
    pass


def _require_balanced(w, i):
    if not is_page_balanced(w, i):
        raise PreconditionError("word is not %d-balanced" % (i % 3))


def _core_kind(l, i):
    """'•' for a_i,b_i,c_i,d_i,x_{m,i}; '(' for b_{i-1}; ')' for d_{i-1};
    None otherwise."""
    if l.index == i:
        return "•"
    if l.index == (i - 1) % 3:
        if l.kind == "b":
            return "("
        if l.kind == "d":
            return ")"
    return None


def is_core(w, i):
    i %= 3
    return all(_core_kind(l, i) is not None for l in w)


def core_substitution(l, i):
    """One elimination step for a non-core letter (None if l is core)."""
    i %= 3
    j = l.index
    up, dn = (i + 1) % 3, (i - 1) % 3
    if _core_kind(l, i) is not None:
        return None
    k = l.kind
    if k == "x":
        m = l.degree
        if m % 2:
            p = (m + 1) // 2
            if j == up:
                # (4) read at index i-1
                return W(pw(d(up), p - 1), x(m, dn), d(i), pw(b(up), p - 2))
            # j == dn: (4) read at index i
            return W(pw(d(dn), p - 1), x(m, i), d(up), pw(b(dn), p - 2))
        q = m // 2
        if j == dn:
            return W(pw(d(dn), q - 2), b(up), x(m, i), d(up), pw(b(i), q - 2))
        return W(d(dn), pw(b(i), q - 2), x(m, i), pw(d(i), q - 2), b(dn))   # (33)
    if k == "a":
        return W(a(dn), d(i)) if j == up else W(a(i), d(up))
    if k == "c":
        return W(b(i), c(dn)) if j == up else W(b(up), c(i))
    if k == "b":      # only b_{i+1} reaches here
        return W(d(dn), d(i))
    return W(b(i), b(dn))      # d_{i+1}


def eliminate_to_core(w, i, strict=False):
    """Rewrite a word into the seven core letter families.

    The substitutions are valid for any word; ``strict`` additionally
    insists on an i-balanced input (PreconditionError otherwise)."""
    i %= 3
    if strict:
        _require_balanced(w, i)
    letters = list(w)
    while True:
        out = []
        changed = False
        for l in letters:
            s = core_substitution(l, i)
            if s is None:
                out.append(l)
            else:
                out.extend(s)
                changed = True
        letters = out
        if not changed:
            return Word(letters)


def mu_encoding(w, i):
    i %= 3
    out = []
    for l in w:
        s = _core_kind(l, i)
        if s is None:
            raise PreconditionError("letter %s is not a core letter for i=%d" % (l.token, i))
        out.append(s)
    return "".join(out)


def depth(w, i):
    dmax = cur = 0
    for s in mu_encoding(w, i):
        if s == "(":
            cur += 1
            dmax = max(dmax, cur)
        elif s == ")":
            cur -= 1
    return dmax


def stars(w, i):
    """The bullet letters of a core word with the bracket depth at each."""
    i %= 3
    cur = 0
    out = []
    for l in w:
        s = _core_kind(l, i)
        if s == "(":
            cur += 1
        elif s == ")":
            cur -= 1
        elif s == "•":
            out.append((l, cur))
        else:
            raise PreconditionError("letter %s is not a core letter for i=%d" % (l.token, i))
    return out


def star_completion(w, i):
    """Cancel empty bracket pairs and pad with ``d^j b^j`` so every bullet at
    depth k stands inside its own star ``b_{i-1}^k • d_{i-1}^k``.  Only
    relation (2) is used: between bullets at depths k and k' the bracket
    letters reduce freely to ``d^k b^k'``."""
    i %= 3
    _require_balanced(w, i)
    B, Dn = b(i - 1), d(i - 1)
    out = []
    for l, k in stars(w, i):
        out.extend([B] * k + [l] + [Dn] * k)
    return Word(out)


def _star_factors(w, i):
    """Split a star-decomposable word into (bullet letter, depth) pieces."""
    return stars(w, i)


def _depth2_image(l, i):
    """Depth-one replacement for ``b_{i-1}^2 s d_{i-1}^2`` from (46a)-(46x),
    with the nested depth-2 stars of (46x) already replaced via (46b/46d)."""
    B, Dn = b(i - 1), d(i - 1)
    bp = W(B, b(i), Dn)
    dp = W(B, d(i), Dn)
    img_b = bp + W(d(i), d(i)) + bp + W(b(i))
    img_d = W(d(i)) + dp + W(b(i), b(i)) + dp
    k = l.kind
    if k == "a":
        return W(B, a(i), Dn, d(i), d(i)) + bp + W(b(i))
    if k == "b":
        return img_b
    if k == "c":
        return W(d(i)) + dp + W(b(i), b(i), B, c(i), Dn)
    if k == "d":
        return img_d
    if l.degree % 2:
        return dp + W(d(i), l, b(i), b(i)) + bp + img_d
    return img_b + dp + W(d(i), d(i), l, b(i), b(i)) + bp + img_d


def reduce_depth(w, i):
    """One round of depth reduction on a star-decomposable word: every star
    ``b^k s d^k`` with k >= 2 becomes ``b^(k-2) v d^(k-2)`` where v is the
    depth-one image of ``b^2 s d^2``."""
    i %= 3
    B, Dn = b(i - 1), d(i - 1)
    out = []
    for l, k in _star_factors(w, i):
        if k >= 2:
            out.extend([B] * (k - 2) + list(_depth2_image(l, i)) + [Dn] * (k - 2))
        else:
            out.extend([B] * k + [l] + [Dn] * k)
    return Word(out)


def _prime_image(l, i):
    """Lemma-5 elimination of ``s' = b_{i-1} s d_{i-1}``; None keeps s'."""
    B, Dn = b(i - 1), d(i - 1)
    bp = W(B, b(i), Dn)
    dp = W(B, d(i), Dn)
    k = l.kind
    if k == "a":
        return [W(d(i)), W(a(i)), W(b(i)), W(b(i)), dp]
    if k == "c":
        return [bp, W(d(i)), W(d(i)), W(c(i)), W(b(i))]
    if k in "bd":
        return None
    if l.degree % 2:
        return [W(d(i)), W(l), W(b(i)), W(b(i)), dp]
    return [bp, W(d(i)), W(d(i)), W(l), W(b(i)), W(b(i)), dp]


def star_decomposition(w, i, trace=None):
    """Factor list (each a member of 𝔹_{n,i}) whose product is equivalent
    to the i-balanced word w.  ``trace`` (a list) collects the depth of each
    intermediate star form."""
    i %= 3
    _require_balanced(w, i)
    cur = star_completion(eliminate_to_core(w, i), i)
    while True:
        dd = depth(cur, i)
        if trace is not None:
            trace.append(dd)
        if dd <= 1:
            break
        cur = star_completion(reduce_depth(cur, i), i)
    B, Dn = b(i - 1), d(i - 1)
    factors = []
    for l, k in stars(cur, i):
        if k == 0:
            factors.append(W(l))
            continue
        img = _prime_image(l, i)
        if img is None:
            factors.append(W(B, l, Dn))
        else:
            factors.extend(img)
    return factors


def star_normal_form(w, i):
    out = []
    for f in star_decomposition(w, i):
        out.extend(f)
    return Word(out)


def is_basis_word(f, i):
    """Membership in 𝔹_{n,i} (any degree)."""
    i %= 3
    L = list(f)
    if len(L) == 1:
        return L[0].index == i
    if len(L) == 3:
        return (L[0] == b(i - 1) and L[2] == d(i - 1) and L[1] in (b(i), d(i)))
    return False
