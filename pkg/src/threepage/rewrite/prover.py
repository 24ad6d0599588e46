"""Bounded bidirectional search for word equivalences.

Words are searched as byte strings (one byte per letter).  The letters
``b_i`` and ``d_i`` are mutually inverse by relation (2), so every search
state is kept freely reduced, and each rule ``l = r`` is compiled into a
family of "group-aware" variants:

* if some letters at the ends of ``l`` are invertible they may be moved to
  the other side (``P l' S = r`` gives ``l' -> P^-1 r S^-1``);
* if every letter of ``l`` and ``r`` is invertible the rule is a relator
  ``R = l r^-1`` and any piece ``s`` of a cyclic rotation ``s t`` of ``R``
  may be replaced by ``t^-1``.

Every such step expands into plain moves (insertions and deletions of
``b_i d_i`` / ``d_i b_i`` plus one application of the parent rule), so a
found path always yields a certificate of elementary moves that replays
letter-exactly.  Derived equivalences ("lemmas") can be added as rules; their
certificates are inlined on expansion.
"""

from collections import namedtuple

from ..abelian import abelianize
from ..words import Letter, Word, render
from .relations import (LHS_TO_RHS, RHS_TO_LHS, MoveError,
                        instantiate_relations, relation_registry)

__all__ = ["BaseMove", "Certificate", "Proved", "Refuted", "Unknown", "Lemma",
           "RuleSet", "Budget", "prove_equivalent", "encode", "decode",
           "free_reduce", "replay", "parse_certificate", "DEFAULT_BUDGET"]

Budget = namedtuple("Budget", "max_len_delta max_states")
DEFAULT_BUDGET = Budget(8, 10 ** 6)


# --------------------------------------------------------------- encoding

def code_of(l):
    if l.kind == "x":
        return 12 + 3 * (l.degree - 3) + l.index
    return "abcd".index(l.kind) * 3 + l.index


_DECODE = {}


def letter_of(c):
    l = _DECODE.get(c)
    if l is None:
        if c < 12:
            l = Letter("abcd"[c // 3], c % 3)
        else:
            l = Letter("x", (c - 12) % 3, (c - 12) // 3 + 3)
        _DECODE[c] = l
    return l


def encode(w):
    return bytes(code_of(l) for l in w)


def decode(bs):
    return Word(letter_of(c) for c in bs)


INV = [255] * 256
for _i in range(3):
    INV[3 + _i] = 9 + _i
    INV[9 + _i] = 3 + _i
INV = bytes(INV)


def invertible(bs):
    return all(INV[c] != 255 for c in bs)


def inverse(bs):
    return bytes(INV[c] for c in reversed(bs))


def free_reduce(bs):
    st = bytearray()
    for c in bs:
        if st and INV[c] == st[-1]:
            st.pop()
        else:
            st.append(c)
    return bytes(st)


def _pair_key(c):
    """Relation (2) instance for the adjacent pair ``c inv(c)``."""
    if 3 <= c <= 5:
        return ("R2", (("i", c - 3), ("form", "bd")))
    return ("R2", (("i", c - 9), ("form", "db")))


def reduce_moves(bs):
    """Free reduction as a list of deletion moves."""
    st = bytearray()
    moves = []
    for c in bs:
        if st and INV[c] == st[-1]:
            rid, params = _pair_key(st[-1])
            moves.append(BaseMove(len(st) - 1, rid, params, LHS_TO_RHS))
            st.pop()
        else:
            st.append(c)
    return bytes(st), moves


def splice(left, mid, right):
    """free_reduce(left + mid + right) for reduced parts."""
    i = len(left)
    j = 0
    n = len(mid)
    while i and j < n and INV[left[i - 1]] == mid[j]:
        i -= 1
        j += 1
    if j < n:
        k = n
        r = 0
        nr = len(right)
        while k > j and r < nr and INV[mid[k - 1]] == right[r]:
            k -= 1
            r += 1
        if k > j:
            return left[:i] + mid[j:k] + right[r:]
        right = right[r:]
    left = left[:i]
    i = len(left)
    r = 0
    nr = len(right)
    while i and r < nr and INV[left[i - 1]] == right[r]:
        i -= 1
        r += 1
    return left[:i] + right[r:]


# --------------------------------------------------------------- certificates

class BaseMove(namedtuple("BaseMove", "pos rid params direction")):
    __slots__ = ()

    def shifted(self, k):
        return BaseMove(self.pos + k, self.rid, self.params, self.direction)

    def inverted(self):
        return BaseMove(self.pos, self.rid, self.params,
                        RHS_TO_LHS if self.direction == LHS_TO_RHS else LHS_TO_RHS)

    def __str__(self):
        ps = ",".join("%s=%s" % kv for kv in self.params) or "-"
        return "%d\t%s\t%s\t%s" % (self.pos, self.rid, ps, self.direction)


def invert_moves(moves):
    return [m.inverted() for m in reversed(moves)]


def _parse_params(text):
    if text == "-":
        return ()
    out = []
    for item in text.split(","):
        k, _, v = item.partition("=")
        out.append((k, int(v) if v.lstrip("-").isdigit() else v))
    return tuple(out)


def parse_certificate(text):
    moves = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pos, rid, ps, direction = line.split("\t")
        moves.append(BaseMove(int(pos), rid, _parse_params(ps), direction))
    return moves


def _find_relation(registries, rid, params):
    for reg in registries:
        r = reg.get((rid, params))
        if r is not None:
            return r
    raise MoveError("unknown relation %s %r" % (rid, params))


def replay(w, moves, alphabet=None, mode="RSG"):
    """Apply base moves one by one; raises MoveError on any mismatch."""
    from ..words import Alphabet
    letters = list(w.letters)
    if alphabet is None:
        degs = {l.degree for l in letters if l.kind == "x"}
        for m in moves:
            for k, v in m.params:
                if k == "m":
                    degs.add(v)
        degs |= _degrees_in_params(moves)
        alphabet = Alphabet(degs)
    regs = [relation_registry(alphabet, mode)]
    for m in moves:
        rel = _find_relation(regs, m.rid, m.params)
        src, dst = (rel.lhs, rel.rhs) if m.direction == LHS_TO_RHS else (rel.rhs, rel.lhs)
        n = len(src)
        if tuple(letters[m.pos:m.pos + n]) != src.letters or m.pos > len(letters):
            raise MoveError("move %s does not apply to %s" % (m, render(Word(letters))))
        letters[m.pos:m.pos + n] = dst.letters
    return Word(letters)


def _degrees_in_params(moves):
    from ..words import parse_word
    degs = set()
    for m in moves:
        for k, v in m.params:
            if k in ("w", "u", "v") and "x" in str(v):
                for l in parse_word(v):
                    if l.kind == "x":
                        degs.add(l.degree)
    return degs


class Certificate:
    def __init__(self, start, end, moves, mode="RSG"):
        self.start = start
        self.end = end
        self.moves = list(moves)
        self.mode = mode

    def __len__(self):
        return len(self.moves)

    def replay(self, alphabet=None):
        return replay(self.start, self.moves, alphabet, self.mode)

    def check(self):
        return self.replay() == self.end

    def to_text(self):
        head = "# %s ~ %s (%s, %d moves)" % (render(self.start) or "1", render(self.end) or "1",
                                             self.mode, len(self.moves))
        return "\n".join([head] + [str(m) for m in self.moves])


class Proved:
    verdict = "Proved"

    def __init__(self, certificate, steps=0, states=0):
        self.certificate = certificate
        self.steps = steps
        self.states = states

    @property
    def path(self):
        return self.certificate.moves

    def __bool__(self):
        return True

    def __repr__(self):
        return "Proved(%d moves, %d search steps)" % (len(self.certificate), self.steps)


class Refuted:
    verdict = "Refuted"

    def __init__(self, invariant, detail):
        self.invariant = invariant
        self.detail = detail

    def __bool__(self):
        return False

    def __repr__(self):
        return "Refuted(%s: %s)" % (self.invariant, self.detail)


class Unknown:
    verdict = "Unknown"

    def __init__(self, states, reason="budget exhausted"):
        self.states = states
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return "Unknown(%s after %d states)" % (self.reason, self.states)


# --------------------------------------------------------------- rules

class Parent:
    """A directed equivalence src -> dst (reduced byte strings) together with
    the base moves realizing it on a standalone copy of src."""

    __slots__ = ("src", "dst", "moves", "name")

    def __init__(self, src_raw, dst_raw, core_moves, name):
        src, pre = reduce_moves(src_raw)
        dst, post = reduce_moves(dst_raw)
        self.src = src
        self.dst = dst
        self.moves = invert_moves(pre) + list(core_moves) + post
        self.name = name

    def expand(self, pos):
        if not pos:
            return list(self.moves)
        return [m.shifted(pos) for m in self.moves]


class Lemma:
    """A proved equivalence u ~ v usable as a rule.  ``moves`` transforms u
    into v."""

    def __init__(self, name, u, v, moves, mode="RSG"):
        self.name = name
        self.u = u
        self.v = v
        self.moves = list(moves)
        self.mode = mode
        self.rids = frozenset(m.rid for m in self.moves)

    def usable_in(self, mode):
        if mode == "RSG":
            return "R9'" not in self.rids
        return not ({"R9", "R10"} & self.rids)

    def parents(self):
        u, v = encode(self.u), encode(self.v)
        yield Parent(u, v, self.moves, self.name)
        yield Parent(v, u, invert_moves(self.moves), self.name + "^-1")

    def __repr__(self):
        return "Lemma(%s: %s ~ %s)" % (self.name, render(self.u), render(self.v))


def _pair_insert(pos, c):
    """Insert ``c inv(c)`` at pos."""
    rid, params = _pair_key(c)
    return BaseMove(pos, rid, params, RHS_TO_LHS)


class Rule:
    __slots__ = ("src", "dst", "parent", "kind", "a", "b", "extra")

    def __init__(self, src, dst, parent, kind, a=0, b=0, extra=b""):
        self.src = src
        self.dst = dst
        self.parent = parent
        self.kind = kind
        self.a = a
        self.b = b
        self.extra = extra

    def expand(self, pos):
        p = self.parent
        if self.kind == "plain":
            return p.expand(pos)
        moves = []
        if self.kind == "slide":
            k1, k2 = self.a, self.b
            l = p.src
            L = len(l)
            for t in range(1, k1 + 1):
                moves.append(_pair_insert(pos + t - 1, INV[l[k1 - t]]))
            e = pos + 2 * k1 + len(self.src)
            for t in range(1, k2 + 1):
                moves.append(_pair_insert(e + t - 1, l[L - k2 + t - 1]))
            moves.extend(p.expand(pos + k1))
            return moves
        # relator piece: src = s, t = self.extra, rotation offset kappa = self.a
        kappa = self.a
        t = self.extra
        relator = p.src + inverse(p.dst)
        e = pos + len(self.src)
        for j in range(1, len(t) + 1):
            moves.append(_pair_insert(e + j - 1, t[j - 1]))
        A = relator[:kappa]
        for j in range(1, kappa + 1):
            moves.append(_pair_insert(pos + j - 1, INV[A[kappa - j]]))
        moves.extend(p.expand(pos + kappa))
        return moves


def _is_reduced(bs):
    return all(INV[bs[k]] != bs[k + 1] for k in range(len(bs) - 1))


def _inv_prefix_len(bs):
    k = 0
    while k < len(bs) and INV[bs[k]] != 255:
        k += 1
    return k


def compile_parent(p):
    """All search rules derived from one directed parent."""
    l, r = p.src, p.dst
    out = []
    if l == r:
        return out
    if invertible(l) and invertible(r):
        R = free_reduce(l + inverse(r))
        if not R:
            return out
        # relator pieces; rotations are taken of the literal l + inv(r) so the
        # expansion can locate the parent's src inside it
        raw = l + inverse(r)
        n = len(raw)
        for kappa in range(n):
            Q = raw[kappa:] + raw[:kappa]
            for split in range(1, n + 1):
                s, t = Q[:split], Q[split:]
                if not _is_reduced(s):
                    continue
                dst = inverse(t)
                if free_reduce(s) == free_reduce(dst):
                    continue
                out.append(Rule(s, free_reduce(dst), p, "piece", kappa, 0, t))
        return out
    if not l:
        return out
    kp = _inv_prefix_len(l)
    ks = _inv_prefix_len(l[::-1])
    for k1 in range(kp + 1):
        for k2 in range(ks + 1):
            if k1 + k2 >= len(l):
                continue
            src = l[k1:len(l) - k2]
            dst = free_reduce(inverse(l[:k1]) + r + inverse(l[len(l) - k2:]) if k2 else
                              inverse(l[:k1]) + r)
            if src == dst:
                continue
            kind = "plain" if k1 == 0 and k2 == 0 else "slide"
            out.append(Rule(src, dst, p, kind, k1, k2))
    return out


class RuleSet:
    """Compiled search rules for an alphabet, a mode and a lemma library."""

    def __init__(self, alphabet, mode="RSG", lemmas=()):
        self.alphabet = alphabet
        self.mode = mode
        self.rules = []
        self._seen = set()
        self.idx1 = {}
        self.idx2 = {}
        self.lemmas = []
        for rel in instantiate_relations(alphabet, mode, include_redundant=True):
            if rel.rid == "R2":
                continue   # handled by free reduction
            lhs, rhs = encode(rel.lhs), encode(rel.rhs)
            mv = [BaseMove(0, rel.rid, rel.params, LHS_TO_RHS)]
            self._add_parent(Parent(lhs, rhs, mv, rel.rid))
            self._add_parent(Parent(rhs, lhs, invert_moves(mv), rel.rid + "^-1"))
        for lem in lemmas:
            self.add_lemma(lem)

    def _add_parent(self, p):
        for rule in compile_parent(p):
            key = (rule.src, rule.dst)
            if key in self._seen:
                continue
            self._seen.add(key)
            ridx = len(self.rules)
            self.rules.append(rule)
            entry = (rule.src, rule.dst, ridx)
            if len(rule.src) == 1:
                self.idx1.setdefault(rule.src[0], []).append(entry)
            else:
                self.idx2.setdefault(rule.src[:2], []).append(entry)

    def add_lemma(self, lem):
        if not lem.usable_in(self.mode):
            return False
        degs = {l.degree for l in lem.u.letters + lem.v.letters if l.kind == "x"}
        if not degs <= set(self.alphabet.degrees):
            return False
        if any(k == "m" and v not in self.alphabet.degrees for m in lem.moves for k, v in m.params):
            return False
        self.lemmas.append(lem)
        for p in lem.parents():
            self._add_parent(p)
        return True

    def __len__(self):
        return len(self.rules)

    def neighbors(self, w):
        idx1, idx2 = self.idx1, self.idx2
        L = len(w)
        for p in range(L):
            for src, dst, ridx in idx2.get(w[p:p + 2], ()):
                if w.startswith(src, p):
                    yield splice(w[:p], dst, w[p + len(src):]), ridx, p
            for src, dst, ridx in idx1.get(w[p], ()):
                yield splice(w[:p], dst, w[p + 1:]), ridx, p


# --------------------------------------------------------------- search

def _search(rs, start, goal, max_len, max_states):
    """Layered bidirectional BFS.  Returns (meet, fwd, bwd, states) or
    (None, ..., states)."""
    fwd = {start: None}
    bwd = {goal: None}
    if start == goal:
        return start, fwd, bwd, 2
    ff, fb = [start], [goal]
    states = 2
    while ff and fb:
        if len(ff) <= len(fb):
            frontier, mine, other, forward = ff, fwd, bwd, True
        else:
            frontier, mine, other, forward = fb, bwd, fwd, False
        nxt = []
        for w in frontier:
            for nw, ridx, p in rs.neighbors(w):
                if nw in mine or len(nw) > max_len:
                    continue
                mine[nw] = (w, ridx, p)
                if nw in other:
                    return nw, fwd, bwd, states
                nxt.append(nw)
                states += 1
                if states >= max_states:
                    return None, fwd, bwd, states
        if forward:
            ff = nxt
        else:
            fb = nxt
    return None, fwd, bwd, states


def _chain(tree, node):
    steps = []
    while tree[node] is not None:
        prev, ridx, p = tree[node]
        steps.append((prev, ridx, p))
        node = prev
    steps.reverse()
    return steps


def _expand_chain(rs, start, steps, alphabet, mode):
    """Base moves for a list of search steps starting at reduced ``start``."""
    moves = []
    cur = start
    regs = [relation_registry(alphabet, mode)]
    for prev, ridx, p in steps:
        assert prev == cur
        rule = rs.rules[ridx]
        mv = rule.expand(p)
        raw = _apply_encoded(cur, mv, regs)
        red, rm = reduce_moves(raw)
        moves.extend(mv)
        moves.extend(rm)
        cur = red
    return moves, cur


_ENC_CACHE = {}


def _apply_encoded(bs, moves, regs):
    b = bytearray(bs)
    for m in moves:
        key = (m.rid, m.params, m.direction)
        sides = _ENC_CACHE.get(key)
        if sides is None:
            rel = _find_relation(regs, m.rid, m.params)
            src, dst = (rel.lhs, rel.rhs) if m.direction == LHS_TO_RHS else (rel.rhs, rel.lhs)
            sides = _ENC_CACHE[key] = (encode(src), encode(dst))
        src, dst = sides
        if bytes(b[m.pos:m.pos + len(src)]) != src:
            raise MoveError("internal: expansion mismatch for %s" % (m,))
        b[m.pos:m.pos + len(src)] = dst
    return bytes(b)


_RULESETS = {}


def ruleset_for(alphabet, mode="RSG", lemmas=()):
    key = (alphabet.degrees, mode, tuple(id(l) for l in lemmas))
    rs = _RULESETS.get(key)
    if rs is None:
        if len(_RULESETS) > 64:
            _RULESETS.clear()
        rs = _RULESETS[key] = RuleSet(alphabet, mode, lemmas)
    return rs


def invariant_check(u, v):
    """Refuted when the abelianizations differ, else None.

    Balance status is not used: it is not preserved by the relations
    (``b0 d0`` is unbalanced on page 2 yet equals the empty word by (2)).
    """
    au, av = abelianize(u), abelianize(v)
    if au != av:
        return Refuted("abelianization", "%s vs %s" % (au, av))
    return None


def prove_equivalent(u, v, budget=DEFAULT_BUDGET, mode="RSG", lemmas=(), alphabet=None,
                     ruleset=None, stages=(2, 4)):
    """Search for a chain of moves from u to v.

    The search runs with a growing length cap (``max(|u|,|v|)`` plus each
    entry of ``stages`` and finally ``budget.max_len_delta``); all stages
    share one state budget.
    """
    if budget is None:
        budget = DEFAULT_BUDGET
    ref = invariant_check(u, v)
    if ref is not None:
        return ref
    if alphabet is None:
        alphabet = u.alphabet.union(v.alphabet)
    rs = ruleset if ruleset is not None else ruleset_for(alphabet, mode, tuple(lemmas))
    ue, ve = encode(u), encode(v)
    us, upre = reduce_moves(ue)
    vs, vpre = reduce_moves(ve)
    base = max(len(u), len(v))
    deltas = sorted({d for d in stages if d < budget.max_len_delta} | {budget.max_len_delta})
    used = 0
    for delta in deltas:
        remaining = budget.max_states - used
        if remaining <= 0:
            break
        meet, fwd, bwd, states = _search(rs, us, vs, base + delta, remaining)
        used += states
        if meet is None:
            continue
        fsteps = _chain(fwd, meet)
        bsteps = _chain(bwd, meet)
        fm, end1 = _expand_chain(rs, us, fsteps, alphabet, mode)
        bm, end2 = _expand_chain(rs, vs, bsteps, alphabet, mode)
        assert end1 == end2 == meet
        moves = upre + fm + invert_moves(bm) + invert_moves(vpre)
        cert = Certificate(u, v, moves, mode)
        return Proved(cert, len(fsteps) + len(bsteps), used)
    return Unknown(used)
