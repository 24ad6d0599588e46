"""Arch numbers, graph constructions and the three-letters bound.

Constructions act on embedding models (or words) by gluing along the axis:
``⊔`` concatenates, ``*`` merges the last point of one side with the first
point of the other, ``∨`` adds one arc between those points, ``∘`` cuts a
loop on each side and reconnects across the junction.
"""

import math

from .fundgroup import GroupPresentation, neuwirth_presentation, gap_arcs, cyclic_reduce
from .pages import (EmbeddingModel, GeneralLetter, GeneralWord, UnbalancedError, arc_matching,
                    is_balanced, lift, specialize)
from .words import Word, shift_index
from .rewrite.relations import a, b, c, d, pw, W

__all__ = ["tp_upper_bound", "two_bridge_word", "theta_model", "theta_word", "disjoint_union",
           "vertex_sum", "edge_sum", "loop_sum", "three_letters_presentation", "TL_CATALOG",
           "tl_free_product", "ConstructionError", "reroot"]


class ConstructionError(ValueError):
    pass


def _model(x):
    if isinstance(x, EmbeddingModel):
        return x
    try:
        return arc_matching(x)
    except UnbalancedError as e:
        raise ConstructionError(str(e)) from None


def tp_upper_bound(m):
    """ar - 2 for this particular embedding."""
    return _model(m).arch_number - 2


def two_bridge_word(p, q):
    """a0 a1^(p-1) b2 b1^(q-1) b0 c1^(p-q) d1^(q-1) c2 c1^(q-1)."""
    if q < 1 or p < q:
        raise ValueError("need p >= q >= 1")
    return W(a(0), pw(a(1), p - 1), b(2), pw(b(1), q - 1), b(0), pw(c(1), p - q),
             pw(d(1), q - 1), c(2), pw(c(1), q - 1))


def theta_word(k):
    if k < 2:
        raise ValueError("theta graphs need k >= 2")
    return GeneralWord([GeneralLetter({0: "r", 1: "r" * (k - 1)}),
                        GeneralLetter({0: "l", 1: "l" * (k - 1)})])


def theta_model(k):
    """Two axis points joined by k arcs: one in page 0, k-1 in page 1."""
    return arc_matching(theta_word(k))


def _same_kind(u, v):
    """Result as a Word when both inputs are words, else a GeneralWord."""
    return isinstance(u, Word) and isinstance(v, Word)


def disjoint_union(u, v):
    for w in (u, v):
        if not is_balanced(w if not isinstance(w, EmbeddingModel) else lift(w)):
            raise ConstructionError("disjoint union needs balanced inputs")
    if _same_kind(u, v):
        return u + v
    return lift(u) + lift(v)


def _points(x):
    return list(lift(x.general_word() if isinstance(x, EmbeddingModel) else x).points)


def _merge(left, right):
    dirs = {}
    for p, s in left.dirs:
        dirs[p] = s
    for p, s in right.dirs:
        dirs[p] = dirs.get(p, "") + s
    return GeneralLetter(dirs)


def _finish(points, inputs, notes=None):
    gw = GeneralWord(points)
    if all(isinstance(x, Word) or (isinstance(x, EmbeddingModel) and isinstance(x.source, Word))
           for x in inputs):
        w = specialize(gw)
        m = arc_matching(w if isinstance(w, Word) else gw)
    else:
        m = arc_matching(gw)
    if notes:
        m.notes.update(notes)
    return m


def vertex_sum(mG, mH):
    """Merge G's rightmost point with H's leftmost point.  When the merged
    point would occupy three pages, H is rotated about the axis first (the
    rotation is recorded in ``notes['rotation']``)."""
    P, Q = _points(_model(mG)), _points(_model(mH))
    if not P or not Q:
        raise ConstructionError("vertex sum needs nonempty models")
    last, first = P[-1], Q[0]
    for s in (0, 1, 2):
        f = first.shifted(s)
        if len(set(last.pages) | set(f.pages)) <= 2:
            Qs = [q.shifted(s) for q in Q]
            merged = _merge(last, Qs[0])
            return _finish(P[:-1] + [merged] + Qs[1:], (mG, mH), {"rotation": s})
    raise ConstructionError("no rotation keeps the merged point in two pages")


def edge_sum(mG, mH, page=0):
    """Join G's rightmost point to H's leftmost point by one new arc,
    preferably in ``page``; the page used is ``notes['edge_page']``."""
    P, Q = _points(_model(mG)), _points(_model(mH))
    if not P or not Q:
        raise ConstructionError("edge sum needs nonempty models")
    last = P[-1]
    for s in (0, 1, 2):
        Qs = [q.shifted(s) for q in Q]
        f = Qs[0]
        for pg in [page] + [x for x in (0, 1, 2) if x != page]:
            if len(set(last.pages) | {pg}) > 2 or len(set(f.pages) | {pg}) > 2:
                continue
            dl = dict(last.dirs)
            dl[pg] = dl.get(pg, "") + "r"
            df = dict(f.dirs)
            df[pg] = "l" + df.get(pg, "")
            pts = P[:-1] + [GeneralLetter(dl), GeneralLetter(df)] + Qs[1:]
            return _finish(pts, (mG, mH), {"edge_page": pg, "rotation": s})
    raise ConstructionError("no page available for the connecting arc")


def loop_sum(u, v):
    """Drop u's last letter (a c-letter) and v's first (an a-letter, after
    rotating v to the same index) and concatenate."""
    if not isinstance(u, Word) or not isinstance(v, Word):
        raise ConstructionError("loop sum works on A_n words")
    if not u or not v or not is_balanced(u) or not is_balanced(v):
        raise ConstructionError("loop sum needs nonempty balanced words")
    x, y = u[len(u) - 1], v[0]
    if x.kind != "c" or y.kind != "a":
        raise ConstructionError("u must end with a c-letter and v start with an a-letter")
    s = (x.index - y.index) % 3
    v = shift_index(v, s) if s else v
    return Word(list(u)[:-1] + list(v)[1:])


def three_letters_presentation(m):
    """Neuwirth presentation with the two extreme-gap generators eliminated.

    Returns (presentation, bound) with bound = ar - 2."""
    m = _model(m)
    if len(m.points) < 3:
        raise ConstructionError("trivial theta graph: only one extreme gap")
    g = neuwirth_presentation(m)
    gaps = gap_arcs(m)
    rels = [tuple(k + 1 for k in row if k is not None) for row in gaps]
    rels = [r for r in rels if r]
    n = len(g.generators)
    alive = list(range(1, n + 1))
    ends = [0, len(rels) - 1]
    removed = []
    for which in ends:
        r = cyclic_reduce(rels[which])
        if len(r) > 2:
            raise ConstructionError("extreme relator longer than two letters")
        pick = None
        for x in r:
            if abs(x) not in removed and r.count(x) + r.count(-x) == 1:
                pick = x
                break
        if pick is None:
            continue
        k = r.index(pick)
        rest = r[k + 1:] + r[:k]
        image = tuple(-y for y in reversed(rest)) if pick > 0 else rest
        gen = abs(pick)
        new = []
        for j, rr in enumerate(rels):
            out = []
            for y in rr:
                if y == gen:
                    out.extend(image)
                elif y == -gen:
                    out.extend(-z for z in reversed(image))
                else:
                    out.append(y)
            new.append(tuple(out))
        rels = new
        rels[which] = ()
        removed.append(gen)
    if len(removed) < 2:
        raise ConstructionError("could not eliminate two generators")
    keep = [x for x in alive if x not in removed]
    pos = {x: k + 1 for k, x in enumerate(keep)}
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if r:
            out.append(tuple(pos[abs(y)] * (1 if y > 0 else -1) for y in r))
    pres = GroupPresentation([g.generators[x - 1] for x in keep], out)
    return pres, m.arch_number - 2


# Known three-letters complexities; free products add.
TL_CATALOG = {
    "Z": 1,
    "Z*Z": 2,
    "Z3*Z": 2,
    "Z+Z": 3,
}


def tl_free_product(*factors):
    """tl of a free product of catalog groups (``Z_k`` with k > 1 is ∞)."""
    total = 0
    for f in factors:
        if f.startswith("Z_"):
            k = int(f[2:])
            if k > 1:
                return math.inf
            continue
        if f not in TL_CATALOG:
            raise KeyError("group %r not in the catalog" % f)
        total += TL_CATALOG[f]
    return total


def reroot(w, position, budget=None):
    """Move the letter at ``position`` (0-based) to the right end by a
    cyclic rotation, accepted only if the prover confirms the rotated word
    is equivalent.  Returns the rotated word or None."""
    from .rewrite.prover import Proved, prove_equivalent, Budget
    if not isinstance(w, Word):
        raise ConstructionError("reroot works on A_n words")
    k = position + 1
    rot = Word(list(w)[k:] + list(w)[:k])
    if rot == w:
        return w
    if not is_balanced(rot):
        return None
    v = prove_equivalent(w, rot, budget or Budget(4, 2 * 10 ** 5))
    return rot if isinstance(v, Proved) else None
