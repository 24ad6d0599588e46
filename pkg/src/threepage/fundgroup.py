"""Fundamental groups of graph complements from three-page embeddings.

Generators are the loops around the arcs (one per arc); each gap between
consecutive axis points contributes the product, pages 0 to 2, of the loops
around the innermost arc spanning that gap.  All exponents are +1, i.e.
every loop is oriented the same way relative to its page.
"""

import itertools
from collections import namedtuple
from functools import lru_cache
from math import factorial

from .pages import arc_matching, abstract_graph, EmbeddingModel, UnbalancedError

__all__ = ["GroupPresentation", "neuwirth_presentation", "tietze_simplify", "smith_normal_form",
           "homology", "count_homs", "Fingerprint", "fingerprint", "HomBudgetExceeded",
           "free_reduce", "cyclic_reduce"]


def _inv(word):
    return tuple(-g for g in reversed(word))


def free_reduce(word):
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def _cyclic_canon(word):
    """Least rotation of the word or its inverse (relators are only defined
    up to these)."""
    if not word:
        return ()
    best = None
    for w in (word, _inv(word)):
        for k in range(len(w)):
            r = w[k:] + w[:k]
            if best is None or r < best:
                best = r
    return best


class GroupPresentation:
    """Generators by name; relators are tuples of signed 1-based generator
    indices (``-k`` is the inverse of generator k)."""

    def __init__(self, generators, relators):
        self.generators = tuple(generators)
        self.relators = tuple(tuple(r) for r in relators)
        n = len(self.generators)
        for r in self.relators:
            for g in r:
                if g == 0 or abs(g) > n:
                    raise ValueError("relator refers to a missing generator")

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        return (isinstance(other, GroupPresentation) and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self):
        return hash((self.generators, self.relators))

    def symbol(self, g):
        name = self.generators[abs(g) - 1]
        return name if g > 0 else name + "^-1"

    def relator_str(self, r):
        return " ".join(self.symbol(g) for g in r) or "1"

    def __str__(self):
        return "< %s | %s >" % (", ".join(self.generators),
                                ", ".join(self.relator_str(r) for r in self.relators))

    def __repr__(self):
        return "GroupPresentation(%d generators, %d relators)" % (len(self.generators),
                                                                   len(self.relators))

    def as_dict(self):
        return {"generators": list(self.generators),
                "relators": [[self.symbol(g) for g in r] for r in self.relators]}

    def canonical(self):
        """Generator-name-free key: relators cyclically normalized, sorted."""
        return (len(self.generators), tuple(sorted(_cyclic_canon(r) for r in self.relators)))


def arc_name(arc):
    return "P%d[%d,%d]" % (arc.page, arc.left, arc.right)


def gap_arcs(m):
    """For each gap j (between points j and j+1), the innermost spanning arc
    index per page, or None."""
    npts = len(m.points)
    out = []
    for j in range(1, npts):
        row = []
        for page in range(3):
            best = None
            for k, a in enumerate(m.arcs):
                if a.page == page and a.left <= j < a.right:
                    if best is None or a.lpos > m.arcs[best].lpos:
                        best = k
            row.append(best)
        out.append(row)
    return out


def neuwirth_presentation(m):
    """The presentation of the complement group of a balanced model (or
    word).  Gaps with no spanning arc give no relator."""
    m = m if isinstance(m, EmbeddingModel) else arc_matching(m)
    if not m.points:
        raise UnbalancedError("empty model")
    gens = [arc_name(a) for a in m.arcs]
    rels = []
    for row in gap_arcs(m):
        r = tuple(k + 1 for k in row if k is not None)
        if r:
            rels.append(r)
    g = GroupPresentation(gens, rels)
    return g


# ------------------------------------------------------------ Tietze moves

def _substitute(rel, gen, image):
    out = []
    for g in rel:
        if g == gen:
            out.extend(image)
        elif g == -gen:
            out.extend(_inv(image))
        else:
            out.append(g)
    return cyclic_reduce(out)


def _clean(rels):
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _cyclic_canon(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def tietze_simplify(g, max_passes=1000, max_length=200, keep=()):
    """Free/cyclic reduction, removal of trivial and repeated relators, and
    elimination of generators occurring exactly once in some relator.  Among
    the possible eliminations the one with the shortest substituted image is
    chosen first; generators named in ``keep`` are never eliminated.
    Generator order (and names) of the survivors is kept."""
    gens = list(range(1, len(g.generators) + 1))
    protected = {g.generators.index(name) + 1 for name in keep}
    rels = _clean(g.relators)
    for _ in range(max_passes):
        best = None
        for ri, r in enumerate(rels):
            counts = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for x in r:
                if counts[abs(x)] != 1 or abs(x) in protected:
                    continue
                k = r.index(x)
                rest = r[k + 1:] + r[:k]
                image = _inv(rest) if x > 0 else rest
                cost = (len(image), len(r), ri)
                if best is None or cost < best[0]:
                    best = (cost, ri, abs(x), image)
        if best is None:
            break
        _, ri, gen, image = best
        new = [_substitute(r, gen, image) for j, r in enumerate(rels) if j != ri]
        if any(len(r) > max_length for r in new):
            break
        rels = _clean(new)
        gens.remove(gen)
    # renumber
    pos = {old: k + 1 for k, old in enumerate(gens)}
    rels = [tuple(pos[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels]
    rels.sort(key=lambda r: (len(r), r))
    return GroupPresentation([g.generators[old - 1] for old in gens], rels)


# ------------------------------------------------------------ homology

def smith_normal_form(matrix):
    """Diagonal entries (nonnegative, each dividing the next) of the Smith
    normal form of an integer matrix given as a list of rows."""
    A = [list(map(int, row)) for row in matrix]
    if not A or not A[0]:
        return []
    rows, cols = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                # divisibility of the rest of the block
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            # move the smallest remainder to the pivot
            piv = None
            for i in range(t, rows):
                if A[i][t] and (piv is None or abs(A[i][t]) < abs(A[piv][t])):
                    piv = i
            A[t], A[piv] = A[piv], A[t]
            pj = None
            for j in range(t, cols):
                if A[t][j] and (pj is None or abs(A[t][j]) < abs(A[t][pj])):
                    pj = j
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def relation_matrix(g):
    n = len(g.generators)
    M = []
    for r in g.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        M.append(row)
    return M


def homology(g):
    """(rank, torsion invariant factors) of the abelianization."""
    n = len(g.generators)
    M = relation_matrix(g)
    diag = smith_normal_form(M) if M else []
    nz = [x for x in diag if x]
    return n - len(nz), [x for x in nz if x > 1]


# ------------------------------------------------------------ hom counts

class HomBudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _sym_table(N):
    elems = list(itertools.permutations(range(N)))
    index = {p: k for k, p in enumerate(elems)}
    mul = [[index[tuple(p[q[x]] for x in range(N))] for q in elems] for p in elems]
    inv = [index[tuple(sorted(range(N), key=lambda x: p[x]))] for p in elems]
    return len(elems), mul, inv, index[tuple(range(N))]


def count_homs(g, N, budget=5 * 10 ** 7):
    """|Hom(G, S_N)| by backtracking over generator images.  Generators in no
    relator contribute a factor N! each.  ``budget`` caps the number of
    partial assignments examined."""
    if N < 1:
        raise ValueError("N must be >= 1")
    key = (g.canonical(), N)
    hit = _HOM_CACHE.get(key)
    if hit is not None:
        return hit
    size, mul, inv, e = _sym_table(N)
    n = len(g.generators)
    rels = [r for r in g.relators if r]
    used = sorted({abs(x) for r in rels for x in r})
    free = n - len(used)
    # greedy order: next generator is the one completing most relators
    order = []
    remaining = set(used)
    while remaining:
        placed = set(order)

        def score(x):
            done = sum(1 for r in rels if all(abs(y) in placed | {x} for y in r))
            touch = sum(1 for r in rels if x in {abs(y) for y in r})
            return (done, touch, -x)
        nxt = max(remaining, key=score)
        order.append(nxt)
        remaining.remove(nxt)
    pos = {x: k for k, x in enumerate(order)}
    checks = [[] for _ in order]
    for r in rels:
        last = max(pos[abs(y)] for y in r)
        checks[last].append(r)
    img = [0] * (n + 1)
    steps = [0]

    def ev(r):
        cur = e
        for y in r:
            h = img[y] if y > 0 else inv[img[-y]]
            cur = mul[cur][h]
        return cur

    def rec(k):
        if k == len(order):
            return 1
        x = order[k]
        total = 0
        for h in range(size):
            steps[0] += 1
            if steps[0] > budget:
                raise HomBudgetExceeded("hom enumeration exceeded %d steps" % budget)
            img[x] = h
            if all(ev(r) == e for r in checks[k]):
                total += rec(k + 1)
        return total

    count = rec(0) * factorial(N) ** free
    _HOM_CACHE[key] = count
    return count


_HOM_CACHE = {}


# ------------------------------------------------------------ fingerprints

class Fingerprint(namedtuple("Fingerprint", "vertex_degrees components h1 hom_counts graph")):
    """Graph structure, H_1 of the complement and |Hom(pi, S_N)| for N = 3, 4.
    ``graph`` is the canonical form of the abstract vertex multigraph."""

    __slots__ = ()

    def as_dict(self):
        return {"vertex_degrees": list(self.vertex_degrees), "components": self.components,
                "h1": {"rank": self.h1[0], "torsion": list(self.h1[1])},
                "hom_counts": {str(k): v for k, v in self.hom_counts}}


def fingerprint(m, groups=(3, 4)):
    m = m if isinstance(m, EmbeddingModel) else arc_matching(m)
    gs = abstract_graph(m)
    g = tietze_simplify(neuwirth_presentation(m))
    rank, tors = homology(g)
    homs = tuple((N, count_homs(g, N)) for N in groups)
    return Fingerprint(gs.vertex_degrees, gs.components, (rank, tuple(tors)), homs, gs.signature)
