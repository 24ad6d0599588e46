"""Independent reference computations used by the tests.

Each oracle avoids the package's own code path for the quantity it checks:
bracket matching by repeated removal of adjacent pairs, homology through
sympy's Smith form, homomorphism counts by plain enumeration of
permutation tuples, Betti numbers through networkx.
"""

import itertools

import networkx as nx

# stub strings of the regular letters at index 0, read off the letter
# pictures; other indices rotate the pages
_STUBS0 = {
    "a": {1: "(", 2: "("},
    "c": {1: ")", 2: ")"},
    "b": {1: "(", 2: ")"},
    "d": {1: ")", 2: "("},
}


def letter_stubs(token):
    """Page -> bracket string for a regular or x token, e.g. 'b2', 'x5_1'."""
    if token[0] == "x":
        m, i = (int(t) for t in token[1:].split("_"))
        up, dn = (i + 1) % 3, (i - 1) % 3
        if m % 2:
            p = (m + 1) // 2
            return {dn: "(", up: ")" * (p - 1) + "(" * (p - 1)}
        q = m // 2
        return {dn: ")(", up: ")" * (q - 1) + "(" * (q - 1)}
    kind, i = token[0], int(token[1:])
    return {(p + i) % 3: s for p, s in _STUBS0[kind].items()}


def projection(tokens, page):
    return "".join(letter_stubs(t).get(page, "") for t in tokens)


def balanced_by_cancellation(s):
    """Delete '()' pairs until none is left."""
    while "()" in s:
        s = s.replace("()", "")
    return s == ""


def arcs_by_cancellation(tokens, page):
    """Arcs (left point, right point), 1-based, by repeatedly pairing an
    opener with the closer right after it (ignoring already paired stubs)."""
    owners = []
    for n, t in enumerate(tokens, 1):
        owners.extend([n] * len(letter_stubs(t).get(page, "")))
    s = list(projection(tokens, page))
    alive = list(range(len(s)))
    pairs = []
    changed = True
    while changed:
        changed = False
        for k in range(len(alive) - 1):
            x, y = alive[k], alive[k + 1]
            if s[x] == "(" and s[y] == ")":
                pairs.append((owners[x], owners[y]))
                del alive[k:k + 2]
                changed = True
                break
    if alive:
        raise ValueError("unbalanced")
    return sorted(pairs)


def betti_networkx(tokens_or_points, arcs):
    """E - V + C of the multigraph on axis points with one edge per arc."""
    g = nx.MultiGraph()
    g.add_nodes_from(range(1, tokens_or_points + 1))
    for u, v in arcs:
        g.add_edge(u, v)
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def sympy_invariant_factors(matrix):
    """Nonzero diagonal of the Smith form, via sympy."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form
    if not matrix or not matrix[0]:
        return []
    A = smith_normal_form(Matrix(matrix), domain=ZZ)
    n = min(A.shape)
    return [abs(int(A[k, k])) for k in range(n) if A[k, k] != 0]


def _compose(p, q):
    """p after q."""
    return tuple(p[q[x]] for x in range(len(q)))


def _inverse(p):
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def brute_hom_count(ngens, relators, N):
    """|Hom(<g_1..g_n | relators>, S_N)|; relators use signed 1-based
    indices.  Plain product over all assignments."""
    perms = list(itertools.permutations(range(N)))
    e = tuple(range(N))
    count = 0
    for img in itertools.product(perms, repeat=ngens):
        ok = True
        for r in relators:
            cur = e
            for g in r:
                h = img[abs(g) - 1]
                cur = _compose(cur, h if g > 0 else _inverse(h))
            if cur != e:
                ok = False
                break
        if ok:
            count += 1
    return count


def backtrack_hom_count(ngens, relators, N):
    """Same count by assigning generators in index order and checking each
    relator once its largest generator is fixed (for the unsimplified,
    many-generator presentations)."""
    perms = list(itertools.permutations(range(N)))
    e = tuple(range(N))
    by_last = {}
    for r in relators:
        by_last.setdefault(max(abs(g) for g in r), []).append(r)
    img = [None] * (ngens + 1)

    def holds(r):
        cur = e
        for g in r:
            h = img[abs(g)]
            cur = _compose(cur, h if g > 0 else _inverse(h))
        return cur == e

    def rec(k):
        if k > ngens:
            return 1
        total = 0
        for p in perms:
            img[k] = p
            if all(holds(r) for r in by_last.get(k, ())):
                total += rec(k + 1)
        return total

    return rec(1)


def count_balanced_raw(max_len, tokens):
    """All balanced words (no rotation merging) of each length up to
    max_len, by brute force over the token list."""
    counts = [0] * (max_len + 1)
    for n in range(1, max_len + 1):
        for w in itertools.product(tokens, repeat=n):
            if all(balanced_by_cancellation(projection(w, p)) for p in range(3)):
                counts[n] += 1
    return counts


def random_tokens(rng, n, degrees=()):
    toks = [k + str(i) for k in "abcd" for i in range(3)]
    toks += ["x%d_%d" % (m, i) for m in degrees for i in range(3)]
    return [rng.choice(toks) for _ in range(n)]
