"""Bracket projections, balance, and the combinatorial embedding model.

Every axis point of a three-page embedding carries, on each page, a string
of stubs: ``r`` (an arc leaving towards larger axis positions, an opening
bracket) or ``l`` (towards smaller positions, a closing bracket).  For the
letters of A_n these strings come from a fixed table; general vertices
(``v[0:r;1:rr]``) carry arbitrary strings in at most two pages.

Projecting a word onto page ``i`` concatenates the stub strings, and the
word encodes a closed graph exactly when all three projections are
balanced.  Matching the brackets recovers the arcs.
"""

import itertools
import re
from collections import Counter

from .words import Letter, Word, WordSyntaxError, parse_letter

__all__ = [
    "stubs", "bracket_projection", "is_balanced", "BalanceReport",
    "GeneralLetter", "GeneralWord", "parse_general", "lift",
    "specialize", "NotExpressible", "EmbeddingModel", "Arc",
    "arc_matching", "UnbalancedError", "abstract_graph", "GraphSummary",
]

OPEN, CLOSE = "(", ")"


def _letter_stubs(l):
    k = l.index
    up, down = (k + 1) % 3, (k - 1) % 3
    if l.kind == "a":
        return {up: "(", down: "("}
    if l.kind == "c":
        return {up: ")", down: ")"}
    if l.kind == "b":
        return {up: "(", down: ")"}
    if l.kind == "d":
        return {down: "(", up: ")"}
    m = l.degree
    if m % 2:
        # one opening arc on page k-1, the other 2p-2 stubs on page k+1
        p = (m + 1) // 2
        return {down: "(", up: ")" * (p - 1) + "(" * (p - 1)}
    q = m // 2
    return {down: ")(", up: ")" * (q - 1) + "(" * (q - 1)}


_STUB_CACHE = {}


def stubs(letter):
    """Map page -> bracket string for a letter of A_n or a GeneralLetter."""
    if isinstance(letter, GeneralLetter):
        return letter.brackets
    s = _STUB_CACHE.get(letter)
    if s is None:
        s = _STUB_CACHE[letter] = _letter_stubs(letter)
    return s


def bracket_projection(w, i):
    i %= 3
    return "".join(stubs(l).get(i, "") for l in w)


class BalanceReport:
    """Truthy when balanced; otherwise records the first offending page and
    the 1-based letter position (``None`` position means surplus openers)."""

    __slots__ = ("balanced", "page", "position")

    def __init__(self, balanced, page=None, position=None):
        self.balanced = balanced
        self.page = page
        self.position = position

    def __bool__(self):
        return self.balanced

    def __str__(self):
        if self.balanced:
            return "balanced"
        if self.position is None:
            return "unbalanced (page %d: unclosed brackets)" % self.page
        return "unbalanced (page %d, letter %d)" % (self.page, self.position)

    __repr__ = __str__


def page_depths(w, i):
    """Running depth after each letter on page i."""
    d = 0
    out = []
    for l in w:
        for ch in stubs(l).get(i, ""):
            d += 1 if ch == "(" else -1
        out.append(d)
    return out


def is_balanced(w):
    """One left-to-right pass per page."""
    letters = list(w)
    for i in range(3):
        d = 0
        for pos, l in enumerate(letters, 1):
            s = stubs(l).get(i)
            if not s:
                continue
            for ch in s:
                if ch == "(":
                    d += 1
                else:
                    d -= 1
                    if d < 0:
                        return BalanceReport(False, i, pos)
        if d:
            return BalanceReport(False, i, None)
    return BalanceReport(True)


def is_page_balanced(w, i):
    d = 0
    for l in w:
        for ch in stubs(l).get(i, ""):
            d += 1 if ch == "(" else -1
            if d < 0:
                return False
    return d == 0


# --------------------------------------------------------------- general letters

_DIRS = re.compile(r"l*r*$")


class GeneralLetter:
    """An axis point with stub strings on at most two pages.

    ``dirs`` maps page -> string over {l, r}.  Within one page all ``l``
    stubs precede all ``r`` stubs: an ``r`` followed by an ``l`` at the same
    point would match each other and give a non-monotone arc.
    """

    __slots__ = ("dirs", "brackets", "degree", "_key")

    def __init__(self, dirs):
        items = []
        for page, s in dict(dirs).items():
            page = int(page)
            if page not in (0, 1, 2):
                raise ValueError("page %r outside Z3" % page)
            if not s:
                continue
            if not _DIRS.match(s):
                raise ValueError("stub string %r must have the form l*r*" % s)
            items.append((page, s))
        items.sort()
        if len(items) > 2:
            raise ValueError("a point may occupy at most two pages")
        deg = sum(len(s) for _, s in items)
        if deg < 2:
            raise ValueError("a point needs at least two stubs")
        object.__setattr__(self, "dirs", tuple(items))
        object.__setattr__(self, "brackets",
                           {p: s.replace("r", "(").replace("l", ")") for p, s in items})
        object.__setattr__(self, "degree", deg)
        object.__setattr__(self, "_key", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("GeneralLetter is immutable")

    def __reduce__(self):
        return (GeneralLetter, (dict(self.dirs),))

    @classmethod
    def from_letter(cls, letter):
        return cls({p: s.replace("(", "r").replace(")", "l")
                    for p, s in stubs(letter).items()})

    @property
    def pages(self):
        return tuple(p for p, _ in self.dirs)

    def shifted(self, s):
        return GeneralLetter({(p + s) % 3: d for p, d in self.dirs})

    @property
    def token(self):
        return "v[%s]" % ";".join("%d:%s" % item for item in self.dirs)

    def __eq__(self, other):
        return isinstance(other, GeneralLetter) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __str__(self):
        return self.token

    def __repr__(self):
        return "GeneralLetter(%s)" % self.token


_PATTERN_TO_LETTER = {}


def _letter_for_pattern(gl, degrees):
    key = (gl._key, degrees)
    if key in _PATTERN_TO_LETTER:
        return _PATTERN_TO_LETTER[key]
    found = None
    cands = [Letter(k, i) for k in "abcd" for i in range(3)]
    cands += [Letter("x", i, m) for m in degrees for i in range(3)]
    for l in cands:
        if l.degree == gl.degree and GeneralLetter.from_letter(l) == gl:
            found = l
            break
    _PATTERN_TO_LETTER[key] = found
    return found


class GeneralWord:
    """A sequence of axis points (GeneralLetters)."""

    __slots__ = ("points",)

    def __init__(self, points=()):
        pts = []
        for p in points:
            pts.append(p if isinstance(p, GeneralLetter) else GeneralLetter.from_letter(p))
        object.__setattr__(self, "points", tuple(pts))

    def __setattr__(self, name, value):
        raise AttributeError("GeneralWord is immutable")

    def __reduce__(self):
        return (GeneralWord, (self.points,))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return GeneralWord(self.points[k])
        return self.points[k]

    def __add__(self, other):
        return GeneralWord(self.points + tuple(lift(other).points))

    def __eq__(self, other):
        return isinstance(other, GeneralWord) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def shifted(self, s):
        return GeneralWord(p.shifted(s) for p in self.points)

    def render(self, prefer_letters=True, degrees=None):
        """Tokens; points matching an A_n letter are written as that letter."""
        toks = []
        for p in self.points:
            l = None
            if prefer_letters:
                degs = tuple(range(3, p.degree + 1)) if degrees is None else tuple(degrees)
                l = _letter_for_pattern(p, degs)
            toks.append(l.token if l is not None else p.token)
        return " ".join(toks)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return "GeneralWord(%r)" % self.render()


_GTOKEN = re.compile(r"v\[(\d):([lr]+)(?:;(\d):([lr]+))?\]$")


def parse_general_letter(tok):
    m = _GTOKEN.match(tok)
    if not m:
        raise WordSyntaxError("bad general letter %r" % tok)
    dirs = {int(m.group(1)): m.group(2)}
    if m.group(3) is not None:
        if int(m.group(3)) in dirs:
            raise WordSyntaxError("page repeated in %r" % tok)
        dirs[int(m.group(3))] = m.group(4)
    try:
        return GeneralLetter(dirs)
    except ValueError as e:
        raise WordSyntaxError(str(e)) from None


def parse_general(text):
    """Parse a mix of A_n tokens and ``v[...]`` tokens."""
    from .words import tokenize
    pts = []
    for tok in tokenize(text.strip()):
        if tok.startswith("v["):
            pts.append(parse_general_letter(tok))
        else:
            pts.append(GeneralLetter.from_letter(parse_letter(tok)))
    return GeneralWord(pts)


def lift(w):
    if isinstance(w, GeneralWord):
        return w
    if isinstance(w, EmbeddingModel):
        return GeneralWord(w.points)
    return GeneralWord(w)


class NotExpressible:
    """Returned by :func:`specialize` when some point has no A_n letter."""

    __slots__ = ("position", "point")

    def __init__(self, position, point):
        self.position = position
        self.point = point

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotExpressible(point %d: %s)" % (self.position, self.point.token)


def specialize(gw, degrees=None):
    """Back to an A_n word if every point matches a letter pattern exactly."""
    if isinstance(gw, Word):
        return gw
    letters = []
    for pos, p in enumerate(lift(gw), 1):
        degs = tuple(range(3, p.degree + 1)) if degrees is None else tuple(degrees)
        l = _letter_for_pattern(p, degs)
        if l is None:
            return NotExpressible(pos, p)
        letters.append(l)
    return Word(letters)


# --------------------------------------------------------------- embedding model

class UnbalancedError(ValueError):
    pass


class Arc:
    """An arc on ``page`` between axis points ``left < right`` (1-based).
    ``lpos``/``rpos`` are the stub positions in the page's bracket string."""

    __slots__ = ("page", "left", "right", "lpos", "rpos")

    def __init__(self, page, left, right, lpos, rpos):
        self.page, self.left, self.right, self.lpos, self.rpos = page, left, right, lpos, rpos

    def pair(self):
        return (self.left, self.right)

    def __repr__(self):
        return "Arc(P%d %d-%d)" % (self.page, self.left, self.right)


class EmbeddingModel:
    """Axis points plus the arcs their stubs induce."""

    def __init__(self, points, arcs, stubmap, source=None):
        self.points = tuple(points)
        self.arcs = tuple(arcs)
        # stubmap[(point, page, k)] = arc index, k = stub number within the page string
        self.stubmap = stubmap
        self.source = source
        self.notes = {}

    @property
    def arch_number(self):
        return len(self.arcs)

    ar = arch_number

    def arc_pairs(self, page):
        return sorted(a.pair() for a in self.arcs if a.page == page)

    def page_arcs(self, page):
        return [a for a in self.arcs if a.page == page]

    def general_word(self):
        return GeneralWord(self.points)

    def word(self):
        """The A_n word if expressible, else None."""
        if isinstance(self.source, Word):
            return self.source
        w = specialize(GeneralWord(self.points))
        return w if isinstance(w, Word) else None

    def render(self):
        if isinstance(self.source, Word):
            return str(self.source)
        return GeneralWord(self.points).render()

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "EmbeddingModel(%r, ar=%d)" % (self.render(), self.arch_number)


def arc_matching(w):
    """Build the embedding model of a balanced word (Word or GeneralWord)."""
    if isinstance(w, EmbeddingModel):
        return w
    source = w
    points = [p if isinstance(p, GeneralLetter) else None for p in w]
    letters = list(w)
    arcs = []
    stubmap = {}
    for page in range(3):
        stack = []
        pos = 0
        for idx, l in enumerate(letters, 1):
            s = stubs(l).get(page, "")
            for k, ch in enumerate(s):
                pos += 1
                if ch == "(":
                    stack.append((idx, k, pos))
                else:
                    if not stack:
                        raise UnbalancedError("page %d closes an arc that was never opened (letter %d)"
                                              % (page, idx))
                    oidx, ok, opos = stack.pop()
                    if oidx == idx:
                        raise UnbalancedError("letter %d matches an arc to itself on page %d"
                                              % (idx, page))
                    a = len(arcs)
                    arcs.append(Arc(page, oidx, idx, opos, pos))
                    stubmap[(oidx, page, ok)] = a
                    stubmap[(idx, page, k)] = a
        if stack:
            raise UnbalancedError("page %d leaves %d arcs open" % (page, len(stack)))
    pts = [p if p is not None else GeneralLetter.from_letter(l) for p, l in zip(points, letters)]
    return EmbeddingModel(pts, arcs, stubmap, source)


# --------------------------------------------------------------- abstract graph

class GraphSummary:
    """The abstract graph behind a model: vertices are points of degree >= 3,
    edges are chains of arcs through degree-2 points."""

    def __init__(self, vertex_degrees, components, betti, edge_count, vertex_count,
                 circles, signature):
        self.vertex_degrees = vertex_degrees
        self.components = components
        self.betti = betti
        self.edge_count = edge_count
        self.vertex_count = vertex_count
        self.circles = circles
        self.signature = signature

    def as_dict(self):
        return {"vertex_degrees": list(self.vertex_degrees), "components": self.components,
                "betti": self.betti, "edges": self.edge_count, "vertices": self.vertex_count,
                "circles": self.circles}

    def __repr__(self):
        return ("GraphSummary(degrees=%s, components=%d, betti=%d, V=%d, E=%d)"
                % (list(self.vertex_degrees), self.components, self.betti,
                   self.vertex_count, self.edge_count))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def abstract_graph(m):
    m = arc_matching(m) if not isinstance(m, EmbeddingModel) else m
    npts = len(m.points)
    parent = list(range(npts + 1))
    for a in m.arcs:
        ra, rb = _find(parent, a.left), _find(parent, a.right)
        if ra != rb:
            parent[ra] = rb
    roots = {_find(parent, i) for i in range(1, npts + 1)}
    components = len(roots)
    betti = len(m.arcs) - npts + components
    degs = {i: m.points[i - 1].degree for i in range(1, npts + 1)}
    vertices = [i for i in range(1, npts + 1) if degs[i] >= 3]
    vroots = {_find(parent, v) for v in vertices}
    circles = components - len(vroots)

    # stubs of each point, and the partner stub across each arc
    point_stubs = {i: [] for i in range(1, npts + 1)}
    for (pt, page, k) in m.stubmap:
        point_stubs[pt].append((pt, page, k))
    partner = {}
    for (pt, page, k), a in m.stubmap.items():
        arc = m.arcs[a]
        other = arc.right if pt == arc.left else arc.left
        partner[(pt, page, k)] = other, a
    seen_arcs = set()
    edges = []
    for v in vertices:
        for st in point_stubs[v]:
            a = m.stubmap[st]
            if a in seen_arcs:
                continue
            # walk the chain
            cur_pt, cur_arc = partner[st]
            seen_arcs.add(cur_arc)
            while degs[cur_pt] == 2:
                nxt = [s for s in point_stubs[cur_pt] if m.stubmap[s] != cur_arc]
                if len(nxt) != 1:
                    # both stubs on the same arc cannot happen (no self-arcs)
                    raise UnbalancedError("degenerate chain at point %d" % cur_pt)
                cur_arc = m.stubmap[nxt[0]]
                seen_arcs.add(cur_arc)
                cur_pt = partner[nxt[0]][0]
            edges.append((v, cur_pt))
    signature = _graph_signature(vertices, edges, circles)
    return GraphSummary(tuple(sorted(degs[v] for v in vertices)), components, betti,
                        len(edges) + circles, len(vertices), circles, signature)


def _graph_signature(vertices, edges, circles):
    """Canonical form of the vertex multigraph (brute force over vertex
    orders for small graphs, a refinement hash beyond that)."""
    n = len(vertices)
    if n == 0:
        return ("circles", circles)
    idx = {v: k for k, v in enumerate(vertices)}
    mult = Counter()
    for u, v in edges:
        a, b = sorted((idx[u], idx[v]))
        mult[(a, b)] += 1
    if n <= 7:
        best = None
        for perm in itertools.permutations(range(n)):
            key = tuple(sorted((min(perm[a], perm[b]), max(perm[a], perm[b]), c)
                               for (a, b), c in mult.items()))
            if best is None or key < best:
                best = key
        return ("graph", n, best, circles)
    import networkx as nx
    simple = nx.Graph()
    simple.add_nodes_from(range(n))
    for (a, b), c in mult.items():
        simple.add_edge(a, b, label=str(c))
    return ("wl", n, len(edges), nx.weisfeiler_lehman_graph_hash(simple, edge_attr="label"),
            circles)
