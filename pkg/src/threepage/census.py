"""Exhaustive enumeration of balanced words and a fingerprint census.

Words are generated depth first, letter by letter, keeping the open-bracket
depth of each page.  A prefix is extended only if no page goes negative and
the remaining stub budget can still close every open bracket, so every
word that reaches the budget is balanced.  Only the representative of each
index-rotation orbit is produced: the rendered string of a word is least
among its three rotations exactly when its first token is, because tokens
never are prefixes of one another.

Classes are sets of words with equal fingerprints.  Fingerprints are
invariants, so the number of classes is a lower bound on the number of
isotopy classes; merging members the prover shows equivalent gives an upper
bound.
"""

import time
from collections import namedtuple, defaultdict

from .fundgroup import fingerprint
from .pages import GeneralLetter, GeneralWord, arc_matching, stubs, _letter_for_pattern
from .words import Alphabet, Letter, Word, mirror

__all__ = ["CensusAlphabet", "enumerate_balanced", "enumerate_words", "census", "run_census",
           "CensusRow", "CensusClass", "CensusResult", "REFERENCE_TABLE", "CATEGORIES",
           "category_of", "canonical_key", "EnumerationStats"]

CATEGORIES = ("knots", "links", "3-graphs", "singular knots", "other")

# the published table, complexities 0..6
REFERENCE_TABLE = {
    "knots": (1, 0, 0, 0, 0, 0, 1),
    "links": (0, 0, 0, 0, 1, 0, 0),
    "3-graphs": (0, 1, 0, 1, 2, 2, 2),
    "singular knots": (0, 0, 2, 0, 2, 2, 5),
}


def _dir_strings(k):
    return ["l" * j + "r" * (k - j) for j in range(k + 1)]


def general_letters(degree, single_page=True):
    """All points of the given degree: stub strings l*r*, one or two pages."""
    out = set()
    if single_page:
        for p in range(3):
            for s in _dir_strings(degree):
                out.add(GeneralLetter({p: s}))
    for p, q in ((0, 1), (0, 2), (1, 2)):
        for k in range(1, degree):
            for s in _dir_strings(k):
                for t in _dir_strings(degree - k):
                    out.add(GeneralLetter({p: s, q: t}))
    return sorted(out)


class CensusAlphabet:
    """The letters the enumerator may use.

    ``degrees`` lists vertex degrees (>= 3).  Without ``general`` the
    letters are those of A_J; with it, every point pattern of those degrees
    is allowed (optionally excluding single-page points).  Degree-2 points
    are always exactly the twelve regular letters.
    """

    def __init__(self, degrees=(), general=False, single_page=True):
        self.degrees = tuple(sorted(set(degrees)))
        self.general = bool(general)
        self.single_page = bool(single_page)
        letters = list(Alphabet(self.degrees).letters())
        if self.general:
            seen = {GeneralLetter.from_letter(l) for l in letters}
            for m in self.degrees:
                for g in general_letters(m, single_page):
                    if g not in seen:
                        letters.append(g)
        self.letters = sorted(letters, key=_token)

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return "CensusAlphabet(degrees=%r, general=%r, %d letters)" % (
            list(self.degrees), self.general, len(self.letters))


def _token(l):
    if isinstance(l, GeneralLetter):
        m = _letter_for_pattern(l, tuple(range(3, l.degree + 1)))
        return m.token if m is not None else l.token
    return l.token


def _shift(l, s):
    return l.shifted(s)


class EnumerationStats:
    def __init__(self):
        self.nodes = 0
        self.emitted = 0
        self.dead_full = 0     # prefixes that used the whole budget but are unbalanced

    def as_dict(self):
        return {"nodes": self.nodes, "emitted": self.emitted, "dead_full": self.dead_full}

    def __repr__(self):
        return "EnumerationStats(%r)" % self.as_dict()


_TABLES = {}


def _prepare(alpha):
    key = (alpha.degrees, alpha.general, alpha.single_page)
    if key not in _TABLES:
        _TABLES[key] = _build_table(alpha)
    return _TABLES[key]


def _build_table(alpha):
    table = []
    for l in alpha.letters:
        s = stubs(l)
        closes = [0, 0, 0]
        opens = [0, 0, 0]
        for p, t in s.items():
            closes[p] = t.count(")")
            opens[p] = t.count("(")
        tok = _token(l)
        rot_min = min(_token(_shift(l, k)) for k in range(3))
        table.append((l, tuple(closes), tuple(opens), sum(closes) + sum(opens), tok, tok == rot_min))
    return table


def _dfs(table, budget, prefix_ids, stats, out):
    """Extend the given prefix (a list of table indices) in every valid way,
    appending (indices, ar, split) for each balanced word."""
    depth = [0, 0, 0]
    used = 0
    split = False
    for n, i in enumerate(prefix_ids):
        if n and not any(depth):
            split = True
        _, cl, op, deg, _, _ = table[i]
        for p in range(3):
            depth[p] -= cl[p]
            if depth[p] < 0:
                return
            depth[p] += op[p]
        used += deg
        if sum(depth) > budget - used:
            return
    seq = list(prefix_ids)
    if not seq:
        return
    if not any(depth):
        stats.emitted += 1
        out.append((tuple(seq), used // 2, split))

    def rec(d0, d1, d2, used, split):
        stats.nodes += 1
        rem = budget - used
        if rem == 0:
            if d0 or d1 or d2:
                stats.dead_full += 1
            return
        # extending a balanced word gives a disjoint union
        csplit = split or not (d0 or d1 or d2)
        for i, (_, cl, op, deg, _, _) in enumerate(table):
            if deg > rem:
                continue
            n0 = d0 - cl[0]
            n1 = d1 - cl[1]
            n2 = d2 - cl[2]
            if n0 < 0 or n1 < 0 or n2 < 0:
                continue
            n0 += op[0]
            n1 += op[1]
            n2 += op[2]
            if n0 + n1 + n2 > rem - deg:
                continue
            seq.append(i)
            if not (n0 or n1 or n2):
                stats.emitted += 1
                out.append((tuple(seq), (used + deg) // 2, csplit))
            rec(n0, n1, n2, used + deg, csplit)
            seq.pop()

    rec(depth[0], depth[1], depth[2], used, split)


def _prefixes(table, length=2):
    """Valid canonical prefixes (first letter least among its rotations)."""
    firsts = [i for i, r in enumerate(table) if r[5]]
    if length == 1:
        return [(i,) for i in firsts]
    return [(i, j) for i in firsts for j in range(len(table))]


def enumerate_words(alphabet, max_ar, stats=None, prefixes=None):
    """Yield (letters, ar, split) for every canonical balanced word with
    ar <= max_ar; ``split`` is True when some proper prefix is balanced."""
    if max_ar < 2:
        raise ValueError("max_ar must be >= 2")
    alpha = alphabet if isinstance(alphabet, CensusAlphabet) else CensusAlphabet(alphabet)
    table = _prepare(alpha)
    stats = stats if stats is not None else EnumerationStats()
    budget = 2 * max_ar
    for pre in (prefixes if prefixes is not None else _prefixes(table, 1)):
        out = []
        _dfs(table, budget, list(pre), stats, out)
        for ids, ar, split in out:
            yield tuple(table[i][0] for i in ids), ar, split


def _as_word(letters):
    if all(isinstance(l, Letter) for l in letters):
        return Word(letters)
    return GeneralWord(letters)


def enumerate_balanced(alphabet, max_ar, stats=None):
    """Stream of EmbeddingModels, one per canonical balanced word."""
    for letters, ar, split in enumerate_words(alphabet, max_ar, stats):
        m = arc_matching(_as_word(letters))
        m.notes["split"] = split
        yield m


def canonical_key(w):
    """Least rendered string over the three index rotations."""
    pts = list(w)
    return min(" ".join(_token(_shift(l, s)) for l in pts) for s in range(3))


def category_of(fp):
    degs = fp.vertex_degrees
    if not degs:
        return "knots" if fp.components == 1 else "links"
    if all(d == 3 for d in degs):
        return "3-graphs"
    if all(d == 4 for d in degs):
        return "singular knots"
    return "other"


class CensusClass:
    """Words sharing a fingerprint."""

    def __init__(self, fp):
        self.fingerprint = fp
        self.members = []          # (key, ar, split, word)
        self.min_ar = None
        self.split = False
        self.groups = None         # prover-merged groups among min-ar members

    @property
    def category(self):
        return category_of(self.fingerprint)

    @property
    def complexity(self):
        return self.min_ar - 2

    def add(self, key, ar, split, word):
        self.members.append((key, ar, split, word))
        if self.min_ar is None or ar < self.min_ar:
            self.min_ar = ar
        self.split = self.split or split

    def minimal(self):
        return sorted((m for m in self.members if m[1] == self.min_ar), key=lambda m: m[0])

    @property
    def representative(self):
        return self.minimal()[0][0]

    @property
    def upper(self):
        return len(self.groups) if self.groups is not None else len(self.minimal())

    def as_dict(self):
        return {"word": self.representative, "ar": self.min_ar, "complexity": self.complexity,
                "category": self.category, "disjoint_union": self.split,
                "fingerprint": self.fingerprint.as_dict(), "members": len(self.members),
                "minimal_members": len(self.minimal()), "upper_bound": self.upper}


CensusRow = namedtuple("CensusRow", "complexity counts upper split representatives")
CensusRow.__doc__ = """Per-complexity counts of non-split fingerprint classes per category,
the prover upper bound, the split (disjoint union) class counts, and the
representative word of each counted class."""


class CensusResult:
    def __init__(self, classes, rows, diagnostics, stats, elapsed, params):
        self.classes = classes
        self.rows = rows
        self.diagnostics = diagnostics
        self.stats = stats
        self.elapsed = elapsed
        self.params = params

    def fingerprints(self):
        return {c.fingerprint for c in self.classes}

    def table(self):
        cats = [c for c in CATEGORIES if any(r.counts.get(c) for r in self.rows)
                or c in REFERENCE_TABLE]
        head = "%-16s" % "complexity" + "".join("%6d" % r.complexity for r in self.rows)
        lines = [head]
        for c in cats:
            lines.append("%-16s" % c + "".join("%6s" % _cell(r, c) for r in self.rows))
        return "\n".join(lines)


def _cell(row, cat):
    lo = row.counts.get(cat, 0)
    hi = row.upper.get(cat, 0)
    return str(lo) if lo == hi else "%d-%d" % (lo, hi)


def _fp_job(args):
    """Worker: enumerate one prefix block and fingerprint its words."""
    alpha, max_ar, prefixes = args
    stats = EnumerationStats()
    rows = []
    for letters, ar, split in enumerate_words(alpha, max_ar, stats, prefixes):
        w = _as_word(letters)
        fp = fingerprint(arc_matching(w))
        rows.append((canonical_key(w), ar, split, w, fp))
    return rows, stats.as_dict()


def _merge_groups(cls, merge_mirror, budget, cap):
    """Union-find over the min-ar members using the prover (A_n words only)."""
    from .rewrite.prover import Budget, Proved, prove_equivalent
    mins = cls.minimal()
    if len(mins) > cap:
        return None
    words = [m[3] for m in mins]
    keys = [m[0] for m in mins]
    parent = list(range(len(words)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if merge_mirror:
        pos = {k: j for j, k in enumerate(keys)}
        for j, w in enumerate(words):
            if isinstance(w, Word):
                mk = canonical_key(mirror(w))
                if mk in pos:
                    parent[find(j)] = find(pos[mk])
    b = budget or Budget(2, 5000)
    for j in range(len(words)):
        for k in range(j):
            if find(j) == find(k):
                continue
            u, v = words[j], words[k]
            if not (isinstance(u, Word) and isinstance(v, Word)) or len(u) != len(v):
                continue
            if isinstance(prove_equivalent(u, v, b, stages=(2,)), Proved):
                parent[find(j)] = find(k)
    groups = defaultdict(list)
    for j in range(len(words)):
        groups[find(j)].append(keys[j])
    return sorted(groups.values())


def run_census(max_ar, degrees=(), general=False, merge_mirror=True, jobs=1, upper=True,
               budget=None, merge_cap=12, single_page=True, progress=None):
    """Enumerate, fingerprint and tabulate everything with ar <= max_ar."""
    t0 = time.time()
    alpha = CensusAlphabet(degrees, general, single_page)
    table = _prepare(alpha)
    prefixes = _prefixes(table, 2)
    # no single letter is balanced, so the two-letter prefixes cover everything
    tasks = [(alpha, max_ar, [p]) for p in prefixes]
    results = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for r in ex.map(_fp_job, tasks, chunksize=8):
                results.append(r)
    else:
        for k, t in enumerate(tasks):
            results.append(_fp_job(t))
            if progress and k % 50 == 0:
                progress("prefix %d/%d" % (k + 1, len(tasks)))
    # single-owner reduction
    stats = EnumerationStats()
    classes = {}
    for rows, st in results:
        stats.nodes += st["nodes"]
        stats.emitted += st["emitted"]
        stats.dead_full += st["dead_full"]
        for key, ar, split, w, fp in rows:
            c = classes.get(fp)
            if c is None:
                c = classes[fp] = CensusClass(fp)
            c.add(key, ar, split, w)
    classes = sorted(classes.values(), key=lambda c: (c.min_ar, c.category, c.representative))
    if upper:
        for c in classes:
            c.groups = _merge_groups(c, merge_mirror, budget, merge_cap)
    rows = _rows(classes, max_ar)
    diagnostics = _diagnostics(rows, classes, alpha.degrees)
    params = {"max_ar": max_ar, "degrees": list(alpha.degrees), "general": general,
              "merge_mirror": merge_mirror, "jobs": jobs}
    return CensusResult(classes, rows, diagnostics, stats, time.time() - t0, params)


def _rows(classes, max_ar):
    rows = []
    for k in range(0, max_ar - 1):
        counts, upper, split, reps = {}, {}, {}, {}
        for c in classes:
            if c.complexity != k:
                continue
            cat = c.category
            if c.split:
                split[cat] = split.get(cat, 0) + 1
                continue
            counts[cat] = counts.get(cat, 0) + 1
            upper[cat] = upper.get(cat, 0) + c.upper
            reps.setdefault(cat, []).append(c.representative)
        rows.append(CensusRow(k, counts, upper, split, reps))
    return rows


def _diagnostics(rows, classes, degrees=()):
    """Per-cell comparison with the published table (for the categories the
    alphabet can produce), plus every cell whose lower and upper bounds
    differ."""
    reachable = {"knots", "links"}
    if 3 in degrees:
        reachable.add("3-graphs")
    if 4 in degrees:
        reachable.add("singular knots")
    out = []
    for r in rows:
        for cat, ref in REFERENCE_TABLE.items():
            if r.complexity >= len(ref) or cat not in reachable:
                continue
            lo = r.counts.get(cat, 0)
            want = ref[r.complexity]
            if lo == want:
                status = "match"
            elif lo < want:
                status = "undercount"
            else:
                status = "overcount"
            out.append({"complexity": r.complexity, "category": cat, "found": lo,
                        "reference": want, "status": status,
                        "witnesses": r.representatives.get(cat, [])})
        for cat in r.counts:
            if r.counts[cat] != r.upper.get(cat, 0):
                out.append({"complexity": r.complexity, "category": cat,
                            "found": r.counts[cat], "upper": r.upper[cat],
                            "status": "bounds differ",
                            "witnesses": r.representatives.get(cat, [])})
    return out


def census(max_complexity, degrees=(), **kw):
    """Rows of the table for complexities 0..max_complexity."""
    return run_census(max_complexity + 2, degrees, **kw).rows
