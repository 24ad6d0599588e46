"""Letters, alphabets and words of the three-page semigroups.

A word is a finite sequence of letters ``a_i, b_i, c_i, d_i`` (the regular
letters, one per page index ``i`` in Z3) and ``x_{m,i}`` (vertex letters of
degree ``m >= 3``).  The concrete syntax is whitespace separated tokens::

    >>> w = parse_word("a0 a1 b2 d1 x4_1 d2 c1 c2")
    >>> len(w), w.alphabet.degrees
    (8, (4,))
    >>> str(mirror(parse_word("a0 c0")))
    'a0 c0'

Pure regular words may also be written without separators (``"a0c0"``).
"""

import re
from typing import NamedTuple

__all__ = [
    "Letter", "Alphabet", "Word", "WordSyntaxError",
    "parse_letter", "parse_word", "render", "mirror", "shift_index",
    "regular_letters",
]

KINDS = "abcdx"


class WordSyntaxError(ValueError):
    pass


class Letter(NamedTuple):
    """A single generator.  ``degree`` is the number of stubs (2 for regular
    letters, ``m`` for ``x_{m,i}``)."""

    kind: str
    index: int
    degree: int = 2

    @property
    def is_vertex(self):
        return self.kind == "x"

    @property
    def token(self):
        if self.kind == "x":
            return "x%d_%d" % (self.degree, self.index)
        return "%s%d" % (self.kind, self.index)

    def shifted(self, s):
        return Letter(self.kind, (self.index + s) % 3, self.degree)

    def __str__(self):
        return self.token

    def __repr__(self):
        return "Letter(%s)" % self.token


def A(i):
    return Letter("a", i % 3)


def B(i):
    return Letter("b", i % 3)


def C(i):
    return Letter("c", i % 3)


def D(i):
    return Letter("d", i % 3)


def X(m, i):
    if m < 3:
        raise WordSyntaxError("vertex degree must be at least 3, got %d" % m)
    return Letter("x", i % 3, m)


def regular_letters():
    return [Letter(k, i) for k in "abcd" for i in range(3)]


class Alphabet:
    """The alphabet A_J for a set J of vertex degrees (J = {3..n} gives A_n,
    the empty set gives the Dynnikov alphabet A_2)."""

    __slots__ = ("degrees",)

    def __init__(self, degrees=()):
        degs = tuple(sorted(set(int(m) for m in degrees)))
        for m in degs:
            if m < 3:
                raise ValueError("vertex degrees must be >= 3, got %d" % m)
        object.__setattr__(self, "degrees", degs)

    def __setattr__(self, name, value):
        raise AttributeError("Alphabet is immutable")

    def __reduce__(self):
        return (Alphabet, (self.degrees,))

    @classmethod
    def for_n(cls, n):
        return cls(range(3, n + 1))

    @property
    def n(self):
        return max(self.degrees, default=2)

    def letters(self):
        out = regular_letters()
        for m in self.degrees:
            out.extend(X(m, i) for i in range(3))
        return out

    def __len__(self):
        return 3 * (4 + len(self.degrees))

    def __contains__(self, letter):
        if letter.kind == "x":
            return letter.degree in self.degrees
        return letter.kind in "abcd" and letter.degree == 2

    def union(self, other):
        return Alphabet(self.degrees + other.degrees)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.degrees == other.degrees

    def __hash__(self):
        return hash(("Alphabet", self.degrees))

    def __repr__(self):
        return "Alphabet(%r)" % (list(self.degrees),)


class Word:
    """Immutable word over an alphabet.  Equality is letter-exact."""

    __slots__ = ("letters", "alphabet")

    def __init__(self, letters=(), alphabet=None):
        letters = tuple(letters)
        if alphabet is None:
            alphabet = Alphabet(l.degree for l in letters if l.kind == "x")
        else:
            for l in letters:
                if l not in alphabet:
                    raise WordSyntaxError("letter %s not in %r" % (l.token, alphabet))
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __reduce__(self):
        return (Word, (self.letters, self.alphabet))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return Word(self.letters[k], self.alphabet)
        return self.letters[k]

    def __add__(self, other):
        if isinstance(other, Word):
            return Word(self.letters + other.letters, self.alphabet.union(other.alphabet))
        return Word(self.letters + tuple(other), None)

    def __mul__(self, k):
        return Word(self.letters * k, self.alphabet)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return render(self) < render(other)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return "Word(%r)" % render(self)

    def with_alphabet(self, alphabet):
        return Word(self.letters, alphabet)


_LETTER = re.compile(r"([abcd])(\d+)$|x(\d+)_(\d+)$")
_COMPACT = re.compile(r"(?:[abcd][012])+$")


def parse_letter(tok, alphabet=None):
    m = _LETTER.match(tok)
    if not m:
        raise WordSyntaxError("unknown token %r" % tok)
    if m.group(1):
        i = int(m.group(2))
        if i > 2:
            raise WordSyntaxError("index %d outside Z3 in %r" % (i, tok))
        letter = Letter(m.group(1), i)
    else:
        deg, i = int(m.group(3)), int(m.group(4))
        if i > 2:
            raise WordSyntaxError("index %d outside Z3 in %r" % (i, tok))
        if deg < 3:
            raise WordSyntaxError("degree %d below 3 in %r" % (deg, tok))
        letter = Letter("x", i, deg)
    if alphabet is not None and letter not in alphabet:
        raise WordSyntaxError("degree %d not in alphabet %r" % (letter.degree, alphabet))
    return letter


def tokenize(text):
    out = []
    for chunk in text.split():
        if len(chunk) > 2 and _COMPACT.match(chunk):
            out.extend(chunk[k:k + 2] for k in range(0, len(chunk), 2))
        else:
            out.append(chunk)
    return out


def parse_word(text, alphabet=None):
    """Parse a token string.  The empty string (or a lone ``1``) is the
    identity."""
    text = text.strip()
    if text in ("1", "∅"):
        text = ""
    letters = [parse_letter(t, alphabet) for t in tokenize(text)]
    return Word(letters, alphabet)


def render(w):
    return " ".join(l.token for l in w)


def word(*parts):
    """Build a word from letters, words or token strings."""
    letters = []
    for p in parts:
        if isinstance(p, Letter):
            letters.append(p)
        elif isinstance(p, str):
            letters.extend(parse_word(p))
        else:
            letters.extend(p)
    return Word(letters)


def mirror_letter(l):
    if l.kind == "a":
        return (C(l.index),)
    if l.kind == "c":
        return (A(l.index),)
    if l.kind == "b":
        return (D(l.index),)
    if l.kind == "d":
        return (B(l.index),)
    if l.degree % 2:
        return (l, B(l.index), C(l.index))
    return (l,)


def mirror(w, mode="rigid"):
    """The anti-automorphism rho (rigid) or epsilon (nonrigid).  Both use
    the same letter map; the mode only says where the result lives."""
    if mode not in ("rigid", "nonrigid"):
        raise ValueError("mode must be 'rigid' or 'nonrigid'")
    out = []
    for l in reversed(w.letters):
        out.extend(mirror_letter(l))
    return Word(out, w.alphabet)


def shift_index(w, s):
    s %= 3
    if s == 0:
        return w
    return Word((l.shifted(s) for l in w.letters), w.alphabet)
