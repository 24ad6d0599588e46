"""The abelianization of the three-page semigroups.

Letters map into the free abelian group on ``ã_0, ã_1, ã_2`` and one
generator ``x̃_m`` per vertex degree.  Three linear functionals ``F_i``
recover the signed bracket counts of each page, and balanced words land in
a small explicit cone (the image of the center).
"""

from collections import namedtuple

__all__ = ["AbelianVector", "abelianize", "letter_image", "functional_F",
           "center_image_member", "format_vector", "parse_vector"]


class AbelianVector(namedtuple("AbelianVector", "a x")):
    """``a`` is the (ã_0, ã_1, ã_2) triple, ``x`` a sorted tuple of
    (degree, coefficient) pairs with zero entries dropped."""

    __slots__ = ()

    def __new__(cls, a=(0, 0, 0), x=()):
        if isinstance(x, dict):
            x = x.items()
        x = tuple(sorted((int(m), int(k)) for m, k in x if k))
        return super().__new__(cls, tuple(int(v) for v in a), x)

    @classmethod
    def zero(cls):
        return cls()

    def xdict(self):
        return dict(self.x)

    def __add__(self, other):
        a = tuple(u + v for u, v in zip(self.a, other.a))
        x = self.xdict()
        for m, k in other.x:
            x[m] = x.get(m, 0) + k
        return AbelianVector(a, x)

    def __neg__(self):
        return AbelianVector(tuple(-v for v in self.a), {m: -k for m, k in self.x})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(self.a) and not self.x

    def __str__(self):
        return format_vector(self)


def _e(i, c=1):
    a = [0, 0, 0]
    a[i % 3] += c
    return a


_CACHE = {}


def letter_image(l):
    v = _CACHE.get(l)
    if v is not None:
        return v
    i = l.index
    a = [0, 0, 0]
    x = {}
    if l.kind == "a":
        a[i] += 1
    elif l.kind == "c":
        a[i] -= 1
    elif l.kind == "b":
        a[(i - 1) % 3] += 1
        a[(i + 1) % 3] -= 1
    elif l.kind == "d":
        a[(i + 1) % 3] += 1
        a[(i - 1) % 3] -= 1
    else:
        x[l.degree] = 1
        if l.degree % 2:
            if i == 1:
                a[2] += 1
                a[0] -= 1
            elif i == 2:
                a[2] += 1
                a[1] -= 1
    v = _CACHE[l] = AbelianVector(a, x)
    return v


def abelianize(w):
    a = [0, 0, 0]
    x = {}
    for l in w:
        v = letter_image(l)
        a[0] += v.a[0]
        a[1] += v.a[1]
        a[2] += v.a[2]
        for m, k in v.x:
            x[m] = x.get(m, 0) + k
    return AbelianVector(a, x)


def functional_F(i, v):
    """F_i(ã_i) = 0, F_i(ã_{i±1}) = 1, F_2(x̃_m) = 1 for odd m, else 0."""
    i %= 3
    s = v.a[(i + 1) % 3] + v.a[(i - 1) % 3]
    if i == 2:
        s += sum(k for m, k in v.x if m % 2)
    return s


def center_image_member(v):
    """Is ``v = -z ã_0 - z ã_1 + z ã_2 + Σ k_m x̃_m`` with ``k_m >= 0`` and
    the odd-degree coefficients summing to ``2z``?"""
    a0, a1, a2 = v.a
    z = a2
    if a0 != -z or a1 != -z:
        return False
    if any(k < 0 for _, k in v.x):
        return False
    return sum(k for m, k in v.x if m % 2) == 2 * z


def format_vector(v):
    head = "%d,%d,%d" % v.a
    if not v.x:
        return head + ";"
    return head + "; " + " ".join("x%d:%d" % (m, k) for m, k in v.x)


def parse_vector(text):
    head, _, tail = text.partition(";")
    a = tuple(int(t) for t in head.split(","))
    x = {}
    for tok in tail.split():
        m, k = tok[1:].split(":")
        x[int(m)] = int(k)
    return AbelianVector(a, x)
