"""Monomial term orders on exponent vectors.

Monomials are plain tuples of non-negative integers.  Every order is
realized through a ``key`` function mapping an exponent vector to a tuple
that compares the right way under Python's lexicographic tuple comparison,
so ``max(terms, key=order.key)`` picks the leading monomial.

All orders here are admissible: total, multiplicative (u < v implies
uw < vw) and well-founded with the constant monomial as minimum.  The
multiplicativity of the key-based comparisons is exercised by the property
suite rather than proven per instance.
"""

from __future__ import annotations


class TermOrder:
    """Base class; subclasses define ``key`` and a stable description."""

    def key(self, exp):
        raise NotImplementedError

    def describe(self):
        raise NotImplementedError

    def greater(self, a, b):
        return self.key(a) > self.key(b)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self.describe() == other.describe()

    def __hash__(self):
        return hash(self.describe())

    def __repr__(self):
        return self.describe()


class Lex(TermOrder):
    """Pure lexicographic order; earlier positions dominate."""

    def key(self, exp):
        return tuple(exp)

    def describe(self):
        return "lex"


class GRevLex(TermOrder):
    """Degree reverse lexicographic order."""

    def key(self, exp):
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def describe(self):
        return "grevlex"


class Block(TermOrder):
    """Elimination order: the front block dominates, ties fall to the back.

    ``front`` is a set of variable positions.  A monomial involving a front
    variable is larger than any monomial free of them, which is what makes
    basis elements free of the front block generate the subring
    intersection.
    """

    def __init__(self, front, front_order=None, back_order=None):
        self.front = tuple(sorted(front))
        self._front_set = frozenset(self.front)
        self.front_order = front_order or GRevLex()
        self.back_order = back_order or GRevLex()

    def split(self, exp):
        fr = tuple(exp[i] for i in self.front)
        bk = tuple(e for i, e in enumerate(exp) if i not in self._front_set)
        return fr, bk

    def key(self, exp):
        fr, bk = self.split(exp)
        return (self.front_order.key(fr), self.back_order.key(bk))

    def describe(self):
        return "block(front=%s;%s;%s)" % (
            ",".join(map(str, self.front)),
            self.front_order.describe(),
            self.back_order.describe(),
        )


class Weighted(TermOrder):
    """Weight vector first, ties broken by another admissible order.

    Weights must be non-negative so the order stays well-founded; signed
    weights are handled elsewhere as pure bookkeeping, never as an order.
    """

    def __init__(self, weights, tiebreak=None):
        if any(w < 0 for w in weights):
            raise ValueError("weighted orders require non-negative weights")
        self.weights = tuple(weights)
        self.tiebreak = tiebreak or GRevLex()

    def key(self, exp):
        w = sum(a * b for a, b in zip(self.weights, exp))
        return (w, self.tiebreak.key(exp))

    def describe(self):
        return "weighted(%s;%s)" % (
            ",".join(map(str, self.weights)),
            self.tiebreak.describe(),
        )


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """Return a/b as an exponent vector, or None if b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b, a):
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a, b):
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


def mono_is_one(a):
    return all(e == 0 for e in a)
