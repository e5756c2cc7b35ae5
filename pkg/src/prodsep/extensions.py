"""Universal p-elementary extensions of a finite X-generated group.

For a group G and a prime p, the extension lives in the semidirect product
of the free Z/p-module on the positively-oriented Cayley edges of G with G
itself, and is generated by the pairs (edge 1 -> x, x).  An element is a
pair (vec, g): vec a finitely-supported Z/p vector over edge keys, g an
element one level down.

An edge key (h, x) names the positive Cayley edge from h to h*x; the group
acts on keys by left translation.  Element arithmetic is symbolic
throughout -- materializing the extension is a separate, capped operation,
because iterated extensions explode while their individual elements stay
small.

The load-bearing identity (tested, and used by the separator machinery):
the value of a word w at an extension level equals (sum of the signed
traversal counts mod p of each edge, value of w one level down), where the
counts are those of the path w traces from the identity in the Cayley
graph one level down.
"""

import math

from .errors import CapExceeded
from .graphs import LabeledGraph
from .groups import DEFAULT_CAP, CayleyGraph, XGroup


class BaseLevel:
    """Level 0 of an extension tower: a plain permutation group."""

    index = 0

    def __init__(self, group):
        self.group = group
        self.alphabet = group.alphabet

    @property
    def identity(self):
        return self.group.identity

    def gen(self, letter):
        return self.group.perm(letter)

    def mult(self, a, b):
        return self.group.mult(a, b)

    def inv(self, a):
        return self.group.inv(a)

    def evaluate(self, word):
        return self.group.evaluate(word)

    def __repr__(self):
        return f"BaseLevel({self.group!r})"


class ExtensionLevel:
    """The universal p-elementary extension of the level below."""

    def __init__(self, below, prime):
        if prime < 2 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1)):
            raise ValueError(f"{prime} is not a prime")
        self.below = below
        self.prime = prime
        self.alphabet = below.alphabet
        self.index = below.index + 1
        self._gens = {}

    @property
    def identity(self):
        return ((), self.below.identity)

    def gen(self, letter):
        g = self._gens.get(letter)
        if g is None:
            if letter > 0:
                g = ((((self.below.identity, letter), 1),), self.below.gen(letter))
            else:
                g = self.inv(self.gen(-letter))
            self._gens[letter] = g
        return g

    def mult(self, a, b):
        (v1, g1), (v2, g2) = a, b
        acc = dict(v1)
        for (src, x), c in v2:
            key = (self.below.mult(g1, src), x)
            n = (acc.get(key, 0) + c) % self.prime
            if n:
                acc[key] = n
            elif key in acc:
                del acc[key]
        return (tuple(sorted(acc.items())), self.below.mult(g1, g2))

    def inv(self, a):
        v, g = a
        gi = self.below.inv(g)
        acc = {(self.below.mult(gi, src), x): (-c) % self.prime for (src, x), c in v}
        return (tuple(sorted(acc.items())), gi)

    def project(self, elem):
        """Drop the vector: the image under the quotient onto the level below."""
        return elem[1]

    def evaluate(self, word):
        out = self.identity
        for l in word:
            out = self.mult(out, self.gen(l))
        return out

    def __repr__(self):
        return f"ExtensionLevel(p={self.prime}, over {self.below!r})"


class ExtensionChain:
    """An iterated tower of p-elementary extensions over a base group."""

    def __init__(self, group, primes):
        levels = [BaseLevel(group)]
        for p in primes:
            levels.append(ExtensionLevel(levels[-1], p))
        self.levels = levels
        self.primes = tuple(primes)
        self.group = group

    def level(self, i):
        return self.levels[i]

    @property
    def top(self):
        return self.levels[-1]

    def evaluate(self, word, level=None):
        lvl = self.top if level is None else self.levels[level]
        return lvl.evaluate(word)

    def project_to_base(self, elem, level=None):
        i = len(self.levels) - 1 if level is None else level
        while i > 0:
            elem = elem[1]
            i -= 1
        return elem

    def __repr__(self):
        return f"ExtensionChain(primes={self.primes}, base={self.group!r})"


def as_level(group_or_level):
    return BaseLevel(group_or_level) if isinstance(group_or_level, XGroup) else group_or_level


def build_extension(group, prime):
    """The p-elementary extension of a permutation group, as a symbolic handle."""
    return ExtensionLevel(as_level(group), prime)


def iterated_extension(group, primes):
    """The chain G, G^(p1), (G^(p1))^(p2), ...; empty primes give G itself."""
    return ExtensionChain(group, primes)


def evaluate_word_ext(level, word):
    return level.evaluate(word)


def signed_traversals(group_or_level, word):
    """Net signed crossing count of each positive Cayley edge by the word's path.

    Walks the Cayley graph from the identity: a positive letter x at h
    crosses the edge (h, x) forwards (+1); a negative letter x^-1 at h
    crosses (h * x^-1, x) backwards (-1).  Entries that cancel to zero are
    dropped.
    """
    level = as_level(group_or_level)
    counts = {}
    cur = level.identity
    for l in word:
        if l > 0:
            key = (cur, l)
            delta = 1
            cur = level.mult(cur, level.gen(l))
        else:
            cur = level.mult(cur, level.gen(l))
            key = (cur, -l)
            delta = -1
        n = counts.get(key, 0) + delta
        if n:
            counts[key] = n
        elif key in counts:
            del counts[key]
    return counts


def traversal_element(level, word):
    """The element the traversal identity predicts for the word.

    Computed independently of the symbolic product: the signed traversal
    counts of the word's Cayley path one level down, reduced mod p, paired
    with the word's value one level down.
    """
    counts = signed_traversals(level.below, word)
    vec = {k: c % level.prime for k, c in counts.items() if c % level.prime}
    return (tuple(sorted(vec.items())), level.below.evaluate(word))


def level_order_bound(level, cap=DEFAULT_CAP):
    """Exact order of an extension level, or raise if it exceeds the cap.

    The kernel of the projection is the mod-p cycle space of the Cayley
    graph below, so each level multiplies the order by p^((|X|-1)*n + 1)
    where n is the order below.
    """
    if isinstance(level, BaseLevel):
        return level.group.order(cap=cap)
    below = level_order_bound(level.below, cap=cap)
    k = (level.alphabet.size - 1) * below + 1
    if math.log(below) + k * math.log(level.prime) > math.log(cap) + 1e-9:
        raise CapExceeded(
            f"extension order {below} * {level.prime}^{k} exceeds cap {cap}",
            limit=cap)
    order = below * level.prime ** k
    if order > cap:
        raise CapExceeded(
            f"extension order {order} = {below} * {level.prime}^{k} exceeds cap {cap}",
            limit=cap)
    return order


def materialize_level(level, cap=DEFAULT_CAP):
    """BFS enumeration of an extension level's elements, in discovery order."""
    level_order_bound(level, cap=cap)
    gens = [level.gen(l) for l in level.alphabet.letters()]
    first = level.identity
    seen = {first}
    order = [first]
    queue = [first]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            nxt = level.mult(cur, g)
            if nxt not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"extension has more than {cap} elements",
                                      limit=cap)
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def cayley_graph_ext(level, cap=DEFAULT_CAP):
    """Materialize the level and build its Cayley graph on the elements."""
    elems = materialize_level(level, cap=cap)
    index = {e: i for i, e in enumerate(elems)}
    edges = []
    for i, e in enumerate(elems):
        for x in level.alphabet.positive_letters():
            edges.append((i, index[level.mult(e, level.gen(x))], x))
    return CayleyGraph(LabeledGraph(level.alphabet, len(elems), edges), 0, tuple(elems))
