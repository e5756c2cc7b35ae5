"""Finite groups generated by the alphabet, as permutations of a carrier set.

Elements are image tuples: point i maps to elem[i].  Words act on the
right, letter by letter, so evaluate(u + v) == mult(evaluate(u),
evaluate(v)).
"""

import re
from dataclasses import dataclass

from .errors import CapExceeded
from .graphs import LabeledGraph

DEFAULT_CAP = 10 ** 6


class XGroup:
    """A permutation group with one generator per alphabet symbol."""

    def __init__(self, alphabet, perms):
        if len(perms) != alphabet.size:
            raise ValueError("need exactly one permutation per generator")
        n = len(perms[0]) if perms else 0
        fixed = []
        for p in perms:
            p = tuple(p)
            if sorted(p) != list(range(n)):
                raise ValueError(f"not a permutation of 0..{n - 1}: {p}")
            fixed.append(p)
        self.alphabet = alphabet
        self.carrier = n
        self._perms = tuple(fixed)
        self._inv = tuple(inv_perm(p) for p in fixed)
        self._elements = None

    @property
    def identity(self):
        return tuple(range(self.carrier))

    def perm(self, letter):
        return self._perms[letter - 1] if letter > 0 else self._inv[-letter - 1]

    def mult(self, a, b):
        """Apply a, then b."""
        return tuple(b[x] for x in a)

    def inv(self, a):
        return inv_perm(a)

    def gen(self, letter):
        return self.perm(letter)

    def evaluate(self, word):
        """The value of the word: the product of its letter permutations."""
        out = self.identity
        for l in word:
            out = tuple(self.perm(l)[x] for x in out)
        return out

    def elements(self, cap=DEFAULT_CAP):
        """All elements, in BFS discovery order from the identity."""
        if self._elements is None or len(self._elements) > cap:
            gens = [self.perm(l) for l in self.alphabet.letters()]
            first = self.identity
            seen = {first}
            order = [first]
            queue = [first]
            while queue:
                cur = queue.pop(0)
                for p in gens:
                    nxt = tuple(p[x] for x in cur)
                    if nxt not in seen:
                        if len(seen) >= cap:
                            raise CapExceeded(
                                f"group has more than {cap} elements", limit=cap)
                        seen.add(nxt)
                        order.append(nxt)
                        queue.append(nxt)
            self._elements = order
        return self._elements

    def order(self, cap=DEFAULT_CAP):
        return len(self.elements(cap=cap))

    def is_transitive(self):
        if self.carrier == 0:
            return True
        seen = {0}
        queue = [0]
        while queue:
            v = queue.pop()
            for p in self._perms + self._inv:
                if p[v] not in seen:
                    seen.add(p[v])
                    queue.append(p[v])
        return len(seen) == self.carrier

    def __repr__(self):
        return f"XGroup(carrier={self.carrier}, gens={[fmt_perm(p) for p in self._perms]})"


@dataclass(frozen=True)
class CayleyGraph:
    """The Cayley graph of a group: one vertex per element, edges g -> g*x."""
    graph: LabeledGraph
    base: int
    elements: tuple


def cayley_graph(group, cap=DEFAULT_CAP):
    elems = group.elements(cap=cap)
    index = {e: i for i, e in enumerate(elems)}
    edges = []
    for i, e in enumerate(elems):
        for x in group.alphabet.positive_letters():
            edges.append((i, index[group.mult(e, group.perm(x))], x))
    return CayleyGraph(LabeledGraph(group.alphabet, len(elems), edges), 0, tuple(elems))


def diagonal_subgroup(groups):
    """The subgroup of the direct product generated letterwise.

    Acts on the disjoint union of the carriers; the letter x acts as each
    group's x-generator on its own block.
    """
    if not groups:
        raise ValueError("need at least one group")
    alphabet = groups[0].alphabet
    if any(g.alphabet != alphabet for g in groups):
        raise ValueError("groups must share the alphabet")
    perms = []
    for x in alphabet.positive_letters():
        block = []
        offset = 0
        for g in groups:
            block.extend(offset + i for i in g.perm(x))
            offset += g.carrier
        perms.append(tuple(block))
    return XGroup(alphabet, perms)


def inv_perm(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def fmt_perm(p):
    """Cycle notation; the identity is '()'."""
    seen = set()
    parts = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cycle = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cycle.append(j)
            j = p[j]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "()"


def parse_perm(text, n):
    """Parse cycle notation into an image tuple on 0..n-1."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\)\s*)+", text):
        raise ValueError(f"malformed permutation {text!r}")
    out = tuple(range(n))
    for body in re.findall(r"\(([^)]*)\)", text):
        cycle = [int(t) for t in body.split()]
        if any(i >= n for i in cycle):
            raise ValueError(f"point out of range in {text!r}")
        if len(set(cycle)) != len(cycle):
            raise ValueError(f"repeated point in cycle {text!r}")
        cperm = list(range(n))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            cperm[a] = b
        out = tuple(cperm[x] for x in out)
    return out
