"""Stallings graphs of finitely generated subgroups of a free group.

The graph of H = <w_1, ..., w_m> is the folded wedge of m labeled cycles;
reduced words of H are exactly the labels of reduced loops at the base
vertex.
"""

from dataclasses import dataclass

from .graphs import LabeledGraph
from .words import free_reduce, invert, letter_sort_key


@dataclass(frozen=True)
class PointedImmersion:
    """A connected folded graph with a basepoint."""
    graph: LabeledGraph
    base: int


@dataclass(frozen=True)
class AttachedImmersion:
    """A pointed immersion with a word attached as a path into the base.

    omega is the base (the attached path's endpoint); alpha is where the
    free end of the path landed after folding.  alpha == omega exactly when
    the attached word already belonged to the subgroup.
    """
    graph: LabeledGraph
    omega: int
    alpha: int


def build_wedge(alphabet, words):
    """The unfolded wedge of labeled cycles, one per word, based at vertex 0."""
    edges = []
    nv = 1
    for w in words:
        prev = 0
        for i, l in enumerate(w):
            nxt = 0 if i == len(w) - 1 else nv
            if i != len(w) - 1:
                nv += 1
            if l > 0:
                edges.append((prev, nxt, l))
            else:
                edges.append((nxt, prev, -l))
            prev = nxt
    return LabeledGraph(alphabet, nv, edges)


def stallings_graph(alphabet, generators):
    """Fold the wedge of generator cycles down to the subgroup graph."""
    words = []
    seen = set()
    for g in generators:
        w = free_reduce(g)
        if w and w not in seen:  # trivial and duplicate generators are inert
            seen.add(w)
            words.append(w)
    wedge = build_wedge(alphabet, words)
    folded, vmap = wedge.fold_all_tracked()
    return PointedImmersion(folded, vmap[0])


def contains(h, word):
    """Membership: does the (reduced) word read a loop at the base?"""
    path = h.graph.trace(h.base, free_reduce(word))
    return path is not None and path.end == h.base


def attach_word(h, word):
    """Glue a fresh path labeled by the word so it ends at the base, then fold."""
    w = free_reduce(word)
    if not w:
        return AttachedImmersion(h.graph, h.base, h.base)
    g = h.graph
    nv = g.num_vertices
    edges = list(g.geometric_edges())
    # fresh vertices nv .. nv+|w|-1 form the path; its last edge enters base
    prev = nv
    for i, l in enumerate(w):
        nxt = h.base if i == len(w) - 1 else nv + i + 1
        if l > 0:
            edges.append((prev, nxt, l))
        else:
            edges.append((nxt, prev, -l))
        prev = nxt
    attached = LabeledGraph(g.alphabet, nv + len(w), edges)
    folded, vmap = attached.fold_all_tracked()
    return AttachedImmersion(folded, vmap[h.base], vmap[nv])


def spanning_tree(graph, root):
    """BFS spanning tree: vertex -> dart used to enter it (root -> None).

    Exploration follows the canonical letter order, so the tree, and
    everything derived from it, is deterministic.
    """
    tree = {root: None}
    queue = [root]
    letters = graph.alphabet.letters()
    while queue:
        v = queue.pop(0)
        for l in letters:
            d = graph.out_dart(v, l)
            if d is not None:
                w = graph.dst(d)
                if w not in tree:
                    tree[w] = d
                    queue.append(w)
    return tree


def _word_to(graph, tree, v):
    letters = []
    while tree[v] is not None:
        d = tree[v]
        letters.append(graph.label(d))
        v = graph.src(d)
    return tuple(reversed(letters))


def subgroup_basis(h):
    """A free basis of the subgroup: one word per non-tree geometric edge."""
    g = h.graph
    tree = spanning_tree(g, h.base)
    tree_edges = {d >> 1 for d in tree.values() if d is not None}
    basis = []
    for k, (s, d, l) in enumerate(g.geometric_edges()):
        if k in tree_edges:
            continue
        word = _word_to(g, tree, s) + (l,) + invert(_word_to(g, tree, d))
        basis.append(free_reduce(word))
    return basis


def loop_words_up_to(h, max_len):
    """All nonempty reduced words of the subgroup with length <= max_len.

    Deterministic DFS over reduced loops at the base; exponential in
    max_len, intended as a small-scale oracle for tests.
    """
    g = h.graph
    out = []
    letters = sorted(g.alphabet.letters(), key=letter_sort_key)

    def walk(v, word):
        if len(word) >= max_len:
            return
        for l in letters:
            if word and l == -word[-1]:
                continue
            d = g.out_dart(v, l)
            if d is None:
                continue
            w = g.dst(d)
            nxt = word + (l,)
            if w == h.base:
                out.append(nxt)
            walk(w, nxt)

    walk(h.base, ())
    return out
