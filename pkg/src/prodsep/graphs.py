"""Finite Serre graphs with labeled involutive edges.

A graph stores geometric edges; each geometric edge k yields two darts
(directed edges) 2k and 2k+1 with ``reverse(e) == e ^ 1``.  Dart 2k
carries the positive orientation (label > 0), dart 2k+1 the negative.
Vertices are dense integers 0..num_vertices-1.

Graphs are value types: every operation returns a new graph and nothing
mutates one after construction.
"""

from .words import free_reduce, letter_sort_key


class LabeledGraph:
    def __init__(self, alphabet, num_vertices, edges):
        """edges: iterable of geometric edges (src, dst, letter) with letter > 0."""
        self.alphabet = alphabet
        self.num_vertices = num_vertices
        src = []
        label = []
        for s, d, l in edges:
            if not (0 <= s < num_vertices and 0 <= d < num_vertices):
                raise ValueError(f"edge ({s}, {d}) out of vertex range")
            if not 1 <= l <= alphabet.size:
                raise ValueError(f"edge label {l} must be a positive letter")
            src.append(s)
            src.append(d)
            label.append(l)
            label.append(-l)
        self._src = src
        self._label = label
        self._star = None

    # -- basic structure ----------------------------------------------------

    @property
    def num_darts(self):
        return len(self._src)

    @property
    def num_geometric_edges(self):
        return len(self._src) // 2

    def src(self, e):
        return self._src[e]

    def dst(self, e):
        return self._src[e ^ 1]

    def label(self, e):
        return self._label[e]

    @staticmethod
    def reverse(e):
        return e ^ 1

    def geometric_edges(self):
        """The positive-orientation (src, dst, letter) triples, in edge order."""
        return tuple((self._src[2 * k], self._src[2 * k + 1], self._label[2 * k])
                     for k in range(self.num_geometric_edges))

    def star(self):
        """Darts grouped by (source vertex, signed label), each list sorted."""
        if self._star is None:
            star = {}
            for e in range(self.num_darts):
                star.setdefault((self._src[e], self._label[e]), []).append(e)
            self._star = star
        return self._star

    def out_dart(self, v, letter):
        """The unique dart at v with the given label, or None (immersions)."""
        darts = self.star().get((v, letter))
        return darts[0] if darts else None

    def rank(self):
        """Cycle rank |geometric edges| - |vertices| + 1 (connected graphs)."""
        return self.num_geometric_edges - self.num_vertices + 1

    def component_of(self, v):
        seen = {v}
        queue = [v]
        while queue:
            u = queue.pop()
            for e in range(self.num_darts):
                if self._src[e] == u:
                    w = self.dst(e)
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return seen

    def is_connected(self):
        if self.num_vertices == 0:
            return True
        return len(self.component_of(0)) == self.num_vertices

    # -- immersion / covering ----------------------------------------------

    def is_immersion(self):
        return all(len(darts) <= 1 for darts in self.star().values())

    def is_covering(self):
        star = self.star()
        for v in range(self.num_vertices):
            for l in self.alphabet.letters():
                if len(star.get((v, l), ())) != 1:
                    return False
        return True

    def trace(self, v, word):
        """The unique path from v labeled by word, or None if it cannot be read."""
        if not self.is_immersion():
            raise ValueError("trace requires an immersion")
        darts = []
        cur = v
        for l in word:
            d = self.out_dart(cur, l)
            if d is None:
                return None
            darts.append(d)
            cur = self.dst(d)
        return Path(self, v, tuple(darts))

    # -- folding -------------------------------------------------------------

    def find_admissible_pair(self, policy="least"):
        """A deterministic admissible pair, or None if the graph is an immersion.

        The "least" policy picks the lexicographically least pair under
        (source vertex, label, dart ids); "greatest" picks from the other
        end.  Both exist only to let fold order be varied in tests.
        """
        buckets = [(v, l) for (v, l), darts in self.star().items() if len(darts) >= 2]
        if not buckets:
            return None
        key = lambda vl: (vl[0], letter_sort_key(vl[1]))
        if policy == "least":
            v, l = min(buckets, key=key)
            darts = self.star()[(v, l)]
            return (darts[0], darts[1])
        elif policy == "greatest":
            v, l = max(buckets, key=key)
            darts = self.star()[(v, l)]
            return (darts[-2], darts[-1])
        raise ValueError(f"unknown policy {policy!r}")

    def check_admissible(self, pair):
        e1, e2 = pair
        if e1 == e2 or e2 == (e1 ^ 1):
            raise ValueError("pair must be two distinct, non-inverse darts")
        if self._src[e1] != self._src[e2]:
            raise ValueError("pair must share its source vertex")
        if self._label[e1] != self._label[e2]:
            raise ValueError("pair must share its label")

    def fold(self, pair):
        """Fold one admissible pair, identifying the darts and their endpoints."""
        return self.fold_tracked(pair)[0]

    def fold_tracked(self, pair):
        """Fold and also return the old-vertex -> new-vertex map."""
        self.check_admissible(pair)
        e1, e2 = pair
        # vertex classes: keep the least id of each class
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a, b = find(self.dst(e1)), find(self.dst(e2))
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
        reps = sorted({find(v) for v in range(self.num_vertices)})
        new_id = {r: i for i, r in enumerate(reps)}
        vmap = [new_id[find(v)] for v in range(self.num_vertices)]
        drop = max(e1, e2) >> 1
        edges = [(vmap[s], vmap[d], l)
                 for k, (s, d, l) in enumerate(self.geometric_edges()) if k != drop]
        return LabeledGraph(self.alphabet, len(reps), edges), vmap

    def fold_all(self, policy="least"):
        return self.fold_all_tracked(policy=policy)[0]

    def fold_all_tracked(self, policy="least"):
        """Fold until no admissible pair remains; returns (graph, vertex map)."""
        g = self
        total = list(range(self.num_vertices))
        while True:
            pair = g.find_admissible_pair(policy=policy)
            if pair is None:
                return g, total
            g, vmap = g.fold_tracked(pair)
            total = [vmap[t] for t in total]

    # -- canonical forms ------------------------------------------------------

    def bfs_order(self, root):
        """Vertex -> discovery index for a BFS from root, letters in canonical order.

        In an immersion this labeling is unique, which makes the derived
        canonical form a complete isomorphism invariant of the component.
        """
        order = {root: 0}
        queue = [root]
        letters = self.alphabet.letters()
        while queue:
            v = queue.pop(0)
            for l in letters:
                d = self.out_dart(v, l)
                if d is not None:
                    w = self.dst(d)
                    if w not in order:
                        order[w] = len(order)
                        queue.append(w)
        return order

    def canonical_form(self, root):
        """Canonical form of the component of root (immersions only)."""
        if not self.is_immersion():
            raise ValueError("canonical_form requires an immersion")
        order = self.bfs_order(root)
        edges = sorted((order[s], order[d], l)
                       for s, d, l in self.geometric_edges()
                       if s in order and d in order)
        return (len(order), tuple(edges))

    def canonical_key(self):
        """Basepoint-free canonical form: per-component minima, sorted."""
        remaining = set(range(self.num_vertices))
        forms = []
        while remaining:
            comp = self.component_of(min(remaining))
            forms.append(min(self.canonical_form(v) for v in comp))
            remaining -= comp
        return tuple(sorted(forms))

    # -- output ----------------------------------------------------------------

    def to_dot(self, base=None):
        """Deterministic DOT: BFS-canonical ids, one arrow per geometric edge."""
        root = base if base is not None else 0
        if self.num_vertices == 0:
            return "digraph {\n}\n"
        order = self.bfs_order(root)
        for v in range(self.num_vertices):  # unreachable vertices keep id order
            if v not in order:
                order[v] = len(order)
        lines = ["digraph {"]
        for v in sorted(order.values()):
            shape = "doublecircle" if base is not None and v == order[base] else "circle"
            lines.append(f"  {v} [shape={shape}];")
        rows = sorted((order[s], order[d], l) for s, d, l in self.geometric_edges())
        for s, d, l in rows:
            lines.append(f'  {s} -> {d} [label="{self.alphabet.symbols[l - 1]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"LabeledGraph({self.num_vertices} vertices, "
                f"{self.num_geometric_edges} geometric edges)")


class Path:
    """A composable dart sequence with a start vertex (may be empty)."""

    def __init__(self, graph, start, darts):
        self.graph = graph
        self.start = start
        self.darts = tuple(darts)
        cur = start
        for d in self.darts:
            if graph.src(d) != cur:
                raise ValueError("darts do not compose")
            cur = graph.dst(d)
        self.end = cur

    def label(self):
        return tuple(self.graph.label(d) for d in self.darts)

    def vertices(self):
        out = [self.start]
        for d in self.darts:
            out.append(self.graph.dst(d))
        return tuple(out)

    def reversed(self):
        return Path(self.graph, self.end, tuple(d ^ 1 for d in reversed(self.darts)))

    def concat(self, other):
        if other.graph is not self.graph or other.start != self.end:
            raise ValueError("paths do not compose")
        return Path(self.graph, self.start, self.darts + other.darts)

    def is_reduced(self):
        return all(self.darts[i] ^ 1 != self.darts[i + 1] for i in range(len(self.darts) - 1))

    def __len__(self):
        return len(self.darts)

    def __repr__(self):
        return f"Path({self.start} -> {self.end}, len {len(self.darts)})"


def reduce_path(path):
    """The reduced path homotopic (rel endpoints) to the given path.

    In an immersion the reduced label determines the reduced path, so this
    free-reduces the label and re-traces it from the same start.
    """
    word = free_reduce(path.label())
    out = path.graph.trace(path.start, word)
    if out is None or out.end != path.end:
        raise ValueError("path does not reduce inside the graph")
    return out
