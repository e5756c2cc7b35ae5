"""Separators and factorizations for product cosets H_1 ... H_n.

The pipeline mirrors the constructive proof it implements:

* n = 1 (Hall): attach the word to the subgroup graph, expand to a cover,
  and read the transition group; the word's permutation moves the base
  vertex while the subgroup's permutations fix it.

* general n: take the diagonal group G of the transition groups of the
  covers of S(H_1), ..., S(H_{n-1}), S(H_n) with the word attached, and
  the iterated p-elementary extension chain K over G.  If the word's
  K-image factors through the subgroups' K-images, the factorization
  machinery pinches the resulting Cayley-graph loop down to a genuine
  free-group identity, witnessing membership; contrapositively, for a
  non-member the K-image stays outside the image product.

All Cayley-graph work (path spans, intersection components, spines) is
done symbolically on traced paths, so the recursion never materializes an
extension level.
"""

from dataclasses import dataclass

from .covers import expand_to_cover, transition_group
from .errors import CapExceeded, InternalInvariantError
from .extensions import ExtensionChain
from .graphs import reduce_path
from .groups import DEFAULT_CAP, diagonal_subgroup
from .stallings import attach_word, contains, stallings_graph
from .words import free_reduce, invert, is_reduced, letter_sort_key


# -- symbolic Cayley paths and spans -----------------------------------------


@dataclass(frozen=True)
class CayleyPath:
    """A path in the Cayley graph of a chain level, traced symbolically."""
    level: object
    start: object
    word: tuple
    vertices: tuple

    @property
    def end(self):
        return self.vertices[-1]

    def step_key(self, i):
        """Canonical key of the i-th geometric edge: (source element, letter)."""
        l = self.word[i]
        if l > 0:
            return (self.vertices[i], l)
        return (self.vertices[i + 1], -l)

    def edge_keys(self):
        return tuple(self.step_key(i) for i in range(len(self.word)))

    def reversed(self):
        return CayleyPath(self.level, self.end, invert(self.word),
                          tuple(reversed(self.vertices)))

    def prefix(self, k):
        return CayleyPath(self.level, self.start, self.word[:k], self.vertices[:k + 1])


def trace_cayley(level, start, word):
    vertices = [start]
    cur = start
    for l in word:
        cur = level.mult(cur, level.gen(l))
        vertices.append(cur)
    return CayleyPath(level, start, tuple(word), tuple(vertices))


@dataclass(frozen=True)
class PathSpan:
    """The subgraph of a Cayley graph spanned by a traced path."""
    vertices: frozenset
    edges: dict  # key (src element, letter) -> (src element, dst element)
    path: CayleyPath


def span_of(path):
    vertices = frozenset(path.vertices)
    edges = {}
    for i in range(len(path.word)):
        key = path.step_key(i)
        u, v = path.vertices[i], path.vertices[i + 1]
        edges[key] = (u, v) if path.word[i] > 0 else (v, u)
    return PathSpan(vertices, edges, path)


def _component(vertices, edges, start):
    """Component of start in the subgraph; returns (vertex set, edge dict)."""
    adj = {}
    for key, (u, v) in edges.items():
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    comp = {start}
    queue = [start]
    while queue:
        u = queue.pop()
        for v in adj.get(u, ()):
            if v not in comp:
                comp.add(v)
                queue.append(v)
    kept = {key: ends for key, ends in edges.items() if ends[0] in comp}
    return comp, kept


def _bfs_path(level, vertices, edges, start, end):
    """Deterministic shortest path inside the subgraph, as a CayleyPath."""
    adj = {v: [] for v in vertices}
    for (src, x), (u, v) in edges.items():
        adj[u].append((x, v))
        adj[v].append((-x, u))
    for v in adj:
        adj[v].sort(key=lambda step: (letter_sort_key(step[0]), step[1]))
    back = {start: None}
    queue = [start]
    while queue:
        u = queue.pop(0)
        if u == end:
            break
        for l, v in adj[u]:
            if v not in back:
                back[v] = (u, l)
                queue.append(v)
    if end not in back:
        return None
    letters = []
    verts = [end]
    cur = end
    while back[cur] is not None:
        prev, l = back[cur]
        letters.append(l)
        verts.append(prev)
        cur = prev
    return CayleyPath(level, start, tuple(reversed(letters)), tuple(reversed(verts)))


# -- common spine -------------------------------------------------------------


@dataclass(frozen=True)
class SpineCertificate:
    """Boundary data produced when no spine exists.

    The first path leaves the component of the start exactly once more
    than it enters, so some crossing edge is traversed a number of times
    that no identity in a p-elementary extension could tolerate.
    """
    omega: frozenset
    in_indices: tuple
    out_indices: tuple
    witness_edge: object


def common_spine(delta1, delta2, start, end, prime=None):
    """A reduced path from start to end inside both spans, or the counting data.

    The search runs on the intersection subgraph; when it fails, the
    certificate lists the crossings of the first span's path over the
    boundary of the start's component, and (given a prime) an edge outside
    the second span whose net traversal count is nonzero mod p.
    """
    common_edges = {k: ends for k, ends in delta1.edges.items() if k in delta2.edges}
    common_vertices = delta1.vertices & delta2.vertices
    level = delta1.path.level
    omega, omega_edges = _component(common_vertices, common_edges, start)
    if end in omega:
        spine = _bfs_path(level, omega, omega_edges, start, end)
        if spine is None:
            raise InternalInvariantError("end in component but no path found")
        return spine
    path = delta1.path
    in_idx, out_idx = [], []
    for i in range(len(path.word)):
        u, v = path.vertices[i], path.vertices[i + 1]
        if (u in omega) and (v not in omega):
            out_idx.append(i)
        elif (u not in omega) and (v in omega):
            in_idx.append(i)
    witness = None
    if prime is not None:
        net = {}
        for i in range(len(path.word)):
            key = path.step_key(i)
            net[key] = net.get(key, 0) + (1 if path.word[i] > 0 else -1)
        for i in out_idx + in_idx:
            key = path.step_key(i)
            if key not in delta2.edges and net[key] % prime != 0:
                witness = key
                break
    return SpineCertificate(frozenset(omega), tuple(in_idx), tuple(out_idx), witness)


# -- path projection ----------------------------------------------------------


def project_path(eta, eta_prime, gamma_prime):
    """Project a Cayley path into an immersion along a matching read path.

    gamma_prime reads the label of eta_prime in the immersion; since every
    geometric edge of eta is traversed by eta_prime, the covering map that
    matches them carries eta to a path in the immersion with eta's label,
    starting where gamma_prime starts.
    """
    if eta.start != eta_prime.start:
        raise ValueError("eta and eta_prime must share their start vertex")
    if not is_reduced(eta.word):
        raise ValueError("eta must be reduced")
    if not is_reduced(eta_prime.word):
        raise ValueError("eta_prime must be reduced")
    if gamma_prime.label() != eta_prime.word:
        raise ValueError("gamma_prime must carry the same label as eta_prime")
    if not gamma_prime.is_reduced():
        raise ValueError("gamma_prime must be reduced")
    allowed = set(span_of(eta_prime).edges)
    missing = [k for k in eta.edge_keys() if k not in allowed]
    if missing:
        raise ValueError("every geometric edge of eta must be traversed by eta_prime")
    out = gamma_prime.graph.trace(gamma_prime.start, eta.word)
    if out is None:
        raise InternalInvariantError("projection left the immersion")
    if eta.end == eta_prime.end and out.end != gamma_prime.end:
        raise InternalInvariantError("projection endpoint mismatch")
    return out


# -- image subgroups ----------------------------------------------------------


def image_subgroup(level, generators, cap=DEFAULT_CAP):
    """BFS closure of the generator images, each element with a witness word.

    The witness words are reduced products of the given generators and
    their inverses, so they all lie in the subgroup the generators define.
    """
    steps = []
    for g in generators:
        w = free_reduce(g)
        if not w:
            continue
        img = level.evaluate(w)
        steps.append((img, w))
        steps.append((level.inv(img), invert(w)))
    out = {level.identity: ()}
    queue = [level.identity]
    while queue:
        cur = queue.pop(0)
        for img, w in steps:
            nxt = level.mult(cur, img)
            if nxt not in out:
                if len(out) >= cap:
                    raise CapExceeded(
                        f"subgroup image has more than {cap} elements", limit=cap)
                out[nxt] = free_reduce(out[cur] + w)
                queue.append(nxt)
    return out


def _product_with_witness(level, images, cap):
    """Image of the set product, each element with one witness per factor."""
    out = {level.identity: ()}
    for img in images:
        nxt = {}
        for pe, pw in out.items():
            for ae, aw in img.items():
                e = level.mult(pe, ae)
                if e not in nxt:
                    if len(nxt) >= cap:
                        raise CapExceeded(
                            f"product image has more than {cap} elements", limit=cap)
                    nxt[e] = pw + (aw,)
        out = nxt
    return out


def _row_reduce(vec, basis, prime):
    """Reduce a sparse GF(p) vector against pivot-keyed rows.

    Returns None when the vector is dependent, else the (pivot, row) pair
    to add; rows are normalized to pivot coefficient 1.
    """
    vec = dict(vec)
    while vec:
        pivot = min(vec)
        row = basis.get(pivot)
        if row is None:
            inv = pow(vec[pivot], -1, prime)
            return pivot, {k: (v * inv) % prime for k, v in vec.items()}
        c = vec[pivot]
        for k, v in row.items():
            n = (vec.get(k, 0) - c * v) % prime
            if n:
                vec[k] = n
            elif k in vec:
                del vec[k]
    return None


def image_subgroup_order(level, generators, cap=DEFAULT_CAP):
    """Exact order of the image subgroup, without enumerating it.

    At an extension level the image is an extension of the image one level
    down by the span of its Schreier-generator vectors, so the order is
    |image below| * p^rank.  The coset walk below is still explicit, but
    its elements live one level down; orders above the cap raise early.
    """
    steps = []
    for g in generators:
        w = free_reduce(g)
        if not w:
            continue
        img = level.evaluate(w)
        steps.append(img)
        steps.append(level.inv(img))
    if not hasattr(level, "prime"):  # base of the chain
        seen = {level.identity}
        queue = [level.identity]
        while queue:
            cur = queue.pop(0)
            for img in steps:
                nxt = level.mult(cur, img)
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise CapExceeded(f"image order exceeds {cap}", limit=cap)
                    seen.add(nxt)
                    queue.append(nxt)
        return len(seen)
    below = level.below
    prime = level.prime
    # walk the image one level down carrying a chosen lift vector per
    # element; edges that close a cycle contribute Schreier kernel vectors
    lifts = {below.identity: {}}
    basis = {}
    queue = [below.identity]
    while queue:
        b = queue.pop(0)
        vb = lifts[b]
        for vec, g in steps:
            nb = below.mult(b, g)
            nvec = dict(vb)
            for (src, x), c in vec:
                key = (below.mult(b, src), x)
                n = (nvec.get(key, 0) + c) % prime
                if n:
                    nvec[key] = n
                elif key in nvec:
                    del nvec[key]
            known = lifts.get(nb)
            if known is None:
                if len(lifts) >= cap:
                    raise CapExceeded(f"image order exceeds {cap}", limit=cap)
                lifts[nb] = nvec
                queue.append(nb)
            else:
                for k, v in known.items():
                    n = (nvec.get(k, 0) - v) % prime
                    if n:
                        nvec[k] = n
                    elif k in nvec:
                        del nvec[k]
                added = _row_reduce(nvec, basis, prime)
                if added is not None:
                    basis[added[0]] = added[1]
                    if len(lifts) * prime ** len(basis) > cap:
                        raise CapExceeded(
                            f"image order exceeds {cap}: at least "
                            f"{len(lifts)} * {prime}^{len(basis)}", limit=cap)
    order = len(lifts) * prime ** len(basis)
    if order > cap:
        raise CapExceeded(f"image order {order} exceeds {cap}", limit=cap)
    return order


# -- witnesses ----------------------------------------------------------------


@dataclass
class SeparatorWitness:
    """A finite quotient with the data showing it separates the word.

    For the one-subgroup (Hall) case the quotient is a transition group
    and the certificate is base-vertex motion; for products it is an
    extension chain and the certificate is exclusion from the image
    product.  ``excluded`` is None when image enumeration hit the cap
    (the witness is then marked partial).
    """
    kind: str
    alphabet: object
    subgroups: tuple
    word: tuple
    primes: tuple
    group: object
    chain: object = None
    base_vertex: int = None
    word_image: object = None
    generator_images: tuple = ()
    factor_image_sizes: tuple = None
    product_image_size: int = None
    excluded: bool = None
    partial: bool = False


@dataclass(frozen=True)
class Factorization:
    """Words h_1, ..., h_n with h_i in H_i and h_1 ... h_n = w in F."""
    factors: tuple


@dataclass
class FactorizeStats:
    """Counters for exercising the recursion in tests."""
    cuts: int = 0
    spines: int = 0
    prefix_spines: int = 0
    bfs_spines: int = 0
    capped_search: bool = False


# -- construction contexts ----------------------------------------------------


@dataclass
class _Context:
    alphabet: object
    subgroups: tuple
    word: tuple
    pointed: tuple       # S(H_i), all unattached
    attached: object     # S(H_n) with the word attached
    gammas: tuple        # the immersions Gamma_i actually used
    starts: tuple        # base of Gamma_i (omega for the last)
    ends: tuple          # expected path targets (base, resp. alpha)
    groups: tuple        # transition groups of the covering expansions
    diagonal: object
    chain: ExtensionChain


def _build_context(alphabet, subgroups, word, primes):
    n = len(subgroups)
    if n < 1:
        raise ValueError("need at least one subgroup")
    subgroups = tuple(tuple(free_reduce(g) for g in gens) for gens in subgroups)
    word = free_reduce(word)
    if primes is None:
        primes = (2,) * (n - 1)
    primes = tuple(primes)
    if len(primes) != n - 1:
        raise ValueError(f"need {n - 1} primes for {n} subgroups, got {len(primes)}")
    pointed = tuple(stallings_graph(alphabet, gens) for gens in subgroups)
    attached = attach_word(pointed[-1], word)
    gammas = tuple(h.graph for h in pointed[:-1]) + (attached.graph,)
    starts = tuple(h.base for h in pointed[:-1]) + (attached.omega,)
    ends = tuple(h.base for h in pointed[:-1]) + (attached.alpha,)
    groups = tuple(transition_group(expand_to_cover(g)) for g in gammas)
    diagonal = diagonal_subgroup(groups)
    chain = ExtensionChain(diagonal, primes)
    return _Context(alphabet, subgroups, word, pointed, attached, gammas,
                    starts, ends, groups, diagonal, chain)


# -- Hall separator -----------------------------------------------------------


def hall_separator(alphabet, generators, word):
    """A finite quotient separating a non-member word from one subgroup."""
    h = stallings_graph(alphabet, generators)
    w = free_reduce(word)
    if contains(h, w):
        raise ValueError("the word lies in the subgroup; nothing separates it")
    att = attach_word(h, w)
    cover = expand_to_cover(att.graph)
    group = transition_group(cover)
    base = att.omega
    gens = tuple(free_reduce(g) for g in generators)
    word_image = group.evaluate(w)
    gen_images = tuple(group.evaluate(g) for g in gens)
    if word_image[base] == base:
        raise InternalInvariantError("word image fixes the base vertex")
    if any(img[base] != base for img in gen_images):
        raise InternalInvariantError("a generator image moves the base vertex")
    return SeparatorWitness(
        kind="hall", alphabet=alphabet, subgroups=(gens,), word=w, primes=(),
        group=group, base_vertex=base, word_image=word_image,
        generator_images=(gen_images,), excluded=True)


# -- product separator --------------------------------------------------------


def product_separator(alphabet, subgroups, word, primes=None, cap=DEFAULT_CAP):
    """The extension-chain quotient for a product coset, with its certificate.

    The certificate is completed (``excluded`` set) when every factor's
    image subgroup enumerates under the cap; otherwise the witness is
    returned marked partial.
    """
    ctx = _build_context(alphabet, subgroups, word, primes)
    top = ctx.chain.top
    word_image = top.evaluate(ctx.word)
    gen_images = tuple(tuple(top.evaluate(g) for g in gens) for gens in ctx.subgroups)
    witness = SeparatorWitness(
        kind="product", alphabet=alphabet, subgroups=ctx.subgroups, word=ctx.word,
        primes=ctx.chain.primes, group=ctx.diagonal, chain=ctx.chain,
        word_image=word_image, generator_images=gen_images)
    try:
        # exact orders first: proves cap-exceedance without enumerating
        sizes = tuple(image_subgroup_order(top, gens, cap) for gens in ctx.subgroups)
        images = [image_subgroup(top, gens, cap) for gens in ctx.subgroups]
    except CapExceeded:
        witness.partial = True
        return witness
    if tuple(len(img) for img in images) != sizes:
        raise InternalInvariantError("image enumeration disagrees with its order")
    witness.factor_image_sizes = sizes
    witness.excluded = not _product_member(top, images, word_image, cap)
    size = 1
    for img in images:
        size *= len(img)
    if size <= cap:
        try:
            witness.product_image_size = len(_product_with_witness(top, images, cap))
        except CapExceeded:
            pass
    else:
        witness.partial = True
    return witness


def _product_member(level, images, target, cap):
    """Meet in the middle: is target in the set product of the images?"""
    mid = max(1, len(images) // 2)
    left = _product_with_witness(level, images[:mid], cap)
    right = _product_with_witness(level, images[mid:], cap)
    for l in left:
        if level.mult(level.inv(l), target) in right:
            return True
    return False


# -- factorization ------------------------------------------------------------


def factorize(alphabet, subgroups, word, seeds=None, primes=None,
              cap=DEFAULT_CAP, stats=None):
    """Factor the word across the subgroups, or None when out of reach.

    With seeds given (words h_i' in H_i whose K-image product matches the
    word's), the construction is the recursive cut-and-project argument
    and cannot fail.  Without seeds, a bounded search over the image
    subgroups looks for them first; returning None then means the search
    was exhausted or capped, not that the word is outside the product.
    """
    if stats is None:
        stats = FactorizeStats()
    n = len(subgroups)
    ctx = _build_context(alphabet, subgroups, word, primes)
    w = ctx.word
    if n == 1:
        if contains(ctx.pointed[0], w):
            return Factorization((w,))
        return None
    top = ctx.chain.top
    word_image = top.evaluate(w)
    if seeds is None:
        seeds = _search_seeds(ctx, word_image, cap, stats)
        if seeds is None:
            return None
    else:
        if len(seeds) != n:
            raise ValueError(f"need {n} seeds, got {len(seeds)}")
        seeds = tuple(free_reduce(s) for s in seeds)
        for i, s in enumerate(seeds):
            if not contains(ctx.pointed[i], s):
                raise ValueError(f"seed {i + 1} is not in its subgroup")
        img = top.identity
        for s in seeds:
            img = top.mult(img, top.evaluate(s))
        if img != word_image:
            raise ValueError("seed product does not match the word in the quotient")
    items = []
    for i in range(n - 1):
        path = ctx.gammas[i].trace(ctx.starts[i], seeds[i])
        if path is None or path.end != ctx.starts[i]:
            raise InternalInvariantError("seed does not read a loop")
        items.append(path)
    last = ctx.gammas[-1].trace(ctx.starts[-1], free_reduce(seeds[-1] + invert(w)))
    if last is None or last.end != ctx.ends[-1]:
        raise InternalInvariantError("attached path does not reach the free end")
    items.append(last)
    out = _pinch(ctx.chain, items, stats)
    factors = tuple(free_reduce(p.label()) for p in out[:-1])
    factors += (free_reduce(out[-1].label() + w),)
    _check_factorization(ctx, factors)
    return Factorization(factors)


def _check_factorization(ctx, factors):
    """Independent validation: membership per factor, product equals the word."""
    for i, f in enumerate(factors):
        if not contains(ctx.pointed[i], f):
            raise InternalInvariantError(f"factor {i + 1} left its subgroup")
    product = ()
    for f in factors:
        product += f
    if free_reduce(product) != ctx.word:
        raise InternalInvariantError("factor product differs from the word")


def _search_seeds(ctx, word_image, cap, stats):
    top = ctx.chain.top
    try:
        for gens in ctx.subgroups:
            image_subgroup_order(top, gens, cap)  # fail fast on hopeless images
        images = [image_subgroup(top, gens, cap) for gens in ctx.subgroups]
        mid = max(1, len(images) // 2)
        left = _product_with_witness(top, images[:mid], cap)
        right = _product_with_witness(top, images[mid:], cap)
    except CapExceeded:
        stats.capped_search = True
        return None
    for l, lwits in left.items():
        r = top.mult(top.inv(l), word_image)
        rwits = right.get(r)
        if rwits is not None:
            return lwits + rwits
    return None


def _pinch(chain, items, stats):
    """The recursive core: same endpoints, labels now multiplying to 1 in F.

    items are reduced paths, one per immersion, whose labels multiply to
    the identity at chain level m-1.  Works in the Cayley graph of level
    m-2: find the spine (m = 2) or cut at a vertex of the identity
    component shared with a middle span and recurse (m >= 3).
    """
    m = len(items)
    if m < 2:
        raise InternalInvariantError("pinch needs at least two paths")
    labels = [p.label() for p in items]
    total = ()
    for lab in labels:
        total += lab
    top = chain.level(m - 1)
    if top.evaluate(total) != top.identity:
        raise InternalInvariantError("pinch premise fails at the chain level")
    mid = chain.level(m - 2)
    etas = []
    cur = mid.identity
    for lab in labels:
        eta = trace_cayley(mid, cur, lab)
        etas.append(eta)
        cur = eta.end
    if cur != mid.identity:
        raise InternalInvariantError("tip-to-tail paths do not close up")

    if m == 2:
        spine = common_spine(span_of(etas[0]), span_of(etas[1]),
                             mid.identity, etas[0].end,
                             prime=getattr(top, "prime", None))
        if isinstance(spine, SpineCertificate):
            raise InternalInvariantError("no common spine despite the premise")
        stats.spines += 1
        gamma1 = project_path(spine, etas[0], items[0])
        beta2 = project_path(spine, etas[1].reversed(), items[1].reversed())
        gamma2 = beta2.reversed()
        out = [gamma1, gamma2]
    else:
        spans = [span_of(eta) for eta in etas]
        inter_edges = {k: e for k, e in spans[0].edges.items() if k in spans[-1].edges}
        inter_vertices = spans[0].vertices & spans[-1].vertices
        omega, omega_edges = _component(inter_vertices, inter_edges, mid.identity)
        j = None
        for cand in range(1, m - 1):
            if spans[cand].vertices & omega:
                j = cand
                break
        if j is None:
            raise InternalInvariantError("no middle span meets the identity component")
        g = min(spans[j].vertices & omega)
        stats.cuts += 1
        eta = _prefix_in(etas[0], g, omega_edges)
        if eta is not None:
            stats.prefix_spines += 1
        else:
            eta = _bfs_path(mid, omega, omega_edges, mid.identity, g)
            stats.bfs_spines += 1
            if eta is None:
                raise InternalInvariantError("cut vertex unreachable inside component")
        zeta = etas[j].prefix(etas[j].vertices.index(g))
        delta_j1 = project_path(zeta, etas[j], items[j])
        beta_first = project_path(eta, etas[0], items[0])
        beta_last = project_path(eta, etas[-1].reversed(), items[-1].reversed())
        delta_first = reduce_path(beta_first.reversed().concat(items[0]))
        delta_j2 = reduce_path(delta_j1.reversed().concat(items[j]))
        delta_last = reduce_path(items[-1].concat(beta_last))
        out_a = _pinch(chain, [delta_first] + items[1:j] + [delta_j1], stats)
        out_b = _pinch(chain, [delta_j2] + items[j + 1:-1] + [delta_last], stats)
        gamma_first = reduce_path(beta_first.concat(out_a[0]))
        gamma_j = reduce_path(out_a[-1].concat(out_b[0]))
        gamma_last = reduce_path(out_b[-1].concat(beta_last.reversed()))
        out = [gamma_first] + out_a[1:-1] + [gamma_j] + out_b[1:-1] + [gamma_last]

    joined = ()
    for p in out:
        joined += p.label()
    if free_reduce(joined) != ():
        raise InternalInvariantError("pinched labels do not cancel in F")
    for before, after in zip(items, out):
        if before.start != after.start or before.end != after.end:
            raise InternalInvariantError("pinch moved a path endpoint")
    return out


def _prefix_in(eta, g, allowed_edges):
    """First reduced prefix of eta ending at g with all edges allowed, or None."""
    for k, v in enumerate(eta.vertices):
        if v != g:
            continue
        if all(eta.step_key(i) in allowed_edges for i in range(k)):
            return eta.prefix(k)
    return None


def kernel_loop_word(h, level, cap=20000):
    """A nonempty subgroup word with trivial image at the chain level, or None.

    BFS over (graph vertex, image element) states from (base, identity);
    the first nonempty reduced cycle word is returned.  Used to scramble
    otherwise-true seeds in tests.
    """
    g = h.graph
    start = (h.base, level.identity)
    witness = {start: ()}
    queue = [start]
    letters = sorted(g.alphabet.letters(), key=letter_sort_key)
    while queue:
        state = queue.pop(0)
        v, k = state
        for l in letters:
            d = g.out_dart(v, l)
            if d is None:
                continue
            nxt = (g.dst(d), level.mult(k, level.gen(l)))
            if nxt not in witness:
                if len(witness) >= cap:
                    return None
                witness[nxt] = witness[state] + (l,)
                queue.append(nxt)
            else:
                cycle = free_reduce(witness[state] + (l,) + invert(witness[nxt]))
                if cycle:
                    return cycle
    return None
