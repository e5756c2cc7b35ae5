import random

import pytest

from prodsep.errors import CapExceeded
from prodsep.extensions import iterated_extension
from prodsep.groups import XGroup
from prodsep.rational import member_product
from prodsep.separators import (
    FactorizeStats,
    SpineCertificate,
    _build_context,
    common_spine,
    factorize,
    hall_separator,
    image_subgroup,
    kernel_loop_word,
    product_separator,
    project_path,
    span_of,
    trace_cayley,
)
from prodsep.stallings import contains, stallings_graph
from prodsep.words import Alphabet, free_reduce, invert

A = Alphabet("xy")
KLEIN = XGroup(A, [(1, 0, 2, 3), (0, 1, 3, 2)])


def random_reduced(rng, lo, hi):
    letters = A.letters()
    return free_reduce(tuple(rng.choice(letters) for _ in range(rng.randint(lo, hi))))


def random_gens(rng, max_gens=3, max_len=6):
    gens = [random_reduced(rng, 1, max_len) for _ in range(rng.randint(1, max_gens))]
    return [g for g in gens if g] or [(1,)]


def subgroup_word(rng, gens, factors=3):
    w = ()
    for _ in range(rng.randint(1, factors)):
        g = rng.choice(gens)
        w += g if rng.random() < 0.5 else invert(g)
    return free_reduce(w)


class TestHallSeparator:
    def test_known_instance(self):
        wit = hall_separator(A, [A.parse("xyXY"), A.parse("yy")], A.parse("xyX"))
        assert wit.excluded
        assert wit.word_image[wit.base_vertex] != wit.base_vertex
        for img in wit.generator_images[0]:
            assert img[wit.base_vertex] == wit.base_vertex

    def test_rank_one_instance(self):
        wit = hall_separator(A, [A.parse("x")], A.parse("y"))
        assert wit.group.carrier == 2
        assert wit.word_image[wit.base_vertex] != wit.base_vertex

    def test_rejects_member_word(self):
        with pytest.raises(ValueError):
            hall_separator(A, [A.parse("x"), A.parse("y")], A.parse("xy"))

    def test_random_instances(self):
        rng = random.Random(201)
        done = 0
        while done < 60:
            gens = random_gens(rng)
            h = stallings_graph(A, gens)
            w = random_reduced(rng, 1, 8)
            if not w or contains(h, w):
                continue
            wit = hall_separator(A, gens, w)
            assert wit.word_image[wit.base_vertex] != wit.base_vertex
            for img in wit.generator_images[0]:
                assert img[wit.base_vertex] == wit.base_vertex
            done += 1


class TestProjectPath:
    def setup_method(self):
        self.level = iterated_extension(KLEIN, []).top
        self.h = stallings_graph(A, [A.parse("xyXY"), A.parse("yy")])

    def test_eta_equal_eta_prime_gives_gamma_prime(self):
        w = A.parse("yy")
        eta = trace_cayley(self.level, self.level.identity, w)
        gamma_prime = self.h.graph.trace(self.h.base, w)
        out = project_path(eta, eta, gamma_prime)
        assert out.darts == gamma_prime.darts

    def test_prefix_projects_to_prefix(self):
        w = A.parse("xyXY")
        eta_prime = trace_cayley(self.level, self.level.identity, w)
        eta = eta_prime.prefix(2)
        gamma_prime = self.h.graph.trace(self.h.base, w)
        out = project_path(eta, eta_prime, gamma_prime)
        assert out.darts == gamma_prime.darts[:2]

    def test_backtracking_spine_projects(self):
        # eta revisits edges of eta_prime in a different order
        w = A.parse("yy")
        eta_prime = trace_cayley(self.level, self.level.identity, w)
        eta = trace_cayley(self.level, self.level.identity, A.parse("y"))
        gamma_prime = self.h.graph.trace(self.h.base, w)
        out = project_path(eta, eta_prime, gamma_prime)
        assert out.label() == A.parse("y")
        assert out.start == gamma_prime.start

    def test_precondition_violations_reported_individually(self):
        w = A.parse("yy")
        eta_prime = trace_cayley(self.level, self.level.identity, w)
        gamma_prime = self.h.graph.trace(self.h.base, w)
        other = trace_cayley(self.level, KLEIN.perm(1), A.parse("y"))
        with pytest.raises(ValueError, match="share their start"):
            project_path(other, eta_prime, gamma_prime)
        bad = trace_cayley(self.level, self.level.identity, A.parse("xX"))
        with pytest.raises(ValueError, match="eta must be reduced"):
            project_path(bad, eta_prime, gamma_prime)
        stray = trace_cayley(self.level, self.level.identity, A.parse("xx"))
        with pytest.raises(ValueError, match="traversed"):
            project_path(stray, eta_prime, gamma_prime)
        short = self.h.graph.trace(self.h.base, A.parse("y"))
        with pytest.raises(ValueError, match="same label"):
            project_path(eta_prime, eta_prime, short)


class TestCommonSpine:
    def test_identical_spans_give_the_path(self):
        level = iterated_extension(KLEIN, []).top
        p = trace_cayley(level, level.identity, A.parse("xy"))
        spine = common_spine(span_of(p), span_of(p), p.start, p.end)
        assert spine.word == A.parse("xy")

    def test_disjoint_interior_bigon_yields_counting_certificate(self):
        # xy and yx join 1 to the same Klein element along disjoint interiors
        level = iterated_extension(KLEIN, []).top
        p1 = trace_cayley(level, level.identity, A.parse("xy"))
        p2 = trace_cayley(level, level.identity, A.parse("yx"))
        assert p1.end == p2.end
        cert = common_spine(span_of(p1), span_of(p2), p1.start, p1.end, prime=2)
        assert isinstance(cert, SpineCertificate)
        assert len(cert.out_indices) - len(cert.in_indices) == 1
        assert cert.witness_edge is not None
        assert cert.witness_edge not in span_of(p2).edges

    def test_spine_within_overlapping_spans(self):
        level = iterated_extension(KLEIN, []).top
        p1 = trace_cayley(level, level.identity, A.parse("xxy"))
        p2 = trace_cayley(level, level.identity, A.parse("xxy"))
        spine = common_spine(span_of(p1), span_of(p2), p1.start, p1.end)
        assert spine.end == p1.end


class TestImageSubgroup:
    def test_no_generators(self):
        level = iterated_extension(KLEIN, []).top
        img = image_subgroup(level, [])
        assert img == {level.identity: ()}

    def test_witnesses_reevaluate(self):
        rng = random.Random(211)
        level = iterated_extension(KLEIN, [2]).top
        gens = [A.parse("xx"), A.parse("xyX")]
        img = image_subgroup(level, gens)
        for elem, word in img.items():
            assert level.evaluate(word) == elem
        # witnesses stay inside the subgroup
        h = stallings_graph(A, gens)
        for word in img.values():
            assert contains(h, word)

    def test_trivial_image_collapses(self):
        group = XGroup(A, [(1, 0), (0, 1)])  # x swap, y trivial
        level = iterated_extension(group, []).top
        img = image_subgroup(level, [A.parse("xx")])
        assert set(img) == {level.identity}

    def test_cap(self):
        level = iterated_extension(KLEIN, [2]).top
        with pytest.raises(CapExceeded):
            image_subgroup(level, [A.parse("x"), A.parse("y")], cap=4)


class TestProductSeparator:
    def test_non_member_excluded(self):
        wit = product_separator(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xy"))
        assert wit.excluded is True
        assert not wit.partial

    def test_member_not_excluded(self):
        wit = product_separator(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xxyy"))
        assert wit.excluded is False

    def test_single_factor_reduces_to_hall(self):
        wit = product_separator(A, [[A.parse("xyXY"), A.parse("yy")]], A.parse("xyX"))
        assert wit.excluded is True
        assert wit.primes == ()

    def test_partial_when_capped(self):
        wit = product_separator(A, [[A.parse("x"), A.parse("y")], [A.parse("yy")]],
                                A.parse("xy"), cap=8)
        assert wit.partial
        assert wit.excluded is None

    def test_prime_list_length_enforced(self):
        with pytest.raises(ValueError):
            product_separator(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xy"),
                              primes=(2, 2))


class TestFactorize:
    def test_single_subgroup(self):
        f = factorize(A, [[A.parse("xx"), A.parse("y")]], A.parse("xxy"))
        assert f.factors == (A.parse("xxy"),)
        assert factorize(A, [[A.parse("xx")]], A.parse("x")) is None

    def test_seeds_already_multiplying_to_word(self):
        f = factorize(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xxyy"),
                      seeds=[A.parse("xx"), A.parse("yy")])
        assert f.factors == (A.parse("xx"), A.parse("yy"))

    def test_invalid_seeds_rejected(self):
        with pytest.raises(ValueError, match="not in its subgroup"):
            factorize(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xxyy"),
                      seeds=[A.parse("x"), A.parse("yy")])
        with pytest.raises(ValueError, match="does not match"):
            factorize(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xxyy"),
                      seeds=[A.parse("xxxx"), A.parse("yy")])

    def test_scrambled_seeds_still_factor(self):
        H1 = [A.parse("xyXY"), A.parse("yy")]
        H2 = [A.parse("xx")]
        h1 = free_reduce(A.parse("xyXY") + A.parse("yy"))
        h2 = A.parse("xx")
        w = free_reduce(h1 + h2)
        ctx = _build_context(A, [H1, H2], w, None)
        u = kernel_loop_word(ctx.pointed[0], ctx.chain.top)
        assert u is not None and contains(ctx.pointed[0], u)
        stats = FactorizeStats()
        f = factorize(A, [H1, H2], w, seeds=[free_reduce(h1 + u), h2], stats=stats)
        assert stats.spines >= 1
        product = ()
        for x in f.factors:
            product += x
        assert free_reduce(product) == w
        assert contains(ctx.pointed[0], f.factors[0])
        assert contains(ctx.pointed[1], f.factors[1])

    def test_search_finds_seeds(self):
        f = factorize(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xxyy"))
        assert f is not None

    def test_non_member_returns_none(self):
        assert factorize(A, [[A.parse("xx")], [A.parse("yy")]], A.parse("xy")) is None

    def test_three_factors_with_cut(self):
        stats = FactorizeStats()
        H = [[A.parse("xx"), A.parse("y")], [A.parse("yy"), A.parse("x")],
             [A.parse("x"), A.parse("y")]]
        parts = [A.parse("xxy"), A.parse("xyy"), A.parse("yx")]
        w = free_reduce(parts[0] + parts[1] + parts[2])
        f = factorize(A, H, w, seeds=parts, stats=stats)
        assert stats.cuts >= 1
        product = ()
        for x in f.factors:
            product += x
        assert free_reduce(product) == w
        for gens, factor in zip(H, f.factors):
            assert contains(stallings_graph(A, gens), factor)

    def test_quotient_monotonicity(self):
        # a found factorization maps into the image product in the chain
        H = [[A.parse("xx")], [A.parse("yy")]]
        w = A.parse("xxyy")
        ctx = _build_context(A, H, w, None)
        f = factorize(A, H, w)
        top = ctx.chain.top
        img = top.identity
        for factor in f.factors:
            img = top.mult(img, top.evaluate(factor))
        assert img == top.evaluate(w)

    def test_oracle_agreement_randomized(self):
        rng = random.Random(229)
        agree = 0
        while agree < 15:
            g1 = random_gens(rng, max_gens=2, max_len=4)
            g2 = random_gens(rng, max_gens=2, max_len=4)
            w = random_reduced(rng, 0, 6)
            hs = [stallings_graph(A, g1), stallings_graph(A, g2)]
            try:
                f = factorize(A, [g1, g2], w, cap=30000)
            except CapExceeded:
                continue
            if f is not None:
                assert member_product(hs, w)
            else:
                # search-капped runs are inconclusive; exhausted ones are not
                stats = FactorizeStats()
                f2 = factorize(A, [g1, g2], w, cap=30000, stats=stats)
                if not stats.capped_search:
                    assert not member_product(hs, w)
            agree += 1


class TestKernelLoopWord:
    def test_kernel_word_is_in_subgroup_with_trivial_image(self):
        gens = [A.parse("xyXY"), A.parse("yy")]
        ctx = _build_context(A, [gens, [A.parse("xx")]], A.parse("xx"), None)
        u = kernel_loop_word(ctx.pointed[0], ctx.chain.top)
        assert u
        assert contains(ctx.pointed[0], u)
        assert ctx.chain.top.evaluate(u) == ctx.chain.top.identity

    def test_trivial_subgroup_has_none(self):
        ctx = _build_context(A, [[()], [A.parse("x")]], A.parse("x"), None)
        assert kernel_loop_word(ctx.pointed[0], ctx.chain.top) is None


class TestImageSubgroupOrder:
    def test_matches_enumeration_on_small_cases(self):
        from prodsep.separators import image_subgroup_order
        rng = random.Random(241)
        for _ in range(25):
            gens = random_gens(rng, max_gens=2, max_len=4)
            chain = iterated_extension(KLEIN, [2])
            try:
                order = image_subgroup_order(chain.top, gens, cap=50000)
            except CapExceeded:
                continue
            assert order == len(image_subgroup(chain.top, gens, cap=50000))

    def test_base_level_matches(self):
        from prodsep.separators import image_subgroup_order
        level = iterated_extension(KLEIN, []).top
        gens = [A.parse("xx"), A.parse("xyX")]
        assert image_subgroup_order(level, gens) == len(image_subgroup(level, gens))

    def test_cap_raises_before_enumerating(self):
        from prodsep.separators import image_subgroup_order
        chain = iterated_extension(KLEIN, [2])
        with pytest.raises(CapExceeded):
            image_subgroup_order(chain.top, [A.parse("x"), A.parse("y")], cap=100)

    def test_two_level_chain(self):
        from prodsep.separators import image_subgroup_order
        z2 = XGroup(Alphabet("x"), [(1, 0)])
        chain = iterated_extension(z2, [2, 2])
        gens = [Alphabet("x").parse("x")]
        order = image_subgroup_order(chain.top, gens, cap=10 ** 6)
        assert order == len(image_subgroup(chain.top, gens, cap=10 ** 6))


def test_three_factor_scramble_stress_exercises_both_eta_branches():
    # across a seeded batch, the cut vertex is sometimes reachable by a
    # prefix of the first Cayley path and sometimes only by a search
    # inside the identity component; both constructions must verify
    rng = random.Random(777)
    pool = [["x", "y"], ["xx", "y", "xyX"], ["yy", "x", "yxY"],
            ["xx", "yy", "xy"], ["xx", "yy", "xY"]]
    total = FactorizeStats()
    for _ in range(60):
        subgroups = [[A.parse(t) for t in rng.choice(pool)] for _ in range(3)]
        parts = [subgroup_word(rng, gens, 3) for gens in subgroups]
        w = free_reduce(parts[0] + parts[1] + parts[2])
        ctx = _build_context(A, subgroups, w, None)
        u = kernel_loop_word(ctx.pointed[0], ctx.chain.top, cap=3000)
        seeds = [free_reduce(parts[0] + u) if u else parts[0], parts[1], parts[2]]
        stats = FactorizeStats()
        assert factorize(A, subgroups, w, seeds=seeds, stats=stats) is not None
        total.cuts += stats.cuts
        total.prefix_spines += stats.prefix_spines
        total.bfs_spines += stats.bfs_spines
    assert total.cuts == 60
    assert total.prefix_spines > 0
    assert total.bfs_spines > 0
