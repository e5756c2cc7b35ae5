import random

import pytest

from prodsep.graphs import LabeledGraph, reduce_path
from prodsep.stallings import build_wedge, stallings_graph
from prodsep.words import Alphabet

A = Alphabet("xy")


def rose(alphabet):
    return LabeledGraph(alphabet, 1, [(0, 0, x) for x in alphabet.positive_letters()])


def random_graph(rng, alphabet, max_words=3, max_len=6, extra_edges=2):
    """A connected labeled graph: a wedge of random words plus chords."""
    letters = alphabet.letters()
    words = [tuple(rng.choice(letters) for _ in range(rng.randint(1, max_len)))
             for _ in range(rng.randint(1, max_words))]
    g = build_wedge(alphabet, words)
    edges = list(g.geometric_edges())
    for _ in range(rng.randint(0, extra_edges)):
        edges.append((rng.randrange(g.num_vertices), rng.randrange(g.num_vertices),
                      rng.choice(alphabet.positive_letters())))
    return LabeledGraph(alphabet, g.num_vertices, edges)


class TestStructure:
    def test_reverse_involution(self):
        g = rose(A)
        for e in range(g.num_darts):
            assert g.reverse(g.reverse(e)) == e
            assert g.reverse(e) != e
            assert g.src(g.reverse(e)) == g.dst(e)
            assert g.label(g.reverse(e)) == -g.label(e)

    def test_edge_validation(self):
        with pytest.raises(ValueError):
            LabeledGraph(A, 1, [(0, 1, 1)])
        with pytest.raises(ValueError):
            LabeledGraph(A, 1, [(0, 0, 3)])


class TestAdmissiblePairs:
    def test_two_edges_same_source_same_label(self):
        g = LabeledGraph(A, 3, [(0, 1, 1), (0, 2, 1)])
        pair = g.find_admissible_pair()
        assert pair == (0, 2)

    def test_single_loop_has_no_pair(self):
        # the loop and its reverse carry different labels x vs x^-1
        g = LabeledGraph(A, 1, [(0, 0, 1)])
        assert g.find_admissible_pair() is None

    def test_rose_is_folded(self):
        assert rose(A).find_admissible_pair() is None


class TestFold:
    def test_common_source_distinct_targets(self):
        g = LabeledGraph(A, 3, [(0, 1, 1), (0, 2, 1)])
        folded = g.fold((0, 2))
        assert folded.num_vertices == 2
        assert folded.geometric_edges() == ((0, 1, 1),)

    def test_parallel_edges_keep_vertices(self):
        g = LabeledGraph(A, 2, [(0, 1, 1), (0, 1, 1)])
        folded = g.fold((0, 2))
        assert folded.num_vertices == 2
        assert folded.geometric_edges() == ((0, 1, 1),)

    def test_common_terminal_via_reversed_pair(self):
        # identifying edges with a common terminal vertex happens through
        # the reversed pair, as in the final fold of the running example
        g = LabeledGraph(A, 3, [(1, 0, 1), (2, 0, 1)])
        pair = g.find_admissible_pair()
        e1, e2 = pair
        assert g.label(e1) == -1
        folded = g.fold(pair)
        assert folded.num_vertices == 2
        assert folded.num_geometric_edges == 1

    def test_rejects_non_admissible(self):
        g = LabeledGraph(A, 3, [(0, 1, 1), (0, 2, 2)])
        with pytest.raises(ValueError):
            g.fold((0, 2))
        with pytest.raises(ValueError):
            g.fold((0, 1))  # a dart and its own reverse

    def test_rank_never_increases(self):
        rng = random.Random(7)
        for _ in range(50):
            g = random_graph(rng, A)
            pair = g.find_admissible_pair()
            while pair is not None:
                folded = g.fold(pair)
                assert folded.rank() <= g.rank()
                # rank is preserved exactly when the endpoints were distinct
                distinct = g.dst(pair[0]) != g.dst(pair[1])
                assert (folded.rank() == g.rank()) == distinct
                g = folded
                pair = g.find_admissible_pair()


class TestFoldAll:
    def test_running_example(self):
        g = stallings_graph(A, [A.parse("xyXY"), A.parse("yxY")])
        assert g.graph.num_vertices == 2
        assert g.graph.num_geometric_edges == 3

    def test_fixpoint(self):
        g = rose(A)
        assert g.fold_all().geometric_edges() == g.geometric_edges()

    def test_wedge_of_two_equal_loops(self):
        g = build_wedge(A, [(1,), (1,)])
        folded = g.fold_all()
        assert folded.num_vertices == 1
        assert folded.geometric_edges() == ((0, 0, 1),)

    def test_confluence_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(60):
            g = random_graph(rng, A)
            a = g.fold_all(policy="least")
            b = g.fold_all(policy="greatest")
            assert a.canonical_key() == b.canonical_key()


class TestImmersionCovering:
    def test_rose_is_covering(self):
        assert rose(A).is_covering()
        assert rose(A).is_immersion()

    def test_commutator_graph_immersion_not_covering(self):
        g = stallings_graph(A, [A.parse("xyXY"), A.parse("yy")]).graph
        assert g.is_immersion()
        assert not g.is_covering()

    def test_unfolded_graph_is_neither(self):
        g = LabeledGraph(A, 3, [(0, 1, 1), (0, 2, 1)])
        assert not g.is_immersion()
        assert not g.is_covering()

    def test_covering_implies_immersion_randomized(self):
        rng = random.Random(3)
        for _ in range(40):
            g = random_graph(rng, A).fold_all()
            if g.is_covering():
                assert g.is_immersion()


class TestTrace:
    def test_rose_reads_everything(self):
        g = rose(A)
        w = A.parse("xyXYxx")
        path = g.trace(0, w)
        assert path.label() == w
        assert len(path) == len(w)
        assert path.end == 0

    def test_generator_reads_loop(self):
        h = stallings_graph(A, [A.parse("xyXY"), A.parse("yy")])
        path = h.graph.trace(h.base, A.parse("xyXY"))
        assert path is not None and path.end == h.base

    def test_attached_word_is_not_loop(self):
        h = stallings_graph(A, [A.parse("xyXY"), A.parse("yy")])
        path = h.graph.trace(h.base, A.parse("xyX"))
        assert path is not None and path.end != h.base

    def test_untraceable_returns_none(self):
        g = LabeledGraph(A, 1, [(0, 0, 1)])
        assert g.trace(0, A.parse("y")) is None

    def test_requires_immersion(self):
        g = LabeledGraph(A, 3, [(0, 1, 1), (0, 2, 1)])
        with pytest.raises(ValueError):
            g.trace(0, A.parse("x"))


class TestPaths:
    def test_reverse_and_concat(self):
        g = rose(A)
        p = g.trace(0, A.parse("xy"))
        assert p.reversed().label() == A.parse("YX")
        assert p.concat(p.reversed()).label() == A.parse("xyYX")

    def test_reduce_path(self):
        g = rose(A)
        p = g.trace(0, A.parse("xyYX"))
        r = reduce_path(p)
        assert r.label() == ()
        assert (r.start, r.end) == (p.start, p.end)


class TestCanonicalForm:
    def test_pointed_isomorphism_detects_relabeling(self):
        g1 = LabeledGraph(A, 2, [(0, 0, 1), (0, 1, 2), (1, 1, 1)])
        g2 = LabeledGraph(A, 2, [(1, 1, 1), (1, 0, 2), (0, 0, 1)])
        assert g1.canonical_form(0) == g2.canonical_form(1)
        assert g1.canonical_form(0) != g2.canonical_form(0)

    def test_dot_is_deterministic(self):
        h = stallings_graph(A, [A.parse("xyXY"), A.parse("yxY")])
        assert h.graph.to_dot(base=h.base) == h.graph.to_dot(base=h.base)
        assert "doublecircle" in h.graph.to_dot(base=h.base)
