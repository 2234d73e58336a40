from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import InputError
from src.core.hypergraph import (
    automorphism_count,
    build,
    clique_motif,
    complete_graph,
    copy_density,
    count_injective_copies,
    count_labeled_copies,
    count_unlabeled_copies,
    edge_copy_counts,
    edge_motif,
    empty_graph,
    format_hypergraph,
    motif,
    parse_hypergraph,
    parse_motif,
    random_hypergraph,
    read_hypergraph,
    triangle_motif,
    write_hypergraph,
)
from src.core.hypergraph.counting import triangle_count
from tests.strategies import hypergraphs


def brute_force_labeled(G, G0):
    total = 0
    for images in product(range(G.n), repeat=G0.v0):
        if all(G.has_edge([images[v - 1] for v in e]) for e in G0.edges0):
            total += 1
    return total


class TestBuild:
    """构造与规范化"""

    def test_complete_triangle(self):
        G = build(3, 2, [(0, 1), (1, 2), (0, 2)])
        assert G.num_edges == 3
        assert G == complete_graph(3)

    def test_empty_graph(self):
        G = build(4, 2, [])
        assert G.num_edges == 0
        assert G.n == 4

    def test_duplicate_edges_are_merged(self):
        assert build(3, 2, [(0, 1), (1, 0)]).num_edges == 1

    @pytest.mark.parametrize("edges", [[(0, 3)], [(0, 0)], [(0, 1, 2)]])
    def test_invalid_edges_raise(self, edges):
        with pytest.raises(InputError):
            build(3, 2, edges)

    def test_invalid_sizes_raise(self):
        with pytest.raises(InputError):
            build(0, 2, [])
        with pytest.raises(InputError):
            build(3, 0, [])

    def test_remove_edges(self):
        G = complete_graph(4).remove_edges([(1, 0)])
        assert G.num_edges == 5
        assert not G.has_edge((0, 1))


class TestCounting:
    """精确模体计数"""

    def test_edge_motif_on_k3(self):
        assert count_labeled_copies(complete_graph(3), edge_motif()) == 6

    def test_triangle_on_k4(self):
        assert count_labeled_copies(complete_graph(4), triangle_motif()) == 24

    def test_empty_graph_has_no_copies(self):
        assert count_labeled_copies(empty_graph(5), triangle_motif()) == 0

    def test_triangle_count_examples(self):
        assert triangle_count(complete_graph(3)) == 6
        assert triangle_count(build(3, 2, [(0, 1), (1, 2)])) == 0
        assert triangle_count(complete_graph(4)) == 24

    def test_isolated_motif_vertices_multiply_by_n(self):
        G = complete_graph(4)
        with_isolated = motif(2, 3, [(1, 2)])
        assert count_labeled_copies(G, with_isolated) == 4 * count_labeled_copies(G, edge_motif())

    def test_hypergraph_clique(self):
        G = complete_graph(5, d=3)
        assert count_labeled_copies(G, clique_motif(3, 4)) == 5 * 4 * 3 * 2

    def test_injective_and_unlabeled(self):
        G = complete_graph(5)
        path = parse_motif("3:1-2,2-3")
        # 同态允许 x1 = x3
        assert count_labeled_copies(G, path) == 5 * 4 * 4
        assert count_injective_copies(G, path) == 5 * 4 * 3
        assert automorphism_count(path) == 2
        assert count_unlabeled_copies(G, path) == 30
        assert count_unlabeled_copies(G, triangle_motif()) == 10

    def test_clique_automorphisms_are_factorial(self):
        assert automorphism_count(clique_motif(2, 12)) == factorial(12)
        assert automorphism_count(clique_motif(2, 40)) == factorial(40)
        assert automorphism_count(clique_motif(3, 9)) == factorial(9)

    def test_automorphisms_with_isolated_vertices(self):
        assert automorphism_count(motif(2, 6, [(1, 2)])) == 2 * factorial(4)
        assert automorphism_count(motif(2, 5, [], trivial=True)) == factorial(5)
        # 完全图去掉一条边：补图只有一条边
        almost = motif(2, 10, [e for e in permutations(range(1, 11), 2) if e[0] < e[1] and e != (1, 2)])
        assert automorphism_count(almost) == 2 * factorial(8)

    def test_large_irregular_motif_is_rejected(self):
        matching = motif(2, 14, [(2 * i + 1, 2 * i + 2) for i in range(7)])
        with pytest.raises(InputError):
            automorphism_count(matching)

    @given(hypergraphs(max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_automorphisms_match_brute_force(self, G):
        edges = {tuple(sorted((u + 1, v + 1))) for u, v in G.edges}
        G0 = motif(2, G.n, edges, trivial=True)
        expected = sum(1 for perm in permutations(range(1, G.n + 1))
                       if {tuple(sorted((perm[u - 1], perm[v - 1]))) for u, v in edges} == edges)
        assert automorphism_count(G0) == expected

    def test_copy_density(self):
        assert copy_density(complete_graph(3), edge_motif()) == Fraction(6, 9)

    def test_uniformity_mismatch(self):
        with pytest.raises(InputError):
            count_labeled_copies(complete_graph(4, d=3), triangle_motif())

    def test_counts_do_not_depend_on_threads(self):
        G = random_hypergraph(30, 2, 0.3, seed=5)
        counts = {count_labeled_copies(G, clique_motif(2, 4), threads=t) for t in (1, 2, 8)}
        assert len(counts) == 1

    def test_edge_copy_counts_sum(self):
        G = complete_graph(4)
        counts = edge_copy_counts(G, triangle_motif())
        # 每个带标号拷贝有 3 条边
        assert sum(counts.values()) == 3 * 24

    @given(hypergraphs(max_n=6))
    @settings(max_examples=60, deadline=None)
    def test_matches_brute_force(self, G):
        for G0 in (edge_motif(), triangle_motif(), parse_motif("3:1-2,2-3")):
            assert count_labeled_copies(G, G0) == brute_force_labeled(G, G0)

    @given(hypergraphs(max_n=5, d=3))
    @settings(max_examples=30, deadline=None)
    def test_single_edge_motif_counts_d_factorial_edges(self, G):
        assert count_labeled_copies(G, edge_motif(3)) == factorial(3) * G.num_edges

    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=200, deadline=None)
    def test_triangle_count_agrees_with_generic_counter(self, n, seed):
        G = random_hypergraph(n, 2, 0.5, seed)
        assert triangle_count(G) == count_labeled_copies(G, triangle_motif())

    @given(hypergraphs(min_n=2, max_n=6), st.data())
    @settings(max_examples=40, deadline=None)
    def test_edge_deletion_never_increases_counts(self, G, data):
        if not G.edges:
            return
        edge = data.draw(st.sampled_from(G.sorted_edges()))
        smaller = G.remove_edges([edge])
        for G0 in (edge_motif(), triangle_motif()):
            assert count_labeled_copies(smaller, G0) <= count_labeled_copies(G, G0)

    @given(hypergraphs(max_n=6), st.data())
    @settings(max_examples=40, deadline=None)
    def test_relabeling_preserves_counts(self, G, data):
        perm = data.draw(st.permutations(list(range(G.n))))
        H = G.relabel(perm)
        for G0 in (triangle_motif(), parse_motif("3:1-2,2-3")):
            assert count_labeled_copies(H, G0) == count_labeled_copies(G, G0)


class TestMotifParsing:
    """命令行模体描述"""

    def test_named_motifs(self):
        assert parse_motif("triangle") == triangle_motif()
        assert parse_motif("edge", 3) == edge_motif(3)
        assert parse_motif("k4") == clique_motif(2, 4)
        assert parse_motif("clique:3") == triangle_motif()

    def test_explicit_motif(self):
        G0 = parse_motif("4:1-2,3-4")
        assert G0.v0 == 4
        assert G0.sorted_edges() == [(1, 2), (3, 4)]

    @pytest.mark.parametrize("text", ["square", "x:1-2", "3:1-a"])
    def test_bad_motif(self, text):
        with pytest.raises(InputError):
            parse_motif(text)

    def test_empty_motif_requires_flag(self):
        with pytest.raises(InputError):
            motif(2, 2, [])
        assert motif(2, 2, [], trivial=True).num_edges == 0


class TestRandom:
    """可复现的随机超图"""

    def test_extreme_probabilities(self):
        assert random_hypergraph(5, 2, 0.0, seed=1).num_edges == 0
        assert random_hypergraph(5, 2, 1.0, seed=1) == complete_graph(5)

    def test_same_seed_same_graph(self):
        assert random_hypergraph(6, 3, 0.5, seed=42) == random_hypergraph(6, 3, 0.5, seed=42)

    def test_bad_parameters(self):
        with pytest.raises(InputError):
            random_hypergraph(5, 2, 1.5, seed=1)
        with pytest.raises(InputError):
            random_hypergraph(5, 2, 0.5, seed=-1)


class TestIo:
    """文本文件格式"""

    def test_write_then_read(self, tmp_path):
        G = random_hypergraph(8, 3, 0.4, seed=3)
        path = str(tmp_path / "g.hg")
        write_hypergraph(G, path)
        assert read_hypergraph(path) == G

    def test_comments_and_blank_lines(self):
        text = "# 三角形\n2 3\n\n0 1  # 第一条边\n1 2\n0 2\n"
        assert parse_hypergraph(text) == complete_graph(3)

    def test_canonical_format(self):
        assert format_hypergraph(build(3, 2, [(2, 1), (0, 1)])) == "2 3\n0 1\n1 2\n"

    @pytest.mark.parametrize("text, line", [
        ("2 3\n0 1\n0 5\n", 3),
        ("2 3\n0 x\n", 2),
        ("2 3\n0 1 2\n", 2),
        ("2\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(InputError) as info:
            parse_hypergraph(text)
        assert info.value.position == line

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            read_hypergraph(str(tmp_path / "missing.hg"))
