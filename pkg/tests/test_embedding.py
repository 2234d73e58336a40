import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.core.embedding import (
    FurstenbergInstance,
    IndexPermutation,
    RegularEvent,
    ap_event,
    embed_prob,
    embed_prob_exact,
    embed_prob_mc,
    format_event,
    furstenberg_prob,
    parse_event,
    permute_event,
    shift_event,
)
from src.core.embedding.events import And, Leaf, Not, Or, ShiftLeaf, make_and, make_leaf, make_or
from src.core.errors import InputError
from src.core.hypergraph import complete_graph, empty_graph, random_hypergraph
from src.utils.config_manager import ConfigManager
from src.utils.rng import PURPOSE_TEST_DATA, stream
from tests.strategies import brute_force_embed


def holds(node, assignment, G):
    """独立于 numpy 路径的逐赋值求值"""
    if isinstance(node, Leaf):
        return G.has_edge([assignment[i - 1] for i in node.indices])
    if isinstance(node, Not):
        return not holds(node.child, assignment, G)
    if isinstance(node, And):
        return all(holds(c, assignment, G) for c in node.children)
    return any(holds(c, assignment, G) for c in node.children)


def random_formula(rng, K, depth=3, leaf=None):
    if depth == 0 or rng.random() < 0.3:
        if leaf is not None:
            return leaf(rng)
        i, j = rng.choice(K, size=2, replace=False) + 1
        return make_leaf([int(i), int(j)])
    kind = rng.integers(0, 3)
    if kind == 0:
        return Not(random_formula(rng, K, depth - 1, leaf))
    children = [random_formula(rng, K, depth - 1, leaf) for _ in range(int(rng.integers(2, 4)))]
    return make_and(children) if kind == 1 else make_or(children)


def random_case(case):
    rng = stream(2024, PURPOSE_TEST_DATA, case)
    n = int(rng.integers(1, 7))
    K = int(rng.integers(2, 5))
    G = random_hypergraph(n, 2, float(rng.random()), seed=case)
    return G, RegularEvent(random_formula(rng, K)), rng


def shift_formula(rng):
    def leaf(r):
        return ShiftLeaf(int(r.integers(-3, 4)))
    return RegularEvent(random_formula(rng, 1, leaf=leaf))


class TestEventLanguage:
    """事件小语言的解析与格式化"""

    def test_leaf_indices_are_sorted(self):
        assert parse_event("A(2,1)") == parse_event("A(1,2)")
        assert format_event(parse_event("A(3, 1)")) == "A(1,3)"

    def test_precedence(self):
        E = parse_event("A(1,2) | A(2,3) & !A(1,3)")
        assert isinstance(E.formula, Or)
        assert format_event(E) == "A(1,2)|A(2,3)&!A(1,3)"
        assert format_event(parse_event("!(A(1,2) | A(2,3))")) == "!(A(1,2)|A(2,3))"
        assert format_event(parse_event("(A(1,2)|A(2,3))&A(3,4)")) == "(A(1,2)|A(2,3))&A(3,4)"

    def test_arity_and_used_indices(self):
        E = parse_event("A(1,5) & A(2,5)")
        assert E.arity == 5
        assert E.used_indices() == [1, 2, 5]
        assert E.leaf_arity == 2

    def test_furstenberg_leaves(self):
        E = parse_event("A[0] & A[-2]")
        assert E.offsets() == [-2, 0]
        assert E.arity == 0

    @pytest.mark.parametrize("text, position", [
        ("A(1,2", 5),
        ("A(1,2) & B", 9),
        ("A(0,1)", 2),
        ("A(1,2) A(2,3)", 7),
    ])
    def test_syntax_errors_report_position(self, text, position):
        with pytest.raises(InputError) as info:
            parse_event(text)
        assert info.value.position == position

    @pytest.mark.parametrize("text", ["A(1,2) & A[0]", "A(1,2) & A(1,2,3)", "A(1,1)", ""])
    def test_invalid_events(self, text):
        with pytest.raises(InputError):
            parse_event(text)

    def test_permutation_examples(self):
        E = parse_event("A(1,3)")
        assert permute_event(E, IndexPermutation.identity()) == E
        assert permute_event(E, IndexPermutation.swap(1, 2)) == parse_event("A(2,3)")
        assert permute_event(parse_event("A(1,2)"), IndexPermutation.swap(1, 2)) == parse_event("A(1,2)")

    def test_not_a_permutation(self):
        with pytest.raises(InputError):
            IndexPermutation.from_mapping({1: 2, 2: 3})

    def test_shift_examples(self):
        assert shift_event(parse_event("A[0]"), 3) == parse_event("A[3]")
        assert format_event(shift_event(parse_event("A[0] & A[2]"), -2)) == "A[-2]&A[0]"
        E = parse_event("A[1] | !A[4]")
        assert shift_event(shift_event(E, 5), -5) == E

    def test_shift_rejects_graph_events(self):
        with pytest.raises(InputError):
            shift_event(parse_event("A(1,2)"), 1)


class TestExactEmbedding:
    """精确枚举"""

    def test_examples(self):
        K3 = complete_graph(3)
        assert embed_prob_exact(K3, parse_event("A(1,2)")) == Fraction(2, 3)
        assert embed_prob_exact(K3, parse_event("A(1,2) & A(2,3) & A(3,1)")) == Fraction(2, 9)
        assert embed_prob_exact(empty_graph(4), parse_event("A(1,2)")) == 0

    @pytest.mark.parametrize("n", [2, 5, 9])
    def test_collisions_on_complete_graph(self, n):
        assert embed_prob_exact(complete_graph(n), parse_event("A(1,2)")) == Fraction(n - 1, n)

    def test_hypergraph_leaves(self):
        G = complete_graph(4, d=3)
        assert embed_prob_exact(G, parse_event("A(1,2,3)")) == Fraction(4 * 3 * 2, 4 ** 3)

    def test_arity_mismatch(self):
        with pytest.raises(InputError):
            embed_prob_exact(complete_graph(4, d=3), parse_event("A(1,2)"))

    def test_enumeration_cap(self):
        E = parse_event("A(1,7)")
        with pytest.raises(InputError):
            embed_prob_exact(complete_graph(3), E)
        assert embed_prob_exact(complete_graph(3), E, cap=7) == Fraction(2, 3)

    def test_unused_indices_do_not_matter(self):
        G = random_hypergraph(5, 2, 0.5, seed=3)
        assert embed_prob_exact(G, parse_event("A(1,4)")) == embed_prob_exact(G, parse_event("A(1,2)"))

    def test_matches_brute_force(self):
        for case in range(200):
            G, E, _ = random_case(case)
            expected = brute_force_embed(G, lambda a: holds(E.formula, a, G), E.arity)
            assert embed_prob_exact(G, E) == expected, format_event(E)

    def test_permutation_invariance(self):
        for case in range(100):
            G, E, rng = random_case(1000 + case)
            K = E.arity
            sigma = IndexPermutation.from_images([int(v) + 1 for v in rng.permutation(K)])
            assert embed_prob_exact(G, permute_event(E, sigma)) == embed_prob_exact(G, E)

    def test_block_size_does_not_change_the_value(self):
        G = random_hypergraph(7, 2, 0.5, seed=4)
        E = parse_event("A(1,2) & A(2,3) & !A(3,4)")
        expected = embed_prob_exact(G, E)
        ConfigManager().save_settings({"embedding": {"mc_block_size": 5}})
        assert embed_prob_exact(G, E, threads=3) == expected
        assert expected == brute_force_embed(G, lambda a: holds(E.formula, a, G), E.arity)


class TestMonteCarlo:
    """蒙特卡洛估计"""

    def test_tautology_is_exactly_one(self):
        est = embed_prob_mc(complete_graph(4), parse_event("A(1,2) | !A(1,2)"), 1000, seed=1)
        assert est.estimate == 1.0
        assert est.stderr == 0.0

    def test_triangle_on_k3(self):
        est = embed_prob_mc(complete_graph(3), parse_event("A(1,2)&A(2,3)&A(1,3)"), 100_000, seed=7)
        assert abs(est.estimate - 2 / 9) <= 4 * est.stderr

    def test_same_seed_same_estimate(self):
        G = random_hypergraph(20, 2, 0.3, seed=2)
        E = parse_event("A(1,2) & A(2,3)")
        assert embed_prob_mc(G, E, 5000, seed=11) == embed_prob_mc(G, E, 5000, seed=11)

    def test_threads_do_not_change_the_estimate(self):
        G = random_hypergraph(20, 2, 0.3, seed=2)
        E = parse_event("A(1,2) & A(2,3) & A(1,3)")
        results = {embed_prob_mc(G, E, 20_000, seed=5, threads=t, block_size=1000) for t in (1, 2, 8)}
        assert len(results) == 1

    def test_seed_required(self):
        with pytest.raises(InputError):
            embed_prob_mc(complete_graph(3), parse_event("A(1,2)"), 10, seed=None)
        with pytest.raises(InputError):
            embed_prob(complete_graph(3), parse_event("A(1,2)"), mode="mc")

    def test_within_four_standard_errors_of_exact(self):
        samples = 4000
        for case in range(200):
            G, E, _ = random_case(case)
            p = embed_prob_exact(G, E)
            est = embed_prob_mc(G, E, samples, seed=case)
            se = math.sqrt(float(p) * (1 - float(p)) / samples)
            assert abs(est.estimate - float(p)) <= 4 * se + 1e-12, format_event(E)


class TestFurstenberg:
    """Furstenberg 嵌入"""

    def test_examples(self):
        inst = FurstenbergInstance.of(6, [0, 1], 3)
        assert inst.L == 2
        assert furstenberg_prob(inst, parse_event("A[0] & A[1]")) == Fraction(1, 12)
        full = FurstenbergInstance.of(7, range(7), 2)
        assert furstenberg_prob(full, parse_event("A[0] & A[3] | A[-1]")) == 1

    def test_huge_offsets_reduce_mod_n(self):
        inst = FurstenbergInstance.of(5, [0, 2], 1)
        for offset in (10 ** 20, -(10 ** 20) - 3, 2 ** 70):
            far = parse_event(f"A[{offset}]")
            near = parse_event(f"A[{offset % 5}]")
            assert furstenberg_prob(inst, far) == furstenberg_prob(inst, near)
        pair = parse_event(f"A[0] & A[{10 ** 20}]")
        assert furstenberg_prob(inst, pair) == furstenberg_prob(inst, parse_event("A[0] & A[0]"))

    def test_rejects_graph_events(self):
        with pytest.raises(InputError):
            furstenberg_prob(FurstenbergInstance.of(5, [1], 1), parse_event("A(1,2)"))

    def test_bad_instances(self):
        with pytest.raises(InputError):
            FurstenbergInstance.of(5, [1], 6)
        with pytest.raises(InputError):
            FurstenbergInstance.of(5, [5], 1)

    def test_identities_on_random_instances(self):
        for case in range(100):
            rng = stream(77, PURPOSE_TEST_DATA, case)
            N = int(rng.integers(1, 51))
            m = int(rng.integers(1, N + 1))
            A = [int(a) for a in range(N) if rng.random() < 0.4]
            inst = FurstenbergInstance.of(N, A, m)
            assert furstenberg_prob(inst, parse_event("A[0]")) == Fraction(len(A), N)
            E = shift_formula(rng)
            n = int(rng.integers(-5, 6))
            assert furstenberg_prob(inst, shift_event(E, n)) == furstenberg_prob(inst, E)

            k = int(rng.integers(1, 5))
            step = int(rng.integers(1, 4))
            members = set(A)
            direct = sum(1 for x in range(N) for lam in range(1, inst.L + 1)
                         if all((x + j * step * lam) % N in members for j in range(k)))
            assert furstenberg_prob(inst, ap_event(k, step)) == Fraction(direct, N * inst.L)

    @given(st.integers(min_value=1, max_value=30), st.integers(min_value=1, max_value=30))
    @settings(max_examples=40, deadline=None)
    def test_ap_event_shape(self, k, n):
        E = ap_event(min(k, 6), n)
        assert E.offsets() == sorted({j * n for j in range(min(k, 6))})
