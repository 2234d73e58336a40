from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import InputError
from src.core.probspace import (
    MODE_FLOAT,
    Factor,
    FiniteProbSpace,
    RandomVar,
    best_regular_approx,
    cond_expect,
    equiv_independence_check,
    expectation,
    independence_defect,
    indicator,
    is_factor_of,
    is_measurable,
    join,
    join_all,
    lp_norm,
    space_from_json,
    space_to_json,
)
from tests.strategies import events, factors, rational_spaces, refine


def uniform(n):
    return FiniteProbSpace.uniform(list(range(n)))


def product_space(sizes, seed_weights=None):
    """各坐标独立的乘积空间，权重为坐标权重之积"""
    coords = [list(range(s)) for s in sizes]
    weights_per = seed_weights or [[Fraction(1, s)] * s for s in sizes]
    points, weights = [], []
    for point in product(*coords):
        w = Fraction(1)
        for k, v in enumerate(point):
            w *= weights_per[k][v]
        points.append(point)
        weights.append(w)
    return FiniteProbSpace(points, weights)


def coordinate_factor(space, *coords):
    return Factor.from_labels(space, [tuple(p[c] for c in coords) for p in space.points])


class TestSpace:
    """样本空间与因子的构造"""

    def test_weights_must_sum_to_one(self):
        with pytest.raises(InputError):
            FiniteProbSpace([0, 1], [Fraction(1, 2), Fraction(1, 3)])

    def test_negative_weight(self):
        with pytest.raises(InputError):
            FiniteProbSpace([0, 1], [Fraction(3, 2), Fraction(-1, 2)])

    def test_duplicate_points(self):
        with pytest.raises(InputError):
            FiniteProbSpace([0, 0], [Fraction(1, 2), Fraction(1, 2)])

    def test_float_mode_tolerance(self):
        space = FiniteProbSpace([0, 1, 2], [0.1, 0.2, 0.7], MODE_FLOAT)
        assert space.prob({0, 1}) == pytest.approx(0.3)

    def test_mixed_modes_rejected(self):
        exact = uniform(2)
        approx = FiniteProbSpace([0, 1], [0.5, 0.5], MODE_FLOAT)
        with pytest.raises(InputError):
            join(Factor.discrete(exact), Factor.discrete(approx))

    def test_partition_must_cover(self):
        with pytest.raises(InputError):
            Factor.from_partition(uniform(3), [[0], [1]])

    def test_json_round_trip_of_weights(self):
        space = FiniteProbSpace([(0, "a"), (1, "b")], [Fraction(1, 3), Fraction(2, 3)])
        assert space_from_json(space_to_json(space)) == space


class TestOperations:
    """联合、条件期望、范数"""

    def test_join_examples(self):
        space = uniform(4)
        B = Factor.from_partition(space, [[0, 1], [2, 3]])
        C = Factor.from_partition(space, [[0, 2], [1, 3]])
        assert join(Factor.trivial(space), B) == B
        assert join(B, B) == B
        assert join(B, C) == Factor.discrete(space)
        assert join_all(space, []) == Factor.trivial(space)

    def test_factor_order_and_measurability(self):
        space = uniform(4)
        B = Factor.from_partition(space, [[0, 1], [2, 3]])
        assert is_factor_of(B, Factor.discrete(space))
        assert not is_factor_of(Factor.discrete(space), B)
        assert is_measurable({0, 1}, B)
        assert not is_measurable({0}, B)

    def test_cond_expect_examples(self):
        space = uniform(4)
        f = RandomVar(space, [1, 2, 3, 4])
        B = Factor.from_partition(space, [[0, 1], [2, 3]])
        expected = [Fraction(3, 2), Fraction(3, 2), Fraction(7, 2), Fraction(7, 2)]
        assert list(cond_expect(f, B).values) == expected
        assert cond_expect(f, Factor.trivial(space)) == RandomVar.constant(space, Fraction(5, 2))
        assert cond_expect(f, Factor.discrete(space)) == f

    def test_cond_expect_is_zero_on_null_atoms(self):
        space = FiniteProbSpace([0, 1], [Fraction(1), Fraction(0)])
        f = RandomVar(space, [3, 5])
        assert cond_expect(f, Factor.discrete(space)).values == (3, 0)

    def test_norm_examples(self):
        space = uniform(2)
        assert lp_norm(RandomVar.constant(space, 0), 1) == 0
        c = RandomVar.constant(space, -3)
        assert lp_norm(c, 1) == 3
        assert lp_norm(c, 2) == 9
        assert lp_norm(c, "inf") == 3
        f = RandomVar(space, [1, -1])
        assert lp_norm(f, 1) == 1
        assert lp_norm(f, 2) == 1

    def test_unsupported_norm(self):
        with pytest.raises(InputError):
            lp_norm(RandomVar.constant(uniform(2), 1), 3)


class TestIndependence:
    """相对独立性缺陷及其等价刻画"""

    def test_product_coordinates_are_independent(self):
        space = product_space([2, 3])
        B1, B2 = coordinate_factor(space, 0), coordinate_factor(space, 1)
        assert independence_defect(B1, B2, Factor.trivial(space)) == 0
        report = equiv_independence_check(B1, B2, Factor.trivial(space))
        assert report["independent"]
        assert all(report["verdicts"].values())

    def test_two_point_correlated_case(self):
        space = uniform(2)
        D = Factor.discrete(space)
        T = Factor.trivial(space)
        assert independence_defect(D, D, T) == Fraction(1, 4)
        report = equiv_independence_check(D, D, T)
        assert not report["independent"]
        assert not any(report["verdicts"].values())

    def test_witness_pair(self):
        space = uniform(2)
        D = Factor.discrete(space)
        value, witness = independence_defect(D, D, Factor.trivial(space), pairs="atoms")
        assert value == Fraction(1, 4)
        assert witness == (0, 0)

    def test_factor_of_conditioning_is_independent(self):
        space = uniform(6)
        B = Factor.from_partition(space, [[0, 1], [2, 3], [4, 5]])
        B1 = Factor.from_partition(space, [[0, 1, 2, 3], [4, 5]])
        assert independence_defect(B1, Factor.discrete(space), B) == 0
        assert all(equiv_independence_check(B1, Factor.discrete(space), B)["verdicts"].values())

    def test_float_mode_defect(self):
        space = FiniteProbSpace([0, 1], [0.5, 0.5], MODE_FLOAT)
        D = Factor.discrete(space)
        assert independence_defect(D, D, Factor.trivial(space)) == pytest.approx(0.25)

    def test_gluing(self):
        # B = σ(y)，B_i = σ(y, x_i)，坐标相互独立
        weights = [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1, 4), Fraction(3, 4)],
                   [Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 5), Fraction(4, 5)]]
        space = product_space([2, 2, 2, 2], weights)
        B = coordinate_factor(space, 0)
        B1, B2, B3 = (coordinate_factor(space, 0, k) for k in (1, 2, 3))
        assert independence_defect(B3, join(B1, B2), B) == 0
        assert independence_defect(B1, B2, B) == 0
        assert independence_defect(B1, join(B2, B3), B) == 0

    def test_stability_under_enlarging_the_base(self):
        space = product_space([2, 4, 4])
        B = coordinate_factor(space, 0)
        B1, B2 = coordinate_factor(space, 0, 1), coordinate_factor(space, 0, 2)
        B1_coarse = Factor.from_labels(space, [p[1] // 2 for p in space.points])
        B2_coarse = Factor.from_labels(space, [p[2] % 2 for p in space.points])
        assert independence_defect(B1, B2, B) == 0
        assert independence_defect(B1, B2, join_all(space, [B, B1_coarse, B2_coarse])) == 0

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_characterisations_agree(self, data):
        space = data.draw(rational_spaces())
        B1 = data.draw(factors(space))
        B2 = data.draw(factors(space))
        B = data.draw(factors(space))
        report = equiv_independence_check(B1, B2, B)
        assert report["independent"] == (report["defect"] == 0)


class TestLaws:
    """条件期望的代数律，在有理数模式下精确成立"""

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_pythagoras(self, data):
        space = data.draw(rational_spaces())
        B = data.draw(factors(space))
        B_fine = refine(B, data.draw(factors(space)))
        f = RandomVar(space, data.draw(st.lists(st.integers(-5, 5), min_size=space.size, max_size=space.size)))
        fine, coarse = cond_expect(f, B_fine), cond_expect(f, B)
        assert lp_norm(fine, 2) == lp_norm(coarse, 2) + lp_norm(fine - coarse, 2)

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_tower(self, data):
        space = data.draw(rational_spaces())
        B = data.draw(factors(space))
        B_fine = refine(B, data.draw(factors(space)))
        f = RandomVar(space, data.draw(st.lists(st.integers(-5, 5), min_size=space.size, max_size=space.size)))
        assert cond_expect(cond_expect(f, B_fine), B) == cond_expect(f, B)

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_module_property(self, data):
        space = data.draw(rational_spaces())
        B = data.draw(factors(space))
        per_atom = data.draw(st.lists(st.integers(-3, 3), min_size=B.atom_count, max_size=B.atom_count))
        f = RandomVar(space, [per_atom[a] for a in B.atoms])
        g = RandomVar(space, data.draw(st.lists(st.integers(-5, 5), min_size=space.size, max_size=space.size)))
        assert cond_expect(f * g, B) == f * cond_expect(g, B)

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_contraction(self, data):
        space = data.draw(rational_spaces())
        B = data.draw(factors(space))
        f = RandomVar(space, data.draw(st.lists(st.integers(-5, 5), min_size=space.size, max_size=space.size)))
        assert lp_norm(cond_expect(f, B), 1) <= lp_norm(f, 1)
        assert lp_norm(cond_expect(f, B), 2) <= lp_norm(f, 2)
        assert expectation(cond_expect(f, B)) == expectation(f)


class TestRegularApproximation:
    """由生成事件的布尔组合逼近"""

    def test_combination_of_generators_is_exact(self):
        space = uniform(6)
        gens = [frozenset({0, 1, 2}), frozenset({2, 3})]
        ok, details = best_regular_approx(space, gens[0] | gens[1], gens, 0)
        assert ok
        assert details["distance"] == 0

    def test_minority_point_is_dropped(self):
        space = uniform(4)
        ok, details = best_regular_approx(space, {0}, [frozenset({0, 1, 2}), frozenset({3})], Fraction(1, 10))
        assert not ok
        assert details["event"] == frozenset()
        assert details["distance"] == Fraction(1, 4)

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_trivial_generator(self, data):
        space = data.draw(rational_spaces())
        E = data.draw(events(space))
        _, details = best_regular_approx(space, E, [space.omega], 1)
        p = space.prob(E)
        assert details["distance"] == min(p, 1 - p)
        assert details["event"] in (frozenset(), space.omega)

    def test_indicator(self):
        space = uniform(3)
        assert indicator(space, {1}).values == (0, 1, 0)
