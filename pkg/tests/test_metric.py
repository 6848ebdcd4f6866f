import random
from decimal import Decimal
from fractions import Fraction

import pytest

from ghpaths.errors import (AsymmetricTable, BothZero, BudgetExceeded, EmptySpace,
                            EmptySubset, NegativeDistance, NonZeroDiagonal,
                            ShapeMismatch, TooSmall, TriangleViolation, ZeroOffDiagonal)
from ghpaths.metric import (brute_force_self_distortion, characteristics,
                            collapse_zero_distances, combine_metrics, delta1, diameter,
                            gh_to_point, hausdorff_distance, is_isometric,
                            min_self_distortion, scale, simplex, to_scalar, two_point,
                            validate_metric)
from ghpaths.correspondences import gh_value

from oracles import random_space


class TestScalars:
    @pytest.mark.parametrize("raw, expected", [
        (3, Fraction(3)), ("17/5", Fraction(17, 5)), ("1.25", Fraction(5, 4)),
        (Decimal("0.1"), Fraction(1, 10)), (Fraction(2, 3), Fraction(2, 3)),
    ])
    def test_exact_conversion(self, raw, expected):
        assert to_scalar(raw) == expected

    @pytest.mark.parametrize("raw", [0.5, True, None])
    def test_rejects_inexact_or_odd_input(self, raw):
        with pytest.raises(TypeError):
            to_scalar(raw)


class TestValidation:
    def test_single_point(self):
        X = validate_metric(["p"], [[0]])
        assert X == delta1("p") and diameter(X) == 0

    def test_m3_valid(self, M3):
        assert M3.d[1][2] == 5 and len(M3) == 3

    def test_triangle_violation_names_indices(self):
        with pytest.raises(TriangleViolation) as info:
            validate_metric("abc", [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        assert info.value.indices == (0, 1, 2)

    @pytest.mark.parametrize("table, error, indices", [
        ([[0, 1], [2, 0]], AsymmetricTable, (0, 1)),
        ([[0, -1], [-1, 0]], NegativeDistance, (0, 1)),
        ([[0, 0], [0, 0]], ZeroOffDiagonal, (0, 1)),
        ([[1, 1], [1, 0]], NonZeroDiagonal, (0,)),
    ])
    def test_axiom_failures(self, table, error, indices):
        with pytest.raises(error) as info:
            validate_metric("ab", table)
        assert info.value.indices == indices

    def test_empty_and_shape(self):
        with pytest.raises(EmptySpace):
            validate_metric([], [])
        with pytest.raises(ShapeMismatch):
            validate_metric("ab", [[0, 1]])
        with pytest.raises(ShapeMismatch):
            validate_metric("aa", [[0, 1], [1, 0]])

    def test_accepts_exactly_metric_tables(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 4)
            vals = {}
            for i in range(n):
                for j in range(i + 1, n):
                    vals[i, j] = Fraction(rng.randint(1, 6))
            table = [[0 if i == j else vals[min(i, j), max(i, j)] for j in range(n)]
                     for i in range(n)]
            is_metric = all(table[i][k] <= table[i][j] + table[j][k]
                            for i in range(n) for j in range(n) for k in range(n))
            try:
                validate_metric([str(i) for i in range(n)], table)
                accepted = True
            except TriangleViolation as exc:
                i, j, k = exc.indices
                assert table[i][k] > table[i][j] + table[j][k]
                accepted = False
            assert accepted == is_metric


class TestElementary:
    def test_diameter(self, M3):
        assert diameter(delta1()) == 0
        assert diameter(M3) == 5
        assert diameter(two_point(7)) == 7

    def test_scale(self, M3):
        assert scale(M3, 1) == M3
        assert scale(two_point(1), 3) == two_point(3)
        assert scale(M3, 0) == delta1()
        rng = random.Random(3)
        for _ in range(20):
            X = random_space(rng, rng.randint(1, 4))
            lam = Fraction(rng.randint(0, 9), rng.randint(1, 4))
            assert diameter(scale(X, lam)) == lam * diameter(X)

    def test_combine_metrics(self):
        d1, d2 = two_point(1).d, two_point(3).d
        assert combine_metrics("ab", d1, d2, 1, 0).d == two_point(1).d
        assert combine_metrics("ab", d1, d1, Fraction(1, 2), Fraction(1, 2)).d == d1
        quarter = combine_metrics("ab", d1, d2, Fraction(3, 4), Fraction(1, 4))
        assert quarter.d == two_point(Fraction(3, 2)).d
        with pytest.raises(BothZero):
            combine_metrics("ab", d1, d2, 0, 0)

    def test_gh_to_point(self, M3):
        assert gh_to_point(delta1()) == 0
        assert gh_to_point(two_point(2)) == 1
        assert gh_to_point(M3) == Fraction(5, 2) == gh_value(delta1(), M3)

    def test_collapse_zero_distances(self):
        X = collapse_zero_distances("abc", [[0, 0, 2], [0, 0, 2], [2, 2, 0]])
        assert X.labels == ("a", "c") and X.d[0][1] == 2


class TestCharacteristics:
    def test_m3(self, M3):
        ch = characteristics(M3)
        assert (ch.s, ch.t, ch.e, ch.generic) == (3, 2, 1, True)
        assert brute_force_self_distortion(M3) == 1

    def test_equilateral_not_generic(self):
        ch = characteristics(simplex(4, 2))
        assert ch.e == 0 and not ch.generic

    def test_too_small_and_budget(self):
        with pytest.raises(TooSmall):
            characteristics(two_point(1))
        with pytest.raises(BudgetExceeded):
            characteristics(simplex(9, 1))

    def test_relabel_invariance(self):
        rng = random.Random(5)
        for _ in range(15):
            X = random_space(rng, 5, quantum=8)
            p = list(range(5))
            rng.shuffle(p)
            Y = validate_metric([X.labels[i] for i in p],
                                [[X.d[p[i]][p[j]] for j in range(5)] for i in range(5)])
            assert characteristics(X) == characteristics(Y)

    def test_pruned_search_matches_brute_force(self):
        rng = random.Random(9)
        for _ in range(40):
            X = random_space(rng, rng.randint(2, 6), quantum=rng.choice([2, 8]))
            assert min_self_distortion(X) == brute_force_self_distortion(X)
            assert min_self_distortion(X, backend="python") == brute_force_self_distortion(X)

    def test_isometry(self, M3):
        Y = validate_metric("xyz", [[0, 5, 4], [5, 0, 3], [4, 3, 0]])
        assert is_isometric(M3, Y)
        assert not is_isometric(M3, simplex(3, 4))


class TestHausdorff:
    def test_examples(self, M3):
        assert hausdorff_distance(M3, [0], [1, 2]) == 4
        assert hausdorff_distance(M3, [0, 1], [0, 1]) == 0

    def test_empty_subset(self, M3):
        with pytest.raises(EmptySubset):
            hausdorff_distance(M3, [], [1])

    def test_zero_iff_equal_and_triangle(self):
        rng = random.Random(21)
        X = random_space(rng, 5)
        subsets = [[i for i in range(5) if m >> i & 1] for m in range(1, 32)]
        for A in subsets:
            for B in subsets:
                assert (hausdorff_distance(X, A, B) == 0) == (A == B)
        for _ in range(200):
            A, B, C = (rng.choice(subsets) for _ in range(3))
            assert hausdorff_distance(X, A, C) <= (hausdorff_distance(X, A, B)
                                                   + hausdorff_distance(X, B, C))
