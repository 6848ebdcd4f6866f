import random
from fractions import Fraction

import pytest

from ghpaths.certificates import WITNESS
from ghpaths.correspondences import (Correspondence, distortion, gh_exact, gh_value,
                                     partition_from)
from ghpaths.curves import (PerturbationTable, concatenate, curve_length_estimate,
                            geodesic_curve, geodesic_point, nu_deformation,
                            perturb_space, perturbation_segment,
                            perturbation_segment_curve, reverse, rho_deformation,
                            sign_space, verify_curve)
from ghpaths.errors import (MagnitudeMismatch, MagnitudeTooLarge, NotOptimal,
                            NotRhoEndpoint, RadiusOutOfRange)
from ghpaths.generators import gen_sphere_point
from ghpaths.metric import diameter, is_isometric, simplex, two_point

from oracles import random_space

F = Fraction


def dists(X):
    return [X.d[i][j] for i, j in X.pairs()]


class TestGeodesics:
    def test_endpoints_and_interpolation(self):
        X, Y = two_point(1), two_point(3)
        R = gh_exact(X, Y).witness
        assert geodesic_point(X, Y, R, 0) == X
        assert geodesic_point(X, Y, R, 1) == Y
        assert dists(geodesic_point(X, Y, R, F(1, 4))) == [F(3, 2)]

    def test_block_interpolation(self):
        X, Y = two_point(2), simplex(3, 2)
        R = Correspondence.of(2, 3, [(0, 0), (1, 1), (1, 2)])
        assert dists(geodesic_point(X, Y, R, F(1, 2))) == [2, 2, 1]

    def test_not_optimal(self):
        X, Y = two_point(1), two_point(3)
        R = Correspondence.of(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])  # distortion 3 > 2
        with pytest.raises(NotOptimal):
            geodesic_point(X, Y, R, F(1, 2))

    def test_curve_examples(self):
        c = geodesic_curve(two_point(1), two_point(3), samples=5)
        assert [dists(s.space)[0] for s in c.samples] == [1, F(3, 2), 2, F(5, 2), 3]
        assert c.lipschitz == 1 and curve_length_estimate(c) == 1
        const = geodesic_curve(two_point(2), two_point(2), samples=4)
        assert const.lipschitz == 0 and curve_length_estimate(const) == 0

    def test_geodesic_law_random(self):
        rng = random.Random(3)
        for _ in range(5):
            X, Y = random_space(rng, rng.randint(1, 3)), random_space(rng, rng.randint(1, 3))
            c = geodesic_curve(X, Y, samples=5)
            g = gh_value(X, Y)
            for a in c.samples:
                for b in c.samples:
                    assert gh_value(a.space, b.space) == abs(a.t - b.t) * g
            assert is_isometric(c.start, X) and is_isometric(c.end, Y)

    def test_length_non_decreasing_under_refinement(self, M3):
        c = geodesic_curve(two_point(2), simplex(3, 2), samples=9)
        coarse = curve_length_estimate(c, stride=4)
        fine = curve_length_estimate(c, stride=1)
        assert coarse <= fine == gh_value(two_point(2), simplex(3, 2))


class TestConcatenation:
    def test_join_and_reverse(self):
        a = geodesic_curve(two_point(1), two_point(2), samples=3)
        b = geodesic_curve(two_point(2), two_point(4), samples=3)
        c = concatenate([a, b], "joined")
        assert len(c) == 5 and c.params == [0, F(1, 4), F(1, 2), F(3, 4), 1]
        assert c.lipschitz == 2 * 1
        assert verify_curve(c).ok
        r = reverse(c)
        assert r.start == c.end and r.params == c.params

    def test_mismatched_junction(self):
        a = geodesic_curve(two_point(1), two_point(2), samples=3)
        with pytest.raises(Exception):
            concatenate([a, a], "bad")

    def test_verify_detects_lipschitz_violation(self):
        c = geodesic_curve(two_point(1), two_point(3), samples=3)
        tampered = type(c)(c.construction, c.samples, lipschitz=F(1, 2))
        report = verify_curve(tampered)
        assert not report.ok and report.failures[0][0] == 0


class TestPerturbations:
    def test_plus_space(self, M3):
        a = PerturbationTable.from_signs(3, "+++", F(2, 5))
        Mp = perturb_space(M3, a)
        assert dists(Mp) == [F(17, 5), F(22, 5), F(27, 5)]
        assert gh_value(M3, Mp) == F(1, 5)

    def test_zero_perturbation(self, M3):
        assert perturb_space(M3, PerturbationTable.from_signs(3, "+++", 0)) == M3

    def test_magnitude_guards(self, M3):
        with pytest.raises(MagnitudeTooLarge):
            perturb_space(M3, PerturbationTable.from_signs(3, "+++", 1))
        with pytest.raises(MagnitudeTooLarge):
            perturb_space(two_point(1), PerturbationTable.from_signs(2, "+", 1))

    def test_sign_spaces(self, M3, r5):
        assert dists(sign_space(M3, [-1, -1, -1], r5)) == [F(13, 5), F(18, 5), F(23, 5)]
        assert dists(sign_space(M3, [1, -1, -1], r5)) == [F(17, 5), F(18, 5), F(23, 5)]
        by_pair = sign_space(M3, {(0, 1): 1, (0, 2): -1, (1, 2): -1}, r5)
        assert by_pair == sign_space(M3, [1, -1, -1], r5)

    def test_segment(self, M3, r5):
        a = PerturbationTable.from_signs(3, [1, 1, 1], 2 * r5)
        b = PerturbationTable.from_signs(3, [1, -1, -1], 2 * r5)
        mid = perturbation_segment(M3, a, b, F(1, 2))
        assert dists(mid) == [F(17, 5), 4, 5] and gh_value(M3, mid) == r5
        assert perturbation_segment(M3, a, b, 0) == perturb_space(M3, a)
        assert perturbation_segment(M3, a, b, 1) == sign_space(M3, [1, -1, -1], r5)

    def test_segment_curve_stays_on_sphere(self, M3, r5):
        a = PerturbationTable.from_signs(3, [1, 1, 1], 2 * r5)
        b = PerturbationTable.from_signs(3, [1, -1, -1], 2 * r5)
        c = perturbation_segment_curve(M3, a, b, samples=9)
        assert all(gh_value(M3, s.space) == r5 for s in c.samples)
        assert all(s.certificate.kind == WITNESS for s in c.samples)
        assert verify_curve(c, recheck_gh=True).ok

    def test_segment_without_shared_entry_is_flagged(self, M3, r5):
        a = PerturbationTable.from_signs(3, [1, 1, 1], 2 * r5)
        b = PerturbationTable.from_signs(3, [-1, -1, -1], 2 * r5)
        c = perturbation_segment_curve(M3, a, b, samples=3)
        assert "no-shared-entry" in c.samples[1].flags
        assert c.samples[1].certificate is None

    def test_magnitude_mismatch(self, M3):
        a = PerturbationTable.from_signs(3, [1, 1, 1], F(2, 5))
        b = PerturbationTable.from_signs(3, [1, 1, 1], F(1, 5))
        with pytest.raises(MagnitudeMismatch):
            perturbation_segment(M3, a, b, F(1, 2))


class TestDeformations:
    def split_setup(self, M3, r5):
        X = gen_sphere_point(M3, r5, "split")
        R = Correspondence.of(3, 4, [(0, 0), (0, 1), (1, 2), (2, 3)])
        return X, partition_from(R, M3, X)

    def test_rho_plus_on_split(self, M3, r5):
        X, P = self.split_setup(M3, r5)
        assert rho_deformation(X, P, r5, "plus", 0) == X
        X1 = rho_deformation(X, P, r5, "plus", 1)
        owner = P.block_of()
        for a in range(4):
            for b in range(4):
                if owner[a] != owner[b]:
                    assert X1.d[a][b] == M3.d[owner[a]][owner[b]] + F(2, 5)
        assert X1.d[0][1] == X.d[0][1] == F(2, 5)

    def test_rho_minus_on_deficit(self, M3, r5):
        X = gen_sphere_point(M3, r5, "deficit")
        P = partition_from(Correspondence.identity(3), M3, X)
        assert rho_deformation(X, P, r5, "minus", 1) == sign_space(M3, [-1] * 3, r5)

    def test_rho_keeps_distortion(self, M3, r5):
        X, P = self.split_setup(M3, r5)
        for k in range(9):
            Xt = rho_deformation(X, P, r5, "plus", F(k, 8))
            assert distortion(P.correspondence, M3, Xt) == 2 * r5
            assert gh_value(M3, Xt) == r5

    def test_radius_guard(self, M3):
        X, P = self.split_setup(M3, F(1, 5))
        with pytest.raises(RadiusOutOfRange):
            rho_deformation(X, P, F(1, 3), "plus", F(1, 2))

    def test_nu(self, M3, r5):
        X, P = self.split_setup(M3, r5)
        X1 = rho_deformation(X, P, r5, "plus", 1)
        P1 = P.with_space(X1)
        assert nu_deformation(X1, P1, 0) == X1
        assert nu_deformation(X1, P1, F(1, 2)).d[0][1] == F(1, 5)
        assert nu_deformation(X1, P1, 1) == sign_space(M3, [1, 1, 1], r5)
        with pytest.raises(NotRhoEndpoint):
            nu_deformation(X, P, F(1, 2))
