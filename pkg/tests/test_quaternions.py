import math

import numpy as np
import pytest
from hypothesis import given

from conftest import angles, imaginary_units, unit_quaternions
from spherefib.quaternions import (
    I,
    J,
    K,
    ONE,
    GreatCircle,
    ImaginaryUnit,
    UnitQuaternion,
    canonicalize_sign,
    exp_axis,
    geodesic_distance,
    geodesic_midpoint,
    jk_circle_point,
    lattice_spacing,
    qdistance_array,
    qmul_array,
    quasi_uniform_lattice,
    sample_uniform,
    sample_uniform_array,
    to_array,
)


class TestConstruction:
    def test_renormalizes(self):
        q = UnitQuaternion(2.0, 0.0, 0.0, 0.0)
        assert q.components == (1.0, 0.0, 0.0, 0.0)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            UnitQuaternion(0.0, 0.0, 0.0, 0.0)

    def test_imaginary_unit_rejects_real_part(self):
        with pytest.raises(ValueError):
            ImaginaryUnit(0.5, 1.0, 0.0, 0.0)

    def test_jk_circle_point(self):
        q = jk_circle_point(math.pi / 2)
        assert geodesic_distance(q, K) < 1e-15

    @given(unit_quaternions())
    def test_unit_norm_invariant(self, q):
        assert abs(sum(c * c for c in q.components) - 1.0) <= 1e-12


class TestProduct:
    def test_i_times_j(self):
        assert geodesic_distance(I * J, K) < 1e-15

    def test_j_times_i_anticommutes(self):
        assert geodesic_distance(J * I, -K) < 1e-15

    def test_angle_addition_on_circle(self):
        # oracle: arc angles add on the 1-i circle, pi/6 + pi/3 = pi/2 -> i
        expected = UnitQuaternion(math.cos(math.pi / 2), math.sin(math.pi / 2), 0.0, 0.0)
        got = exp_axis(I, math.pi / 6) * exp_axis(I, math.pi / 3)
        assert geodesic_distance(got, expected) < 1e-15

    @given(unit_quaternions(), unit_quaternions(), unit_quaternions())
    def test_associative(self, a, b, c):
        assert geodesic_distance((a * b) * c, a * (b * c)) < 1e-12


class TestInverse:
    def test_identity(self):
        assert ONE.inverse() == ONE

    def test_imaginary_unit(self):
        assert geodesic_distance(I.inverse(), -I) < 1e-15

    def test_circle_exponent(self):
        # oracle: the inverse is whatever multiplies back to 1
        q = exp_axis(J, 0.7)
        assert geodesic_distance(q * q.inverse(), ONE) < 1e-15
        assert geodesic_distance(q.inverse(), exp_axis(J, -0.7)) < 1e-15

    @given(unit_quaternions(), unit_quaternions())
    def test_product_reversal(self, a, b):
        assert geodesic_distance((a * b).inverse(), b.inverse() * a.inverse()) <= 1e-12


class TestExpAxis:
    def test_zero_angle(self):
        assert geodesic_distance(exp_axis(I, 0.0), ONE) < 1e-15

    def test_quarter_turn(self):
        assert geodesic_distance(exp_axis(I, math.pi / 2), I) < 1e-15

    def test_rotated_axis(self):
        got = exp_axis(jk_circle_point(math.pi / 2), 0.3)
        expected = UnitQuaternion(math.cos(0.3), 0.0, 0.0, math.sin(0.3))
        assert geodesic_distance(got, expected) < 1e-15

    def test_rejects_non_imaginary_axis(self):
        with pytest.raises(ValueError):
            exp_axis(exp_axis(I, 0.1), 0.5)

    @given(imaginary_units(), angles, angles)
    def test_one_parameter_subgroup(self, u, s, t):
        assert geodesic_distance(exp_axis(u, s + t), exp_axis(u, s) * exp_axis(u, t)) <= 1e-12


class TestDistance:
    def test_coincident(self):
        assert geodesic_distance(ONE, ONE) == 0.0

    def test_orthogonal(self):
        assert abs(geodesic_distance(ONE, I) - math.pi / 2) < 1e-15

    def test_arc_length_on_common_circle(self):
        # oracle: arc length between phases is the phase difference
        theta, phi = 0.9, 0.2
        got = geodesic_distance(exp_axis(I, theta), exp_axis(I, phi))
        assert abs(got - (theta - phi)) < 1e-14

    def test_tiny_distances_resolved(self):
        # the naive arccos form floors out near sqrt(machine eps)
        q = exp_axis(I, 1e-11)
        assert abs(geodesic_distance(ONE, q) - 1e-11) < 1e-24

    def test_antipodal(self):
        assert abs(geodesic_distance(I, -I) - math.pi) < 1e-15

    @given(unit_quaternions(), unit_quaternions(), unit_quaternions(), unit_quaternions())
    def test_bi_invariance(self, a, b, p, q):
        moved = geodesic_distance(a * (p * b), a * (q * b))
        assert abs(moved - geodesic_distance(p, q)) <= 1e-10

    @given(unit_quaternions(), unit_quaternions(), unit_quaternions())
    def test_triangle_inequality(self, a, b, c):
        assert geodesic_distance(a, c) <= geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-10


class TestMidpoint:
    def test_quarter_circle(self):
        assert geodesic_distance(geodesic_midpoint(ONE, I), exp_axis(I, math.pi / 4)) < 1e-15

    def test_coincident(self):
        q = exp_axis(J, 1.2)
        assert geodesic_distance(geodesic_midpoint(q, q), q) < 1e-15

    def test_equidistance(self):
        # oracle: two distance evaluations against each endpoint
        b = J * exp_axis(I, math.pi / 2) * J.inverse()
        m = geodesic_midpoint(ONE, b)
        d_total = geodesic_distance(ONE, b)
        assert abs(geodesic_distance(ONE, m) - d_total / 2) < 1e-12
        assert abs(geodesic_distance(m, b) - d_total / 2) < 1e-12

    def test_antipodal_rejected(self):
        with pytest.raises(ValueError):
            geodesic_midpoint(I, -I)

    @given(unit_quaternions(), unit_quaternions())
    def test_symmetry(self, a, b):
        if a.dot(b) <= -1.0 + 1e-6:
            return
        assert geodesic_distance(geodesic_midpoint(a, b), geodesic_midpoint(b, a)) <= 1e-12


class TestCanonicalSign:
    def test_flips_negative_pair(self):
        p, q = canonicalize_sign(-ONE, -I)
        assert geodesic_distance(p, ONE) < 1e-15
        assert geodesic_distance(q, I) < 1e-15

    def test_keeps_canonical_pair(self):
        p, q = canonicalize_sign(ONE, I)
        assert p == ONE and q == I

    def test_rotated_pair(self):
        a, b = exp_axis(J, 0.4), exp_axis(K, 1.1)
        p, q = canonicalize_sign(-a, -b)
        assert geodesic_distance(p, a) < 1e-15
        assert geodesic_distance(q, b) < 1e-15

    @given(unit_quaternions(), unit_quaternions())
    def test_idempotent_and_flip_invariant(self, p, q):
        once = canonicalize_sign(p, q)
        assert canonicalize_sign(*once) == once
        assert canonicalize_sign(-p, -q) == once


class TestSampling:
    def test_deterministic(self):
        assert to_array(sample_uniform(7, 50)).tolist() == to_array(sample_uniform(7, 50)).tolist()

    def test_unit_norms(self):
        arr = sample_uniform_array(3, 1000)
        assert np.max(np.abs(np.linalg.norm(arr, axis=1) - 1.0)) <= 1e-12

    def test_mean_projection_vanishes(self):
        # oracle: symmetry of the uniform measure on the sphere
        arr = sample_uniform_array(11, 100_000)
        axis = np.array([0.5, -0.5, 0.5, 0.5])
        assert abs(float(np.mean(arr @ axis))) < 0.01

    def test_needs_positive_count(self):
        with pytest.raises(ValueError):
            sample_uniform(0, 0)


class TestLattice:
    def test_unit_norms_and_determinism(self):
        a = quasi_uniform_lattice(2000)
        assert np.max(np.abs(np.linalg.norm(a, axis=1) - 1.0)) <= 1e-12
        assert np.array_equal(a, quasi_uniform_lattice(2000))

    def test_quasi_uniform_coverage(self):
        # every random probe should have a lattice point within a few spacings
        grid = quasi_uniform_lattice(5000)
        probes = sample_uniform_array(5, 200)
        cos_gap = np.max(np.min(np.arccos(np.clip(probes @ grid.T, -1, 1)), axis=1))
        assert cos_gap < 3.0 * lattice_spacing(5000)

    def test_spacing_shrinks(self):
        assert lattice_spacing(100_000) < lattice_spacing(1000)


class TestGreatCircle:
    def test_requires_orthogonal_basis(self):
        with pytest.raises(ValueError):
            GreatCircle(ONE, exp_axis(I, 0.3))

    def test_point_at_stays_on_circle(self):
        circle = GreatCircle(ONE, I)
        for t in np.linspace(0, 2 * math.pi, 17):
            assert circle.distance_to_point(circle.point_at(float(t))) < 1e-12

    def test_distance_to_far_point(self):
        circle = GreatCircle(ONE, I)
        assert abs(circle.distance_to_point(J) - math.pi / 2) < 1e-14

    def test_same_circle_modulo_basis(self):
        a = GreatCircle(ONE, I)
        b = GreatCircle(exp_axis(I, 0.7), exp_axis(I, 0.7 + math.pi / 2))
        assert a.same_circle_as(b)
        assert not a.same_circle_as(GreatCircle(J, K))

    def test_orthogonal_circles(self):
        assert GreatCircle(ONE, I).is_orthogonal_to(GreatCircle(J, K))


class TestArrayKernels:
    @given(unit_quaternions(), unit_quaternions())
    def test_qmul_matches_scalar(self, a, b):
        row = qmul_array(np.array([a.components]), np.array([b.components]))[0]
        assert geodesic_distance(UnitQuaternion(*row), a * b) <= 1e-12

    @given(unit_quaternions(), unit_quaternions())
    def test_qdistance_matches_scalar(self, a, b):
        d = qdistance_array(np.array([a.components]), np.array([b.components]))[0]
        assert abs(d - geodesic_distance(a, b)) <= 1e-12
