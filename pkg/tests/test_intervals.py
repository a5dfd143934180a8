"""Interval arithmetic: exactness, outward rounding, and inclusion properties."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from psdparam import (
    AsymmetricMatrixError,
    Interval,
    IntervalMatrix,
    contains,
    im_add,
    interval_add,
    interval_mul,
    scale,
)

finite_floats = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False)


def make_interval(a: float, b: float) -> Interval:
    return Interval(min(a, b), max(a, b))


class TestInterval:
    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Interval(0.0, math.inf)
        with pytest.raises(ValueError):
            Interval(math.nan, 1.0)

    def test_point_and_membership(self):
        iv = Interval.point(1.5)
        assert iv.is_degenerate
        assert 1.5 in iv
        assert 1.6 not in iv

    @given(finite_floats, finite_floats)
    def test_mid_rad_enclose_bounds(self, a, b):
        iv = make_interval(a, b)
        mid, rad = Fraction(iv.mid), Fraction(iv.rad)
        assert mid - rad <= Fraction(iv.inf)
        assert mid + rad >= Fraction(iv.sup)
        assert iv.rad >= 0.0


class TestScalarOps:
    def test_add_exact_dyadic(self):
        assert interval_add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)

    def test_add_identity(self):
        iv = Interval(-3.25, 7.5)
        assert interval_add(Interval(0, 0), iv) == iv

    def test_add_tenths_encloses_rational_sum(self):
        # Exact-rational oracle: the true sum 0.3 must be inside, and the
        # result may be at most two ulps wide.
        r = interval_add(Interval(0.1, 0.1), Interval(0.2, 0.2))
        true = Fraction(1, 10) + Fraction(2, 10)
        assert Fraction(r.inf) <= true <= Fraction(r.sup)
        assert r.sup <= math.nextafter(math.nextafter(r.inf, math.inf), math.inf)

    def test_mul_endpoint_products(self):
        assert interval_mul(Interval(0, 1), Interval(-1, 1)) == Interval(-1, 1)

    def test_mul_identity(self):
        iv = Interval(-2.5, 0.75)
        assert interval_mul(Interval(1, 1), iv) == iv

    def test_mul_mixed_signs_brute_force(self):
        # Dense-sample oracle over both intervals.
        r = interval_mul(Interval(-2, 3), Interval(-5, 7))
        xs = np.linspace(-2, 3, 201)
        ys = np.linspace(-5, 7, 201)
        prods = np.outer(xs, ys)
        assert r.inf <= prods.min() and prods.max() <= r.sup
        assert r == Interval(-15, 21)

    @given(finite_floats, finite_floats, finite_floats, finite_floats, st.data())
    def test_inclusion_isotonicity(self, a1, a2, b1, b2, data):
        a = make_interval(a1, a2)
        b = make_interval(b1, b2)
        x = data.draw(st.floats(min_value=a.inf, max_value=a.sup))
        y = data.draw(st.floats(min_value=b.inf, max_value=b.sup))
        s = interval_add(a, b)
        assert s.inf <= x + y <= s.sup
        p = interval_mul(a, b)
        assert p.inf <= x * y <= p.sup

    def test_inclusion_isotonicity_bulk(self):
        # 1e4 random member pairs per operation, exact-rational membership.
        rng = np.random.default_rng(42)
        bounds = rng.uniform(-50, 50, size=(10_000, 4))
        for a1, a2, b1, b2 in bounds[:, :4]:
            a = make_interval(a1, a2)
            b = make_interval(b1, b2)
            t = rng.random(2)
            x = a.inf + t[0] * (a.sup - a.inf)
            y = b.inf + t[1] * (b.sup - b.inf)
            s = interval_add(a, b)
            p = interval_mul(a, b)
            assert Fraction(s.inf) <= Fraction(x) + Fraction(y) <= Fraction(s.sup)
            assert Fraction(p.inf) <= Fraction(x) * Fraction(y) <= Fraction(p.sup)

    def test_widen_disabled_is_plain_arithmetic(self):
        r = interval_add(Interval(0.1, 0.1), Interval(0.2, 0.2), widen=False)
        assert r.inf == r.sup == 0.1 + 0.2


class TestIntervalMatrix:
    def test_add_zero_matrix(self):
        a = IntervalMatrix(np.array([[0.0, -1.0]]), np.array([[2.0, 1.5]]))
        z = IntervalMatrix(np.zeros((1, 2)), np.zeros((1, 2)))
        r = im_add(z, a)
        assert np.array_equal(r.inf, a.inf) and np.array_equal(r.sup, a.sup)

    def test_add_one_by_one(self):
        a = IntervalMatrix([[1.0]], [[2.0]])
        b = IntervalMatrix([[3.0]], [[4.0]])
        r = im_add(a, b)
        assert r.entry(0, 0) == Interval(4, 6)

    def test_add_shape_mismatch(self):
        a = IntervalMatrix(np.zeros((2, 2)), np.zeros((2, 2)))
        b = IntervalMatrix(np.zeros((2, 3)), np.zeros((2, 3)))
        with pytest.raises(ValueError):
            im_add(a, b)

    def test_add_containment_sampling(self, rng):
        lo_a = rng.uniform(-5, 5, (3, 3))
        lo_b = rng.uniform(-5, 5, (3, 3))
        a = IntervalMatrix(lo_a, lo_a + rng.uniform(0, 3, (3, 3)))
        b = IntervalMatrix(lo_b, lo_b + rng.uniform(0, 3, (3, 3)))
        r = im_add(a, b)
        for _ in range(200):
            m = a.inf + rng.random((3, 3)) * (a.sup - a.inf)
            n = b.inf + rng.random((3, 3)) * (b.sup - b.inf)
            assert contains(r, m + n)

    def test_scale_ones_by_unit(self):
        r = scale(np.ones((2, 2)), Interval(0, 1))
        assert np.array_equal(r.inf, np.zeros((2, 2)))
        assert np.array_equal(r.sup, np.ones((2, 2)))

    def test_scale_degenerate_is_exact(self):
        a = np.array([[1.25, -3.0], [0.5, 2.0]])
        r = scale(a, Interval(1, 1))
        assert np.array_equal(r.inf, a) and np.array_equal(r.sup, a)

    def test_scale_sign_flip(self):
        r = scale(np.diag([1.0, -1.0]), Interval(2, 3))
        assert r.entry(0, 0) == Interval(2, 3)
        assert r.entry(1, 1) == Interval(-3, -2)

    def test_contains_examples(self):
        relaxed = IntervalMatrix(np.zeros((2, 2)), np.ones((2, 2)))
        assert contains(relaxed, [[0, 1], [1, 0]])
        assert contains(relaxed, relaxed.mid())
        assert not contains(IntervalMatrix([[0.0]], [[1.0]]), [[1.5]])
        with pytest.raises(ValueError):
            contains(relaxed, np.zeros((3, 3)))

    def test_membership_commutes_with_ops(self, rng):
        a_lo = rng.uniform(-2, 2, (2, 2))
        a = IntervalMatrix(a_lo, a_lo + rng.uniform(0, 1, (2, 2)))
        p = Interval(-0.3, 1.7)
        m = a.inf + rng.random((2, 2)) * (a.sup - a.inf)
        s = rng.uniform(p.inf, p.sup)
        assert contains(scale(m, Interval.point(s)), m * s)
        b_lo = rng.uniform(-2, 2, (2, 2))
        b = IntervalMatrix(b_lo, b_lo + rng.uniform(0, 1, (2, 2)))
        n = b.inf + rng.random((2, 2)) * (b.sup - b.inf)
        assert contains(im_add(a, b), m + n)

    def test_json_roundtrip(self):
        a = IntervalMatrix([[0.1, -2.0]], [[0.3, -1.0]])
        doc = json.loads(a.to_json())
        assert doc["rows"] == 1 and doc["cols"] == 2
        b = IntervalMatrix.from_json(a.to_json())
        assert np.array_equal(a.inf, b.inf) and np.array_equal(a.sup, b.sup)

    def test_symmetric_parts_gate(self):
        ok = IntervalMatrix([[0.0, 1.0], [1.0, 0.0]], [[1.0, 2.0], [2.0, 1.0]])
        mid, rad = ok.symmetric_parts()
        assert np.array_equal(mid, mid.T) and np.array_equal(rad, rad.T)
        bad = IntervalMatrix([[0.0, 1.0], [0.0, 0.0]], [[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(AsymmetricMatrixError):
            bad.symmetric_parts()

    def test_immutability(self):
        a = IntervalMatrix.point(np.eye(2))
        with pytest.raises(ValueError):
            a.inf[0, 0] = 5.0
