"""Truncated Taylor jet tests.

The Taylor coefficients a jet carries are checked against hand-computed
derivatives of elementary functions, and the quaternion jet layer is
checked for exactness on integer data.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quatreg import (DomainError, IndexTooDeep, OrderTooHigh, Quaternion,
                     QJet, RJet, SampleDomain, ZeroDivisor, default_inventory)
from quatreg import jets
from conftest import assert_close, q

coef = st.floats(min_value=-3.0, max_value=3.0,
                 allow_nan=False, allow_infinity=False)


def seeded(value, var=0, order=3):
    return RJet.seed(value, var, order)


class TestRJetBasics:
    def test_seed_coefficients(self):
        j = seeded(2.0, var=1, order=2)
        assert j.partial((0, 0, 0, 0)) == 2.0
        assert j.partial((0, 1, 0, 0)) == 1.0
        assert j.partial((0, 0, 1, 0)) == 0.0
        assert j.partial((0, 2, 0, 0)) == 0.0

    def test_polynomial_partials(self):
        # f = t^2 * x at (3, 5): value 45, df/dt 30, df/dx 9,
        # d2f/dt2 10, d2f/dtdx 6, d3f/dt2dx 2.
        t = seeded(3.0, var=0)
        x = seeded(5.0, var=1)
        f = t * t * x
        assert f.partial((0, 0, 0, 0)) == 45.0
        assert f.partial((1, 0, 0, 0)) == 30.0
        assert f.partial((0, 1, 0, 0)) == 9.0
        assert f.partial((2, 0, 0, 0)) == 10.0
        assert f.partial((1, 1, 0, 0)) == 6.0
        assert f.partial((2, 1, 0, 0)) == 2.0

    def test_derivative_drops_order(self):
        t = seeded(3.0, var=0)
        d = (t * t * t).derivative(0)
        assert d.order == 2
        assert d.value == 27.0
        assert d.partial((1, 0, 0, 0)) == 18.0
        with pytest.raises(IndexTooDeep):
            RJet.constant(1.0, 0).derivative(0)

    def test_partial_index_guards(self):
        j = seeded(1.0)
        with pytest.raises(IndexTooDeep):
            j.partial((1, 1, 1, 1))
        with pytest.raises(IndexTooDeep):
            j.partial((1, 1, 1))
        with pytest.raises(OrderTooHigh):
            RJet.constant(0.0, 4)

    def test_batch_seed(self):
        vals = np.array([1.0, 2.0, 3.0])
        j = RJet.seed(vals, 2, 2)
        sq = j * j
        assert np.allclose(sq.value, vals ** 2)
        assert np.allclose(sq.partial((0, 0, 1, 0)), 2 * vals)
        assert np.allclose(sq.partial((0, 0, 2, 0)), 2.0)


class TestElementary:
    def test_sin_cos_taylor(self):
        a = 0.7
        j = jets.sin(seeded(a))
        assert abs(j.value - math.sin(a)) < 1e-15
        assert abs(j.partial((1, 0, 0, 0)) - math.cos(a)) < 1e-15
        assert abs(j.partial((2, 0, 0, 0)) - (-math.sin(a))) < 1e-15
        assert abs(j.partial((3, 0, 0, 0)) - (-math.cos(a))) < 1e-15
        k = jets.cos(seeded(a))
        assert abs(k.partial((1, 0, 0, 0)) + math.sin(a)) < 1e-15

    def test_sqrt_taylor(self):
        a = 2.0
        j = jets.sqrt(seeded(a))
        s = math.sqrt(a)
        assert abs(j.value - s) < 1e-15
        assert abs(j.partial((1, 0, 0, 0)) - 0.5 / s) < 1e-15
        assert abs(j.partial((2, 0, 0, 0)) + 0.25 / s ** 3) < 1e-15
        assert abs(j.partial((3, 0, 0, 0)) - 0.375 / s ** 5) < 1e-15

    def test_recip_taylor(self):
        a = 1.6
        j = jets.recip(seeded(a))
        assert abs(j.value - 1 / a) < 1e-15
        assert abs(j.partial((1, 0, 0, 0)) + 1 / a ** 2) < 1e-15
        assert abs(j.partial((2, 0, 0, 0)) - 2 / a ** 3) < 1e-15
        assert abs(j.partial((3, 0, 0, 0)) + 6 / a ** 4) < 1e-14

    def test_atan_taylor(self):
        a = 0.5
        j = jets.atan(seeded(a))
        d = 1 + a * a
        assert abs(j.value - math.atan(a)) < 1e-15
        assert abs(j.partial((1, 0, 0, 0)) - 1 / d) < 1e-15
        assert abs(j.partial((2, 0, 0, 0)) + 2 * a / d ** 2) < 1e-15
        # third derivative of atan: (6 a^2 - 2) / (1 + a^2)^3
        assert abs(j.partial((3, 0, 0, 0))
                   - (6 * a * a - 2) / d ** 3) < 1e-14

    def test_atanh_taylor(self):
        a = 0.3
        j = jets.atanh(seeded(a))
        d = 1 - a * a
        assert abs(j.value - math.atanh(a)) < 1e-15
        assert abs(j.partial((1, 0, 0, 0)) - 1 / d) < 1e-15
        assert abs(j.partial((2, 0, 0, 0)) - 2 * a / d ** 2) < 1e-15

    def test_atan2_matches_atan(self):
        yj = RJet.seed(0.4, 1, 3)
        xj = RJet.seed(1.1, 2, 3)
        a = jets.atan2(yj, xj)
        b = jets.atan(yj * jets.recip(xj))
        for multi in ((0, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0),
                      (0, 1, 1, 0), (0, 2, 1, 0)):
            assert abs(a.partial(multi) - b.partial(multi)) < 1e-13

    def test_domain_guards(self):
        with pytest.raises(DomainError):
            jets.sqrt(seeded(-1.0))
        with pytest.raises(DomainError):
            jets.recip(seeded(0.0))
        with pytest.raises(DomainError):
            jets.atanh(seeded(1.0))
        with pytest.raises(DomainError):
            jets.elementary("gamma", seeded(1.0))

    def test_scalar_fallbacks(self):
        # Dispatchers accept plain floats too.
        assert jets.sin(0.25) == math.sin(0.25)
        assert jets.atan2(1.0, 1.0) == math.atan2(1.0, 1.0)
        with pytest.raises(DomainError):
            jets.sqrt(-2.0)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(-1.4, 1.4))
    def test_sin_sq_plus_cos_sq(self, a):
        j = seeded(a)
        one = jets.sin(j) * jets.sin(j) + jets.cos(j) * jets.cos(j)
        assert abs(one.value - 1.0) < 1e-14
        for multi in ((1, 0, 0, 0), (2, 0, 0, 0), (3, 0, 0, 0)):
            assert abs(one.partial(multi)) < 1e-13


class TestQJet:
    def test_seed_and_value(self):
        p = q(1, 2, 3, 4)
        g = QJet.seed_cartesian(p, 2)
        assert_close(g.value, p)
        # d(p)/dx = i as a quaternion-valued gradient entry
        assert_close(g.derivative(1).value, q(x=1))

    def test_square_partials(self):
        # f = p^2, f(1+i) = 2i; df/dt = 2p; df/dx = i p + p i.
        p = q(1, 1, 0, 0)
        g = QJet.seed_cartesian(p, 2)
        f = g * g
        assert_close(f.value, q(x=2))
        assert_close(f.derivative(0).value, q(2, 2, 0, 0))
        assert_close(f.derivative(1).value, q(-2, 2, 0, 0))
        # mixed second partial of p^2 in (t, x): d/dt(i p + p i) = 2 i
        assert_close(f.partial((1, 1, 0, 0)), q(x=2))

    def test_inverse_jet(self):
        p = q(0.5, -1.2, 0.8, 2.0)
        g = QJet.seed_cartesian(p, 3)
        prod = g * g.inverse()
        assert_close(prod.value, q(t=1), tol=1e-14)
        for v in range(4):
            assert float(prod.derivative(v).value.norm()) < 1e-13
        with pytest.raises(ZeroDivisor):
            QJet.seed_cartesian(q(), 1).inverse()

    def test_conjugate_and_norm_sq(self):
        p = q(1, 2, 3, 4)
        g = QJet.seed_cartesian(p, 1)
        n = g.norm_sq()
        assert abs(n.value - 30.0) < 1e-12
        assert abs(n.partial((1, 0, 0, 0)) - 2.0) < 1e-14
        assert abs(n.partial((0, 0, 1, 0)) - 6.0) < 1e-14

    def test_integer_exact_associativity(self):
        # Integer coefficient jets multiply exactly, so association
        # order is bit-identical, not merely close.
        a = QJet.seed_cartesian(q(1, 2, -3, 4), 3)
        b = QJet.seed_cartesian(q(-2, 5, 1, -1), 3)
        c = QJet.seed_cartesian(q(3, -1, 2, 2), 3)
        left = (a * b) * c
        right = a * (b * c)
        for ja, jb in zip(left.components(), right.components()):
            assert np.array_equal(ja.c, jb.c)

    def test_order_zero_matches_point(self):
        pts = Quaternion(np.array([0.3, -1.0]), np.array([1.0, 2.0]),
                         np.array([-0.5, 0.25]), np.array([2.0, -1.5]))
        g = QJet.seed_cartesian(pts, 0)
        f_jet = (g * g * g).value
        f_pt = pts * pts * pts
        # identical arithmetic path, so bit-identical results
        assert np.array_equal(np.stack(f_jet.components()),
                              np.stack(f_pt.components()))

    @settings(max_examples=30, deadline=None)
    @given(coef, coef, coef, coef)
    def test_jet_value_tracks_point(self, t, x, y, z):
        p = Quaternion(t, x, y, z)
        g = QJet.seed_cartesian(p, 2)
        f = g * g + g.conjugate() * 2.0 - g
        want = p * p + p.conjugate() * 2.0 - p
        assert float((f.value - want).norm()) < 1e-12

    def test_float_jet_near_associativity(self):
        rng = np.random.default_rng(5)
        vals = rng.uniform(-2.0, 2.0, size=(3, 4))
        a, b, c = (QJet.seed_cartesian(Quaternion(*v), 3) for v in vals)
        left = (a * b) * c
        right = a * (b * c)
        for ja, jb in zip(left.components(), right.components()):
            scale = float(np.max(np.abs(jb.c))) + 1.0
            assert float(np.max(np.abs(ja.c - jb.c))) <= 1e-13 * scale


def _shift(p, var, d):
    comps = list(p.components())
    comps[var] = comps[var] + d
    return Quaternion(*comps)


def _fd_first(f, pts, var, h=1e-5):
    def central(hh):
        return (f.eval_point(_shift(pts, var, hh))
                - f.eval_point(_shift(pts, var, -hh))) * (0.5 / hh)
    return (central(0.5 * h) * 4.0 - central(h)) * (1.0 / 3.0)


def _fd_second(f, pts, va, vb, h=1e-3):
    if va == vb:
        f0 = f.eval_point(pts)

        def stencil(hh):
            return (f.eval_point(_shift(pts, va, hh)) - f0 * 2.0
                    + f.eval_point(_shift(pts, va, -hh))) * (1.0 / (hh * hh))
    else:
        def stencil(hh):
            pp = f.eval_point(_shift(_shift(pts, va, hh), vb, hh))
            pm = f.eval_point(_shift(_shift(pts, va, hh), vb, -hh))
            mp = f.eval_point(_shift(_shift(pts, va, -hh), vb, hh))
            mm = f.eval_point(_shift(_shift(pts, va, -hh), vb, -hh))
            return (pp - pm - mp + mm) * (0.25 / (hh * hh))
    return (stencil(0.5 * h) * 4.0 - stencil(h)) * (1.0 / 3.0)


class TestJetsAgainstFiniteDifferences:
    def test_catalog_partials_match_fd(self):
        # Every first and second raw partial of every inventory member is
        # cross-checked against Richardson-extrapolated central
        # differences on a shared 100-point sample.
        base = SampleDomain(t_range=(-1.2, 1.2), r_range=(0.6, 1.8),
                            s_min=0.15)
        for f in default_inventory():
            pts = base.merge(f.domain).sample(100, seed=77)
            jet = f.eval_jet(QJet.seed_cartesian(pts, 2))
            for v in range(4):
                want = _fd_first(f, pts, v)
                got = jet.partial(tuple(int(v == m) for m in range(4)))
                gap = float(np.max((got - want).norm()))
                scale = float(np.max(want.norm())) + 1.0
                assert gap <= 1e-5 * scale, (f.fid, "first", v, gap)
            for va in range(4):
                for vb in range(va, 4):
                    want = _fd_second(f, pts, va, vb)
                    multi = tuple(int(va == m) + int(vb == m)
                                  for m in range(4))
                    got = jet.partial(multi)
                    gap = float(np.max((got - want).norm()))
                    scale = float(np.max(want.norm())) + 1.0
                    assert gap <= 1e-5 * scale, (f.fid, "second", va, vb, gap)
