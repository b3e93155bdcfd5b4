from fractions import Fraction

import numpy as np
import pytest

from minrep.errors import ChartMismatch, NotInMPlus, NotOnHyperboloid, NotOnSphere, SignatureMismatch
from minrep.exact import Signature, SignatureSplit
from minrep.geometry import (
    HyperboloidPoint,
    ProductSpherePoint,
    Region,
    SampledFunction,
    boundary_exponents,
    conformal_factor_check,
    m_minus_empty,
    m_plus_empty,
    m_region,
    phi1_forward,
    phi1_inverse,
    phi2_forward,
    phi2_inverse,
    random_hyperboloid_point,
    random_tangent,
    t_plus_extend,
    twisted_pullback,
)

SPLITS = [SignatureSplit(2, 1, 1, 2), SignatureSplit(2, 2, 2, 2), SignatureSplit(3, 2, 0, 2),
          SignatureSplit(1, 1, 1, 1)]


@pytest.mark.parametrize("split", SPLITS)
def test_phi1_round_trip(split):
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = random_hyperboloid_point(Signature(split.p1, split.q1), rng)
        b = random_hyperboloid_point(Signature(split.q2, split.p2), rng)
        pt = phi1_forward(a, b, split)
        assert m_region(pt) is Region.Plus
        a2, b2 = phi1_inverse(pt)
        for u, w in ((a.x, a2.x), (a.y, a2.y), (b.x, b2.x), (b.y, b2.y)):
            np.testing.assert_allclose(u, w, atol=1e-12)


def test_phi2_round_trip():
    split = SignatureSplit(2, 1, 1, 2)
    rng = np.random.default_rng(2)
    a = random_hyperboloid_point(Signature(1, 2), rng)
    b = random_hyperboloid_point(Signature(1, 2), rng)
    pt = phi2_forward(a, b, split)
    assert m_region(pt) is Region.Minus
    a2, b2 = phi2_inverse(pt)
    np.testing.assert_allclose(a.x, a2.x, atol=1e-12)
    np.testing.assert_allclose(b.y, b2.y, atol=1e-12)
    with pytest.raises(NotInMPlus):
        phi1_inverse(pt)


def test_empty_regions():
    assert m_minus_empty(SignatureSplit(3, 2, 0, 2))
    assert m_plus_empty(SignatureSplit(0, 2, 3, 2))
    assert not m_plus_empty(SignatureSplit(2, 2, 2, 2))


@pytest.mark.parametrize("split,which", [(s, 1) for s in SPLITS] + [(SignatureSplit(2, 2, 2, 2), 2)])
def test_conformal_factor(split, which):
    rng = np.random.default_rng(3)
    if which == 1:
        sa, sb = Signature(split.p1, split.q1), Signature(split.q2, split.p2)
    else:
        sa, sb = Signature(split.q1, split.p1), Signature(split.p2, split.q2)
    for _ in range(10):
        a, b = random_hyperboloid_point(sa, rng), random_hyperboloid_point(sb, rng)
        vs = [random_tangent(a, rng), random_tangent(b, rng), random_tangent(a, rng), random_tangent(b, rng)]
        r = conformal_factor_check(a, b, *vs, split, which=which)
        assert r["lhs"] == pytest.approx(r["rhs"], rel=1e-6, abs=1e-8)


def test_point_validation():
    with pytest.raises(NotOnHyperboloid):
        HyperboloidPoint(np.array([1.0, 1.0]), np.array([0.5]), Signature(2, 1))
    with pytest.raises(SignatureMismatch):
        HyperboloidPoint(np.array([1.0]), np.array([0.0]), Signature(2, 1))
    with pytest.raises(NotOnSphere):
        ProductSpherePoint(np.array([1.0, 1.0]), np.array([1.0, 0.0]), SignatureSplit(1, 1, 1, 1))


def test_twisted_pullback_round_trip():
    split = SignatureSplit(2, 1, 1, 2)

    def F(u, v):
        return 1.0 + u[..., 0] * v[..., 1] + u[..., 2] ** 2

    g = twisted_pullback("forward", SampledFunction("M", F, split), which=1)
    back = twisted_pullback("inverse", g, which=1)
    rng = np.random.default_rng(4)
    a = random_hyperboloid_point(Signature(2, 1), rng)
    b = random_hyperboloid_point(Signature(2, 1), rng)
    pt = phi1_forward(a, b, split)
    assert back(pt.u, pt.v) == pytest.approx(F(pt.u, pt.v), rel=1e-12)
    with pytest.raises(ChartMismatch):
        twisted_pullback("inverse", SampledFunction("M", F, split))


def test_extension_by_zero_vanishes_off_m_plus():
    split = SignatureSplit(1, 1, 1, 1)
    f = SampledFunction("X1", lambda x1, y1, y2, x2: np.ones(np.shape(x1)[:-1]), split)
    T = t_plus_extend(f)
    # |u'|^2 < |v'|^2 is in M_-
    u = np.array([np.cos(1.2), np.sin(1.2)])
    v = np.array([np.cos(0.3), np.sin(0.3)])
    assert T(u, v) == 0.0
    assert T(v, u) > 0.0


def test_boundary_exponent_flags():
    e = boundary_exponents(Fraction(2), Fraction(2), SignatureSplit(2, 2, 2, 2))
    assert e["case1_exp"] == 2 and e["l2"] and e["grad_l2eps"] and e["hess_l1"]
    e = boundary_exponents(Fraction(1, 4), Fraction(1, 4), SignatureSplit(2, 2, 2, 2))
    assert e["l2"] and not e["grad_l2eps"]
    e = boundary_exponents(Fraction(1, 2), Fraction(-3, 4), SignatureSplit(2, 2, 2, 2))
    assert not e["case2"]["l2"] and e["case3"]["l2"]
    assert e["case2_radial_exp"] == Fraction(-7, 4)
