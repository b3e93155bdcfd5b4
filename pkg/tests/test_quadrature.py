import math
from fractions import Fraction

import numpy as np
import pytest

from minrep.errors import HypothesisViolated, NotInKernel, ToleranceNotMet, TruncationInsufficient
from minrep.exact import Signature, SignatureSplit
from minrep.harmonics import sphere_volume
from minrep.quadrature import (
    ZonalTerm,
    ZonalTestFunction,
    adaptive_interval,
    integrate,
    ktype_pullback_check,
    l2_boundary_probe,
    minrep_norm,
    parseval_verify,
    pi_norm,
    verify_v_pm,
    verify_v_pp,
)


def test_finite_interval_and_half_line():
    r = integrate(np.sin, "finite_interval", 1e-12, a=0.0, b=np.pi)
    assert r.value == pytest.approx(2.0, abs=1e-12)
    r = integrate(lambda t: np.exp(-t), "half_line", 1e-12, a=0.0, decay_rate=1.0)
    assert r.value == pytest.approx(1.0, abs=1e-12)


def test_vector_valued_integrand():
    r = integrate(lambda t: np.stack([t, t**2], axis=-1), "finite_interval", 1e-12, a=0.0, b=1.0)
    np.testing.assert_allclose(r.value, [0.5, 1 / 3], atol=1e-13)


def test_product_sphere_volume():
    split = SignatureSplit(1, 1, 1, 1)
    r = integrate(lambda u, v: np.ones(np.broadcast_shapes(u.shape[:-1], v.shape[:-1])),
                  "product_sphere_chart", 1e-10, split=split)
    assert r.value == pytest.approx(sphere_volume(2) ** 2, rel=1e-10)


def test_tolerance_not_met():
    with pytest.raises(ToleranceNotMet):
        adaptive_interval(lambda t: 1 / np.sqrt(np.abs(t - 0.3)), 0.0, 1.0, tol=1e-14, max_panels=20)


@pytest.mark.parametrize("args", [("5/2", "1/2", "1"), ("4", "-1/2", "3/2"), ("9/2", "1/2", "1")])
def test_v_pm(args):
    assert verify_v_pm(*args).passed


@pytest.mark.parametrize("args", [("1/2", "1/2", "2"), ("0", "-1/2", "5/2"), ("1", "1/2", "9/2")])
def test_v_pp(args):
    assert verify_v_pp(*args).passed


def test_v_pm_hypotheses():
    with pytest.raises(HypothesisViolated):
        verify_v_pm(2, 1, 1)  # parity fails
    with pytest.raises(HypothesisViolated):
        verify_v_pm(3, 1, -1)


def test_pi_norm_is_lambda_times_l2():
    rep = pi_norm(2, 0, Signature(3, 3), 1)
    assert rep.ratio == pytest.approx(1.0, rel=1e-9)
    rep = pi_norm(2, 0, Signature(5, 3), 2)
    assert rep.ratio == pytest.approx(2.0, rel=1e-9)


def test_pi_norm_rejects_non_ktype():
    with pytest.raises(HypothesisViolated):
        pi_norm(0, 0, Signature(3, 3), 1)


def test_minrep_norm_weight():
    assert minrep_norm(1, 1, Signature(4, 4), 2.0) == pytest.approx(2 * 2.0)
    with pytest.raises(NotInKernel):
        minrep_norm(1, 2, Signature(4, 4))


@pytest.mark.parametrize("m,k,l,qp", [(0, 0, 0, 1), (2, 0, 2, 1), (2, 1, 1, 2)])
def test_ktype_pullback(m, k, l, qp):
    assert ktype_pullback_check(m, k, l, Signature(4, 4), qp) < 1e-10


def test_ktype_pullback_requires_occurrence():
    with pytest.raises(HypothesisViolated):
        ktype_pullback_check(1, 0, 0, Signature(4, 4), 1)


def test_parseval_single_ktype():
    F = ZonalTestFunction(Signature(4, 4), (ZonalTerm(1, 1, 1.0, (1.0, 0, 0, 0), (0, 1.0, 0, 0)),))
    rec = parseval_verify(4, 1, 3, F, l_max=1)
    assert rec.passed and rec.rel_err_routes < 1e-8


def test_parseval_truncation_detected():
    F = ZonalTestFunction(Signature(4, 4), (ZonalTerm(2, 2, 1.0, (1.0, 0, 0, 0), (0.6, 0, 0.8, 0)),))
    with pytest.raises(TruncationInsufficient):
        parseval_verify(4, 1, 3, F, l_max=0)


def test_zonal_function_kernel_condition():
    with pytest.raises(HypothesisViolated):
        ZonalTestFunction(Signature(4, 4), (ZonalTerm(1, 2, 1.0, (1.0, 0, 0, 0), (1.0, 0, 0, 0)),))


@pytest.mark.parametrize("lp,lpp,split,order,expect", [
    ("2", "2", (2, 2, 2, 2), 0, True),
    ("1/4", "1/4", (2, 2, 2, 2), 1, False),
    ("3/2", "3/2", (1, 1, 1, 1), 2, True),
])
def test_boundary_probe(lp, lpp, split, order, expect):
    rep = l2_boundary_probe(Fraction(lp), Fraction(lpp), SignatureSplit(*split), order)
    assert rep.agrees and rep.converged is expect


def test_boundary_probe_requires_corners():
    with pytest.raises(HypothesisViolated):
        l2_boundary_probe(1, 1, SignatureSplit(2, 2, 0, 2))


def test_growth_exponent_fit():
    rep = l2_boundary_probe(Fraction(2), Fraction(2), SignatureSplit(2, 2, 2, 2), 0)
    assert rep.growth_exponent_fit == pytest.approx(2.0, abs=0.05)
    assert math.isfinite(rep.strata[2].gamma)
