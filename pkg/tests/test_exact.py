from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from minrep.errors import DeltaUndefined, NonIntegralB, SignUndefined, ZeroLambda
from minrep.exact import (
    GammaValue,
    HalfInt,
    Signature,
    SignatureSplit,
    a0_set,
    a_variant_sets,
    b_epsilon_delta,
    gamma_half,
    identity_sides,
    in_a0,
    lambda_pair_sets,
    lambda_v_exact,
    m_constant_exact,
    v_constant_exact,
)

halves = st.integers(min_value=-40, max_value=40).map(HalfInt)
sigs = st.builds(Signature, st.integers(0, 7), st.integers(0, 7))


def H(s):
    return HalfInt.of(s)


# --- HalfInt -------------------------------------------------------------


@given(halves, halves)
def test_halfint_arithmetic_matches_fractions(a, b):
    assert (a + b).fraction == a.fraction + b.fraction
    assert (a - b).fraction == a.fraction - b.fraction
    assert (-a).fraction == -a.fraction
    assert HalfInt.of(str(a)) == a


def test_halfint_rejects_thirds():
    with pytest.raises(ValueError):
        HalfInt.of(Fraction(1, 3))
    with pytest.raises(ValueError):
        HalfInt.of(0.25)


# --- Gamma at half-integers ------------------------------------------------


def test_gamma_examples():
    g = gamma_half(H("1/2"))
    assert (g.rational_part, g.sqrt_pi_power) == (1, 1)
    assert gamma_half(3) == GammaValue(Fraction(2))
    g = gamma_half(H("-1/2"))
    assert (g.rational_part, g.sqrt_pi_power) == (-2, 1)


@pytest.mark.parametrize("tv", range(-11, 24))
def test_gamma_against_mpmath(tv):
    x = HalfInt(tv)
    g = gamma_half(x)
    if tv <= 0 and tv % 2 == 0:
        assert g.is_pole
    else:
        assert float(g) == pytest.approx(float(mpmath.gamma(mpmath.mpf(tv) / 2)), rel=1e-13)


def test_gammavalue_string_roundtrip():
    for g in (gamma_half(H("7/2")), gamma_half(5), GammaValue.pole(), GammaValue(Fraction(-3, 7), 3)):
        assert GammaValue.parse(str(g)) == g


# --- parameter sets -----------------------------------------------------------


def test_a0_examples():
    assert a0_set(Signature(1, 0), 5) == [H("-1/2"), H("1/2")]
    assert a0_set(Signature(3, 1), 3) == [H(0), H(1), H(2), H(3)]
    assert a0_set(Signature(0, 5), 9) == []
    assert a0_set(Signature(1, 3), 9) == []
    assert a0_set(Signature(4, 0), 3) == [H(1), H(2), H(3)]


@given(sigs, halves)
def test_a0_set_agrees_with_membership(sig, lam):
    listed = lam in a0_set(sig, H(20))
    assert listed == in_a0(lam, sig)


def test_a_variant_sets():
    assert a_variant_sets(Signature(2, 2), 4).A_prime == [H(2), H(3), H(4)]
    assert a_variant_sets(Signature(1, 0), 4).A_plus == [H("1/2")]
    assert a_variant_sets(Signature(0, 3), 4) == ([], [])


def test_lambda_pair_sets():
    split = SignatureSplit(2, 2, 2, 2)
    assert lambda_pair_sets(1, split, 5).Lambda_pp == []
    pp = lambda_pair_sets(5, split, 5).Lambda_pp
    # A_+(2,2) = {1, 2, ...}; 5 - l' - l'' - 1 in {0, 2, ...}
    assert sorted((int(a), int(b)) for a, b in pp) == [(1, 1), (1, 3), (2, 2), (3, 1)]
    for a, b in lambda_pair_sets(H("3/2"), SignatureSplit(3, 2, 2, 1), 8).Lambda_pm:
        e = a - b - H("3/2") - 1
        assert e.twice_value >= 0 and e.twice_value % 4 == 0


def test_b_epsilon_delta():
    r = b_epsilon_delta(2, Signature(3, 3))
    assert (r.b, r.epsilon, r.delta) == (H(3), -1, 1)
    r = b_epsilon_delta(H("1/2"), Signature(4, 1))
    assert r.b == H(0) and r.delta is None
    with pytest.raises(NonIntegralB):
        b_epsilon_delta(H("1/2"), Signature(3, 3))


def test_delta_for_odd_sum():
    from minrep.exact import delta_sign

    with pytest.raises(DeltaUndefined):
        delta_sign(Signature(3, 2))


# --- closed-form constants ----------------------------------------------------


def _v_oracle(kind, lp, lpp, lam):
    lp, lpp, lam = (mpmath.mpf(float(Fraction(x))) for x in (lp, lpp, lam))
    G = mpmath.gamma
    if kind == "pm":
        A, B = (lp - lpp + lam + 1) / 2, (lp - lpp - lam + 1) / 2
        C, D = (lp + lpp + lam + 1) / 2, (lp + lpp - lam + 1) / 2
    else:
        A, B = (-lp - lpp + lam + 1) / 2, (lp - lpp + lam + 1) / 2
        C, D = (-lp + lpp + lam + 1) / 2, (lp + lpp + lam + 1) / 2
    return G(lpp + 1) ** 2 * G(A) * G(B) / (2 * lam * G(C) * G(D))


@pytest.mark.parametrize("kind,args", [
    ("pm", ("5/2", "1/2", "1")), ("pm", ("4", "1", "1")), ("pm", ("9/2", "-1/2", "1")),
    ("pp", ("1/2", "1/2", "2")), ("pp", ("0", "1", "4")), ("pp", ("3/2", "-1/2", "3")),
])
def test_v_constant_against_gamma_oracle(kind, args):
    got = float(v_constant_exact(kind, *args))
    assert got == pytest.approx(float(_v_oracle(kind, *args)), rel=1e-13)


def test_v_constant_rejects_zero_lambda_but_lambda_v_survives():
    with pytest.raises(ZeroLambda):
        v_constant_exact("pm", 2, 1, 0)
    assert not lambda_v_exact("pm", 2, 1, 0).is_pole


def test_v_pm_by_quadrature_oracle():
    # independent route: mpmath integrates phi^2 cosh^{2l'+1} sinh^{2l''+1}
    lp, lpp, lam = 2.5, 0.5, 1.0
    a, b, c = (lp + lpp + 1 - lam) / 2, (lp + lpp + 1 + lam) / 2, lpp + 1

    def f(t):
        return (mpmath.hyp2f1(a, b, c, -mpmath.sinh(t) ** 2) ** 2
                * mpmath.cosh(t) ** (2 * lp + 1) * mpmath.sinh(t) ** (2 * lpp + 1))

    val = mpmath.quad(f, [0, 1, 5, mpmath.inf])
    assert float(v_constant_exact("pm", "5/2", "1/2", 1)) == pytest.approx(float(val), rel=1e-10)


def test_m_constant_is_one_on_the_diagonal():
    for lam in ("1/2", "1", "5/2"):
        for lpp in ("-1/2", "0", "3/2"):
            lp = H(lam) + H(lpp) + 1
            assert m_constant_exact(lam, lp, lpp) == GammaValue(Fraction(1))


def test_m_constant_sign_needs_integer_exponent():
    with pytest.raises(SignUndefined):
        m_constant_exact(1, 2, 1)


def test_msq_identity_exact():
    n = 0
    grid = [HalfInt(k) for k in range(-1, 10)]
    for lp in grid:
        for lpp in grid:
            for lam in grid:
                e = (lp - lpp - lam - 1).twice_value
                if lam.twice_value > 0 and e >= 0 and e % 4 == 0:
                    left, right = identity_sides(lam, lp, lpp)
                    assert left == right
                    n += 1
    assert n == 46
