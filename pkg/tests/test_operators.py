from fractions import Fraction

import numpy as np
import pytest

from minrep.exact import Signature
from minrep.geometry import SampledFunction, random_hyperboloid_point
from minrep.harmonics import HarmonicLabel, ZonalHarmonic
from minrep.operators import (
    ambient_laplacian,
    eigen_residual,
    ktype_membership_on_M,
    laplacian_eigenvalue,
    product_yamabe_split,
    radial_ansatz,
    yamabe_shift,
)


def _points(sig, n, seed=0, t_max=2.0):
    rng = np.random.default_rng(seed)
    return [(pt.x, pt.y) for pt in (random_hyperboloid_point(sig, rng, t_max) for _ in range(n))]


def test_eigenvalue_bookkeeping():
    assert laplacian_eigenvalue(Signature(3, 3), 2) == 0
    assert yamabe_shift(Signature(3, 3)) == Fraction(15, 4)
    rec = product_yamabe_split(2, 3)
    assert rec["lambda"].fraction == Fraction(5, 2)
    assert rec["product_eigenvalue"] == 0


def test_restricted_harmonic_polynomial():
    # x1 y1 is harmonic of degree 2 on R^{3,2}: Delta f = -d(d+p+q-2) f
    sig = Signature(3, 2)
    f = SampledFunction("X", lambda x, y: x[..., 0] * y[..., 0], sig=sig)
    for x, y in _points(sig, 4):
        assert ambient_laplacian(f, x, y) == pytest.approx(-2 * 5 * f(x, y), abs=1e-6)


@pytest.mark.parametrize("sig,lam,m,n", [
    (Signature(3, 3), 1, 2, 0), (Signature(3, 3), 2, 5, 2), (Signature(4, 2), 1, 4, 2),
    (Signature(5, 3), Fraction(3, 2), 3, 0), (Signature(3, 1), 1, 1, 0),
])
def test_radial_ansatz_is_eigenfunction(sig, lam, m, n):
    pts = _points(sig, 5, seed=1)
    assert eigen_residual(m, n, sig, float(lam), pts) < 1e-7
    assert eigen_residual(m, n, sig, float(lam), pts, method="radial") < 1e-7


def test_ode_holds_off_the_lattice():
    # the Jacobi profile solves the radial equation for every lambda; only
    # square-integrability singles out the lattice
    sig = Signature(3, 3)
    pts = _points(sig, 3, seed=2)
    assert eigen_residual(2, 0, sig, 1.3, pts) < 1e-7


def test_radial_ansatz_label_mismatch():
    with pytest.raises(ValueError):
        radial_ansatz(1, 0, Signature(3, 3), 1, h_m=ZonalHarmonic(HarmonicLabel(2, 3)))


def test_kernel_membership():
    assert ktype_membership_on_M(2, 1, Signature(3, 5))
    assert not ktype_membership_on_M(2, 2, Signature(3, 5))
