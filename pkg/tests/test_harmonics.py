import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from minrep.errors import NotOnSphere
from minrep.harmonics import (
    HarmonicLabel,
    ZonalHarmonic,
    branching_dimension_check,
    classical_branching,
    dim_harmonic,
    projection_matrix,
    sphere_laplacian_fd,
    sphere_rule,
    sphere_volume,
)


def dim_oracle(l, q):
    # (2l+q-2)(l+q-3)! / (l!(q-2)!) for q >= 2
    if q == 2:
        return 1 if l == 0 else 2
    return (2 * l + q - 2) * math.factorial(l + q - 3) // (math.factorial(l) * math.factorial(q - 2))


@given(st.integers(0, 15), st.integers(2, 9))
def test_dim_harmonic(l, q):
    assert dim_harmonic(HarmonicLabel(l, q)) == dim_oracle(l, q)


def test_dim_harmonic_line():
    assert [dim_harmonic(HarmonicLabel(l, 1)) for l in range(4)] == [1, 1, 0, 0]


def test_classical_branching_dimensions():
    for n in range(11):
        for q1 in range(1, 7):
            for q2 in range(1, 7):
                lhs, rhs = branching_dimension_check(n, q1, q2)
                assert lhs == rhs, (n, q1, q2)


def test_classical_branching_pairs():
    assert classical_branching(2, 2, 2) == [(0, 0), (2, 0), (1, 1), (0, 2)]


def _moment_oracle(alpha):
    # integral of prod x_i^{a_i} over S^{q-1}, all a_i even
    if any(a % 2 for a in alpha):
        return 0.0
    b = [(a + 1) / 2 for a in alpha]
    return 2 * math.prod(math.gamma(x) for x in b) / math.gamma(sum(b))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_sphere_rule_moments(q):
    pts, w = sphere_rule(q, 8)
    assert w.sum() == pytest.approx(sphere_volume(q), rel=1e-13)
    rng = np.random.default_rng(q)
    for _ in range(10):
        alpha = rng.multinomial(8, [1 / q] * q) if q > 1 else [8]
        val = np.dot(w, np.prod(pts**alpha, axis=1))
        assert val == pytest.approx(_moment_oracle(alpha), abs=1e-13)


@pytest.mark.parametrize("l,q", [(0, 3), (1, 3), (2, 4), (3, 5), (4, 2)])
def test_zonal_is_spherical_eigenfunction(l, q):
    z = ZonalHarmonic(HarmonicLabel(l, q), tuple(np.arange(1.0, q + 1)))
    rng = np.random.default_rng(0)
    x = rng.standard_normal(q)
    x /= np.linalg.norm(x)
    lap = sphere_laplacian_fd(z, x)
    assert lap == pytest.approx(-l * (l + q - 2) * z(x), abs=1e-6 * max(1, abs(z(x))))


def test_zonal_rejects_off_sphere():
    z = ZonalHarmonic(HarmonicLabel(2, 3))
    with pytest.raises(NotOnSphere):
        z(np.array([1.0, 1.0, 0.0]))


def test_projection_is_idempotent_and_reproduces_harmonics():
    q, l = 3, 2
    pts, w = sphere_rule(q, 8)
    P = projection_matrix(l, q, pts, w)
    z = ZonalHarmonic(HarmonicLabel(l, q), (0.3, -0.2, 0.9))
    f = z(pts)
    np.testing.assert_allclose(P @ f, f, atol=1e-12)
    other = ZonalHarmonic(HarmonicLabel(3, q), (1.0, 0.0, 0.0))(pts)
    np.testing.assert_allclose(P @ other, 0, atol=1e-12)
