"""Gauss hypergeometric and Jacobi functions in double precision.

All evaluators accept scalars or numpy arrays for the argument.  Series are
summed with Neumaier compensation.  For negative arguments the two Pfaff
forms are used; whenever one of them terminates it is preferred, which makes
the Jacobi functions attached to K-types exact polynomials in tanh^2 t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentNearOne, NoConvergence, PoleC, WindowTooNoisy

REL_STOP = 1e-16
STOP_RUN = 3
MAX_TERMS = 10000
ARG_MARGIN = 1e-6


@dataclass(frozen=True)
class HypergeometricParams:
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class JacobiFunctionSpec:
    """phi_{i lam}^{(lam_pp, lam_p)}; note the superscript order."""

    lam: float
    lam_p: float
    lam_pp: float

    @property
    def params(self) -> HypergeometricParams:
        lam, lp, lpp = float(self.lam), float(self.lam_p), float(self.lam_pp)
        return HypergeometricParams((lp + lpp + 1 - lam) / 2, (lp + lpp + 1 + lam) / 2, lpp + 1)


def nonpositive_integer(x: float) -> int | None:
    """-x if x is a non-positive integer (within 1e-12), else None."""
    r = round(x)
    if r <= 0 and abs(x - r) < 1e-12:
        return -r
    return None


def _series(a, b, c, z):
    """Direct power series, vectorized over z, compensated summation."""
    z = np.asarray(z, dtype=float)
    k = nonpositive_integer(a)
    kb = nonpositive_integer(b)
    nterms = None
    if k is not None or kb is not None:
        nterms = min(x for x in (k, kb) if x is not None)
    total = np.ones_like(z)
    comp = np.zeros_like(z)
    term = np.ones_like(z)
    small_run = np.zeros(z.shape, dtype=int)
    n = 0
    while True:
        if nterms is not None and n >= nterms:
            break
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * z
        n += 1
        t = total + term
        # Neumaier: recover the low-order bits lost in the addition
        big = np.abs(total) >= np.abs(term)
        comp = comp + np.where(big, (total - t) + term, (term - t) + total)
        total = t
        if nterms is None:
            scale = np.abs(total + comp)
            tiny = np.abs(term) <= REL_STOP * np.where(scale > 0, scale, 1.0)
            small_run = np.where(tiny, small_run + 1, 0)
            if np.all(small_run >= STOP_RUN):
                break
            if n >= MAX_TERMS:
                raise NoConvergence(f"2F1({a},{b};{c};z) needs more than {MAX_TERMS} terms")
    return total + comp


def hyp2f1_series(params: HypergeometricParams, z):
    """Untransformed series; valid for |z| < 1 or when terminating."""
    a, b, c = params.a, params.b, params.c
    if nonpositive_integer(c) is not None:
        raise PoleC(f"c={c} is a non-positive integer")
    return _series(a, b, c, z)


def _is_terminating(a, b) -> bool:
    return nonpositive_integer(a) is not None or nonpositive_integer(b) is not None


def gauss_2f1(params: HypergeometricParams, z):
    """2F1(a, b; c; z) for real z < 1 (any z when the series terminates)."""
    a, b, c = params.a, params.b, params.c
    if nonpositive_integer(c) is not None:
        raise PoleC(f"c={c} is a non-positive integer")
    z_arr = np.asarray(z, dtype=float)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    out = np.empty_like(z_arr)

    if _is_terminating(a, b):
        out[:] = _series(a, b, c, z_arr)
        return float(out[0]) if scalar else out

    neg = z_arr < 0
    if np.any(neg):
        zn = z_arr[neg]
        w = zn / (zn - 1.0)
        log1mz = np.log1p(-zn)
        term_a = nonpositive_integer(c - b) is not None
        term_b = nonpositive_integer(c - a) is not None
        if term_a and term_b:
            # both terminate: the larger exponent carries the true decay and
            # leaves a polynomial without cancellation near w = 1
            term_a, term_b = a >= b, a < b
        if term_a:
            # (1-z)^{-a} F(a, c-b; c; w), terminating
            out[neg] = np.exp(-a * log1mz) * _series(a, c - b, c, w)
        elif term_b:
            out[neg] = np.exp(-b * log1mz) * _series(c - a, b, c, w)
        else:
            if np.any(w > 1 - ARG_MARGIN):
                raise NoConvergence("transformed argument too close to 1")
            out[neg] = np.exp(-a * log1mz) * _series(a, c - b, c, w)
    pos = ~neg
    if np.any(pos):
        zp = z_arr[pos]
        if np.any(zp >= 1):
            raise NoConvergence("argument >= 1 for a non-terminating series")
        if nonpositive_integer(c - a) is not None or nonpositive_integer(c - b) is not None:
            # Euler: (1-z)^{c-a-b} F(c-a, c-b; c; z), terminating
            out[pos] = np.exp((c - a - b) * np.log1p(-zp)) * _series(c - a, c - b, c, zp)
        else:
            if np.any(zp > 1 - ARG_MARGIN):
                raise NoConvergence("argument too close to 1")
            out[pos] = _series(a, b, c, zp)
    return float(out[0]) if scalar else out


def jacobi_phi(spec: JacobiFunctionSpec, t):
    """phi_{i lam}^{(lam'', lam')}(t) = 2F1(a, b; lam''+1; -sinh^2 t)."""
    t_arr = np.asarray(t, dtype=float)
    z = -np.sinh(t_arr) ** 2
    val = gauss_2f1(spec.params, z)
    val = np.where(t_arr == 0, 1.0, val)
    return float(val) if np.ndim(val) == 0 else val


def jacobi_phi_imag(spec: JacobiFunctionSpec, theta):
    """phi(i theta) = 2F1(a, b; c; sin^2 theta) for 0 <= theta < pi/2.

    Terminating parameter sets are accepted up to theta = pi/2.
    """
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0) or np.any(th > np.pi / 2):
        raise ValueError("theta must lie in [0, pi/2]")
    p = spec.params
    z = np.sin(th) ** 2
    if not _is_terminating(p.a, p.b):
        if nonpositive_integer(p.c - p.a) is None and nonpositive_integer(p.c - p.b) is None:
            if np.any(z > 1 - ARG_MARGIN):
                raise ArgumentNearOne("theta too close to pi/2")
    val = gauss_2f1(p, z)
    val = np.where(th == 0, 1.0, val)
    return float(val) if np.ndim(val) == 0 else val


def ode_residual(params: HypergeometricParams, z: float, h: float = 5e-3) -> float:
    """Residual of z(1-z)F'' + (c-(a+b+1)z)F' - abF at z, relative to the
    largest of the three terms and |F|.  Central differences with step
    h*max(1,|z|) and one Richardson step.
    """
    a, b, c = params.a, params.b, params.c
    hh = h * max(1.0, abs(z))

    def derivs(step):
        f = gauss_2f1(params, np.array([z - step, z, z + step]))
        return (f[2] - f[0]) / (2 * step), (f[2] - 2 * f[1] + f[0]) / step**2, f[1]

    d1a, d2a, f0 = derivs(hh)
    d1b, d2b, _ = derivs(hh / 2)
    d1 = (4 * d1b - d1a) / 3
    d2 = (4 * d2b - d2a) / 3
    terms = (z * (1 - z) * d2, (c - (a + b + 1) * z) * d1, -a * b * f0)
    scale = max(max(abs(x) for x in terms), abs(f0))
    return abs(math.fsum(terms)) / scale if scale > 0 else 0.0


def radial_profile(spec: JacobiFunctionSpec, m: int, n: int, t):
    """(cosh t)^m (sinh t)^n phi(t), the t-dependence of a K-type vector."""
    t = np.asarray(t, dtype=float)
    return np.cosh(t) ** m * np.sinh(t) ** n * jacobi_phi(spec, t)


def asymptotic_decay_check(spec: JacobiFunctionSpec, rho: float, m: int, n: int,
                           T: float = 8.0, width: float = 4.0, samples: int = 41):
    """Least-squares fit of log|f| = rate * t + log|coefficient| on [T, T+width]
    for f = (cosh t)^m (sinh t)^n phi(t).
    """
    t = np.linspace(T, T + width, samples)
    f = radial_profile(spec, m, n, t)
    if not np.all(np.isfinite(f)) or np.any(f == 0):
        raise WindowTooNoisy("profile vanishes or overflows in the fit window")
    if np.any(np.sign(f) != np.sign(f[0])):
        raise WindowTooNoisy("profile changes sign in the fit window")
    y = np.log(np.abs(f))
    rate, intercept = np.polyfit(t, y, 1)
    resid = y - (rate * t + intercept)
    if np.max(np.abs(resid)) > 1e-3:
        raise WindowTooNoisy(f"log-linear fit residual {np.max(np.abs(resid)):.2e}")
    return {
        "fitted_rate": float(rate),
        "coefficient": float(np.sign(f[0]) * math.exp(intercept)),
        "expected_rate": -(float(spec.lam) + float(rho)),
    }


def triangular_sides(lam, lam_p, lam_pp, t, m_value: float):
    """Both sides of the relation between the two Jacobi functions, with the
    imaginary-axis angle fixed by cot(theta) = sinh(t).

    left  = phi_{i lam'}^{(lam, lam'')}(i theta)
    right = M * (cosh t)^{lam + lam' + lam'' + 1} * phi_{i lam}^{(lam'', lam')}(t)
    """
    t = np.asarray(t, dtype=float)
    theta = np.arctan2(1.0, np.sinh(t))
    left = jacobi_phi_imag(JacobiFunctionSpec(lam_p, lam_pp, lam), theta)
    right = m_value * np.cosh(t) ** (lam + lam_p + lam_pp + 1) * jacobi_phi(
        JacobiFunctionSpec(lam, lam_p, lam_pp), t)
    return left, right
