"""Laplace-Beltrami and Yamabe eigenvalue bookkeeping on hyperboloids, and
the separated K-type eigenfunctions on X(p,q).

Sign convention.  X(p,q) carries the metric induced from the flat form
|dx|^2 - |dy|^2, so in the coordinates (omega cosh t, eta sinh t) the
t-direction is negative.  The Laplace-Beltrami operator is then

    Delta = -(d_t^2 + ((p-1) tanh t + (q-1) coth t) d_t)
            + cosh(t)^-2 Delta_{S^{p-1}} - sinh(t)^-2 Delta_{S^{q-1}},

which is what the ambient identity Box F = Delta f (F the degree-0
homogeneous extension of f) produces.  With this convention the restriction
of a harmonic polynomial of degree d satisfies Delta f = -d(d+p+q-2) f,
i.e. lambda = d + (p+q-2)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import HalfInt, Signature
from .geometry import SampledFunction
from .harmonics import HarmonicLabel, ZonalHarmonic
from .specfun import JacobiFunctionSpec, jacobi_phi


def _frac(x) -> Fraction:
    if isinstance(x, HalfInt):
        return x.fraction
    return Fraction(x)


def yamabe_shift(sig: Signature) -> Fraction:
    n = sig.p + sig.q
    return Fraction((n - 1) * (n - 3), 4)


def laplacian_eigenvalue(sig: Signature, lam) -> Fraction:
    """-lambda^2 + (p+q-2)^2/4."""
    lam = _frac(lam)
    return -lam * lam + Fraction((sig.p + sig.q - 2) ** 2, 4)


def yamabe_eigenvalue(lam) -> Fraction:
    lam = _frac(lam)
    return Fraction(1, 4) - lam * lam


@dataclass(frozen=True)
class EigenspaceSpec:
    sig: Signature
    lam: Fraction
    parity: str = "none"

    def laplacian(self) -> Fraction:
        return laplacian_eigenvalue(self.sig, self.lam)

    def yamabe(self) -> Fraction:
        return self.laplacian() - yamabe_shift(self.sig)


def product_yamabe_eigenvalue(first, second) -> Fraction:
    """Yamabe eigenvalue of a product eigenfunction on a product with the
    second metric negated: first-factor eigenvalue minus second-factor one."""
    return _frac(first) - _frac(second)


def product_yamabe_split(l: int, q_pp: int) -> dict:
    """A harmonic of degree l on S^{q''-1} has Yamabe eigenvalue
    1/4 - (l + q''/2 - 1)^2; the kernel condition forces the hyperboloid
    factor to carry the parameter lambda = l + q''/2 - 1."""
    lam = HalfInt(2 * l + q_pp - 2)
    sphere = Fraction(1, 4) - lam.fraction ** 2
    return {
        "sphere_eigenvalue": sphere,
        "lambda": lam,
        "hyperboloid_eigenvalue": yamabe_eigenvalue(lam),
        "product_eigenvalue": product_yamabe_eigenvalue(yamabe_eigenvalue(lam), sphere),
    }


def ktype_membership_on_M(m: int, n: int, sig: Signature) -> bool:
    """H^m(R^p) x H^n(R^q) lies in the kernel of the product Yamabe operator
    on S^{p-1} x S^{q-1} iff m + p/2 = n + q/2."""
    return 2 * (m - n) == sig.q - sig.p


def _default_zonal(degree: int, dim: int) -> ZonalHarmonic:
    return ZonalHarmonic(HarmonicLabel(degree, dim))


def radial_ansatz(m: int, n: int, sig: Signature, lam, h_m: ZonalHarmonic | None = None,
                  h_n: ZonalHarmonic | None = None) -> SampledFunction:
    """h_m(omega) h_n(eta) (cosh t)^m (sinh t)^n phi_{i lam}^{(n+q/2-1, m+p/2-1)}(t)
    at (x, y) = (omega cosh t, eta sinh t).

    h_m(omega) cosh^m t is the harmonic polynomial h_m evaluated at x, so the
    function is smooth across y = 0.
    """
    p, q = sig.p, sig.q
    h_m = h_m or _default_zonal(m, p)
    h_n = h_n or _default_zonal(n, q)
    if h_m.label != HarmonicLabel(m, p) or h_n.label != HarmonicLabel(n, q):
        raise ValueError("harmonic labels do not match (m, n, sig)")
    spec = JacobiFunctionSpec(float(lam), m + p / 2 - 1, n + q / 2 - 1)

    def f(x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        t = np.arcsinh(np.linalg.norm(y, axis=-1))
        return h_m.poly(x) * h_n.poly(y) * jacobi_phi(spec, t)

    return SampledFunction("X", f, sig=sig)


def ambient_laplacian(f: SampledFunction, x, y, h: float = 3e-3) -> float:
    """Laplace-Beltrami of f on X(p,q) at (x, y) from the flat operator
    sum d^2/dx_i^2 - sum d^2/dy_j^2 applied to the degree-0 extension."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    p = x.size
    z0 = np.concatenate([x, y])
    signs = np.concatenate([np.ones(p), -np.ones(y.size)])

    def ext(z):
        s = np.sqrt(np.sum(z[:p] ** 2) - np.sum(z[p:] ** 2))
        return float(f(z[:p] / s, z[p:] / s))

    def box(step):
        c = ext(z0)
        total = 0.0
        for i in range(z0.size):
            e = np.zeros(z0.size)
            e[i] = step
            total += signs[i] * (ext(z0 + e) - 2 * c + ext(z0 - e))
        return total / step**2

    return (4 * box(h / 2) - box(h)) / 3


def radial_laplacian(profile, t: float, m: int, n: int, sig: Signature, h: float = 1e-3) -> float:
    """Delta applied to h_m(omega) h_n(eta) g(t), divided by h_m h_n, where
    ``profile`` computes g."""
    p, q = sig.p, sig.q

    def d12(step):
        gm, g0, gp = profile(t - step), profile(t), profile(t + step)
        return (gp - gm) / (2 * step), (gp - 2 * g0 + gm) / step**2, g0

    d1a, d2a, g0 = d12(h)
    d1b, d2b, _ = d12(h / 2)
    d1 = (4 * d1b - d1a) / 3
    d2 = (4 * d2b - d2a) / 3
    drift = (p - 1) * np.tanh(t) + ((q - 1) / np.tanh(t) if q > 1 else 0.0)
    out = -(d2 + drift * d1) - m * (m + p - 2) / np.cosh(t) ** 2 * g0
    if n:
        out += n * (n + q - 2) / np.sinh(t) ** 2 * g0
    return float(out)


def eigen_residual(m: int, n: int, sig: Signature, lam, points, method: str = "ambient") -> float:
    """max |Delta f - mu f| / (max(|mu|, 1) max |f|) over sample points, with
    mu = -lambda^2 + rho^2 and f the separated K-type function."""
    mu = float(laplacian_eigenvalue(sig, _frac(lam)))
    f = radial_ansatz(m, n, sig, lam)
    num = 0.0
    scale = 0.0
    for x, y in points:
        val = float(f(x, y))
        if method == "ambient":
            lap = ambient_laplacian(f, x, y)
        else:
            t = float(np.arcsinh(np.linalg.norm(y)))
            spec = JacobiFunctionSpec(float(lam), m + sig.p / 2 - 1, n + sig.q / 2 - 1)
            ang = val / _profile(spec, m, n, t) if _profile(spec, m, n, t) != 0 else 0.0
            lap = ang * radial_laplacian(lambda s: _profile(spec, m, n, s), t, m, n, sig)
        num = max(num, abs(lap - mu * val))
        scale = max(scale, abs(val))
    return num / (max(abs(mu), 1.0) * scale) if scale > 0 else num


def _profile(spec, m, n, t):
    return np.cosh(t) ** m * np.sinh(t) ** n * jacobi_phi(spec, t)
