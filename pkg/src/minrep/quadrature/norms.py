"""Quadrature checks of the closed-form Jacobi integrals and the norms on
the hyperboloid representations and on the minimal representation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import HypothesisViolated, NotInKernel
from ..exact import HalfInt, Signature, b_epsilon_delta, in_a0, lambda_v_exact, v_constant_exact
from ..harmonics import HarmonicLabel, ZonalHarmonic, sphere_rule
from ..operators import radial_ansatz
from ..specfun import JacobiFunctionSpec, jacobi_phi, jacobi_phi_imag
from .core import integrate


@dataclass(frozen=True)
class VerifyRecord:
    quadrature: float
    exact: float
    rel_err: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tol


@dataclass(frozen=True)
class NormReport:
    pi_norm_sq: float
    l2_norm_sq: float | None
    lam: float

    @property
    def ratio(self) -> float | None:
        if self.l2_norm_sq is None:
            return None
        return self.pi_norm_sq / self.l2_norm_sq


def _halves(*values):
    return tuple(HalfInt.of(v) for v in values)


def _even_nonneg(x: HalfInt) -> bool:
    return x.twice_value >= 0 and x.twice_value % 4 == 0


def v_pm_integrand(lam_p, lam_pp, lam):
    spec = JacobiFunctionSpec(float(lam), float(lam_p), float(lam_pp))
    a, b = 2 * float(lam_p) + 1, 2 * float(lam_pp) + 1

    def f(t):
        return jacobi_phi(spec, t) ** 2 * np.cosh(t) ** a * np.sinh(t) ** b

    return f


def v_pp_integrand(lam_p, lam_pp, lam):
    spec = JacobiFunctionSpec(float(lam), float(lam_p), float(lam_pp))
    a, b = 2 * float(lam_p) + 1, 2 * float(lam_pp) + 1

    def f(theta):
        return jacobi_phi_imag(spec, theta) ** 2 * np.cos(theta) ** a * np.sin(theta) ** b

    return f


def verify_v_pm(lam_p, lam_pp, lam, tol: float = 1e-8) -> VerifyRecord:
    """Integral of phi^2 cosh^{2l'+1} sinh^{2l''+1} over the half-line
    against the closed form.  The integrand decays like exp(-2 lam t)."""
    lam_p, lam_pp, lam = _halves(lam_p, lam_pp, lam)
    if lam.twice_value <= 0 or lam_p.twice_value <= -2 or lam_pp.twice_value <= -2:
        raise HypothesisViolated("need lam > 0 and lam', lam'' > -1")
    if not _even_nonneg(lam_p - lam_pp - lam - 1):
        raise HypothesisViolated("lam' - lam'' - lam - 1 must lie in 2N")
    exact = float(v_constant_exact("pm", lam_p, lam_pp, lam))
    res = integrate(v_pm_integrand(lam_p, lam_pp, lam), "half_line", tol / 10,
                    decay_rate=2 * float(lam))
    q = float(res.value)
    return VerifyRecord(q, exact, abs(q - exact) / abs(exact), tol)


def verify_v_pp(lam_p, lam_pp, lam, tol: float = 1e-8) -> VerifyRecord:
    """Integral of phi(i theta)^2 cos^{2l'+1} sin^{2l''+1} over [0, pi/2]."""
    lam_p, lam_pp, lam = _halves(lam_p, lam_pp, lam)
    if lam.twice_value <= 0 or lam_p.twice_value <= -2 or lam_pp.twice_value <= -2:
        raise HypothesisViolated("need lam > 0 and lam', lam'' > -1")
    if not _even_nonneg(lam - lam_p - lam_pp - 1):
        raise HypothesisViolated("lam - lam' - lam'' - 1 must lie in 2N")
    exact = float(v_constant_exact("pp", lam_p, lam_pp, lam))
    res = integrate(v_pp_integrand(lam_p, lam_pp, lam), "finite_interval", tol / 10,
                    a=0.0, b=np.pi / 2, initial_panels=4)
    q = float(res.value)
    return VerifyRecord(q, exact, abs(q - exact) / abs(exact), tol)


def sphere_norm_sq(h: ZonalHarmonic) -> float:
    """||h||^2 on the unit sphere by an exact rule."""
    pts, w = sphere_rule(h.label.dim, 2 * h.label.degree)
    return float(np.dot(w, h(pts) ** 2))


def in_ktype_set(m: int, n: int, sig: Signature, lam) -> bool:
    b = b_epsilon_delta(lam, sig).b
    d = m - n
    return d >= int(b) and (d - int(b)) % 2 == 0


def pi_norm(m: int, n: int, sig: Signature, lam, h_m: ZonalHarmonic | None = None,
            h_n: ZonalHarmonic | None = None, coef: float = 1.0, with_l2: bool = True,
            tol: float = 1e-10) -> NormReport:
    """Norm squared of coef * h_m(omega) h_n(eta) (cosh t)^m (sinh t)^n phi(t)
    in the unitary structure of the hyperboloid representation with
    parameter lam.

    pi-norm^2 = ||h_m||^2 ||h_n||^2 lam V(m + p/2 - 1, n + q/2 - 1; lam).
    For lam > 0 the L^2 norm over X(p,q) is also computed, independently, by
    quadrature of |f|^2 against (cosh t)^{p-1} (sinh t)^{q-1} dt d omega d eta.
    """
    lam = HalfInt.of(lam)
    if not in_a0(lam, sig):
        raise HypothesisViolated(f"lambda={lam} is not in A_0{sig}")
    if not in_ktype_set(m, n, sig, lam):
        raise HypothesisViolated(f"({m},{n}) is not a K-type for lambda={lam}")
    p, q = sig.p, sig.q
    h_m = h_m or ZonalHarmonic(HarmonicLabel(m, p))
    h_n = h_n or ZonalHarmonic(HarmonicLabel(n, q))
    hm2, hn2 = sphere_norm_sq(h_m), sphere_norm_sq(h_n)
    lv = float(lambda_v_exact("pm", HalfInt(2 * m + p - 2), HalfInt(2 * n + q - 2), lam))
    pi_sq = coef**2 * hm2 * hn2 * lv
    l2 = None
    if with_l2 and lam.twice_value > 0:
        l2 = coef**2 * l2_norm_sq_hyperboloid(radial_ansatz(m, n, sig, lam, h_m, h_n), sig,
                                              degree=2 * max(m, n) + 2,
                                              decay_rate=2 * float(lam), tol=tol)
    return NormReport(pi_sq, l2, float(lam))


def l2_norm_sq_hyperboloid(f, sig: Signature, degree: int, decay_rate: float,
                           tol: float = 1e-10) -> float:
    """||f||^2 on X(p,q) in the coordinates (omega cosh t, eta sinh t).
    ``degree`` is the polynomial degree of |f|^2 on each sphere factor."""
    p, q = sig.p, sig.q
    om, wo = sphere_rule(p, degree)
    et, we = sphere_rule(q, degree)
    wts = (wo[:, None] * we[None, :]).reshape(-1)

    def radial(t):
        t = np.asarray(t, dtype=float)
        x = om[None, :, None, :] * np.cosh(t)[:, None, None, None]
        y = et[None, None, :, :] * np.sinh(t)[:, None, None, None]
        x = np.broadcast_to(x, (len(t), len(om), len(et), p)).reshape(-1, p)
        y = np.broadcast_to(y, (len(t), len(om), len(et), q)).reshape(-1, q)
        vals = np.asarray(f(x, y), dtype=float).reshape(len(t), -1) ** 2
        return (vals @ wts) * np.cosh(t) ** (p - 1) * np.sinh(t) ** (q - 1)

    return float(integrate(radial, "half_line", tol, decay_rate=decay_rate).value)


def minrep_norm(m: int, n: int, sig: Signature, l2_norm_sq: float = 1.0) -> float:
    """Norm squared of a K-type component H^m x H^n of the minimal
    representation, given its L^2 norm squared on S^{p-1} x S^{q-1}:
    (n + q/2 - 1) * ||F_{m,n}||^2.  Components in distinct K-types are
    orthogonal, so norms of sums add."""
    if 2 * (m - n) != sig.q - sig.p:
        raise NotInKernel(f"({m},{n}) does not satisfy m + p/2 = n + q/2 for {sig}")
    return float(Fraction(2 * n + sig.q - 2, 2)) * l2_norm_sq
