"""Twisted pull-back of K-type vectors and the numerical Parseval check for
the restriction of the minimal representation to O(p, q') x O(q'')."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import HypothesisViolated, ToleranceNotMet, TruncationInsufficient
from ..exact import HalfInt, Signature, SignatureSplit, lambda_v_exact, m_constant_exact
from ..geometry import SampledFunction, random_unit, twisted_pullback
from ..harmonics import HarmonicLabel, ZonalHarmonic, projection_matrix, sphere_rule
from ..operators import radial_ansatz
from ..specfun import JacobiFunctionSpec, jacobi_phi, jacobi_phi_imag
from .core import integrate
from .norms import minrep_norm

RESIDUAL_MASS_TOL = 1e-12


def _compact_split(p: int, q_p: int, q_pp: int) -> SignatureSplit:
    return SignatureSplit(p, q_p, 0, q_pp)


# ---------------------------------------------------------------------------
# pull-back of a single K-type


def ktype_pullback_check(m: int, k: int, l: int, sig: Signature, q_prime: int,
                         thetas=None, seed: int = 0) -> float:
    """Max relative deviation between the geometric inverse pull-back of

        f = h_m(omega) h_k(eta') h_l(eta'') (cosh t)^m (sinh t)^k phi(t)

    from X(p,q') x S^{q''-1} to M_+ and the closed form

        M^{-1} h_m h_k h_l (cos theta)^k (sin theta)^l phi'(i theta)

    at points (omega, (eta' cos theta, eta'' sin theta)).  Here the angle
    and the hyperboloid parameter are related by cot(theta) = sinh(t).
    """
    p, q = sig.p, sig.q
    q_pp = q - q_prime
    if q_prime < 1 or q_pp < 1:
        raise HypothesisViolated("need q' >= 1 and q'' >= 1")
    if (p - q) % 2:
        raise HypothesisViolated("p + q must be even")
    n = m + (p - q) // 2
    if n < 0 or n - k - l < 0 or (n - k - l) % 2:
        raise HypothesisViolated(f"H^{k} x H^{l} does not occur in H^{n}(R^{q})")
    lam = HalfInt(2 * l + q_pp - 2)
    lam_p = HalfInt(2 * m + p - 2)
    lam_pp = HalfInt(2 * k + q_prime - 2)
    M = float(m_constant_exact(lam, lam_p, lam_pp))

    rng = np.random.default_rng(seed)
    h_m = ZonalHarmonic(HarmonicLabel(m, p), tuple(random_unit(p, rng)))
    h_k = ZonalHarmonic(HarmonicLabel(k, q_prime), tuple(random_unit(q_prime, rng)))
    h_l = ZonalHarmonic(HarmonicLabel(l, q_pp), tuple(random_unit(q_pp, rng)))
    first = radial_ansatz(m, k, Signature(p, q_prime), lam, h_m, h_k)
    split = _compact_split(p, q_prime, q_pp)
    f = SampledFunction("X1", lambda x1, y1, y2, x2: first(x1, y1) * h_l(y2), split)
    pulled = twisted_pullback("inverse", f, which=1)

    thetas = np.linspace(0.1, 1.4, 50) if thetas is None else np.asarray(thetas, dtype=float)
    omega = random_unit(p, rng)
    eta_p = random_unit(q_prime, rng)
    eta_pp = random_unit(q_pp, rng)
    u = np.broadcast_to(omega, (len(thetas), p))
    v = np.concatenate([eta_p[None, :] * np.cos(thetas)[:, None],
                        eta_pp[None, :] * np.sin(thetas)[:, None]], axis=1)
    lhs = pulled(u, v)
    spec = JacobiFunctionSpec(float(lam_p), float(lam_pp), float(lam))
    rhs = (h_m(omega) * h_k(eta_p) * h_l(eta_pp) * np.cos(thetas) ** k * np.sin(thetas) ** l
           * jacobi_phi_imag(spec, thetas) / M)
    scale = np.max(np.abs(rhs))
    if scale == 0:
        raise HypothesisViolated("the closed form vanishes on the grid; choose another seed")
    return float(np.max(np.abs(lhs - rhs)) / scale)


# ---------------------------------------------------------------------------
# test functions on M


@dataclass(frozen=True)
class ZonalTerm:
    m: int
    n: int
    coef: float
    axis_u: tuple
    axis_v: tuple


@dataclass(frozen=True)
class ZonalTestFunction:
    """F(u, v) = sum of coef * Z_m(<u, a>) Z_n(<v, e>) over the terms, each
    term lying in a K-type of the kernel (m + p/2 = n + q/2)."""

    sig: Signature
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for t in self.terms:
            if 2 * (t.m - t.n) != self.sig.q - self.sig.p:
                raise HypothesisViolated(f"term ({t.m},{t.n}) is not in the kernel")

    @classmethod
    def random(cls, sig: Signature, degrees, terms_per_type: int = 2, seed: int = 0):
        """Random axes and coefficients; ``degrees`` lists the m values."""
        rng = np.random.default_rng(seed)
        terms = []
        for m in degrees:
            n = m + (sig.p - sig.q) // 2
            for _ in range(terms_per_type):
                terms.append(ZonalTerm(m, n, float(rng.uniform(0.5, 1.5)),
                                       tuple(random_unit(sig.p, rng)),
                                       tuple(random_unit(sig.q, rng))))
        return cls(sig, tuple(terms))

    @property
    def ktypes(self) -> list[tuple[int, int]]:
        return sorted({(t.m, t.n) for t in self.terms})

    def __call__(self, u, v):
        u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
        out = 0.0
        for t in self.terms:
            zu = ZonalHarmonic(HarmonicLabel(t.m, self.sig.p), t.axis_u)
            zv = ZonalHarmonic(HarmonicLabel(t.n, self.sig.q), t.axis_v)
            out = out + t.coef * zu.poly(u) * zv.poly(v)
        return out

    def component_l2_sq(self, m: int, n: int) -> float:
        """||F_{m,n}||^2 on S^{p-1} x S^{q-1}, exactly."""
        p, q = self.sig.p, self.sig.q
        terms = [t for t in self.terms if (t.m, t.n) == (m, n)]
        if not terms:
            return 0.0
        up, uw = sphere_rule(p, 2 * m)
        vp, vw = sphere_rule(q, 2 * n)
        A = np.array([ZonalHarmonic(HarmonicLabel(m, p), t.axis_u).poly(up) for t in terms])
        B = np.array([ZonalHarmonic(HarmonicLabel(n, q), t.axis_v).poly(vp) for t in terms])
        gram = (A * uw) @ A.T * ((B * vw) @ B.T)
        c = np.array([t.coef for t in terms])
        return float(c @ gram @ c)

    def minrep_norm_sq(self) -> float:
        return sum(minrep_norm(m, n, self.sig, self.component_l2_sq(m, n)) for m, n in self.ktypes)


# ---------------------------------------------------------------------------
# Parseval


@dataclass(frozen=True)
class ParsevalRecord:
    lhs: float
    rhs_partial: float      # explicit coefficients times L^2 norms on X(p,q')
    rhs_closed_form: float  # closed-form pi-norms of the (m, k, l) pieces
    rel_err: float          # worst of the two against lhs
    rel_err_routes: float   # the two right sides against each other
    per_l: tuple
    tol: float

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tol


class _PulledGrid:
    """Samples of the pulled-back function on a product quadrature grid."""

    def __init__(self, F: ZonalTestFunction, q_prime: int, degree_u: int, degree_v: int,
                 rotation_seed: int | None):
        sig = F.sig
        self.p, self.q_p, self.q_pp = sig.p, q_prime, sig.q - q_prime
        split = _compact_split(self.p, q_prime, self.q_pp)
        self.G = twisted_pullback("forward", SampledFunction("M", F, split), which=1)
        self.om, self.wo = sphere_rule(self.p, degree_u)
        self.e1, self.w1 = sphere_rule(q_prime, degree_v)
        self.e2, self.w2 = sphere_rule(self.q_pp, degree_v)
        if rotation_seed is not None:
            # any orthogonal frame gives an exact rule; the projections must
            # not depend on it
            g = np.random.default_rng(rotation_seed).standard_normal((self.q_pp, self.q_pp))
            Q, _ = np.linalg.qr(g)
            self.e2 = self.e2 @ Q.T
        self.shape = (len(self.wo), len(self.w1), len(self.w2))

    def values(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        no, n1, n2 = self.shape
        x1 = self.om[None, :, None, None, :] * np.cosh(t)[:, None, None, None, None]
        y1 = self.e1[None, None, :, None, :] * np.sinh(t)[:, None, None, None, None]
        y2 = self.e2[None, None, None, :, :]
        full = (len(t), no, n1, n2)
        x1 = np.broadcast_to(x1, full + (self.p,)).reshape(-1, self.p)
        y1 = np.broadcast_to(y1, full + (self.q_p,)).reshape(-1, self.q_p)
        y2 = np.broadcast_to(y2, full + (self.q_pp,)).reshape(-1, self.q_pp)
        x2 = np.zeros((x1.shape[0], 0))
        return np.asarray(self.G(x1, y1, y2, x2)).reshape(full)

    def proj_l(self, l: int) -> np.ndarray:
        return projection_matrix(l, self.q_pp, self.e2, self.w2)

    def norm_sq(self, vals):
        """Weighted sum over the three sphere axes (last three axes)."""
        w = self.wo[:, None, None] * self.w1[None, :, None] * self.w2[None, None, :]
        return np.tensordot(vals**2, w, axes=([-3, -2, -1], [0, 1, 2]))


def parseval_verify(p: int, q_prime: int, q_doubleprime: int, F: ZonalTestFunction,
                    l_max: int, tol: float = 1e-6, quad_tol: float = 1e-10,
                    rotation_seed: int | None = None,
                    sample_ts=(0.3, 0.6, 0.9, 1.2)) -> ParsevalRecord:
    """Compare ||F||^2 in the minimal representation with the sum over l of
    the norms of the O(p,q') x O(q'') components of the twisted pull-back.

    Two right-hand sides are formed: the explicit weights (l + q''/2 - 1)
    times L^2 norms over X(p,q') x S^{q''-1}, and the closed-form pi-norms
    of the (m, k, l) pieces obtained by projecting at a few sample radii.
    """
    sig = F.sig
    if (sig.p, sig.q) != (p, q_prime + q_doubleprime):
        raise HypothesisViolated("test function signature does not match (p, q' + q'')")
    if q_doubleprime < 2 or q_prime < 1:
        raise HypothesisViolated("need q' >= 1 and q'' >= 2")
    lams = [HalfInt(2 * l + q_doubleprime - 2) for l in range(l_max + 1)]
    if any(lam.twice_value <= 0 for lam in lams):
        raise HypothesisViolated("all parameters l + q''/2 - 1 must be positive")
    m_max = max(m for m, _ in F.ktypes)
    n_max = max(n for _, n in F.ktypes)
    grid = _PulledGrid(F, q_prime, 2 * m_max, 2 * n_max, rotation_seed)
    projs = [grid.proj_l(l) for l in range(l_max + 1)]

    # truncation check: mass outside degrees <= l_max in eta''
    for t in sample_ts:
        vals = grid.values(t)[0]
        kept = sum(vals @ P.T for P in projs)
        total = float(grid.norm_sq(vals))
        resid = float(grid.norm_sq(vals - kept))
        if total > 0 and resid > RESIDUAL_MASS_TOL * total:
            raise TruncationInsufficient(f"residual eta''-mass {resid / total:.2e} at l_max={l_max}")

    lhs = F.minrep_norm_sq()

    # route 1: explicit weights and L^2 norms
    def radial(t):
        vals = grid.values(t)
        out = np.empty((len(t), l_max + 1))
        for l, P in enumerate(projs):
            out[:, l] = grid.norm_sq(vals @ P.T)
        return out * (np.cosh(t) ** (p - 1) * np.sinh(t) ** (q_prime - 1))[:, None]

    res = integrate(radial, "half_line", quad_tol, decay_rate=2 * float(lams[0]))
    l2_per_l = np.asarray(res.value, dtype=float)
    per_l = tuple(float(lam) * float(v) for lam, v in zip(lams, l2_per_l))
    rhs_l2 = float(sum(per_l))

    # route 2: closed-form norms of the (m, k, l) pieces
    ts = np.asarray(sample_ts, dtype=float)
    vals = grid.values(ts)
    proj_m = {m: projection_matrix(m, p, grid.om, grid.wo) for m in range(m_max + 1)}
    proj_k = {k: projection_matrix(k, q_prime, grid.e1, grid.w1) for k in range(n_max + 1)}
    rhs_pi = 0.0
    for m, _ in F.ktypes:
        vm = np.einsum("ij,tjab->tiab", proj_m[m], vals)
        for k in range(n_max + 1):
            if k > 1 and q_prime == 1:
                break
            vk = np.einsum("ij,tajb->taib", proj_k[k], vm)
            for l in range(l_max + 1):
                piece = vk @ projs[l].T
                mass = grid.norm_sq(piece)
                if np.max(mass) <= 1e-26 * max(lhs, 1.0):
                    continue
                spec = JacobiFunctionSpec(float(lams[l]), m + p / 2 - 1, k + q_prime / 2 - 1)
                prof = np.cosh(ts) ** m * np.sinh(ts) ** k * jacobi_phi(spec, ts)
                h_sq = float(np.sum(mass) / np.sum(prof**2))
                lv = lambda_v_exact("pm", HalfInt(2 * m + p - 2), HalfInt(2 * k + q_prime - 2), lams[l])
                rhs_pi += h_sq * float(lv)

    rel = max(abs(rhs_l2 - lhs), abs(rhs_pi - lhs)) / abs(lhs)
    routes = abs(rhs_l2 - rhs_pi) / abs(rhs_pi)
    return ParsevalRecord(lhs, rhs_l2, rhs_pi, rel, routes, per_l, tol)


def require(record: ParsevalRecord) -> ParsevalRecord:
    if not record.passed:
        raise ToleranceNotMet(f"relative error {record.rel_err:.3e} above {record.tol:.1e}")
    return record
