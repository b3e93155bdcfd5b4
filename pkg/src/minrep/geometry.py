"""Conformal maps between products of hyperboloids and the sphere product
M = S^{p-1} x S^{q-1}, twisted pull-backs, the extension-by-zero operator
and the angular coordinates used near the boundary of M_+.

Coordinates.  A point of X(p,q) = {|x|^2 - |y|^2 = 1} is stored in its native
order (x, y).  For a split (p', q', p'', q'') the first map Phi_1 starts
from X(p', q') x X(q'', p''), whose second factor has native coordinates
(y'', x''); the second map Phi_2 starts from X(q', p') x X(p'', q'') whose
first factor has native coordinates (y', x').  All array functions accept a
leading batch shape.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    ChartMismatch,
    NotInMMinus,
    NotInMPlus,
    NotOnHyperboloid,
    NotOnSphere,
    SignatureMismatch,
    TangencyViolated,
)
from .exact import Signature, SignatureSplit

BOUNDARY_TOL = 1e-12
FD_STEP = 1e-5


class Region(enum.Enum):
    Plus = "Plus"
    Minus = "Minus"
    Boundary = "Boundary"


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _sq(x) -> np.ndarray:
    return np.sum(x * x, axis=-1)


@dataclass(frozen=True)
class ProductSpherePoint:
    u: np.ndarray
    v: np.ndarray
    split: SignatureSplit

    def __post_init__(self):
        u, v = _arr(self.u), _arr(self.v)
        sig = self.split.parent
        if u.shape[-1] != sig.p or v.shape[-1] != sig.q:
            raise SignatureMismatch("point dimensions do not match the split")
        if np.any(np.abs(_sq(u) - 1) > BOUNDARY_TOL * 10) or np.any(np.abs(_sq(v) - 1) > BOUNDARY_TOL * 10):
            raise NotOnSphere("u and v must be unit vectors")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def parts(self):
        s = self.split
        return self.u[..., : s.p1], self.u[..., s.p1:], self.v[..., : s.q1], self.v[..., s.q1:]


@dataclass(frozen=True)
class HyperboloidPoint:
    x: np.ndarray
    y: np.ndarray
    sig: Signature

    def __post_init__(self):
        x, y = _arr(self.x), _arr(self.y)
        if x.shape[-1] != self.sig.p or y.shape[-1] != self.sig.q:
            raise SignatureMismatch("point dimensions do not match the signature")
        scale = np.maximum(1.0, _sq(x) + _sq(y))
        if np.any(np.abs(_sq(x) - _sq(y) - 1) > BOUNDARY_TOL * scale):
            raise NotOnHyperboloid("|x|^2 - |y|^2 must equal 1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


# ---------------------------------------------------------------------------
# regions


def region_codes(u, v, split: SignatureSplit) -> np.ndarray:
    """+1 on M_+, -1 on M_-, 0 within the boundary band."""
    u, v = _arr(u), _arr(v)
    d = _sq(u[..., : split.p1]) - _sq(v[..., : split.q1])
    return np.where(d > BOUNDARY_TOL, 1, np.where(d < -BOUNDARY_TOL, -1, 0))


def m_region(pt: ProductSpherePoint) -> Region:
    code = int(np.ravel(region_codes(pt.u, pt.v, pt.split))[0])
    return {1: Region.Plus, -1: Region.Minus, 0: Region.Boundary}[code]


def m_plus_empty(split: SignatureSplit) -> bool:
    return split.p1 * split.q2 == 0


def m_minus_empty(split: SignatureSplit) -> bool:
    return split.p2 * split.q1 == 0


# ---------------------------------------------------------------------------
# the two maps, on raw arrays


def phi1_arrays(x1, y1, y2, x2):
    """(x', y') in X(p',q'), (y'', x'') in X(q'',p'') -> (u, v)."""
    x = np.concatenate([_arr(x1), _arr(x2)], axis=-1)
    y = np.concatenate([_arr(y1), _arr(y2)], axis=-1)
    return x / np.linalg.norm(x, axis=-1, keepdims=True), y / np.linalg.norm(y, axis=-1, keepdims=True)


def phi1_inverse_arrays(u, v, split: SignatureSplit):
    u, v = _arr(u), _arr(v)
    u1, u2 = u[..., : split.p1], u[..., split.p1:]
    v1, v2 = v[..., : split.q1], v[..., split.q1:]
    s1 = np.sqrt(_sq(u1) - _sq(v1))[..., None]
    s2 = np.sqrt(_sq(v2) - _sq(u2))[..., None]
    return u1 / s1, v1 / s1, v2 / s2, u2 / s2


def phi2_arrays(y1, x1, x2, y2):
    """(y', x') in X(q',p'), (x'', y'') in X(p'',q'') -> (u, v)."""
    return phi1_arrays(x1, y1, y2, x2)


def phi2_inverse_arrays(u, v, split: SignatureSplit):
    u, v = _arr(u), _arr(v)
    u1, u2 = u[..., : split.p1], u[..., split.p1:]
    v1, v2 = v[..., : split.q1], v[..., split.q1:]
    s1 = np.sqrt(_sq(v1) - _sq(u1))[..., None]
    s2 = np.sqrt(_sq(u2) - _sq(v2))[..., None]
    return v1 / s1, u1 / s1, u2 / s2, v2 / s2


def _check_sig(pt: HyperboloidPoint, p: int, q: int):
    if (pt.sig.p, pt.sig.q) != (p, q):
        raise SignatureMismatch(f"expected a point of X({p},{q}), got X{pt.sig}")


def phi1_forward(a: HyperboloidPoint, b: HyperboloidPoint, split: SignatureSplit) -> ProductSpherePoint:
    _check_sig(a, split.p1, split.q1)
    _check_sig(b, split.q2, split.p2)
    u, v = phi1_arrays(a.x, a.y, b.x, b.y)
    return ProductSpherePoint(u, v, split)


def phi1_inverse(pt: ProductSpherePoint) -> tuple[HyperboloidPoint, HyperboloidPoint]:
    s = pt.split
    if np.any(region_codes(pt.u, pt.v, s) != 1):
        raise NotInMPlus("point is not strictly inside M_+")
    x1, y1, y2, x2 = phi1_inverse_arrays(pt.u, pt.v, s)
    return HyperboloidPoint(x1, y1, Signature(s.p1, s.q1)), HyperboloidPoint(y2, x2, Signature(s.q2, s.p2))


def phi2_forward(a: HyperboloidPoint, b: HyperboloidPoint, split: SignatureSplit) -> ProductSpherePoint:
    _check_sig(a, split.q1, split.p1)
    _check_sig(b, split.p2, split.q2)
    u, v = phi2_arrays(a.x, a.y, b.x, b.y)
    return ProductSpherePoint(u, v, split)


def phi2_inverse(pt: ProductSpherePoint) -> tuple[HyperboloidPoint, HyperboloidPoint]:
    s = pt.split
    if np.any(region_codes(pt.u, pt.v, s) != -1):
        raise NotInMMinus("point is not strictly inside M_-")
    y1, x1, x2, y2 = phi2_inverse_arrays(pt.u, pt.v, s)
    return HyperboloidPoint(y1, x1, Signature(s.q1, s.p1)), HyperboloidPoint(x2, y2, Signature(s.p2, s.q2))


# ---------------------------------------------------------------------------
# sampling helpers


def random_unit(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal(dim)
    return g / np.linalg.norm(g) if dim else g


def random_hyperboloid_point(sig: Signature, rng: np.random.Generator, t_max: float = 2.5) -> HyperboloidPoint:
    if sig.p == 0:
        raise ValueError("X(0,q) is empty")
    t = rng.uniform(0.05, t_max) if sig.q else 0.0
    x = random_unit(sig.p, rng) * np.cosh(t)
    y = random_unit(sig.q, rng) * np.sinh(t) if sig.q else np.zeros(0)
    return HyperboloidPoint(x, y, sig)


def _pseudo_dot(x, y, dx, dy):
    return np.dot(x, dx) - np.dot(y, dy)


def random_tangent(pt: HyperboloidPoint, rng: np.random.Generator):
    """A random tangent vector (dx, dy) at ``pt``."""
    dx = rng.standard_normal(pt.sig.p)
    dy = rng.standard_normal(pt.sig.q)
    c = _pseudo_dot(pt.x, pt.y, dx, dy)
    return dx - c * pt.x, dy - c * pt.y


# ---------------------------------------------------------------------------
# conformal factor


def _check_tangent(pt: HyperboloidPoint, vec):
    dx, dy = _arr(vec[0]), _arr(vec[1])
    scale = max(1.0, float(np.linalg.norm(np.concatenate([pt.x, pt.y]))) *
                float(np.linalg.norm(np.concatenate([dx, dy]))))
    if abs(_pseudo_dot(pt.x, pt.y, dx, dy)) > 1e-10 * scale:
        raise TangencyViolated("vector is not tangent to the hyperboloid")
    return dx, dy


def conformal_factor_check(a: HyperboloidPoint, b: HyperboloidPoint, va, vb, wa, wb,
                           split: SignatureSplit, which: int = 1, h: float = FD_STEP) -> dict:
    """Compare g_M(dPhi v, dPhi w) with |x|^{-2} g(v, w).

    g_M = g_{S^{p-1}} + (-g_{S^{q-1}}); on the hyperboloid side g is the flat
    form |dx|^2 - |dy|^2 of R^{p,q}.  For Phi_1 this is g_{X(p',q')} minus
    g_{X(q'',p'')}.  Tangent vectors are given per factor in native order.
    """
    va, vb, wa, wb = (_check_tangent(a, va), _check_tangent(b, vb),
                      _check_tangent(a, wa), _check_tangent(b, wb))
    fwd = phi1_arrays if which == 1 else phi2_arrays

    def push(ta, tb):
        plus = fwd(a.x + h * ta[0], a.y + h * ta[1], b.x + h * tb[0], b.y + h * tb[1])
        minus = fwd(a.x - h * ta[0], a.y - h * ta[1], b.x - h * tb[0], b.y - h * tb[1])
        return (plus[0] - minus[0]) / (2 * h), (plus[1] - minus[1]) / (2 * h)

    du_v, dv_v = push(va, vb)
    du_w, dv_w = push(wa, wb)
    lhs = float(np.dot(du_v, du_w) - np.dot(dv_v, dv_w))

    if which == 1:
        # x = (x', x''), y = (y', y''); second factor native order is (y'', x'')
        xsq = _sq(a.x) + _sq(b.y)
        flat = (np.dot(va[0], wa[0]) - np.dot(va[1], wa[1])
                - (np.dot(vb[0], wb[0]) - np.dot(vb[1], wb[1])))
    else:
        # first factor native order is (y', x''), second is (x'', y'')
        xsq = _sq(a.y) + _sq(b.x)
        flat = (-(np.dot(va[0], wa[0]) - np.dot(va[1], wa[1]))
                + np.dot(vb[0], wb[0]) - np.dot(vb[1], wb[1]))
    rhs = float(flat / xsq)
    return {"lhs": lhs, "rhs": rhs}


# ---------------------------------------------------------------------------
# functions on charts


CHARTS = ("M", "X1", "X2", "X")


@dataclass(frozen=True)
class SampledFunction:
    """A scalar field on a named chart.

    "M":  func(u, v) on S^{p-1} x S^{q-1}
    "X1": func(x', y', y'', x'') on X(p',q') x X(q'',p'')
    "X2": func(y', x', x'', y'') on X(q',p') x X(p'',q'')
    "X":  func(x, y) on a single hyperboloid X(p,q)
    """

    chart: str
    func: Callable
    split: SignatureSplit | None = None
    sig: Signature | None = None

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ChartMismatch(f"unknown chart {self.chart!r}")

    def __call__(self, *coords):
        return self.func(*coords)


def _twist_exponent(split: SignatureSplit) -> float:
    sig = split.parent
    return (sig.p + sig.q - 4) / 4


def twisted_pullback(direction: str, f: SampledFunction, which: int = 1) -> SampledFunction:
    """forward: F on M  ->  (|x|^2)^{-(p+q-4)/4} F(x/|x|, y/|y|) on X1 (or X2).
    inverse: f on X1 ->  (|u'|^2 - |v'|^2)^{-(p+q-4)/4} f(Phi_1^{-1}(u, v)) on M_+
             (for Phi_2: (|v'|^2 - |u'|^2)^{...} on M_-).
    Points outside the open region give nan in the inverse direction.
    """
    split = f.split
    if split is None:
        raise ChartMismatch("a split is required")
    nu = _twist_exponent(split)
    target = "X1" if which == 1 else "X2"
    if direction == "forward":
        if f.chart != "M":
            raise ChartMismatch("forward pullback needs a function on M")
        fwd = phi1_arrays if which == 1 else phi2_arrays

        def g(a1, a2, b1, b2):
            u, v = fwd(a1, a2, b1, b2)
            if which == 1:
                xsq = _sq(_arr(a1)) + _sq(_arr(b2))
            else:
                xsq = _sq(_arr(a2)) + _sq(_arr(b1))
            return xsq ** (-nu) * f(u, v)

        return SampledFunction(target, g, split)
    if direction == "inverse":
        if f.chart != target:
            raise ChartMismatch(f"inverse pullback needs a function on {target}")
        inv = phi1_inverse_arrays if which == 1 else phi2_inverse_arrays
        sign = 1 if which == 1 else -1

        def F(u, v):
            u, v = _arr(u), _arr(v)
            d = sign * (_sq(u[..., : split.p1]) - _sq(v[..., : split.q1]))
            with np.errstate(invalid="ignore", divide="ignore"):
                coords = inv(u, v, split)
                val = d ** (-nu) * f(*coords)
            return np.where(d > 0, val, np.nan)

        return SampledFunction("M", F, split)
    raise ValueError(f"unknown direction {direction!r}")


def t_plus_extend(f: SampledFunction) -> SampledFunction:
    """Inverse twisted pullback on M_+, extended by zero to the rest of M."""
    inner = twisted_pullback("inverse", f, which=1)
    split = f.split

    def F(u, v):
        u, v = _arr(u), _arr(v)
        inside = region_codes(u, v, split) == 1
        out = np.zeros(np.broadcast_shapes(u.shape[:-1], v.shape[:-1]))
        if np.any(inside):
            ub = np.broadcast_to(u, out.shape + (u.shape[-1],))[inside]
            vb = np.broadcast_to(v, out.shape + (v.shape[-1],))[inside]
            out[inside] = inner(ub, vb)
        return out if out.ndim else float(out)

    return SampledFunction("M", F, split)


# ---------------------------------------------------------------------------
# angular coordinates


@dataclass(frozen=True)
class AngularChart:
    theta: float
    phi: float
    omega_p: np.ndarray
    omega_pp: np.ndarray
    eta_p: np.ndarray
    eta_pp: np.ndarray


def angular_chart_to_point(chart: AngularChart, split: SignatureSplit) -> ProductSpherePoint:
    th, ph = _arr(chart.theta)[..., None], _arr(chart.phi)[..., None]
    u = np.concatenate([_arr(chart.omega_p) * np.cos(th), _arr(chart.omega_pp) * np.sin(th)], axis=-1)
    v = np.concatenate([_arr(chart.eta_p) * np.cos(ph), _arr(chart.eta_pp) * np.sin(ph)], axis=-1)
    return ProductSpherePoint(u, v, split)


def chart_arrays(theta, phi, omega_p, omega_pp, eta_p, eta_pp):
    th, ph = _arr(theta)[..., None], _arr(phi)[..., None]
    u = np.concatenate([_arr(omega_p) * np.cos(th), _arr(omega_pp) * np.sin(th)], axis=-1)
    v = np.concatenate([_arr(eta_p) * np.cos(ph), _arr(eta_pp) * np.sin(ph)], axis=-1)
    return u, v


def volume_weight(theta, phi, split: SignatureSplit):
    """Density of the surface measure of M in the angular chart."""
    th, ph = _arr(theta), _arr(phi)
    return (np.abs(np.cos(th)) ** (split.p1 - 1) * np.abs(np.sin(th)) ** (split.p2 - 1)
            * np.abs(np.cos(ph)) ** (split.q1 - 1) * np.abs(np.sin(ph)) ** (split.q2 - 1))


def chart_in_m_plus(theta, phi):
    return np.abs(np.cos(theta)) > np.abs(np.cos(phi))


def polar_to_angles(r, psi):
    """cos(theta) = r cos(psi), cos(phi) = r sin(psi) with theta, phi in [0, pi]."""
    return np.arccos(r * np.cos(psi)), np.arccos(r * np.sin(psi))


def polar_chart(r, psi, omega_p, omega_pp, eta_p, eta_pp, split: SignatureSplit):
    """Point of M and the full density of the surface measure in (r, psi).

    The density equals r^{p'+q'-1} times the factor
    |cos psi|^{p'-1} |sin psi|^{q'-1} (1 - r^2 cos^2 psi)^{(p''-2)/2}
    (1 - r^2 sin^2 psi)^{(q''-2)/2}, smooth and positive near r = 0.
    """
    r, psi = _arr(r), _arr(psi)
    c1, c2 = r * np.cos(psi), r * np.sin(psi)
    s1, s2 = np.sqrt(1 - c1**2), np.sqrt(1 - c2**2)
    u = np.concatenate([_arr(omega_p) * c1[..., None], _arr(omega_pp) * s1[..., None]], axis=-1)
    v = np.concatenate([_arr(eta_p) * c2[..., None], _arr(eta_pp) * s2[..., None]], axis=-1)
    weight = r ** (split.p1 + split.q1 - 1) * polar_smooth_factor(r, psi, split)
    return ProductSpherePoint(u, v, split), weight


def polar_smooth_factor(r, psi, split: SignatureSplit):
    r, psi = _arr(r), _arr(psi)
    return (np.abs(np.cos(psi)) ** (split.p1 - 1) * np.abs(np.sin(psi)) ** (split.q1 - 1)
            * (1 - (r * np.cos(psi)) ** 2) ** ((split.p2 - 2) / 2)
            * (1 - (r * np.sin(psi)) ** 2) ** ((split.q2 - 2) / 2))


def polar_jacobian(theta, phi) -> np.ndarray:
    """d(r, psi)/d(theta, phi) in closed form."""
    r = np.hypot(np.cos(theta), np.cos(phi))
    psi = np.arctan2(np.cos(phi), np.cos(theta))
    return np.array([
        [-np.cos(psi) * np.sin(theta), -np.sin(psi) * np.sin(phi)],
        [np.sin(psi) * np.sin(theta) / r, -np.cos(psi) * np.sin(phi) / r],
    ])


# ---------------------------------------------------------------------------
# boundary exponents


def boundary_exponents(lam_p, lam_pp, split: SignatureSplit) -> dict:
    """Growth exponents of T_+ f near the boundary of M_+ and the sufficient
    conditions for local integrability of T_+ f and its derivatives.

    Case 1 is the generic part of the boundary, Case 2 the stratum
    cos(theta) = cos(phi) = 0 and Case 3 its mirror sin(theta) = sin(phi) = 0
    (obtained by exchanging the roles of the two factors).  Cases 2 and 3
    exist only when p'q'p''q'' != 0.  The top-level flags combine all strata
    that are present.
    """
    from fractions import Fraction

    lp, lpp = Fraction(lam_p), Fraction(lam_pp)
    s = lp + lpp
    p1, q1, p2, q2 = split.parts
    case1 = {"l2": s > -1, "grad_l2eps": s >= 1, "hess_l1": s > 2}
    case2 = {"l2": 2 * lpp > -1, "grad_l2eps": 2 * lpp >= 0, "hess_l1": 2 * lpp > 2 - p1 - q1}
    case3 = {"l2": 2 * lp > -1, "grad_l2eps": 2 * lp >= 0, "hess_l1": 2 * lp > 2 - p2 - q2}
    corners = p1 * q1 * p2 * q2 != 0
    combined = {
        k: case1[k] and (not corners or (case2[k] and case3[k])) for k in case1
    }
    return {
        "case1_exp": s / 2,
        "case2_radial_exp": (2 * lpp - p1 - q1 + 2) / 2,
        "case3_radial_exp": (2 * lp - p2 - q2 + 2) / 2,
        "case1": case1,
        "case2": case2,
        "case3": case3,
        "corners_present": corners,
        **combined,
    }


def case2_bounded(lam_pp, split: SignatureSplit) -> bool:
    from fractions import Fraction

    return 2 * Fraction(lam_pp) - split.p1 - split.q1 + 2 >= 0
