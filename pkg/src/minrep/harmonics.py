"""Spherical harmonics: dimensions, zonal representatives, exact sphere
quadrature, projections onto degrees, and the O(q1) x O(q2) branching of
H^n(R^{q1+q2}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import eval_chebyt, eval_gegenbauer, roots_jacobi

from .errors import NotOnSphere

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class HarmonicLabel:
    degree: int
    dim: int  # ambient dimension q of R^q

    def __post_init__(self):
        if self.degree < 0 or self.dim < 1:
            raise ValueError("need degree >= 0 and ambient dimension >= 1")


def dim_harmonic(label: HarmonicLabel) -> int:
    """dim H^l(R^q) = C(l+q-1, q-1) - C(l+q-3, q-1)."""
    l, q = label.degree, label.dim
    if q == 1:
        return 1 if l in (0, 1) else 0
    total = math.comb(l + q - 1, q - 1)
    if l >= 2:
        total -= math.comb(l + q - 3, q - 1)
    return total


def zonal_profile(l: int, q: int, s):
    """Zonal function of degree l on S^{q-1} as a function of the cosine s,
    normalized to 1 at s = 1."""
    s = np.asarray(s, dtype=float)
    if q == 1:
        if l == 0:
            return np.ones_like(s)
        if l == 1:
            return s.copy()
        return np.zeros_like(s)
    if q == 2:
        return eval_chebyt(l, np.clip(s, -1.0, 1.0))
    alpha = (q - 2) / 2
    return eval_gegenbauer(l, alpha, np.clip(s, -1.0, 1.0)) / eval_gegenbauer(l, alpha, 1.0)


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("pole axis must be nonzero")
    return v / norm


@dataclass(frozen=True)
class ZonalHarmonic:
    label: HarmonicLabel
    pole: tuple = field(default=None)

    def __post_init__(self):
        pole = self.pole
        if pole is None:
            pole = np.zeros(self.label.dim)
            pole[0] = 1.0
        pole = _unit(pole)
        if pole.shape != (self.label.dim,):
            raise ValueError("pole has the wrong dimension")
        object.__setattr__(self, "pole", tuple(float(x) for x in pole))

    @property
    def axis(self) -> np.ndarray:
        return np.array(self.pole)

    def __call__(self, point):
        return zonal_eval(self, point)

    def poly(self, x):
        """Harmonic homogeneous polynomial |x|^l Z(x/|x|)."""
        return zonal_poly(self, x)


def zonal_eval(z: ZonalHarmonic, point):
    point = np.asarray(point, dtype=float)
    norms = np.linalg.norm(point, axis=-1)
    if np.any(np.abs(norms - 1.0) > UNIT_TOL):
        raise NotOnSphere("point is not a unit vector")
    return zonal_profile(z.label.degree, z.label.dim, point @ z.axis)


def zonal_poly(z: ZonalHarmonic, x):
    x = np.asarray(x, dtype=float)
    l = z.label.degree
    r = np.linalg.norm(x, axis=-1)
    safe = np.where(r > 0, r, 1.0)
    s = (x @ z.axis) / safe
    val = r**l * zonal_profile(l, z.label.dim, s)
    if l == 0:
        return np.ones_like(r)
    return np.where(r > 0, val, 0.0)


def sphere_laplacian_fd(f, point, h: float = 1e-3) -> float:
    """Laplace-Beltrami of f on the unit sphere at ``point``, computed as the
    Euclidean Laplacian of the degree-0 homogeneous extension."""
    point = np.asarray(point, dtype=float)
    q = point.size

    def ext(x):
        return f(x / np.linalg.norm(x))

    def lap(step):
        c = ext(point)
        total = 0.0
        for i in range(q):
            e = np.zeros(q)
            e[i] = step
            total += ext(point + e) - 2 * c + ext(point - e)
        return total / step**2

    return (4 * lap(h / 2) - lap(h)) / 3


def sphere_eigenvalue(label: HarmonicLabel) -> int:
    return -label.degree * (label.degree + label.dim - 2)


def yamabe_eigenvalue_sphere(label: HarmonicLabel) -> Fraction:
    """1/4 - (l + q/2 - 1)^2."""
    x = Fraction(label.degree) + Fraction(label.dim, 2) - 1
    return Fraction(1, 4) - x * x


def classical_branching(n: int, q1: int, q2: int) -> list[tuple[int, int]]:
    """(k, l) with k + l <= n and k + l = n mod 2, ordered by k + l, then k
    descending."""
    out = []
    for s in range(n % 2, n + 1, 2):
        for k in range(s, -1, -1):
            out.append((k, s - k))
    return out


def branching_dimension_check(n: int, q1: int, q2: int) -> tuple[int, int]:
    lhs = dim_harmonic(HarmonicLabel(n, q1 + q2))
    rhs = sum(
        dim_harmonic(HarmonicLabel(k, q1)) * dim_harmonic(HarmonicLabel(l, q2))
        for k, l in classical_branching(n, q1, q2)
    )
    return lhs, rhs


def sphere_volume(q: int) -> float:
    """Volume of S^{q-1} in R^q."""
    return 2 * math.pi ** (q / 2) / math.gamma(q / 2)


@lru_cache(maxsize=None)
def _sphere_rule_cached(q: int, degree: int):
    if q == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if q == 2:
        n = degree + 1
        ang = 2 * np.pi * (np.arange(n) + 0.5) / n
        pts = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        return pts, np.full(n, 2 * np.pi / n)
    # x_1 = s with weight (1-s^2)^{(q-3)/2}; the rest is sqrt(1-s^2) * S^{q-2}
    alpha = (q - 3) / 2
    ns = degree // 2 + 1
    s, ws = roots_jacobi(ns, alpha, alpha)
    sub_pts, sub_w = _sphere_rule_cached(q - 1, degree)
    rad = np.sqrt(1 - s**2)
    pts = np.concatenate(
        [np.repeat(s, len(sub_w))[:, None],
         (rad[:, None, None] * sub_pts[None, :, :]).reshape(-1, q - 1)],
        axis=1,
    )
    w = (ws[:, None] * sub_w[None, :]).reshape(-1)
    return pts, w


def sphere_rule(q: int, degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on S^{q-1} and weights integrating polynomials of total degree
    <= ``degree`` exactly (surface measure)."""
    pts, w = _sphere_rule_cached(q, max(int(degree), 0))
    return pts.copy(), w.copy()


def reproducing_kernel(l: int, q: int, s):
    """Kernel of the orthogonal projection onto H^l on S^{q-1}."""
    d = dim_harmonic(HarmonicLabel(l, q))
    if d == 0:
        return np.zeros_like(np.asarray(s, dtype=float))
    return d / sphere_volume(q) * zonal_profile(l, q, s)


def projection_matrix(l: int, q: int, points: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """P with (P @ f)[i] = projection of f onto degree l at node i, exact
    when the rule integrates degree deg(f) + l."""
    gram = points @ points.T
    return reproducing_kernel(l, q, gram) * weights[None, :]
