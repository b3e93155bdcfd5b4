"""Adaptive Gauss-Legendre integration on intervals, half-lines and the
angular chart of a sphere product.

Each panel is estimated with a 10-point and a 20-point rule; the difference
serves as the panel error.  Panels are refined worst-first until the summed
error estimate drops below the requested tolerance.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ToleranceNotMet
from ..exact import SignatureSplit
from ..geometry import chart_arrays, volume_weight
from ..harmonics import sphere_rule

LOW_ORDER = 10
HIGH_ORDER = 20
MAX_PANELS = 4000

_GL = {n: np.polynomial.legendre.leggauss(n) for n in (LOW_ORDER, HIGH_ORDER)}


@dataclass(frozen=True)
class QuadratureResult:
    value: float | np.ndarray
    error_estimate: float
    evaluations: int


def _panel(f, a: float, b: float):
    half, mid = (b - a) / 2, (b + a) / 2
    xs_lo, ws_lo = _GL[LOW_ORDER]
    xs_hi, ws_hi = _GL[HIGH_ORDER]
    x = np.concatenate([mid + half * xs_lo, mid + half * xs_hi])
    y = np.asarray(f(x), dtype=float)
    y_lo, y_hi = y[:LOW_ORDER], y[LOW_ORDER:]
    lo = half * np.tensordot(ws_lo, y_lo, axes=(0, 0))
    hi = half * np.tensordot(ws_hi, y_hi, axes=(0, 0))
    err = float(np.max(np.abs(hi - lo)))
    return hi, err


def adaptive_interval(f, a: float, b: float, tol: float = 1e-10, abs_tol: float = 0.0,
                      initial_panels: int = 1, max_panels: int = MAX_PANELS) -> QuadratureResult:
    """Global adaptive integration of a vectorized f over [a, b].

    f maps an array of shape (n,) to shape (n,) or (n, k).  The stopping rule
    is sum(errors) <= max(tol * |value|, abs_tol), with |value| the largest
    component.
    """
    edges = np.linspace(a, b, initial_panels + 1)
    heap = []
    evals = 0
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        val, err = _panel(f, lo, hi)
        evals += LOW_ORDER + HIGH_ORDER
        heap.append((-err, i, lo, hi, val))
    heapq.heapify(heap)
    counter = len(heap)
    while True:
        total = sum(item[4] for item in heap)
        err_sum = sum(-item[0] for item in heap)
        target = max(tol * float(np.max(np.abs(total))), abs_tol)
        if err_sum <= target:
            return QuadratureResult(total, err_sum, evals)
        if len(heap) >= max_panels:
            raise ToleranceNotMet(
                f"error estimate {err_sum:.3e} above target {target:.3e} after {evals} evaluations")
        _, _, lo, hi, _ = heapq.heappop(heap)
        mid = (lo + hi) / 2
        for sub in ((lo, mid), (mid, hi)):
            val, err = _panel(f, *sub)
            evals += LOW_ORDER + HIGH_ORDER
            heapq.heappush(heap, (-err, counter, sub[0], sub[1], val))
            counter += 1


def half_line(f, a: float = 0.0, decay_rate: float | None = None, tol: float = 1e-10,
              abs_tol: float = 0.0, max_extensions: int = 40) -> QuadratureResult:
    """Integral of f over [a, inf) for an integrand decaying like exp(-r t).

    The range is truncated at T where the tail bound |f(T)| / r falls below a
    tenth of the tolerance; r is the supplied decay rate, or is estimated from
    the integrand when not given.  The tail bound is added to the reported
    error estimate.
    """
    if decay_rate is not None and decay_rate <= 0:
        raise ToleranceNotMet("half-line integration needs a positive decay rate")

    def size(t):
        return float(np.max(np.abs(np.asarray(f(np.array([t])), dtype=float))))

    def rate_at(t):
        if decay_rate is not None:
            return decay_rate
        f0, f1 = size(t), size(t + 1.0)
        if f0 == 0.0:
            return math.inf
        if f1 == 0.0 or f1 >= f0:
            return None
        return math.log(f0 / f1)

    first = decay_rate if decay_rate is not None else 1.0
    T = a + max(4.0, (math.log(1.0 / max(tol, 1e-300)) + 5.0) / first)
    res = adaptive_interval(f, a, T, tol / 2, abs_tol / 2, initial_panels=max(4, int(T - a)))
    value, err, evals = res.value, res.error_estimate, res.evaluations
    for _ in range(max_extensions):
        r = rate_at(T)
        if r is None:
            raise ToleranceNotMet(f"integrand is not decaying at t={T:.3g}")
        tail = 0.0 if r == math.inf else size(T) / r
        target = max(tol * float(np.max(np.abs(value))), abs_tol)
        if tail <= target / 10:
            return QuadratureResult(value, err + tail, evals)
        T_new = T + max(2.0, (T - a) / 2)
        ext = adaptive_interval(f, T, T_new, tol / 2, abs_tol / 2,
                                initial_panels=max(2, int(T_new - T)))
        value = value + ext.value
        err += ext.error_estimate
        evals += ext.evaluations
        T = T_new
    raise ToleranceNotMet("tail did not fall below the tolerance")


def _sphere_nodes(k: int, degree: int):
    """Nodes and weights on S^{k-1}; k = 0 gives a single empty point."""
    if k == 0:
        return np.zeros((1, 0)), np.ones(1)
    return sphere_rule(k, degree)


def product_sphere_chart(F, split: SignatureSplit, tol: float = 1e-10, sphere_degree: int = 12,
                         abs_tol: float = 0.0) -> QuadratureResult:
    """Integral of F(u, v) over S^{p-1} x S^{q-1} in the angular chart
    u = (omega' cos theta, omega'' sin theta), v = (eta' cos phi, eta'' sin phi).

    theta and phi are integrated adaptively over [0, pi/2]; the four sphere
    factors use exact rules of degree ``sphere_degree``.  A zero-dimensional
    part pins its angle (theta = 0 when p'' = 0, and so on).
    """
    p1, q1, p2, q2 = split.parts
    rules = [_sphere_nodes(k, sphere_degree) for k in (p1, p2, q1, q2)]
    (o1, w1), (o2, w2), (e1, v1), (e2, v2) = rules
    sphere_w = (w1[:, None, None, None] * w2[None, :, None, None]
                * v1[None, None, :, None] * v2[None, None, None, :]).reshape(-1)
    i1, i2, j1, j2 = np.meshgrid(np.arange(len(w1)), np.arange(len(w2)),
                                 np.arange(len(v1)), np.arange(len(v2)), indexing="ij")
    i1, i2, j1, j2 = (a.reshape(-1) for a in (i1, i2, j1, j2))

    def angular(theta, phi):
        # theta, phi: equal-length 1-d arrays
        th = np.repeat(theta, len(sphere_w))
        ph = np.repeat(phi, len(sphere_w))
        n = len(theta)
        u, v = chart_arrays(th, ph, np.tile(o1[i1], (n, 1)), np.tile(o2[i2], (n, 1)),
                            np.tile(e1[j1], (n, 1)), np.tile(e2[j2], (n, 1)))
        vals = np.asarray(F(u, v), dtype=float).reshape(n, len(sphere_w))
        return (vals @ sphere_w) * volume_weight(theta, phi, split)

    def fixed(k_a, k_b):
        if k_a == 0:
            return math.pi / 2
        if k_b == 0:
            return 0.0
        return None

    th_fix, ph_fix = fixed(p1, p2), fixed(q1, q2)
    evals = 0

    def inner(theta):
        nonlocal evals
        theta = np.atleast_1d(theta)
        if ph_fix is not None:
            evals += len(theta)
            return angular(theta, np.full(len(theta), ph_fix))
        out = np.empty(len(theta))
        for i, th in enumerate(theta):
            res = adaptive_interval(lambda ph: angular(np.full(len(ph), th), ph),
                                    0.0, math.pi / 2, tol / 10, abs_tol / 10)
            evals += res.evaluations
            out[i] = res.value
        return out

    if th_fix is not None:
        value = float(inner(np.array([th_fix]))[0])
        return QuadratureResult(value, 0.0, evals)
    res = adaptive_interval(inner, 0.0, math.pi / 2, tol, abs_tol)
    return QuadratureResult(float(res.value), res.error_estimate, evals)


def integrate(f, domain: str, tol: float = 1e-10, **options) -> QuadratureResult:
    """Dispatch on ``domain``:

    finite_interval       options a, b
    half_line             options a (default 0), decay_rate
    product_sphere_chart  options split, sphere_degree; f takes (u, v)
    """
    if domain == "finite_interval":
        return adaptive_interval(f, options["a"], options["b"], tol, options.get("abs_tol", 0.0),
                                 options.get("initial_panels", 1))
    if domain == "half_line":
        return half_line(f, options.get("a", 0.0), options.get("decay_rate"), tol,
                         options.get("abs_tol", 0.0))
    if domain == "product_sphere_chart":
        return product_sphere_chart(f, options["split"], tol, options.get("sphere_degree", 12),
                                    options.get("abs_tol", 0.0))
    raise ValueError(f"unknown domain {domain!r}")
