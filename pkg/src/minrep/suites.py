"""Verification suites behind ``minrep verify``.

Every suite returns a ``SuiteReport`` with one record per case.  Records use
plain JSON types only, so identical inputs serialize to identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import RunConfig
from .exact import HalfInt, Signature, SignatureSplit, a0_set, b_epsilon_delta, identity_sides, m_constant_exact
from .geometry import (
    m_minus_empty,
    phi1_forward,
    phi1_inverse,
    phi2_forward,
    phi2_inverse,
    conformal_factor_check,
    random_hyperboloid_point,
    random_tangent,
)
from .operators import eigen_residual
from .quadrature import (
    ZonalTestFunction,
    ktype_pullback_check,
    l2_boundary_probe,
    parseval_verify,
    verify_v_pm,
    verify_v_pp,
)
from .specfun import JacobiFunctionSpec, asymptotic_decay_check, triangular_sides

SUITES = ("triangular", "v_pm", "v_pp", "msq", "pullback", "parseval", "eigen", "conformal", "boundary")
GRID_MAX = Fraction(9, 2)


@dataclass
class SuiteReport:
    suite: str
    tolerance: float
    cases: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.cases) and all(c["passed"] for c in self.cases)

    @property
    def max_residual(self) -> float:
        vals = [c["residual"] for c in self.cases if c.get("residual") is not None]
        return max(vals) if vals else 0.0

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "tolerance": self.tolerance,
                "max_residual": self.max_residual, "n_cases": len(self.cases),
                "params": self.params, "cases": self.cases}


def _h(x) -> str:
    return str(HalfInt.of(x))


def _halves(lo, hi):
    lo, hi = HalfInt.of(lo), HalfInt.of(hi)
    return [HalfInt(k) for k in range(lo.twice_value, hi.twice_value + 1)]


# ---------------------------------------------------------------------------
# parameter grids


def pm_triples(top=GRID_MAX):
    """(lam', lam'', lam) with lam > 0, lam', lam'' > -1, all <= top and
    lam' - lam'' - lam - 1 in 2N."""
    grid = _halves(Fraction(-1, 2), top)
    out = []
    for lp in grid:
        for lpp in grid:
            for lam in grid:
                e = (lp - lpp - lam - 1).twice_value
                if lam.twice_value > 0 and e >= 0 and e % 4 == 0:
                    out.append((lp, lpp, lam))
    return out


def pp_triples(top=GRID_MAX):
    """(lam', lam'', lam) with lam - lam' - lam'' - 1 in 2N."""
    grid = _halves(Fraction(-1, 2), top)
    out = []
    for lp in grid:
        for lpp in grid:
            for lam in grid:
                e = (lam - lp - lpp - 1).twice_value
                if lam.twice_value > 0 and e >= 0 and e % 4 == 0:
                    out.append((lp, lpp, lam))
    return out


def triangular_grid():
    """5 x 5 x 5: lam, lam'' in {1/2, ..., 5/2} and lam' = lam + lam'' + 1 + 2k, k = 0..4."""
    small = _halves(Fraction(1, 2), Fraction(5, 2))
    return [(lam, lam + lpp + 1 + 2 * k, lpp) for lam in small for lpp in small for k in range(5)]


# ---------------------------------------------------------------------------
# suites


def suite_msq(cfg: RunConfig, **_) -> SuiteReport:
    rep = SuiteReport("msq", 0.0)
    for lp, lpp, lam in pm_triples():
        left, right = identity_sides(lam, lp, lpp)
        rep.cases.append({"lambda": _h(lam), "lambda_p": _h(lp), "lambda_pp": _h(lpp),
                          "left": str(left), "right": str(right), "residual": None,
                          "passed": left == right})
    return rep


def suite_triangular(cfg: RunConfig, grid: str = "default", **_) -> SuiteReport:
    if grid != "default":
        raise ValueError(f"unknown grid {grid!r}")
    tol = cfg.tol("triangular")
    ts = np.linspace(0.1, 3.0, 30)
    rep = SuiteReport("triangular", tol, params={"grid": grid, "t_points": len(ts)})
    for lam, lp, lpp in triangular_grid():
        m = float(m_constant_exact(lam, lp, lpp))
        left, right = triangular_sides(float(lam), float(lp), float(lpp), ts, m)
        err = float(np.max(np.abs(left - right) / np.maximum(np.abs(left), np.abs(right))))
        rep.cases.append({"lambda": _h(lam), "lambda_p": _h(lp), "lambda_pp": _h(lpp),
                          "residual": err, "passed": err < tol})
    return rep


def _v_suite(name, triples, fn, cfg):
    tol = cfg.tol("v_integrals")
    rep = SuiteReport(name, tol)
    for lp, lpp, lam in triples:
        r = fn(lp, lpp, lam, tol=tol)
        rep.cases.append({"lambda": _h(lam), "lambda_p": _h(lp), "lambda_pp": _h(lpp),
                          "quadrature": r.quadrature, "exact": r.exact,
                          "residual": r.rel_err, "passed": r.passed})
    return rep


def suite_v_pm(cfg: RunConfig, **_) -> SuiteReport:
    return _v_suite("v_pm", pm_triples(), verify_v_pm, cfg)


def suite_v_pp(cfg: RunConfig, **_) -> SuiteReport:
    return _v_suite("v_pp", pp_triples(), verify_v_pp, cfg)


PULLBACK_CASES = (
    # (p, q, q', m, k, l)
    (4, 4, 1, 0, 0, 0), (4, 4, 1, 1, 1, 0), (4, 4, 1, 2, 0, 2), (4, 4, 1, 3, 1, 2),
    (4, 4, 2, 2, 1, 1), (4, 4, 2, 3, 3, 0), (3, 5, 2, 2, 1, 0), (3, 5, 1, 3, 0, 2),
    (5, 3, 1, 1, 0, 2), (5, 3, 2, 2, 2, 1), (2, 4, 2, 3, 0, 2), (6, 2, 1, 0, 1, 1),
)


def suite_pullback(cfg: RunConfig, **_) -> SuiteReport:
    tol = cfg.tol("pullback")
    rep = SuiteReport("pullback", tol)
    for p, q, qp, m, k, l in PULLBACK_CASES:
        err = ktype_pullback_check(m, k, l, Signature(p, q), qp, seed=cfg.seed)
        rep.cases.append({"p": p, "q": q, "q_p": qp, "m": m, "k": k, "l": l,
                          "residual": err, "passed": err < tol})
    return rep


def suite_parseval(cfg: RunConfig, p: int = 4, q: int = 4, qsplit=(1, 3), degrees=(0, 1, 2, 3),
                   terms_per_type: int = 2, **_) -> SuiteReport:
    tol = cfg.tol("parseval")
    q1, q2 = qsplit
    if q1 + q2 != q:
        raise ValueError("qsplit must add up to q")
    shift = (p - q) // 2
    l_max = max(m + shift for m in degrees)
    rep = SuiteReport("parseval", tol, params={"p": p, "q": q, "qsplit": [q1, q2],
                                               "degrees": list(degrees), "l_max": l_max})
    F = ZonalTestFunction.random(Signature(p, q), degrees, terms_per_type, seed=cfg.seed)
    r = parseval_verify(p, q1, q2, F, l_max, tol=tol)
    rep.cases.append({"lhs": r.lhs, "rhs_weighted_l2": r.rhs_partial,
                      "rhs_closed_form": r.rhs_closed_form, "rel_err_routes": r.rel_err_routes,
                      "per_l": list(r.per_l), "residual": r.rel_err, "passed": r.passed})
    return rep


EIGEN_SIGS = (Signature(3, 3), Signature(4, 2), Signature(5, 3), Signature(3, 1), Signature(2, 4))


def eigen_grid(per_sig: int = 4):
    """(sig, lam, m, n): the two smallest positive parameters of each
    signature, each with its two lowest K-types."""
    out = []
    for sig in EIGEN_SIGS:
        lams = [lam for lam in a0_set(sig, 6) if lam.twice_value > 0][:2]
        for lam in lams:
            b = int(b_epsilon_delta(lam, sig).b)
            types = sorted(((m, n) for m in range(6) for n in range(4)
                            if m - n >= b and (m - n - b) % 2 == 0 and (sig.q > 1 or n <= 1)),
                           key=lambda mn: (mn[0] + mn[1], mn))
            out.extend((sig, lam, m, n) for m, n in types[: per_sig // 2])
    return out


def suite_eigen(cfg: RunConfig, **_) -> SuiteReport:
    tol, dtol = cfg.tol("eigen"), cfg.tol("decay")
    fw = cfg.fit_window
    rep = SuiteReport("eigen", tol, params={"decay_tolerance": dtol,
                                            "fit_window": [fw.T, fw.width, fw.samples]})
    rng = np.random.default_rng(cfg.seed)
    for sig, lam, m, n in eigen_grid():
        pts = []
        for _ in range(5):
            pt = random_hyperboloid_point(sig, rng, 2.0)
            pts.append((pt.x, pt.y))
        res = eigen_residual(m, n, sig, float(lam), pts)
        spec = JacobiFunctionSpec(float(lam), m + sig.p / 2 - 1, n + sig.q / 2 - 1)
        rho = (sig.p + sig.q - 2) / 2
        fit = asymptotic_decay_check(spec, rho, m, n, fw.T, fw.width, fw.samples)
        dev = abs(fit["fitted_rate"] - fit["expected_rate"])
        rep.cases.append({"p": sig.p, "q": sig.q, "lambda": _h(lam), "m": m, "n": n,
                          "residual": res, "fitted_rate": fit["fitted_rate"],
                          "expected_rate": fit["expected_rate"], "rate_deviation": dev,
                          "passed": res < tol and dev < dtol})
    return rep


CONFORMAL_SPLITS = (SignatureSplit(2, 1, 1, 2), SignatureSplit(3, 2, 0, 2),
                    SignatureSplit(1, 1, 1, 1), SignatureSplit(2, 2, 2, 2))


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-3)


def suite_conformal(cfg: RunConfig, points: int = 100, **_) -> SuiteReport:
    rt_tol, cf_tol = cfg.tol("conformal_roundtrip"), cfg.tol("conformal_factor")
    rep = SuiteReport("conformal", cf_tol, params={"points": points, "roundtrip_tolerance": rt_tol})
    rng = np.random.default_rng(cfg.seed)
    for split in CONFORMAL_SPLITS:
        for which in (1, 2):
            if which == 2 and m_minus_empty(split):
                continue
            if which == 1:
                sa, sb = Signature(split.p1, split.q1), Signature(split.q2, split.p2)
                fwd, inv = phi1_forward, phi1_inverse
            else:
                sa, sb = Signature(split.q1, split.p1), Signature(split.p2, split.q2)
                fwd, inv = phi2_forward, phi2_inverse
            rt = cf = 0.0
            for _ in range(points):
                a, b = random_hyperboloid_point(sa, rng), random_hyperboloid_point(sb, rng)
                a2, b2 = inv(fwd(a, b, split))
                rt = max(rt, *(float(np.max(np.abs(u - w), initial=0.0))
                               for u, w in ((a.x, a2.x), (a.y, a2.y), (b.x, b2.x), (b.y, b2.y))))
                va, vb, wa, wb = (random_tangent(a, rng), random_tangent(b, rng),
                                  random_tangent(a, rng), random_tangent(b, rng))
                r = conformal_factor_check(a, b, va, vb, wa, wb, split, which=which)
                cf = max(cf, _rel(r["lhs"], r["rhs"]))
            rep.cases.append({"split": str(split), "map": which, "roundtrip": rt,
                              "residual": cf, "passed": rt < rt_tol and cf < cf_tol})
    return rep


BOUNDARY_GRID = (
    # (lam', lam'', split, derivative order)
    ("2", "2", (2, 2, 2, 2), 0),
    ("1/4", "1/4", (2, 2, 2, 2), 0),
    ("0", "-3/2", (2, 2, 2, 2), 0),
    ("1/2", "-1/4", (2, 1, 1, 2), 0),
    ("1/4", "1/4", (2, 2, 2, 2), 1),
    ("1/2", "1/2", (1, 1, 1, 1), 1),
    ("3/4", "3/4", (2, 1, 1, 2), 1),
    ("1", "-1/4", (2, 2, 1, 1), 1),
    ("3/2", "3/2", (1, 1, 1, 1), 2),
    ("3/4", "3/4", (1, 1, 1, 1), 2),
    ("5/2", "-1/4", (2, 2, 1, 1), 2),
    ("5/4", "5/4", (2, 2, 2, 2), 2),
)


def suite_boundary(cfg: RunConfig, **_) -> SuiteReport:
    rep = SuiteReport("boundary", 0.0)
    for lp, lpp, parts, order in BOUNDARY_GRID:
        split = SignatureSplit(*parts)
        r = l2_boundary_probe(Fraction(lp), Fraction(lpp), split, order, seed=cfg.seed)
        rep.cases.append({"lambda_p": lp, "lambda_pp": lpp, "split": str(split),
                          "derivative_order": order, "converged": r.converged,
                          "predicted": r.predicted, "growth_exponent_fit": r.growth_exponent_fit,
                          "strata": {str(k): {"gamma": s.gamma, "converged": s.converged,
                                              "predicted": s.predicted}
                                     for k, s in r.strata.items()},
                          "residual": None, "passed": r.agrees})
    return rep


RUNNERS = {
    "triangular": suite_triangular, "v_pm": suite_v_pm, "v_pp": suite_v_pp, "msq": suite_msq,
    "pullback": suite_pullback, "parseval": suite_parseval, "eigen": suite_eigen,
    "conformal": suite_conformal, "boundary": suite_boundary,
}


def run_suite(name: str, cfg: RunConfig | None = None, **params) -> SuiteReport:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return RUNNERS[name](cfg or RunConfig(), **params)
