"""Numerical integration and the quadrature-based verifications."""

from .boundary import ProbeReport, StratumReport, l2_boundary_probe, model_function
from .core import QuadratureResult, adaptive_interval, half_line, integrate, product_sphere_chart
from .norms import (
    NormReport,
    VerifyRecord,
    l2_norm_sq_hyperboloid,
    minrep_norm,
    pi_norm,
    sphere_norm_sq,
    verify_v_pm,
    verify_v_pp,
)
from .parseval import (
    ParsevalRecord,
    ZonalTerm,
    ZonalTestFunction,
    ktype_pullback_check,
    parseval_verify,
)

__all__ = [
    "NormReport",
    "ParsevalRecord",
    "ProbeReport",
    "QuadratureResult",
    "StratumReport",
    "VerifyRecord",
    "ZonalTerm",
    "ZonalTestFunction",
    "adaptive_interval",
    "half_line",
    "integrate",
    "ktype_pullback_check",
    "l2_boundary_probe",
    "l2_norm_sq_hyperboloid",
    "minrep_norm",
    "model_function",
    "parseval_verify",
    "pi_norm",
    "product_sphere_chart",
    "sphere_norm_sq",
    "verify_v_pm",
    "verify_v_pp",
]
