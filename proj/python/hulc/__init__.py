"""Confidence intervals from hulls of split estimates."""
from ._hulc import (  # noqa: F401
    band,
    ci,
    ci_regression,
    estimate_delta,
    miscoverage,
    monotone_band,
    normal_quantile,
    pava,
    solve_budget,
    stability_radius,
    unimodal_miscoverage,
    wendel_miscoverage,
)

__all__ = [
    "band",
    "ci",
    "ci_regression",
    "estimate_delta",
    "miscoverage",
    "monotone_band",
    "normal_quantile",
    "pava",
    "solve_budget",
    "stability_radius",
    "unimodal_miscoverage",
    "wendel_miscoverage",
]
