"""Exact Poincaré series of joint invariants and covariants of two binary forms."""

from __future__ import annotations

__version__ = "0.1.0"

from jointseries.ring import FactorBag, RatFunc, ZPoly, series_prefix  # noqa: E402
from jointseries.oracle import FormPair, dims, omega_count, truncated_omega  # noqa: E402
from jointseries.springer import (  # noqa: E402
    PoincareResult,
    closed_form_simple,
    partial_fractions,
    poincare_series,
    shifted_genfun,
)
from jointseries.canonical import present, rat_equal, render  # noqa: E402

__all__ = [
    "ZPoly",
    "RatFunc",
    "FactorBag",
    "series_prefix",
    "FormPair",
    "dims",
    "omega_count",
    "truncated_omega",
    "PoincareResult",
    "poincare_series",
    "partial_fractions",
    "shifted_genfun",
    "closed_form_simple",
    "present",
    "rat_equal",
    "render",
]
