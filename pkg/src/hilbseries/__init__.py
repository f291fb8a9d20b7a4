"""Exact generating series on Hilbert schemes of points on surfaces.

Top Chern numbers of tautological sheaves via the creation-operator
calculus, Euler characteristics of their determinants via toric
fixed-point localization, exact fits of the universal power series
controlling both, and machine verification of the identities relating
them.  Everything is computed in exact rational arithmetic.
"""

__version__ = "0.1.0"

from .chern import KClass, c2n_series, catalan_check
from .localization import bundle, chi_det, chi_series
from .series import TruncatedSeries
from .surface import SurfaceModel, formal, preset
from .universal import fit_c2n, fit_chi, verify_C1_C4

__all__ = [
    "KClass",
    "SurfaceModel",
    "TruncatedSeries",
    "bundle",
    "c2n_series",
    "catalan_check",
    "chi_det",
    "chi_series",
    "fit_c2n",
    "fit_chi",
    "formal",
    "preset",
    "verify_C1_C4",
]
