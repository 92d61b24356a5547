"""Exact algebra: the field Q(zeta_8), truncated series, polynomials, matrices."""

from .matrix import MatrixSeries
from .params import ParamScalar
from .polynomial import TimesPolynomial, Truncation
from .rational import Poly, RationalFunction
from .scalar import ONE, ZERO, Scalar, double_factorial
from .series import LaurentSeries, TruncationError

__all__ = [
    "LaurentSeries",
    "MatrixSeries",
    "ONE",
    "ParamScalar",
    "Poly",
    "RationalFunction",
    "Scalar",
    "TimesPolynomial",
    "Truncation",
    "TruncationError",
    "ZERO",
    "double_factorial",
]
