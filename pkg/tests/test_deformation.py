from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irregular_tr.algebra.params import ParamScalar
from irregular_tr.algebra.scalar import Scalar
from irregular_tr.algebra.series import LaurentSeries
from irregular_tr.curve import CurveSpec, LocalY
from irregular_tr.deformation import deformed_bessel, deformed_formula, deformed_recursion, variational_check
from irregular_tr.fixtures import X_LOCAL
from irregular_tr.recursion import TopologicalRecursion

y = ParamScalar.var


def test_bessel_genus_two_values():
    corr = deformed_bessel(2, 1)
    assert corr[[(0, 1)]] == y(-1, -4) * y(1) * Fraction(-9, 128)
    assert corr[[(1, 1)]] == y(-1, -3) * Fraction(9, 128)


@pytest.mark.parametrize("family", ["airy", "bessel"])
@pytest.mark.parametrize("g,n", [(0, 3), (1, 1), (1, 2), (2, 1)])
def test_formula_equals_recursion(family, g, n):
    assert deformed_formula(family, g, n) == deformed_recursion(family, g, n)


def test_variational_identity_sample():
    assert variational_check("bessel", 1, 1, 1)["ok"]
    assert variational_check("airy", 0, 3, 3)["ok"]


def test_variational_rejects_missing_coefficient():
    with pytest.raises(ValueError):
        variational_check("airy", 1, 1, -1)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
nonzero = small.filter(lambda f: f != 0)


@settings(max_examples=8)
@given(nonzero, small, small)
def test_formula_at_numeric_point(ym1, y1, y3):
    """Specialize the formal formula and compare with the recursion on the numeric curve."""
    values = {-1: Scalar(ym1), 1: Scalar(y1), 3: Scalar(y3)}
    series = LaurentSeries.from_dict({k: v for k, v in values.items()}, 4, var="s")
    spec = CurveSpec("numeric-bessel", X_LOCAL, LocalY(series={1: series}))
    engine = TopologicalRecursion(spec.build())
    for g, n in [(1, 1), (1, 2), (2, 1)]:
        formula = deformed_formula("bessel", g, n)
        direct = engine.correlator(g, n, "xi").nonzero()
        specialised = {k: v.substitute(values) for k, v in formula.coeffs.items()}
        specialised = {k: v for k, v in specialised.items() if not v.is_zero()}
        assert specialised == direct
