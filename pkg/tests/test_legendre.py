from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from irregular_tr.algebra.polynomial import TimesPolynomial
from irregular_tr.algebra.rational import Z
from irregular_tr.fixtures import fixture
from irregular_tr.legendre import (
    ChekhovOperator,
    bernoulli,
    bridge_check,
    chekhov_A,
    chekhov_decompose,
    closed_form,
    genus_part,
    sign_symmetric,
    tau_in_v_basis,
    tau_times,
    verify_closed_forms,
)


def test_bernoulli_small():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(4) == Fraction(-1, 30)


@pytest.mark.parametrize("n", [0] + list(range(2, 25)))
def test_bernoulli_against_sympy(n):
    assert bernoulli(n) == Fraction(str(sp.bernoulli(n)))


def test_chekhov_values():
    assert chekhov_A(0, 0, "++") == chekhov_A(0, 0, "--") == Fraction(-1, 24)
    assert chekhov_A(0, 0, "+-") == Fraction(-1, 4)
    assert chekhov_A(1, 0, "++") == Fraction(1, 480)
    assert chekhov_A(1, 0, "+-") == Fraction(1, 16)


@given(st.integers(0, 4), st.integers(0, 4))
def test_chekhov_closed_forms(k, l):
    m = k + l + 1
    b = Fraction(str(sp.bernoulli(2 * m)))
    base = b / (2 * m * factorial(2 * k) * factorial(2 * l))
    assert chekhov_A(k, l, "++") == chekhov_A(l, k, "++") == -base / 2
    assert chekhov_A(k, l, "+-") == -base * (2 ** (2 * m) - 1)


def test_global_times():
    assert tau_times(0, "-") == 1 / (Z - 1)
    assert tau_times(0, "+") == 1 / (-Z - 1)


def test_tau_principal_parts_sit_at_one_branch():
    curve = fixture("legendre").build()
    assert {b for (_, b) in tau_in_v_basis(curve, 0, "-")} == {1}
    assert {b for (_, b) in tau_in_v_basis(curve, 0, "+")} == {2}
    assert {b for (_, b) in tau_in_v_basis(curve, 2, "+")} == {1, 2}


def test_operator_annihilates_constants():
    op = ChekhovOperator.build(2)
    assert op.exponentiate(TimesPolynomial.constant(1)) == TimesPolynomial.constant(1)


@pytest.fixture(scope="module")
def leg():
    return chekhov_decompose(3, 4)


def test_genus_one(leg):
    F1 = genus_part(leg, 1)
    assert F1.coeff(0, [(0, "+")]) == Fraction(1, 8)
    expected = closed_form(1, 4) - TimesPolynomial.constant(Fraction(1, 4))
    assert F1 == expected


def test_genus_two_heads(leg):
    assert leg.coeff(1, []) == Fraction(-1, 64)
    assert leg.coeff(1, [(1, "+")]) == Fraction(3, 256)
    assert leg.coeff(1, [(0, "+")]) == Fraction(-1, 64)


def test_symmetry(leg):
    assert sign_symmetric(leg)
    assert sign_symmetric(chekhov_decompose(3, 3, "global"))


def test_closed_forms_report():
    report = verify_closed_forms(4)
    assert report["ok"]
    fit = report["F3_tau0"]
    assert fit["positive"] and fit["consistent"]
    assert fit["coefficients"] == {"S4": "31/32768", "S31": "15/32768", "S22": "5/8192"}


def test_bridge_to_recursion():
    report = bridge_check(3, 3)
    assert report["ok"], report["mismatches"][:3]
    assert report["compared"] == 50


def test_rejects_bad_kind():
    with pytest.raises(ValueError):
        chekhov_A(0, 0, "-+")
    with pytest.raises(ValueError):
        tau_times(0, "x")
