from __future__ import annotations

from fractions import Fraction

import pytest

from irregular_tr.algebra.matrix import mat_is_zero
from irregular_tr.algebra.polynomial import TimesPolynomial, Truncation
from irregular_tr.algebra.scalar import Scalar
from irregular_tr.fixtures import FIXTURES, fixture
from irregular_tr.givental import (
    assemble_decomposition,
    decomposition_free_energy,
    delta_scaling,
    quantize_r,
    r_inverse_from_b,
    r_log,
    r_matrix,
    symplectic_defect,
    translation_constants,
)


def test_legendre_r_inverse_first_coefficient():
    # frozen from the symbolic Bergman oracle in test_curve: B^{11}_{00} = -1/16, B^{12}_{00} = -i/8
    inv = r_inverse_from_b(fixture("legendre").build(), 3)
    assert inv.coeff(1)[0][0] == Scalar(1) / 16
    assert inv.coeff(1)[0][1] == Scalar.i() / 8


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_r_matrix_invariants(name):
    rm = r_matrix(fixture(name).build(), 5)
    assert (rm.R * rm.R_inverse).is_identity()
    assert rm.R.log().exp() == rm.R
    defect = symplectic_defect(rm.R)
    assert all(mat_is_zero(m) for m in defect.coeffs)


def test_legendre_r_log_first_term():
    rm = r_matrix(fixture("legendre").build(), 4)
    first = rm.r_log[1]
    inv1 = rm.R_inverse.coeff(1)
    assert all(first[i][j] == -inv1[i][j] for i in range(2) for j in range(2))


@pytest.mark.parametrize("name", ["airy", "bessel"])
def test_trivial_curves(name):
    curve = fixture(name).build()
    assert r_matrix(curve, 4).R.is_identity()
    assert translation_constants(curve, 1, 6) == {}
    assert delta_scaling(curve, 1) == (Scalar(1), Scalar(1))


def test_zero_r_is_identity_operator():
    zero = Scalar(0)
    op = quantize_r(tuple(((zero, zero), (zero, zero)) for _ in range(3)), [1, 2])
    Z = TimesPolynomial.variable(2, 1) + TimesPolynomial.constant(1)
    assert op.is_identity() and op.apply(Z) == Z


def test_quadratic_part_kills_constants():
    rlog = r_log(r_matrix(fixture("legendre").build(), 4).R_inverse)
    assert quantize_r(rlog, [1, 2]).apply(TimesPolynomial.constant(1)) == TimesPolynomial.constant(1)


def test_legendre_delta_scaling():
    curve = fixture("legendre").build()
    assert delta_scaling(curve, 1) == (Scalar(2), Scalar.sqrt2())
    h2, v2 = delta_scaling(curve, 2)
    assert h2 == Scalar(-2) and v2 * v2 == Scalar(-2)


def test_des_translation():
    curve = fixture("des").build()
    consts = translation_constants(curve, 2, 2)
    ymin = curve.y_min(2)
    assert consts[1] == curve.y_coefficient(2, 1) / ymin


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_decomposition_matches_recursion(name):
    report = assemble_decomposition(fixture(name).build(), 2, 3, name)
    assert report.ok, report.mismatches[:3]
    assert report.compared > 0


def test_quantized_r_two_routes():
    """Literal quantization of log R^-1 equals Wick contraction followed by a linear substitution."""
    curve = fixture("legendre").build()
    weight = 5
    trunc = Truncation(max_weight=weight)
    rm = r_matrix(curve, 6)
    F = TimesPolynomial.monomial(Fraction(1, 8), 0, [(1, 1)]) + TimesPolynomial.monomial(
        Fraction(1, 3), 0, [(0, 1), (1, 2), (2, 2)]
    )
    Z = F.exp(trunc)
    literal = quantize_r(r_log(rm.R_inverse), curve.labels).apply(Z).truncate(trunc)

    # second route: exp((hbar/2) sum E^{ab}_{kl} d_k^a d_l^b) Z, then v^b_K -> sum_m (R^-1_m)^{ab} v^a_{K-m}
    labels = curve.labels
    idx = {a: i for i, a in enumerate(labels)}
    R = rm.R
    order = R.order

    def N(p, q, a, b):
        total = Scalar(0)
        for c in labels:
            total = total + R.coeff(p)[idx[a]][idx[c]] * R.coeff(q)[idx[b]][idx[c]]
        return -total if (p + q) % 2 == 0 else total

    E = {}
    for total_kl in range(order - 1):
        for l in range(total_kl + 1):  # E_{k+1,l-1} has the same total and is already known
            k = total_kl - l
            for a in labels:
                for b in labels:
                    # N_{k+1,l} = E_{k,l} + E_{k+1,l-1}
                    prev = E.get((k + 1, l - 1, a, b), Scalar(0)) if l >= 1 else Scalar(0)
                    E[(k, l, a, b)] = N(k + 1, l, a, b) - prev
    current = dict(Z.terms)
    total = dict(Z.terms)
    j = 0
    while current:
        j += 1
        nxt = {}
        for (h, vs), c in current.items():
            for (k, l, a, b), e in E.items():
                if e.is_zero():
                    continue
                P = TimesPolynomial({(h, vs): c}, curve.ring)
                d = P.derivative((k, a)).derivative((l, b))
                for (h2, vs2), c2 in d.terms.items():
                    key = (h2 + 1, vs2)
                    nxt[key] = nxt.get(key, Scalar(0)) + c2 * e * Fraction(1, 2 * j)
        current = {k: v for k, v in nxt.items() if not v.is_zero()}
        for key, v in current.items():
            total[key] = total.get(key, Scalar(0)) + v
    wick = TimesPolynomial({k: v for k, v in total.items() if not v.is_zero()}, curve.ring)
    inv = rm.R_inverse
    images = {}
    for K in range(order):
        for b in labels:
            terms = {}
            for m in range(K + 1):
                for a in labels:
                    coef = inv.coeff(m)[idx[a]][idx[b]]
                    if not coef.is_zero():
                        terms[(0, ((K - m, a),))] = coef
            images[(K, b)] = TimesPolynomial(terms, curve.ring)
    other = wick.substitute(images, trunc).truncate(trunc)
    assert literal == other


def test_pipeline_free_energy_has_no_constant():
    F = decomposition_free_energy(fixture("gauss").build(), 3)
    assert F.constant_term().is_zero()
